//! The Grover iterate `G = V·U`: oracle reflection followed by inversion
//! about the mean, iteration scheduling, and full simulated runs.

use num_complex::Complex64;

use crate::analytic::{self, optimal_iterations, success_probability};
use crate::error::{GroverError, Result};
use crate::gates::{GateMatrix, MAX_EXPLICIT_QUBITS};
use crate::oracle::{MarkedSet, PhaseOracle};
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

/// Imaginary parts of rotation-plane coefficients must stay below this.
pub const REALITY_TOLERANCE: f64 = 1e-12;

/// Replaces every amplitude `a_i` by `2A − a_i`, `A` the mean amplitude.
/// This is `2|Ψ⟩⟨Ψ| − I` for the uniform `|Ψ⟩`, computed in `O(N)`.
pub fn diffusion_apply(state: &StateVector) -> StateVector {
    let mut out = state.clone();
    diffuse_in_place(&mut out);
    out
}

pub(crate) fn diffuse_in_place(state: &mut StateVector) -> Complex64 {
    let amps = state.amplitudes_mut();
    let mean = amps.iter().sum::<Complex64>() / amps.len() as f64;
    let twice = 2.0 * mean;
    for a in amps.iter_mut() {
        *a = twice - *a;
    }
    mean
}

/// Dense `D` with `D_ii = 2/N − 1` and `D_ij = 2/N`, for `n ≤ 6`.
pub fn diffusion_matrix(n: usize) -> Result<GateMatrix> {
    if n > MAX_EXPLICIT_QUBITS {
        return Err(GroverError::QubitCapExceeded {
            requested: n,
            cap: MAX_EXPLICIT_QUBITS,
        });
    }
    if n == 0 {
        return Err(GroverError::InvalidQubitCount(0));
    }
    let dim = 1usize << n;
    let off = 2.0 / dim as f64;
    let entries = (0..dim * dim)
        .map(|idx| {
            let v = if idx / dim == idx % dim { off - 1.0 } else { off };
            Complex64::new(v, 0.0)
        })
        .collect();
    GateMatrix::new(n, entries)
}

/// One Grover iteration; consumes exactly one oracle query.
pub fn grover_iterate(state: &StateVector, oracle: &mut PhaseOracle) -> Result<StateVector> {
    if oracle.marked().is_empty() {
        return Err(GroverError::NoSolutions);
    }
    let mut out = state.clone();
    oracle.apply_in_place(&mut out)?;
    diffuse_in_place(&mut out);
    Ok(out)
}

/// Derived quantities of a search over `N` items with `M` solutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverPlan {
    pub size: usize,
    pub solutions: usize,
    /// `sin θ = √(M/N)`.
    pub theta: f64,
    pub k_opt: usize,
    pub predicted_success: f64,
}

impl GroverPlan {
    /// Angle swept by one iteration, `2θ`.
    pub fn rotation_per_iteration(&self) -> f64 {
        2.0 * self.theta
    }

    /// `(π/4)√(N/M)`, shown in reports next to `k_opt`.
    pub fn approximate_iterations(&self) -> f64 {
        analytic::approximate_iterations(self.size, self.solutions)
    }
}

pub fn plan(size: usize, solutions: usize) -> Result<GroverPlan> {
    let theta = analytic::theta_of(size, solutions)?;
    let k_opt = optimal_iterations(theta);
    Ok(GroverPlan {
        size,
        solutions,
        theta,
        k_opt,
        predicted_success: success_probability(theta, k_opt),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRecord {
    pub k: usize,
    pub success_probability: f64,
    /// Coefficient along the normalized uniform superposition of unmarked states.
    pub alpha: f64,
    /// Coefficient along the normalized uniform superposition of marked states.
    pub beta: f64,
    /// Real amplitude of the first marked index.
    pub marked_amplitude: f64,
    /// Real amplitude of the first unmarked index; 0 when every index is marked.
    pub unmarked_amplitude: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    records: Vec<TrajectoryRecord>,
}

impl Trajectory {
    pub fn records(&self) -> &[TrajectoryRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&TrajectoryRecord> {
        self.records.get(k)
    }

    pub fn last(&self) -> Option<&TrajectoryRecord> {
        self.records.last()
    }
}

/// `(α, β)` coordinates of `state` in the rotation plane:
/// `β = Σ_{marked} a_i / √M`, `α = Σ_{unmarked} a_i / √(N − M)`.
pub fn rotation_plane_coordinates(state: &StateVector, marked: &MarkedSet) -> Result<(f64, f64)> {
    if state.qubit_count() != marked.qubit_count() {
        return Err(GroverError::DimensionMismatch {
            expected: marked.qubit_count(),
            found: state.qubit_count(),
        });
    }
    let amps = state.amplitudes();
    let (mut in_marked, mut in_rest) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (i, a) in amps.iter().enumerate() {
        if marked.contains(i) {
            in_marked += a;
        } else {
            in_rest += a;
        }
    }
    let m = marked.len();
    let rest = amps.len() - m;
    let beta = if m == 0 { in_marked } else { in_marked / (m as f64).sqrt() };
    let alpha = if rest == 0 { in_rest } else { in_rest / (rest as f64).sqrt() };
    for c in [alpha, beta] {
        if c.im.abs() > REALITY_TOLERANCE {
            return Err(GroverError::ComplexCoefficient { imag: c.im });
        }
    }
    Ok((alpha.re, beta.re))
}

fn record(k: usize, state: &StateVector, marked: &MarkedSet) -> Result<TrajectoryRecord> {
    let (alpha, beta) = rotation_plane_coordinates(state, marked)?;
    let amps = state.amplitudes();
    let first_marked = marked.indices().next().ok_or(GroverError::NoSolutions)?;
    let unmarked_amplitude = (0..amps.len())
        .find(|&i| !marked.contains(i))
        .map_or(0.0, |i| amps[i].re);
    Ok(TrajectoryRecord {
        k,
        success_probability: state.probability_of(marked.indices())?,
        alpha,
        beta,
        marked_amplitude: amps[first_marked].re,
        unmarked_amplitude,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub plan: GroverPlan,
    pub iterations: usize,
    pub final_state: StateVector,
    /// One record per iteration count `0..=iterations`.
    pub trajectory: Trajectory,
    pub queries: usize,
}

impl RunOutcome {
    pub fn success_probability(&self) -> f64 {
        self.trajectory.last().map_or(0.0, |r| r.success_probability)
    }
}

/// Prepares the uniform state and applies `iterations` (default `k_opt`) Grover iterations.
pub fn run(marked: &MarkedSet, iterations: Option<usize>) -> Result<RunOutcome> {
    run_with_cap(marked, iterations, DEFAULT_MAX_QUBITS)
}

pub fn run_with_cap(marked: &MarkedSet, iterations: Option<usize>, cap: usize) -> Result<RunOutcome> {
    if marked.is_empty() {
        return Err(GroverError::NoSolutions);
    }
    let plan = plan(marked.space_size(), marked.len())?;
    let iterations = iterations.unwrap_or(plan.k_opt);
    let mut state = StateVector::uniform_with_cap(marked.qubit_count(), cap)?;
    let mut oracle = PhaseOracle::new(marked.clone());
    let mut records = Vec::with_capacity(iterations + 1);
    records.push(record(0, &state, marked)?);
    for k in 1..=iterations {
        oracle.apply_in_place(&mut state)?;
        diffuse_in_place(&mut state);
        records.push(record(k, &state, marked)?);
    }
    Ok(RunOutcome {
        plan,
        iterations,
        final_state: state,
        trajectory: Trajectory { records },
        queries: oracle.queries(),
    })
}

/// Amplitudes after each iteration of a single-solution search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthRow {
    pub step: usize,
    pub marked_amplitude: f64,
    pub unmarked_amplitude: f64,
    /// Mean amplitude right after this step's oracle query (the reflection point).
    pub average: f64,
}

pub fn amplitude_growth_report(marked: &MarkedSet, steps: usize) -> Result<Vec<GrowthRow>> {
    amplitude_growth_report_with_cap(marked, steps, DEFAULT_MAX_QUBITS)
}

pub fn amplitude_growth_report_with_cap(
    marked: &MarkedSet,
    steps: usize,
    cap: usize,
) -> Result<Vec<GrowthRow>> {
    let target = match marked.len() {
        0 => return Err(GroverError::NoSolutions),
        1 => marked.indices().next().expect("one element"),
        m => return Err(GroverError::MultipleSolutionsUnsupported(m)),
    };
    let other = usize::from(target == 0);
    let mut state = StateVector::uniform_with_cap(marked.qubit_count(), cap)?;
    let mut oracle = PhaseOracle::new(marked.clone());
    let mut rows = Vec::with_capacity(steps);
    for step in 1..=steps {
        oracle.apply_in_place(&mut state)?;
        let mean = diffuse_in_place(&mut state);
        let amps = state.amplitudes();
        rows.push(GrowthRow {
            step,
            marked_amplitude: amps[target].re,
            unmarked_amplitude: amps[other].re,
            average: mean.re,
        });
    }
    Ok(rows)
}
