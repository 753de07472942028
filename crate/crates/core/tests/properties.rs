use grover_sim::analytic::success_probability;
use grover_sim::engine::{diffusion_apply, diffusion_matrix, plan, run};
use grover_sim::gates::{Gate, GateMatrix};
use grover_sim::oracle::{bit_oracle_apply, oracle_matrix, phase_oracle_apply};
use grover_sim::{MarkedSet, StateVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Random unitary by Gram-Schmidt on a complex Gaussian matrix (columns).
fn random_unitary(arity: usize, rng: &mut ChaCha8Rng) -> GateMatrix {
    let dim = 1usize << arity;
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for j in 0..dim {
        for i in 0..j {
            let proj: Complex64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
            let prev = cols[i].clone();
            for (x, p) in cols[j].iter_mut().zip(prev) {
                *x -= proj * p;
            }
        }
        let norm = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut cols[j] {
            *x /= norm;
        }
    }
    let entries = (0..dim * dim).map(|idx| cols[idx % dim][idx / dim]).collect();
    GateMatrix::new(arity, entries).expect("Gram-Schmidt output is unitary")
}

fn distinct_targets(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, k).into_vec()
}

#[test]
fn random_unitaries_preserve_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let arity = rng.gen_range(1..=n.min(3));
        let gate = random_unitary(arity, &mut rng);
        let targets = distinct_targets(&mut rng, n, arity);
        let s = StateVector::random(n, &mut rng).unwrap();
        let out = s.apply_gate(&gate, &targets).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn sequential_gates_equal_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=4 {
        let s = StateVector::random(n, &mut rng).unwrap();
        for a in Gate::ALL {
            for b in Gate::ALL.into_iter().filter(|b| b.arity() == a.arity()) {
                if a.arity() > n {
                    continue;
                }
                let product = b.matrix().matmul(&a.matrix()).unwrap();
                for _ in 0..3 {
                    let t = distinct_targets(&mut rng, n, a.arity());
                    let seq = s.apply_gate(&a.matrix(), &t).unwrap().apply_gate(&b.matrix(), &t).unwrap();
                    let once = s.apply_gate(&product, &t).unwrap();
                    assert!(seq.max_abs_diff(&once) < 1e-12, "{a} then {b} on {t:?}");
                }
            }
        }
    }
}

#[test]
fn single_qubit_gate_leaves_other_marginals_alone() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let n = rng.gen_range(2..=6);
        let s = StateVector::random(n, &mut rng).unwrap();
        let t = rng.gen_range(0..n);
        let out = s.apply_gate(&random_unitary(1, &mut rng), &[t]).unwrap();
        for q in (0..n).filter(|&q| q != t) {
            let (before, after) = (s.qubit_marginal(q).unwrap(), out.qubit_marginal(q).unwrap());
            assert!((before[0] - after[0]).abs() < 1e-12 && (before[1] - after[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn oracle_matrix_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=6 {
        let size = 1usize << n;
        let m = rng.gen_range(0..=size);
        let marked = MarkedSet::new(n, rand::seq::index::sample(&mut rng, size, m).into_vec()).unwrap();
        let u = oracle_matrix(&marked).unwrap();
        // diagonal, so the eigenvalues are the diagonal entries
        let mut minus = 0;
        for i in 0..size {
            for j in 0..size {
                let e = u.get(i, j);
                if i == j {
                    assert!(e == Complex64::new(1.0, 0.0) || e == Complex64::new(-1.0, 0.0));
                    minus += usize::from(e.re < 0.0);
                } else {
                    assert_eq!(e, Complex64::new(0.0, 0.0));
                }
            }
        }
        assert_eq!(minus, m);
    }
}

#[test]
fn dynamics_stay_symmetric_within_marked_and_unmarked() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 2..=9 {
        let size = 1usize << n;
        let m = rng.gen_range(1..size.min(32));
        let marked = MarkedSet::new(n, rand::seq::index::sample(&mut rng, size, m).into_vec()).unwrap();
        let k = 2 * plan(size, m).unwrap().k_opt + 1;
        let mut state = StateVector::uniform(n).unwrap();
        let mut oracle = grover_sim::oracle::PhaseOracle::new(marked.clone());
        for _ in 0..k {
            state = grover_sim::engine::grover_iterate(&state, &mut oracle).unwrap();
            let amps = state.amplitudes();
            let first_marked = amps[marked.indices().next().unwrap()];
            let first_other = amps[(0..size).find(|&i| !marked.contains(i)).unwrap()];
            for (i, a) in amps.iter().enumerate() {
                let reference = if marked.contains(i) { first_marked } else { first_other };
                assert!((a - reference).norm() < 1e-12);
            }
        }
        assert_eq!(oracle.queries(), k);
    }
}

#[test]
fn query_count_equals_iterations() {
    let marked = MarkedSet::new(5, [3, 17]).unwrap();
    for k in 0..12 {
        assert_eq!(run(&marked, Some(k)).unwrap().queries, k);
    }
}

#[test]
fn closed_form_holds_on_sampled_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let n = rng.gen_range(2..=10);
        let size = 1usize << n;
        let m = rng.gen_range(1..=size.min(32));
        let marked = MarkedSet::new(n, rand::seq::index::sample(&mut rng, size, m).into_vec()).unwrap();
        let r = run(&marked, Some(2 * plan(size, m).unwrap().k_opt)).unwrap();
        for rec in r.trajectory.records() {
            let closed = success_probability(r.plan.theta, rec.k);
            assert!((rec.success_probability - closed).abs() < 1e-10);
            assert!((rec.alpha.powi(2) + rec.beta.powi(2) - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn success_at_k_opt_is_at_least_one_minus_m_over_n() {
    for n in 2..=12 {
        let size = 1usize << n;
        for m in [1, 2, 3, 7, 32].into_iter().filter(|&m| m <= size) {
            let p = plan(size, m).unwrap();
            assert!(p.predicted_success >= 1.0 - m as f64 / size as f64 - 1e-12, "N={size} M={m}");
        }
    }
}

fn state_strategy() -> impl Strategy<Value = StateVector> {
    (1usize..=6, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        StateVector::random(n, &mut rng).unwrap()
    })
}

proptest! {
    #[test]
    fn born_probabilities_sum_to_one(state in state_strategy()) {
        let total: f64 = state.probabilities().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diffusion_reflects_about_mean_and_matches_matrix(state in state_strategy()) {
        let mean = state.amplitudes().iter().sum::<Complex64>() / state.dim() as f64;
        let out = diffusion_apply(&state);
        for (a, b) in state.amplitudes().iter().zip(out.amplitudes()) {
            prop_assert!((a + b - 2.0 * mean).norm() < 1e-12);
        }
        let dense = diffusion_matrix(state.qubit_count()).unwrap().apply(&state).unwrap();
        prop_assert!(out.max_abs_diff(&dense) < 1e-12);
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_oracle_is_an_involution(state in state_strategy(), mask in any::<u64>()) {
        let n = state.qubit_count();
        let marked = MarkedSet::new(n, (0..1usize << n).filter(|i| mask >> i & 1 == 1)).unwrap();
        let once = phase_oracle_apply(&state, &marked).unwrap();
        let twice = phase_oracle_apply(&once, &marked).unwrap();
        prop_assert!(twice.max_abs_diff(&state) < 1e-12);
        for i in (0..1usize << n).filter(|&i| !marked.contains(i)) {
            prop_assert_eq!(once.amplitudes()[i], state.amplitudes()[i]);
        }
    }

    #[test]
    fn bit_oracle_is_unitary_involution(seed in any::<u64>(), n in 1usize..=5, mask in any::<u32>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let marked = MarkedSet::new(n, (0..1usize << n).filter(|i| mask >> i & 1 == 1)).unwrap();
        let s = StateVector::random(n + 1, &mut rng).unwrap();
        let once = bit_oracle_apply(&s, &marked).unwrap();
        prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert_eq!(bit_oracle_apply(&once, &marked).unwrap(), s);
    }
}
