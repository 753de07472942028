use std::io;
use std::process::ExitCode;

use clap::Parser;
use grover_sim::cli::{execute, max_qubits_from_env, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = max_qubits_from_env().and_then(|cap| execute(&cli, &mut io::stdout().lock(), cap));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("grover: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
