use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};
use rigidity_lab::{run, store, Cli, Outcome};

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(k) = cli.workers {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k as usize).build_global();
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, Some(&matches), argv) {
        Ok(Outcome::Envelope(env)) => {
            if !cli.quiet {
                print!("{}", env.to_pretty());
            }
            if let Some(dir) = &cli.out {
                match store::store(dir, &env) {
                    Ok(path) => eprintln!("stored {}", path.display()),
                    Err(e) => {
                        eprintln!("error: cannot store result in {}: {e}", dir.display());
                        return ExitCode::from(1);
                    }
                }
            }
            for c in env.checks.iter().filter(|c| !c.passed) {
                eprintln!("mismatch: {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
            ExitCode::from(env.status.exit_code() as u8)
        }
        Ok(Outcome::Verified(env)) => {
            println!("ok {} {} {}", env.checksum, env.config.command, env.timestamp);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
