use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nsk_lab::config::{output_root, parse_config};
use nsk_lab::experiment::{RunManifest, RunStatus};
use nsk_lab::{inspect, report, sweep, LabError};

#[derive(Parser)]
#[command(
    name = "nsklab",
    version,
    about = "Navier-Stokes–Korteweg numerical laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment.
    Run { config: PathBuf },
    /// Run every `*.ini` configuration in a directory concurrently.
    Sweep { config_dir: PathBuf },
    /// Summarise run manifests (files or run directories).
    Report {
        #[arg(required = true)]
        manifests: Vec<PathBuf>,
        /// Directory for summary files; defaults to `report` under the output root.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit a stored snapshot.
    Audit {
        snapshot: PathBuf,
        /// Adiabatic exponent; enables the potential-energy audits.
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

fn describe(m: &RunManifest) {
    match &m.status {
        RunStatus::Completed => println!(
            "{}: completed, {}/{} audits passed ({} hard failures)",
            m.directory.display(),
            m.audits_passed,
            m.audits_total,
            m.hard_failures
        ),
        RunStatus::SolverAbort { t, message } => {
            println!(
                "{}: solver aborted at t = {t}: {message}",
                m.directory.display()
            )
        }
    }
    for w in &m.warnings {
        println!("  warning: {w}");
    }
}

fn fail(e: &LabError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Run { config } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    return fail(&LabError::Io {
                        path: config,
                        message: e.to_string(),
                    })
                }
            };
            let cfg = match parse_config(&text) {
                Ok(c) => c,
                Err(source) => {
                    return fail(&LabError::Config {
                        path: config,
                        source,
                    })
                }
            };
            match nsk_lab::run_experiment(&cfg) {
                Ok(m) => {
                    describe(&m);
                    m.exit_code
                }
                Err(e) => fail(&e),
            }
        }
        Command::Sweep { config_dir } => {
            let configs = match sweep::load_configs(&config_dir) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let cfgs: Vec<_> = configs.into_iter().map(|(_, c)| c).collect();
            match sweep::sweep(&cfgs, &output_root()) {
                Ok(results) => {
                    let mut code = 0;
                    for r in results {
                        let c = match r {
                            Ok(m) => {
                                describe(&m);
                                m.exit_code
                            }
                            Err(e) => fail(&e),
                        };
                        code = code.max(c);
                    }
                    code
                }
                Err(e) => fail(&e),
            }
        }
        Command::Report { manifests, out } => {
            let out = out.unwrap_or_else(|| output_root().join("report"));
            match report::report(&manifests, &out) {
                Ok(ms) => {
                    print!("{}", report::summary_text(&ms));
                    println!("summary written to {}", out.display());
                    0
                }
                Err(e) => fail(&e),
            }
        }
        Command::Audit { snapshot, gamma } => match inspect::audit_snapshot(&snapshot, gamma) {
            Ok(rows) => {
                let mut code = 0;
                for r in rows {
                    println!("{}{}", r.report, if r.hard { "" } else { " [soft]" });
                    if r.hard && !r.report.pass {
                        code = 1;
                    }
                }
                code
            }
            Err(e) => fail(&e),
        },
        Command::Selftest => {
            let mut code = 0;
            for c in nsk_core::selftest::run_all() {
                println!(
                    "[{}] {}: {}",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    c.detail
                );
                if !c.pass {
                    code = 1;
                }
            }
            code
        }
    }
}

fn main() -> ExitCode {
    let code = run(Cli::parse());
    ExitCode::from(code as u8)
}
