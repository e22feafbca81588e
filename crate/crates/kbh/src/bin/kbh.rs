//! Command-line front end. Exit codes: 0 success, 1 internal assertion
//! failure, 2 bad arguments or unparsable input, 3 verification-suite
//! mismatch.

use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use kbh::diagram::{builtin, orient, parse_braid, parse_pd, OrientedDiagram};
use kbh::report::{self, InvariantReport, VerifyEcho};
use kbh::twocomplex::verify_complex;
use kbh::verify::{run_suite, SuiteConfig, SuiteMove};

#[derive(Parser)]
#[command(name = "kbh", version, about = "Kauffman bracket homology of framed and oriented links")]
struct Cli {
    /// Cap the worker threads (default: all cores; KBH_THREADS also works)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit the report as JSON instead of a text table
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in the report
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// A diagram from the catalog (see `kbh catalog`)
    #[arg(long)]
    name: Option<String>,
    /// A PD code, `PD[X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)]`
    #[arg(long)]
    pd: Option<String>,
    /// A braid closure, `BR[2; 1 1 1]`
    #[arg(long)]
    braid: Option<String>,
}

impl Input {
    fn resolve(&self) -> Result<(OrientedDiagram, Option<&str>), String> {
        if let Some(name) = &self.name {
            return builtin(name).map(|od| (od, Some(name.as_str()))).map_err(|e| e.to_string());
        }
        if let Some(text) = &self.pd {
            let d = parse_pd(text).map_err(|e| e.to_string())?;
            return orient(&d).map(|od| (od, None)).map_err(|e| e.to_string());
        }
        let text = self.braid.as_deref().expect("clap requires one input");
        parse_braid(text).map(|od| (od, None)).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Kauffman bracket, the unnormalized state sum, and Kauffman's f
    Bracket(Input),
    /// Framed homology table, FKh polynomial, Euler characteristic
    Framed(Input),
    /// Oriented homology table; its Euler characteristic must equal f
    Oriented(Input),
    /// Classical Khovanov homology table and Poincaré polynomial
    Khovanov(Input),
    /// Regroup the classical theory and compare it with the oriented one
    Compare(Input),
    /// Randomized move-invariance suites
    Verify {
        /// Comma list out of r1, r1+, r1-, r2, r3, reorder
        #[arg(long, default_value = "r1,r2,r3,reorder")]
        moves: String,
        #[arg(long, default_value_t = 25)]
        trials: u32,
        #[arg(long, default_value_t = 8)]
        max_crossings: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the built-in diagrams
    Catalog,
}

/// Exit 1 material: a computed structure violating an identity the library
/// promises, as opposed to bad input (2) or a failed random suite (3).
fn internal_checks(cmd: &Cmd, od: &OrientedDiagram, report: &InvariantReport) -> Result<(), String> {
    match cmd {
        Cmd::Framed(_) | Cmd::Oriented(_) if od.diagram.n() <= 10 => {
            let x = kbh::framedcube::build_framed_complex(&od.diagram);
            if !verify_complex(&x) {
                return Err("the state cube is not a 2-complex".to_string());
            }
        }
        _ => {}
    }
    if let Cmd::Oriented(_) = cmd {
        if report.euler != report.f {
            return Err(format!(
                "Euler characteristic {:?} of the oriented complex does not match f {:?}",
                report.euler, report.f
            ));
        }
    }
    if let Some(c) = &report.compare {
        if !c.matches || !c.mod4_consistent {
            return Err("the regrouped classical theory disagrees with the oriented one".to_string());
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(InvariantReport, ExitCode), (String, ExitCode)> {
    let bad_input = |e: String| (e, ExitCode::from(2));
    let started = Instant::now();
    let mut exit = ExitCode::SUCCESS;

    let mut report = match &cli.cmd {
        Cmd::Bracket(input) => {
            let (od, _) = input.resolve().map_err(bad_input)?;
            report::bracket_report(&od)
        }
        Cmd::Framed(input) => {
            let (od, name) = input.resolve().map_err(bad_input)?;
            let r = report::framed_report(&od, name);
            internal_checks(&cli.cmd, &od, &r).map_err(|e| (e, ExitCode::from(1)))?;
            r
        }
        Cmd::Oriented(input) => {
            let (od, _) = input.resolve().map_err(bad_input)?;
            let r = report::oriented_report(&od);
            internal_checks(&cli.cmd, &od, &r).map_err(|e| (e, ExitCode::from(1)))?;
            r
        }
        Cmd::Khovanov(input) => {
            let (od, name) = input.resolve().map_err(bad_input)?;
            report::khovanov_report(&od, name)
        }
        Cmd::Compare(input) => {
            let (od, _) = input.resolve().map_err(bad_input)?;
            let r = report::compare_report(&od);
            internal_checks(&cli.cmd, &od, &r).map_err(|e| (e, ExitCode::from(1)))?;
            r
        }
        Cmd::Verify { moves, trials, max_crossings, seed } => {
            let parsed = SuiteMove::parse_list(moves)
                .ok_or_else(|| bad_input(format!("unknown move list {moves:?}")))?;
            let labels = parsed.iter().map(|m| m.label().to_string()).collect();
            let out = run_suite(&SuiteConfig {
                moves: parsed,
                trials: *trials,
                max_crossings: *max_crossings,
                seed: *seed,
            });
            if !out.failures.is_empty() {
                exit = ExitCode::from(3);
            }
            InvariantReport {
                command: "verify".to_string(),
                verify: Some(VerifyEcho {
                    moves: labels,
                    trials: out.trials,
                    max_crossings: *max_crossings,
                    seed: *seed,
                    checks: out.checks,
                    failures: out.failures,
                }),
                ..Default::default()
            }
        }
        Cmd::Catalog => report::catalog_report(),
    };

    if cli.timings {
        report.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    Ok((report, exit))
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let threads = cli
        .threads
        .or_else(|| std::env::var("KBH_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }

    match panic::catch_unwind(|| run(&cli)) {
        Ok(Ok((report, exit))) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", report::render_text(&report));
            }
            exit
        }
        Ok(Err((msg, code))) => {
            eprintln!("kbh: {msg}");
            code
        }
        Err(_) => {
            eprintln!("kbh: internal assertion failure");
            ExitCode::from(1)
        }
    }
}
