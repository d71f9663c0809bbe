//! Runs a JSON scenario end to end, the same way the `pplab` binary does,
//! and writes the report and trajectory CSVs into a directory.
//!
//!     cargo run --example scenario_report -- scenarios/beverton_holt_seasonal.json out/

use std::path::PathBuf;

use pplab::cli::{execute, Command};

fn main() {
    let mut args = std::env::args().skip(1);
    let scenario = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/pielou_two_cycle.json"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/scenario_report".into()));
    std::fs::create_dir_all(&out).expect("create output directory");

    let exec = match execute(Command::Full, &scenario, Some(&out), None) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    let r = &exec.report;
    println!("{}: {}", scenario.display(), r.classification.dynamics.as_str());
    if let Some(orbit) = &r.orbit {
        println!("cycle {:?}", orbit.values);
    }
    if let Some(v) = &r.verification {
        println!("verification: max deviation {:e} (tol {:e})", v.max_deviation, v.tol);
    }
    for d in &r.diagnostics {
        println!("note: {d}");
    }
    for p in &exec.written {
        println!("wrote {}", p.display());
    }
    std::process::exit(exec.exit_code);
}
