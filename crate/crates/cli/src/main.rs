use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use noncyc::cyclic::CyclicizerTable;
use noncyc::graph::{analyze, InvariantReport, NonCyclicGraph};
use noncyc::group::write_cayley_file;
use noncyc::harness::{summary_table, Catalog, Harness, DEFAULT_MAX_ORDER};
use noncyc::iso::{compare, CanonOptions};
use noncyc::{build, Error, GroupSpec};

const TIMEOUT_VAR: &str = "NONCYC_TIMEOUT_SECS";

/// Non-cyclic graphs of finite groups.
///
/// Group specs: Z4, Z2xZ4, EA(2,3), Ab(2,4), K(3,3), D8, Q16, G(3,3), H(4),
/// S5, A5, cayley:PATH, perm:DEG:(1,2,3),(1,2).
#[derive(Parser)]
#[command(name = "noncyc", version)]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and print its order, element orders and maximal element orders.
    Build { spec: GroupSpec },

    /// Print the invariant report of the non-cyclic graph.
    Analyze {
        spec: GroupSpec,
        /// CSV instead of JSON.
        #[arg(long)]
        csv: bool,
        /// Also write the graph in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Include elapsed_ms.
        #[arg(long)]
        timing: bool,
    },

    /// Decide whether two groups have isomorphic non-cyclic graphs.
    Compare {
        a: GroupSpec,
        b: GroupSpec,
        /// Include elapsed_ms.
        #[arg(long)]
        timing: bool,
    },

    /// Run the theorem checks over a catalog.
    Verify {
        /// Run only this check.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Catalog file (`label = spec` per line) instead of the standard one.
        #[arg(long, value_name = "FILE")]
        catalog: Option<PathBuf>,
        /// JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },

    /// Write the non-cyclic graph in DOT format.
    ExportDot { spec: GroupSpec, path: PathBuf },

    /// Write the Cayley table file.
    ExportCayley { spec: GroupSpec, path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("--jobs must be positive");
            return ExitCode::from(2);
        }
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(if matches!(e, Error::UnknownCheck(_)) {
                2
            } else {
                1
            })
        }
    }
}

fn canon_options() -> Result<CanonOptions, Error> {
    let mut opts = CanonOptions::default();
    if let Ok(v) = env::var(TIMEOUT_VAR) {
        let secs: u64 = v.trim().parse().map_err(|_| {
            Error::InvalidParameter(format!(
                "{TIMEOUT_VAR}={v} is not a whole number of seconds"
            ))
        })?;
        opts.timeout = Some(Duration::from_secs(secs));
    }
    Ok(opts)
}

// a closed pipe (`| head`) is not an error worth a panic
fn emit(s: &str) {
    let _ = io::stdout().lock().write_all(s.as_bytes());
}

fn print_json(v: &impl serde::Serialize) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Build { spec } => {
            let g = build(&spec)?;
            print_json(&json!({
                "group": g.name(),
                "order": g.order(),
                "exponent": g.exponent(),
                "pi_e": g.pi_e(),
                "mu": g.mu(),
                "center_order": g.center().order(),
                "abelian": g.is_abelian(),
                "cyclic": g.is_cyclic(),
            }));
        }
        Command::Analyze {
            spec,
            csv,
            dot,
            timing,
        } => {
            let start = Instant::now();
            let g = build(&spec)?;
            let a = analyze(&g)?;
            if let Some(path) = dot {
                fs::write(path, a.graph.to_dot())?;
            }
            if csv {
                emit(&InvariantReport::to_csv(std::slice::from_ref(&a.report)));
            } else {
                let mut v = serde_json::to_value(&a.report).expect("serializable");
                if timing {
                    v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
                }
                print_json(&v);
            }
        }
        Command::Compare { a, b, timing } => {
            let opts = canon_options()?;
            let (ga, gb) = (build(&a)?, build(&b)?);
            let (ta, tb) = (CyclicizerTable::new(&ga), CyclicizerTable::new(&gb));
            let (xa, xb) = (
                NonCyclicGraph::build(&ga, &ta)?,
                NonCyclicGraph::build(&gb, &tb)?,
            );
            let c = compare(
                xa.adjacency(),
                xa.labels(),
                xb.adjacency(),
                xb.labels(),
                &opts,
            )?;
            let mut v = serde_json::to_value(&c).expect("serializable");
            if !timing {
                if let Value::Object(m) = &mut v {
                    m.remove("elapsed_ms");
                }
            }
            print_json(&v);
        }
        Command::Verify {
            check,
            max_order,
            catalog,
            json,
        } => {
            let catalog = match catalog {
                Some(path) => Catalog::from_file(path)?.restricted(max_order),
                None => Catalog::standard(max_order),
            };
            let h = Harness::new(&catalog, canon_options()?)?;
            let results = match check {
                Some(name) => vec![h.run_check(&name)?],
                None => h.run_all(),
            };
            if json {
                print_json(&results);
            } else {
                let mut out = summary_table(&results);
                for r in results.iter().filter(|r| !r.pass) {
                    for c in &r.counterexamples {
                        let groups: Vec<String> = c
                            .groups
                            .iter()
                            .map(|g| format!("{} = {}", g.label, g.spec))
                            .collect();
                        out += &format!("{}: {}: {}\n", r.check, groups.join(", "), c.witness);
                    }
                }
                emit(&out);
            }
            if results.iter().any(|r| !r.pass) {
                return Ok(ExitCode::from(3));
            }
        }
        Command::ExportDot { spec, path } => {
            let g = build(&spec)?;
            let t = CyclicizerTable::new(&g);
            fs::write(path, NonCyclicGraph::build(&g, &t)?.to_dot())?;
        }
        Command::ExportCayley { spec, path } => {
            write_cayley_file(&build(&spec)?, path)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
