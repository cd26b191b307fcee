//! Command-line surface: the level-set pipeline, distances, the two
//! translation functors, convolution, SVG plots and the randomized selftest.

use clap::{Parser, Subcommand, ValueEnum};
use mvsheaf::extreal::parse_q;
use mvsheaf::json;
use mvsheaf::selftest;
use mvsheaf::{
    barcode_convolve, bottleneck_distance, levelset_mv, mv_interleaving_distance, psi_barcode,
    pushforward_barcode, verify_pointwise_dims, xi_system, Error,
};
use num_traits::Signed;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mvsheaf",
    version,
    about = "Level-sets persistence over the real line: block systems, sheaf barcodes, exact distances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceKind {
    Barcode,
    Mv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the pushforward barcode of a PL function on a mesh
    Levelset {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// also write the block system
        #[arg(long)]
        mv: Option<PathBuf>,
        /// verify pointwise dimensions on an N x N grid
        #[arg(long, value_name = "N")]
        verify_grid: Option<usize>,
    },
    /// Exact bottleneck / interleaving distance between two files
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "barcode")]
        kind: DistanceKind,
        /// cross-check a finite system distance against the brute-force
        /// interleaving oracle (small systems only)
        #[arg(long)]
        check_oracle: bool,
    },
    /// Translate a block system into its graded barcode
    Xi {
        system: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Translate a graded barcode into its block system
    Psi {
        barcode: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convolve a barcode with the interval kernel of the given radius
    Convolve {
        barcode: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a barcode as SVG
    Plot {
        barcode: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Run the randomized invariant suites
    Selftest {
        /// defaults to MVSHEAF_SEED from the environment, then 17
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 60)]
        cases: usize,
    },
}

fn fail(kind: &str, msg: &str, code: u8) -> ExitCode {
    eprintln!("error[{kind}]: {msg}");
    ExitCode::from(code)
}

fn fail_error(e: &Error) -> ExitCode {
    match e {
        Error::Malformed(_) | Error::InvalidInterval(_) | Error::InvalidBlock(_) => {
            fail("malformed", &e.to_string(), 2)
        }
        Error::Precondition(_) | Error::OutsideDomain(_) | Error::EmptyTrace => {
            fail("precondition", &e.to_string(), 3)
        }
        Error::BudgetExceeded(_) => fail("budget", &e.to_string(), 4),
    }
}

fn read(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path)
        .map_err(|e| fail("malformed", &format!("cannot read {}: {e}", path.display()), 2))
}

fn write(path: &Path, contents: &str) -> Result<(), ExitCode> {
    std::fs::write(path, contents)
        .map_err(|e| fail("io", &format!("cannot write {}: {e}", path.display()), 2))
}

fn run() -> Result<ExitCode, ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Levelset { mesh, out, mv, verify_grid } => {
            let f = json::mesh_from_json(&read(&mesh)?).map_err(|e| fail_error(&e))?;
            let barcode = pushforward_barcode(&f).map_err(|e| fail_error(&e))?;
            write(&out, &json::barcode_to_json(&barcode))?;
            let system = levelset_mv(&f).map_err(|e| fail_error(&e))?;
            if let Some(mv_path) = &mv {
                write(mv_path, &json::system_to_json(&system))?;
            }
            if let Some(n) = verify_grid {
                let grid = mvsheaf::levelset::verification_grid(&f, &system, n);
                let mismatches =
                    verify_pointwise_dims(&f, &system, &grid).map_err(|e| fail_error(&e))?;
                if mismatches.is_empty() {
                    println!("verified {} grid points: all dimensions match", grid.len());
                } else {
                    for m in &mismatches {
                        eprintln!("mismatch: {m}");
                    }
                    return Err(fail(
                        "verify",
                        &format!("{} pointwise mismatches", mismatches.len()),
                        1,
                    ));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Distance { a, b, kind, check_oracle } => {
            let d = match kind {
                DistanceKind::Barcode => {
                    let x = json::barcode_from_json(&read(&a)?).map_err(|e| fail_error(&e))?;
                    let y = json::barcode_from_json(&read(&b)?).map_err(|e| fail_error(&e))?;
                    bottleneck_distance(&x, &y)
                }
                DistanceKind::Mv => {
                    let x = json::system_from_json(&read(&a)?).map_err(|e| fail_error(&e))?;
                    let y = json::system_from_json(&read(&b)?).map_err(|e| fail_error(&e))?;
                    let d = mv_interleaving_distance(&x, &y);
                    if check_oracle {
                        if let mvsheaf::Distance::Finite(eps) = &d {
                            // interleaving at the infimum is attained on the
                            // section-normalized representatives
                            let xn = psi_barcode(&xi_system(&x));
                            let yn = psi_barcode(&xi_system(&y));
                            let ok = mvsheaf::mv_eps_interleaved_oracle(
                                &xn,
                                &yn,
                                eps,
                                &mvsheaf::OracleBudget::default(),
                            )
                            .map_err(|e| fail_error(&e))?;
                            if !ok {
                                return Err(fail(
                                    "verify",
                                    "oracle rejects an interleaving at the computed distance",
                                    1,
                                ));
                            }
                            eprintln!("oracle confirms an interleaving at {d}");
                        }
                    }
                    d
                }
            };
            println!("{d}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Xi { system, out } => {
            let s = json::system_from_json(&read(&system)?).map_err(|e| fail_error(&e))?;
            write(&out, &json::barcode_to_json(&xi_system(&s)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Psi { barcode, out } => {
            let b = json::barcode_from_json(&read(&barcode)?).map_err(|e| fail_error(&e))?;
            write(&out, &json::system_to_json(&psi_barcode(&b)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Convolve { barcode, eps, out } => {
            let b = json::barcode_from_json(&read(&barcode)?).map_err(|e| fail_error(&e))?;
            let eps = parse_q(&eps).map_err(|m| fail("malformed", &m, 2))?;
            if eps.is_negative() {
                return Err(fail("precondition", "convolution radius must be nonnegative", 3));
            }
            write(&out, &json::barcode_to_json(&barcode_convolve(&b, &eps)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { barcode, svg } => {
            let b = json::barcode_from_json(&read(&barcode)?).map_err(|e| fail_error(&e))?;
            write(&svg, &mvsheaf::svg::plot_barcode(&b))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { seed, cases } => {
            let seed = seed
                .or_else(|| std::env::var("MVSHEAF_SEED").ok().and_then(|s| s.parse().ok()))
                .unwrap_or(17);
            let results = selftest::run_all(seed, cases);
            let mut failed = 0;
            for r in &results {
                if r.passed() {
                    println!("PASS {} ({} cases)", r.name, r.cases);
                } else {
                    failed += 1;
                    println!("FAIL {} ({} cases, {} failures)", r.name, r.cases, r.failures.len());
                    for f in r.failures.iter().take(5) {
                        eprintln!("  {f}");
                    }
                }
            }
            if failed == 0 {
                println!("selftest: all {} suites passed", results.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Err(fail("selftest", &format!("{failed} suites failed"), 1))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(code) => code,
    }
}
