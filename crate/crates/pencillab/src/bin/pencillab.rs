//! Command-line front end: analyze, reduce, isotopy, count, verify.
//!
//! Exit codes: 0 success, 2 parse/usage, 3 malformed or singular pencil,
//! 4 invalid subspace, 5 bad reduction mod p, 6 enumeration ceiling,
//! 7 property failure, 8 internal inconsistency, 9 unsupported request.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use pencillab::pencil::LinearSubspace;
use pencillab::{battery, fforacle, pencil, report, verdict, Error};

#[derive(Parser)]
#[command(
    name = "pencillab",
    version,
    about = "Exact analysis of pencils of two quadrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a pencil file: smoothness, degeneracy roots,
    /// signature walk, invariant, height/frequency, verdict table.
    Analyze {
        pencil: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit the defining equations of the reduced fibration with respect
    /// to a plane on the base locus; --at adds specialized fibers.
    Reduce {
        pencil: PathBuf,
        plane: PathBuf,
        /// Parameter points "s/t" (t = 1 implied) or "inf"; repeatable.
        #[arg(long = "at")]
        at: Vec<String>,
    },
    /// Isotopy classification table for ambient dimension N.
    Isotopy {
        n: usize,
        /// Comma-separated predicates: h=K, h<=K, f=K, f>K,
        /// f<r>-real-point, q<r>-connected, f<r>-rational,
        /// f<r>-unirational, x-... (level 0), each negatable with '!'.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Finite-field census of r-planes on the base locus mod a prime.
    Count {
        pencil: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        r: usize,
        /// Reference plane file; enables the partition, the reduction
        /// bijection counts, and (when applicable) the reduced-scheme
        /// length.
        #[arg(long)]
        ell: Option<PathBuf>,
        /// Field extension degree for the length count (1 or 2).
        #[arg(long, default_value = "2")]
        ext: u32,
        /// Search for one plane instead of running the full census.
        #[arg(long)]
        find_plane: bool,
        #[arg(long, default_value = "0")]
        seed: u64,
    },
    /// Run the seeded property batteries.
    Verify {
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, default_value = "50")]
        trials: u64,
        /// Worker threads for the parallel batteries (0 = all cores).
        #[arg(long, default_value = "0")]
        jobs: usize,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 2,
        Error::Shape(_) | Error::ZeroForm | Error::NotSquarefree | Error::SingularMatrix => 2,
        Error::MalformedPencil | Error::SingularPencil { .. } => 3,
        Error::RankDeficientBasis | Error::PlaneNotOnPencil | Error::DegenerateConfiguration(_) => {
            4
        }
        Error::MalformedInvariant(_) => 2,
        Error::BadReduction { .. } => 5,
        Error::CeilingExceeded { .. } => 6,
        Error::Unsupported(_) => 9,
        Error::Internal(_) => 8,
    }
}

fn read_file(path: &PathBuf) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze { pencil, format } => {
            let bytes = read_file(&pencil)?;
            let report = report::analyze(&bytes)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                ),
                Format::Text => print!("{}", report::analysis_text(&report)),
            }
            Ok(())
        }
        Command::Reduce { pencil, plane, at } => {
            let p = report::pencil_from_json(&read_file(&pencil)?)?;
            let ell = report::subspace_from_json(&read_file(&plane)?)?;
            let reduced = pencil::hyperbolic_reduce(&p, &ell)?;
            let mut doc = serde_json::to_value(report::reduced_pencil_to_file(&reduced))
                .expect("serializable");
            if !at.is_empty() {
                let mut fibers = Vec::new();
                for spec in &at {
                    let (s, t) = report::parse_parameter_point(spec)?;
                    let fiber = pencil::reduced_fiber(&p, &ell, &s, &t)?;
                    fibers.push(report::fiber_to_json(&fiber));
                }
                doc.as_object_mut().expect("object").insert(
                    "fibers".to_string(),
                    serde_json::to_value(fibers).expect("serializable"),
                );
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
            Ok(())
        }
        Command::Isotopy { n, filter, format } => {
            let mut table = verdict::table_for_n(n)?;
            if let Some(expr) = &filter {
                let preds = verdict::parse_predicates(expr)?;
                table.classes.retain(|c| verdict::class_matches(c, &preds));
            }
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&table).expect("serializable")
                ),
                Format::Text => print!("{}", report::classification_text(&table)),
            }
            Ok(())
        }
        Command::Count {
            pencil,
            prime,
            r,
            ell,
            ext,
            find_plane,
            seed,
        } => {
            if ext != 1 && ext != 2 {
                return Err(Error::Unsupported("--ext must be 1 or 2".into()));
            }
            let p = report::pencil_from_json(&read_file(&pencil)?)?;
            let fp = fforacle::FqPencil::reduce(&p, prime)?;
            let ceiling = fforacle::enumeration_ceiling();
            if find_plane {
                let found = fforacle::find_plane(&fp, r, seed, ceiling)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "prime": prime,
                        "r": r,
                        "found": found,
                    }))
                    .expect("serializable")
                );
                return Ok(());
            }
            let ell_parsed: Option<LinearSubspace> = match &ell {
                Some(path) => Some(report::subspace_from_json(&read_file(path)?)?),
                None => None,
            };
            let (census, bijection, length) = match &ell_parsed {
                None => (fforacle::census_planes(&fp, r, None, ceiling)?, None, None),
                Some(ell) => {
                    if !pencil::contains_subspace(&p, ell)? {
                        return Err(Error::PlaneNotOnPencil);
                    }
                    // Work in coordinates adapted to the plane so the
                    // census and the reduced fibration agree exactly.
                    let sp = pencil::to_standard_position(&p, ell)?;
                    let rp = fforacle::ReducedModP::new(&sp, prime)?;
                    let census = fforacle::census_planes(
                        &rp.ambient,
                        r,
                        Some(&rp.standard_plane()),
                        ceiling,
                    )?;
                    let bijection = if r == ell.r() {
                        Some(fforacle::check_reduction_bijection(&rp)?)
                    } else {
                        None
                    };
                    let n = p.ambient_dim();
                    let length = if ext == 2 && n % 2 == 0 && ell.r() == n / 2 - 1 {
                        Some(fforacle::reduced_scheme_length(&rp)?)
                    } else {
                        None
                    };
                    (census, bijection, length)
                }
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report::census_to_json(&census, bijection, length))
                    .expect("serializable")
            );
            Ok(())
        }
        Command::Verify { seed, trials, jobs } => {
            if jobs > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build_global()
                    .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            }
            if trials == 0 {
                eprintln!("warning: trials = 0, every property passes vacuously");
            }
            let outcomes = battery::run_all(seed, trials);
            let mut failed = false;
            for o in &outcomes {
                if o.passed() {
                    println!("PASS {} ({} checks)", o.name, o.trials);
                } else {
                    failed = true;
                    println!("FAIL {} ({} checks)", o.name, o.trials);
                    for f in &o.failures {
                        println!("     {f}");
                    }
                }
            }
            if failed {
                std::process::exit(7);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
