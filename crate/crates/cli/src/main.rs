use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eigenid_core::bench::{self, BenchConfig, Task, Variant};
use eigenid_core::identity::{default_workers, Evaluation, DEFAULT_BATCH_SIZE};
use eigenid_core::matrix::{self, Distribution, FileFormat, MatrixSource};
use eigenid_core::verify::{self, VerifyStatus, DEFAULT_ORACLE_CAP};
use eigenid_core::{Engine, Error, IdentityConfig, SymmetricMatrix};

#[derive(Parser)]
#[command(
    name = "eigenid",
    version,
    about = "Eigenvector component magnitudes from eigenvalues"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Squared magnitude of component j of eigenvector i.
    Component {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(short = 'i', long = "eigen-index")]
        i: usize,
        #[arg(short = 'j', long = "component")]
        j: usize,
    },
    /// All squared magnitudes of eigenvector i.
    Vector {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(short = 'i', long = "eigen-index")]
        i: usize,
        /// Print the signed unit vector instead of squared magnitudes.
        #[arg(long)]
        signed: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The full matrix of squared magnitudes, rows = components, columns = eigenvectors.
    Full {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare all magnitudes with the Jacobi oracle.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Time identity variants against a full eigendecomposition.
    Bench(BenchArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MatrixFlags {
    /// Dense CSV matrix file.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// MatrixMarket symmetric coordinate file.
    #[arg(long, value_name = "PATH")]
    mm: Option<PathBuf>,
    /// Random symmetrized matrix of this size.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
}

#[derive(Args)]
struct SourceArgs {
    #[command(flatten)]
    matrix: MatrixFlags,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "gaussian")]
    distribution: Distribution,
}

impl SourceArgs {
    fn source(&self) -> MatrixSource {
        let m = &self.matrix;
        if let Some(path) = &m.csv {
            MatrixSource::File {
                path: path.clone(),
                format: FileFormat::DenseCsv,
            }
        } else if let Some(path) = &m.mm {
            MatrixSource::File {
                path: path.clone(),
                format: FileFormat::MatrixMarket,
            }
        } else {
            MatrixSource::Random {
                seed: self.seed,
                distribution: self.distribution,
                n: m.random.expect("clap enforces one source"),
            }
        }
    }
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, default_value_t = DEFAULT_BATCH_SIZE)]
    batch_size: usize,
    /// Worker threads; defaults to the logical core count.
    #[arg(long, env = "EIGENID_WORKERS")]
    workers: Option<usize>,
    /// Evaluate products in the log domain.
    #[arg(long)]
    log_domain: bool,
    #[arg(long, default_value_t = eigenid_core::identity::DEFAULT_DEGENERACY_TOL)]
    degeneracy_tol: f64,
}

impl EngineArgs {
    fn config(&self) -> IdentityConfig {
        IdentityConfig {
            batch_size: self.batch_size,
            workers: self.workers.unwrap_or_else(default_workers),
            degeneracy_tol: self.degeneracy_tol,
            evaluation: if self.log_domain {
                Evaluation::LogDomain
            } else {
                Evaluation::PairedBatched
            },
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write results as CSV instead of printing them.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_SIZES.to_vec())]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = bench::DEFAULT_REPETITIONS)]
    repetitions: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "vectorized-batched,batched-parallel,oracle-full"
    )]
    variants: Vec<Variant>,
    #[arg(long, default_value = "single-component")]
    task: Task,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "gaussian")]
    distribution: Distribution,
    #[arg(long, default_value_t = DEFAULT_BATCH_SIZE)]
    batch_size: usize,
    #[arg(long, env = "EIGENID_WORKERS")]
    workers: Option<usize>,
    /// Per-run CSV output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Directory for per-task plot CSVs.
    #[arg(long, value_name = "DIR")]
    plot_dir: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// `%.12g`-style formatting.
fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{v:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    } else {
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exp}")
    }
}

fn load(source: &SourceArgs) -> Result<SymmetricMatrix, Failure> {
    Ok(matrix::generate(&source.source())?)
}

fn check_index(name: &str, index: usize, n: usize) -> Result<(), Failure> {
    if index >= n {
        return Err(Failure::Usage(format!(
            "{name} = {index} is out of range for a {n}x{n} matrix"
        )));
    }
    Ok(())
}

fn engine(args: &EngineArgs) -> Result<Engine, Failure> {
    Engine::new(args.config()).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(text: String, csv: String, output: &OutputArgs) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, csv).map_err(|e| Failure::Compute(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Component {
            source,
            engine: eargs,
            i,
            j,
        } => {
            let a = load(&source)?;
            check_index("i", i, a.n())?;
            check_index("j", j, a.n())?;
            let r = engine(&eargs)?.component_magnitude(&a, i, j, None, None)?;
            println!("{}", sig12(r.value));
        }
        Command::Vector {
            source,
            engine: eargs,
            i,
            signed,
            output,
        } => {
            let a = load(&source)?;
            check_index("i", i, a.n())?;
            let e = engine(&eargs)?;
            let values: Vec<f64> = e
                .vector_magnitudes(&a, i)?
                .iter()
                .map(|r| r.value)
                .collect();
            let values = if signed {
                let lambda = e.spectrum(&a)?[i];
                e.recover_signs(&a, i, &values, lambda)?
            } else {
                values
            };
            let text: String = values.iter().map(|v| format!("{}\n", sig12(*v))).collect();
            let csv: String = values.iter().map(|v| format!("{v:.16e}\n")).collect();
            emit(text, csv, &output)?;
        }
        Command::Full {
            source,
            engine: eargs,
            output,
        } => {
            let a = load(&source)?;
            let m = engine(&eargs)?.all_magnitudes(&a)?;
            let (mut text, mut csv) = (String::new(), String::new());
            for row in m.as_slice().chunks(m.n()) {
                let t: Vec<String> = row.iter().map(|v| sig12(*v)).collect();
                let c: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
                let _ = writeln!(text, "{}", t.join(" "));
                let _ = writeln!(csv, "{}", c.join(","));
            }
            emit(text, csv, &output)?;
        }
        Command::Verify {
            source,
            engine: eargs,
            oracle_cap,
        } => {
            let a = load(&source)?;
            match verify::verify(&a, &engine(&eargs)?, oracle_cap)? {
                VerifyStatus::Ok(s) => {
                    println!("status: OK");
                    println!("n: {}", s.n);
                    println!("max_abs_deviation: {:e}", s.max_deviation);
                    println!("max_row_sum_deviation: {:e}", s.max_row_sum_deviation);
                    println!("max_column_sum_deviation: {:e}", s.max_column_sum_deviation);
                    println!("interlacing_violations: {}", s.interlacing_violations);
                    println!("log_domain_fallbacks: {}", s.log_domain_fallbacks);
                }
                VerifyStatus::Degenerate { index, gap } => {
                    println!("status: DEGENERATE");
                    println!("eigenvalue_index: {index}");
                    println!("gap: {gap:e}");
                }
            }
        }
        Command::Bench(args) => {
            let cfg = BenchConfig {
                sizes: args.sizes,
                repetitions: args.repetitions,
                variants: args.variants,
                task: args.task,
                seed: args.seed,
                distribution: args.distribution,
                batch_size: args.batch_size,
                workers: args.workers.unwrap_or_else(default_workers),
                output_path: args.out,
            };
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let report = match bench::run_benchmark(&cfg) {
                Ok(r) => r,
                Err(e @ Error::VariantDisagreement { .. }) => {
                    println!("status: INVALID");
                    return Err(e.into());
                }
                Err(e) => return Err(e.into()),
            };
            match bench::speedup_table(&report) {
                Ok(table) => print!("{table}"),
                Err(Error::MissingReference) => {
                    println!("matrices: {}", report.matrices);
                    for m in &report.means {
                        println!(
                            "{} n={} {}: mean {:.6} s, stddev {:.6} s",
                            m.task, m.n, m.variant, m.mean_seconds, m.stddev_seconds
                        );
                    }
                }
                Err(e) => return Err(e.into()),
            }
            if let Some(dir) = args.plot_dir {
                for path in bench::emit_plot_data(&report, &dir)? {
                    eprintln!("wrote {}", path.display());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
