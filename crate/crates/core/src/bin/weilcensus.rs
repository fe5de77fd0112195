use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weilcensus::census::{self, default_sieve_y};
use weilcensus::galois::{count_l_cycles, weyl_order};
use weilcensus::hassewitt::{self, HyperellipticCurve};
use weilcensus::intpoly::IntPolynomial;
use weilcensus::report::{self, RunManifest};
use weilcensus::sieve::{self, SieveConfig};
use weilcensus::weilgroup::{derive_bounds, solve_constraints};
use weilcensus::weilpoly::WeilCoefficients;
use weilcensus::{Error, Result};

#[derive(Parser)]
#[command(name = "weilcensus", version, about = "Census of Weil polynomials over finite fields")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every point of the coefficient box.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        sieve_y: Option<u64>,
        #[arg(long)]
        slab_threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Censuses at q = (p^k)^n for n = 1..=n_max.
    Trend {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        sieve_y: Option<u64>,
        #[arg(long)]
        slab_threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Full classification of one coefficient vector.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Comma-separated a_1,...,a_g.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long)]
        sieve_y: Option<u64>,
    },
    /// Solve the exponent constraint system.
    Prop2 {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    #[command(subcommand)]
    Sieve(SieveCommand),
    #[command(subcommand)]
    Hassewitt(HasseWittCommand),
    #[command(subcommand)]
    Weylgroup(WeylCommand),
}

#[derive(Args)]
struct SieveArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    y: u64,
    #[arg(long, default_value_t = sieve::DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SieveArgs {
    fn config(&self) -> Result<SieveConfig> {
        Ok(SieveConfig::new(self.field.g, self.field.p, self.field.k, self.ell, self.y)?
            .with_sampling(sieve::DEFAULT_OMEGA_LIMIT, self.samples, self.seed))
    }
}

#[derive(Subcommand)]
enum SieveCommand {
    /// Both sides of the large-sieve variance inequality.
    Variance(SieveArgs),
    /// Mean ω(p')/p'^g over p' in [y/2, y] against C_ℓ/|W_2g|.
    Density(SieveArgs),
    /// ω(p') for every auxiliary prime up to y.
    Omega(SieveArgs),
    /// Exceptional-set reference magnitude next to the census count.
    Bound {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        sieve_y: Option<u64>,
    },
}

#[derive(Subcommand)]
enum HasseWittCommand {
    /// Matrix of y^2 = f(x) over F_p.
    Matrix {
        #[arg(long)]
        p: u64,
        /// Comma-separated coefficients of f, constant term first.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f: Vec<i64>,
    },
    /// Miller's criterion for y^2 = x^(2g+1) + x, with the matrix verdict.
    Parity {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: usize,
    },
    /// First ordinary member of T_{t,u}.
    #[command(name = "scan-T")]
    ScanT {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 10_000)]
        max_samples: u64,
    },
    /// Ordinarity table of S_u.
    #[command(name = "scan-S0")]
    ScanS0 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: usize,
    },
}

#[derive(Subcommand)]
enum WeylCommand {
    Order {
        #[arg(long)]
        g: usize,
    },
    Cycles {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        ell: usize,
    },
}

fn field_manifest(command: &str, f: &FieldArgs) -> RunManifest {
    RunManifest::new(command).param("g", f.g).param("p", f.p).param("k", f.k)
}

fn json<T: Serialize>(manifest: RunManifest, data: &T) -> Result<String> {
    report::to_json(&manifest, data)
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Census {
            field,
            sieve_y,
            slab_threads,
            format,
        } => {
            let q = field.p.checked_pow(field.k).unwrap_or(u64::MAX);
            let y = sieve_y.unwrap_or_else(|| default_sieve_y(q));
            let job = || census::run_census(field.g, field.p, field.k, y);
            let record = match slab_threads {
                Some(t) => census::run_census_with(field.g, field.p, field.k, y, *t)?,
                None => job()?,
            };
            let manifest = field_manifest("census", field).param("sieve_y", y);
            match format {
                Format::Csv => report::census_csv_string(&manifest, &[record]),
                Format::Json => json(manifest, &record),
            }
        }
        Command::Trend {
            field,
            n_max,
            sieve_y,
            slab_threads,
            format,
        } => {
            let series = match slab_threads {
                Some(t) => census::trend_with(field.g, field.p, field.k, *n_max, *sieve_y, *t)?,
                None => census::trend(field.g, field.p, field.k, *n_max, *sieve_y)?,
            };
            let mut manifest = field_manifest("trend", field).param("n_max", n_max);
            if let Some(y) = sieve_y {
                manifest = manifest.param("sieve_y", y);
            }
            match format {
                Format::Csv => report::census_csv_string(&manifest, &series.records),
                Format::Json => json(manifest, &series),
            }
        }
        Command::Classify { p, k, a, sieve_y } => {
            let w = WeilCoefficients::new(*p, *k, a.clone())?;
            let y = sieve_y.unwrap_or_else(|| default_sieve_y(w.q()));
            let a_text: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            let manifest = RunManifest::new("classify")
                .param("p", p)
                .param("k", k)
                .param("a", a_text.join(","))
                .param("sieve_y", y);
            json(manifest, &census::classify(&w, y))
        }
        Command::Prop2 { g, bound } => {
            #[derive(Serialize)]
            struct Out {
                system: weilcensus::weilgroup::ConstraintSystem,
                solutions: Vec<weilcensus::weilgroup::ExponentVector>,
            }
            let out = Out {
                system: derive_bounds(*g)?,
                solutions: solve_constraints(*g, *bound)?,
            };
            json(RunManifest::new("prop2").param("g", g).param("bound", bound), &out)
        }
        Command::Sieve(cmd) => match cmd {
            SieveCommand::Variance(args) => {
                let manifest = sieve_manifest("sieve variance", args);
                json(manifest, &sieve::variance_report(&args.config()?)?)
            }
            SieveCommand::Density(args) => {
                let manifest = sieve_manifest("sieve density", args);
                json(manifest, &sieve::density_report(&args.config()?)?)
            }
            SieveCommand::Omega(args) => {
                let manifest = sieve_manifest("sieve omega", args);
                json(manifest, &sieve::omega_table(&args.config()?)?)
            }
            SieveCommand::Bound { field, sieve_y } => {
                let q = field.p.checked_pow(field.k).unwrap_or(u64::MAX);
                let y = sieve_y.unwrap_or_else(|| default_sieve_y(q));
                let manifest = field_manifest("sieve bound", field).param("sieve_y", y);
                json(manifest, &census::exception_comparison(field.g, field.p, field.k, y)?)
            }
        },
        Command::Hassewitt(cmd) => match cmd {
            HasseWittCommand::Matrix { p, f } => {
                let curve = HyperellipticCurve::new(*p, IntPolynomial::from_i64(f))?;
                let matrix = hassewitt::hasse_witt(&curve);
                #[derive(Serialize)]
                struct Out {
                    genus: usize,
                    matrix: hassewitt::HasseWittMatrix,
                    determinant: u64,
                    ordinary: bool,
                }
                let out = Out {
                    genus: curve.genus(),
                    determinant: matrix.det(),
                    ordinary: matrix.is_invertible(),
                    matrix,
                };
                let coeffs: Vec<String> = f.iter().map(|c| c.to_string()).collect();
                json(
                    RunManifest::new("hassewitt matrix").param("p", p).param("f", coeffs.join(",")),
                    &out,
                )
            }
            HasseWittCommand::Parity { p, g } => {
                #[derive(Serialize)]
                struct Out {
                    parity: hassewitt::MillerParity,
                    comparison: hassewitt::MillerComparison,
                }
                let out = Out {
                    parity: hassewitt::miller_parity(*p, *g)?,
                    comparison: hassewitt::compare_miller(*p, *g)?,
                };
                json(RunManifest::new("hassewitt parity").param("p", p).param("g", g), &out)
            }
            HasseWittCommand::ScanT { p, g, max_samples } => json(
                RunManifest::new("hassewitt scan-T")
                    .param("p", p)
                    .param("g", g)
                    .param("max_samples", max_samples),
                &hassewitt::scan_family_t(*p, *g, *max_samples)?,
            ),
            HasseWittCommand::ScanS0 { p, g } => json(
                RunManifest::new("hassewitt scan-S0").param("p", p).param("g", g),
                &hassewitt::scan_family_s0(*p, *g)?,
            ),
        },
        Command::Weylgroup(cmd) => match cmd {
            WeylCommand::Order { g } => {
                if *g == 0 {
                    return Err(Error::InvalidParameter("g must be at least 1".into()));
                }
                json(
                    RunManifest::new("weylgroup order").param("g", g),
                    &weyl_order(*g).to_string(),
                )
            }
            WeylCommand::Cycles { g, ell } => json(
                RunManifest::new("weylgroup cycles").param("g", g).param("ell", ell),
                &count_l_cycles(*g, *ell)?,
            ),
        },
    }
}

fn sieve_manifest(command: &str, args: &SieveArgs) -> RunManifest {
    field_manifest(command, &args.field)
        .param("ell", args.ell)
        .param("y", args.y)
        .param("samples", args.samples)
        .with_seed(args.seed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| {
        let write = |w: &mut dyn Write| w.write_all(text.as_bytes());
        match &cli.out {
            Some(path) => File::create(path).and_then(|mut f| write(&mut f)),
            None => write(&mut std::io::stdout()),
        }
        .map_err(|e| Error::InvalidParameter(format!("cannot write output: {e}")))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_refusal() { 2 } else { 1 })
        }
    }
}
