use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use so32_legendre::algebra::{
    commutator, generate_mode, identify, lookup, spectrum, GeneratorName, Identification, Parity,
    SparseOperator, SpectrumConstraint,
};
use so32_legendre::io::{
    read_json, to_json_string, CoeffFile, Coefficients, FieldFile, GridFile, SpectrumFile,
};
use so32_legendre::quadrature::gauss_legendre;
use so32_legendre::sphere::{sht_analyze, sht_synthesize, SphereGrid};
use so32_legendre::transforms::{analyze, synthesize};
use so32_legendre::verify::{run_suite, Suite, VerifyParams, DEFAULT_SEED};
use so32_legendre::{eval_t, eval_t_derivative, Error, Result, Truncation};

#[derive(Parser)]
#[command(name = "so32", version, about = "so(3,2) ladder algebra on associated Legendre functions")]
struct Cli {
    /// Suppress informational output on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate T_l^m(x) or one of its derivatives.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// 0 for the value, 1 for d/dx.
        #[arg(long, default_value_t = 0)]
        derivative: u8,
    },
    /// CSV table `l,m,x,T,dT` on Gauss nodes for every mode up to `--lmax`.
    Table {
        #[arg(long)]
        lmax: i64,
        #[arg(long, default_value_t = 8)]
        nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a generator to a coefficient file.
    Apply {
        #[arg(long)]
        op: GeneratorName,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute `[a, b]` on the truncated lattice and identify the result.
    Commutator {
        #[arg(long)]
        a: GeneratorName,
        #[arg(long)]
        b: GeneratorName,
        #[arg(long)]
        lmax: i64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build |l,m> from the vacuum with raising operators.
    Generate {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        lmax: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sorted distinct eigenvalues of a diagonal generator.
    Spectrum {
        #[arg(long)]
        op: GeneratorName,
        #[arg(long)]
        lmax: i64,
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["fix_m", "parity"])]
        fix_l: Option<i64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "parity")]
        fix_m: Option<i64>,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
    },
    /// Single-channel Legendre transforms.
    Transform {
        #[command(subcommand)]
        dir: TransformCmd,
    },
    /// Spherical harmonic transforms.
    Sht {
        #[command(subcommand)]
        dir: ShtCmd,
    },
    /// Run a verification suite; exit status 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum ParityArg {
    LPlusMEven,
    LPlusMOdd,
    LMinusMEven,
    LMinusMOdd,
}

#[derive(Subcommand)]
enum TransformCmd {
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long)]
        lmax: i64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Synthesize {
        #[arg(long)]
        nodes: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ShtCmd {
    Analyze {
        #[arg(long)]
        ntheta: Option<usize>,
        #[arg(long)]
        nphi: Option<usize>,
        #[arg(long)]
        lmax: i64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Synthesize {
        #[arg(long)]
        ntheta: usize,
        #[arg(long)]
        nphi: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 12)]
    lmax: i64,
    #[arg(long, default_value_t = 32)]
    nodes: usize,
    /// Override every per-check tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct CommutatorReport {
    a: GeneratorName,
    b: GeneratorName,
    l_max: i64,
    validity_window: i64,
    tolerance: f64,
    identified_as: Option<Identification>,
    table_identity: Option<String>,
    table_deviation: Option<f64>,
}

/// Writes to `path`, or stdout when absent.
fn emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn info(quiet: bool, msg: impl AsRef<str>) {
    if !quiet {
        eprintln!("{}", msg.as_ref());
    }
}

enum Outcome {
    Ok,
    NumericalFailure,
}

fn run(cli: Cli) -> Result<Outcome> {
    let quiet = cli.quiet;
    match cli.command {
        Command::Eval { l, m, x, derivative } => {
            let v = match derivative {
                0 => eval_t(l, m, x)?,
                1 => eval_t_derivative(l, m, x)?,
                d => return Err(Error::Usage(format!("derivative order {d} not supported (0 or 1)"))),
            };
            println!("{v:?}");
        }
        Command::Table { lmax, nodes, out } => {
            let t = Truncation::new(lmax)?;
            let rule = gauss_legendre(nodes)?;
            let mut csv = String::from("l,m,x,T,dT\n");
            for md in t.lattice() {
                for &x in rule.nodes() {
                    let v = eval_t(md.l, md.m, x)?;
                    let d = eval_t_derivative(md.l, md.m, x)?;
                    csv.push_str(&format!("{},{},{x:?},{v:?},{d:?}\n", md.l, md.m));
                }
            }
            emit(&out, &csv)?;
        }
        Command::Apply { op, input, out } => {
            let file: CoeffFile = read_json(&input)?;
            let result = match file.decode()? {
                Coefficients::Real(v) => {
                    let w = SparseOperator::generator(op, v.truncation()).apply(&v)?;
                    (CoeffFile::from_real(&w), w.overflowed())
                }
                Coefficients::Complex(v) => {
                    let w = SparseOperator::generator(op, v.truncation()).apply(&v)?;
                    (CoeffFile::from_complex(&w), w.overflowed())
                }
            };
            if result.1 {
                info(quiet, "warning: result lost weight beyond l_max");
            }
            emit(&out, &to_json_string(&result.0)?)?;
        }
        Command::Commutator { a, b, lmax, tol, report } => {
            let t = Truncation::new(lmax)?;
            let c = commutator(&SparseOperator::generator(a, t), &SparseOperator::generator(b, t))?;
            let window = c.valid_l_max();
            let ident = identify(&c, window, tol)?;
            let table = lookup(a, b);
            let table_deviation = match table {
                Some((id, _)) => Some(id.deviation(t, window)?),
                None => None,
            };
            let table_identity = table.map(|(id, flipped)| {
                if flipped {
                    format!("[{a},{b}] = -({})", id.rhs_string())
                } else {
                    id.statement()
                }
            });
            println!(
                "[{a},{b}] = {}",
                ident
                    .as_ref()
                    .map(|i| i.describe())
                    .unwrap_or_else(|| "not a multiple of a single generator".into())
            );
            let rep = CommutatorReport {
                a,
                b,
                l_max: lmax,
                validity_window: window,
                tolerance: tol,
                identified_as: ident,
                table_identity,
                table_deviation,
            };
            if report.is_some() {
                emit(&report, &to_json_string(&rep)?)?;
            }
        }
        Command::Generate { l, m, lmax, out } => {
            let t = Truncation::new(lmax)?;
            let v = generate_mode(l, m, t)?;
            let dev = v.sub(&so32_legendre::CoeffVector::unit(t, l, m)?)?.norm();
            info(quiet, format!("|generated - unit| = {dev:e}"));
            emit(&out, &to_json_string(&CoeffFile::from_real(&v.pruned(1e-14)))?)?;
        }
        Command::Spectrum { op, lmax, fix_l, fix_m, parity } => {
            let constraint = match (fix_l, fix_m, parity) {
                (Some(l), _, _) => SpectrumConstraint::FixedL(l),
                (_, Some(m), _) => SpectrumConstraint::FixedM(m),
                (_, _, Some(ParityArg::LPlusMEven)) => SpectrumConstraint::LPlusM(Parity::Even),
                (_, _, Some(ParityArg::LPlusMOdd)) => SpectrumConstraint::LPlusM(Parity::Odd),
                (_, _, Some(ParityArg::LMinusMEven)) => SpectrumConstraint::LMinusM(Parity::Even),
                (_, _, Some(ParityArg::LMinusMOdd)) => SpectrumConstraint::LMinusM(Parity::Odd),
                _ => SpectrumConstraint::All,
            };
            let values = spectrum(op, Truncation::new(lmax)?, constraint)?;
            println!("{}", serde_json::to_string(&values)?);
        }
        Command::Transform { dir } => match dir {
            TransformCmd::Analyze { m, lmax, input, out } => {
                let grid = read_json::<GridFile, _>(&input)?.decode()?;
                if let Some(m) = m {
                    if m != grid.m {
                        return Err(Error::Usage(format!("--m {m} does not match grid file m = {}", grid.m)));
                    }
                }
                let spec = analyze(&grid, lmax)?;
                emit(&out, &to_json_string(&SpectrumFile::from_spectrum(&spec))?)?;
            }
            TransformCmd::Synthesize { nodes, input, out } => {
                let spec = read_json::<SpectrumFile, _>(&input)?.decode()?;
                let grid = synthesize(&spec, &gauss_legendre(nodes)?)?;
                emit(&out, &to_json_string(&GridFile::from_grid(&grid))?)?;
            }
        },
        Command::Sht { dir } => match dir {
            ShtCmd::Analyze { ntheta, nphi, lmax, input, out } => {
                let field = read_json::<FieldFile, _>(&input)?.decode()?;
                if ntheta.is_some_and(|n| n != field.grid.n_theta()) || nphi.is_some_and(|n| n != field.grid.n_phi) {
                    return Err(Error::Usage("grid flags do not match the field file".into()));
                }
                let coeffs = sht_analyze(&field, lmax)?;
                emit(&out, &to_json_string(&CoeffFile::from_complex(&coeffs))?)?;
            }
            ShtCmd::Synthesize { ntheta, nphi, input, out } => {
                let coeffs = match read_json::<CoeffFile, _>(&input)?.decode()? {
                    Coefficients::Real(v) => v.to_complex(),
                    Coefficients::Complex(v) => v,
                };
                let field = sht_synthesize(&coeffs, &SphereGrid::new(ntheta, nphi)?)?;
                emit(&out, &to_json_string(&FieldFile::from_field(&field))?)?;
            }
        },
        Command::Verify(args) => {
            let params = VerifyParams {
                l_max: args.lmax,
                nodes: args.nodes,
                tol: args.tol,
                seed: args.seed,
            };
            let report = run_suite(args.suite, &params)?;
            let text = to_json_string(&report)?;
            match &args.out {
                Some(_) => emit(&args.out, &text)?,
                None if !quiet => emit(&None, &text)?,
                None => {}
            }
            let failed: Vec<_> = report.failures().collect();
            for c in &failed {
                info(quiet, format!("FAIL {}: deviation {:e} > {:e}", c.id, c.max_deviation, c.tolerance));
            }
            info(
                quiet,
                format!(
                    "{}: {}/{} checks passed",
                    report.suite,
                    report.checks.len() - failed.len(),
                    report.checks.len()
                ),
            );
            if !report.pass {
                return Ok(Outcome::NumericalFailure);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::NumericalFailure) => ExitCode::from(1),
        Err(Error::Domain(msg)) if msg.starts_with("inadmissible") => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
