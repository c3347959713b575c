//! Command-line front end. Exit codes: 0 success, 1 domain error, 2 syntax
//! or usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algdecide::{decide, vandermonde_det, Certificate, DecideConfig, Verdict};
use crate::arith::cyclotomic::display_cyclotomic;
use crate::arith::{AbsClass, CyclotomicNumber, PrecisionBudget};
use crate::error::Error;
use crate::expr::parse_cyclotomic_expr;
use crate::guess::{guess_algebraic, guess_precurrence, AlgEquation};
use crate::json;
use crate::lineseries::{
    dump_prefix, load_prefix, lucas_decomposition, prefix, ratio_identity_check_with, LineSpec,
};
use crate::qcomb::{path_area_distribution, q_binomial, q_binomial_eval, QBinomialTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qpolya",
    version,
    about = "Exact q-binomial line series and their algebraicity"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    pub n: i64,
    pub k: i64,
    pub a: i64,
    pub b: i64,
}

impl LineArgs {
    fn spec(&self) -> Result<LineSpec, CliError> {
        Ok(LineSpec::new(self.n, self.k, self.a, self.b)?)
    }
}

#[derive(Debug, Args)]
pub struct QArgs {
    /// Order s of the cyclotomic field; `z` denotes ζ_s.
    #[arg(long, default_value_t = 1)]
    pub order: u64,
    /// Value of q as an expression in z.
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
}

impl QArgs {
    fn value(&self) -> Result<CyclotomicNumber, CliError> {
        Ok(parse_cyclotomic_expr(&self.q, self.order)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The q-binomial [n choose k]_q, or its value at q.
    Qbinom {
        n: i64,
        k: i64,
        #[arg(long, default_value_t = 1)]
        order: u64,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Leading coefficients of h_q(x).
    Series {
        #[command(flatten)]
        line: LineArgs,
        #[command(flatten)]
        q: QArgs,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Also write the prefix to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Decide whether h_q(x) is algebraic.
    Decide {
        #[command(flatten)]
        line: LineArgs,
        #[command(flatten)]
        q: QArgs,
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
        #[arg(long, default_value_t = 60)]
        verify: usize,
    },
    /// Guess an algebraic equation for a dumped prefix.
    GuessAlg {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dx: usize,
        #[arg(long)]
        dz: usize,
    },
    /// Guess a P-recurrence for a dumped prefix.
    GuessRec {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "d")]
        d: usize,
    },
    /// Area distribution of lattice paths to (x, y).
    Paths { x: usize, y: usize },
    /// Generalized Vandermonde determinant and its factorization.
    Vandermonde { d: usize },
    /// Check the coefficient ratio identity for j = 0..=jmax.
    CheckRatio {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, default_value_t = 10)]
        jmax: i64,
    },
    /// Split h_ω(x) by residue classes of the exponent mod s.
    LucasSplit {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, default_value_t = 1)]
        order: u64,
        /// The root of unity; defaults to ζ_s.
        #[arg(long, allow_hyphen_values = true, default_value = "z")]
        q: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_syntax() => 2,
            _ => 1,
        }
    }

    fn code(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Io(_) => "io_error",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Io(m) => m.clone(),
        }
    }
}

/// Output of one command in both renderings.
struct Report {
    text: String,
    json: Value,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let _ = match cli.format {
                Format::Text => writeln!(out, "{}", report.text),
                Format::Json => writeln!(out, "{}", report.json),
            };
            0
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Text => writeln!(err, "error[{}]: {}", e.code(), e.message()),
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"error": {"code": e.code(), "message": e.message()}})
                ),
            };
            e.exit_code()
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Qbinom { n, k, order, q } => qbinom(*n, *k, *order, q.as_deref()),
        Command::Series {
            line,
            q,
            terms,
            dump,
        } => {
            let p = prefix(&line.spec()?, &q.value()?, *terms)?;
            if let Some(path) = dump {
                std::fs::write(path, dump_prefix(&p))
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let text = p
                .terms
                .iter()
                .map(display_cyclotomic)
                .collect::<Vec<_>>()
                .join(", ");
            Ok(Report {
                text,
                json: json::series(&p),
            })
        }
        Command::Decide {
            line,
            q,
            max_deg,
            verify,
        } => {
            let config = DecideConfig {
                max_degree: *max_deg,
                verify_terms: *verify,
                precision: PrecisionBudget::from_env(),
                ..DecideConfig::default()
            };
            let v = decide(&line.spec()?, &q.value()?, &config)?;
            Ok(Report {
                text: verdict_text(&v),
                json: json::verdict(&v),
            })
        }
        Command::GuessAlg { input, dx, dz } => {
            let p = load_prefix(&read_file(input)?)?;
            let found = guess_algebraic(&p.terms, *dx, *dz)?;
            let bounds = json!({"dx": dx, "dz": dz, "terms": p.len()});
            Ok(match found {
                Some(eq) => Report {
                    text: equation_text(&eq),
                    json: json!({"found": true, "equation": json::equation(&eq), "bounds": bounds}),
                },
                None => Report {
                    text: format!("none up to (dx, dz) = ({dx}, {dz}) on {} terms", p.len()),
                    json: json!({"found": false, "bounds": bounds}),
                },
            })
        }
        Command::GuessRec { input, r, d } => {
            let p = load_prefix(&read_file(input)?)?;
            let found = guess_precurrence(&p.terms, *r, *d)?;
            let bounds = json!({"r": r, "d": d, "terms": p.len()});
            Ok(match found {
                Some(rec) => Report {
                    text: rec.to_string(),
                    json: json!({"found": true, "recurrence": json::recurrence(&rec), "bounds": bounds}),
                },
                None => Report {
                    text: format!("none up to (r, d) = ({r}, {d}) on {} terms", p.len()),
                    json: json!({"found": false, "bounds": bounds}),
                },
            })
        }
        Command::Paths { x, y } => {
            let dist = path_area_distribution(*x, *y)?;
            Ok(Report {
                text: dist.distribution.format_var("q"),
                json: json!({
                    "endpoint": [x, y],
                    "distribution": json::int_poly(&dist.distribution),
                    "text": dist.distribution.format_var("q"),
                }),
            })
        }
        Command::Vandermonde { d } => {
            let f = vandermonde_det(*d)?;
            Ok(Report {
                text: format!(
                    "det = {}\nfactored = {}",
                    f.det.format_var("z"),
                    f.factored()
                ),
                json: json::vandermonde(&f),
            })
        }
        Command::CheckRatio { line, jmax } => {
            let spec = line.spec()?;
            if *jmax < 0 {
                return Err(Error::InvalidArgument("jmax must be non-negative".into()).into());
            }
            let mut table = QBinomialTable::new();
            let mut results = Vec::new();
            for j in 0..=*jmax {
                results.push((j, ratio_identity_check_with(&spec, j, &mut table)?));
            }
            if let Some((j, _)) = results.iter().find(|(_, ok)| !ok) {
                return Err(
                    Error::Inconsistency(format!("ratio identity fails at j = {j}")).into(),
                );
            }
            Ok(Report {
                text: format!("ratio identity holds for j = 0..{jmax}"),
                json: json!({"spec": json::spec(&spec), "jmax": jmax, "holds": true}),
            })
        }
        Command::LucasSplit { line, order, q } => {
            let omega = parse_cyclotomic_expr(q, *order)?;
            let comps = lucas_decomposition(&line.spec()?, &omega)?;
            let text = comps
                .iter()
                .map(|c| {
                    format!(
                        "r={} scalar={} shifted=({}, {}) stride={}",
                        c.residue,
                        display_cyclotomic(&c.scalar),
                        c.shifted.0,
                        c.shifted.1,
                        c.stride
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                text,
                json: json!({"components": comps.iter().map(json::lucas_component).collect::<Vec<_>>()}),
            })
        }
    }
}

fn qbinom(n: i64, k: i64, order: u64, q: Option<&str>) -> Result<Report, CliError> {
    match q {
        None => {
            let p = q_binomial(n, k)?;
            Ok(Report {
                text: p.format_var("q"),
                json: json!({"n": n, "k": k, "poly": json::int_poly(&p), "text": p.format_var("q")}),
            })
        }
        Some(expr) => {
            let v = q_binomial_eval(n, k, &parse_cyclotomic_expr(expr, order)?)?;
            Ok(Report {
                text: display_cyclotomic(&v),
                json: json!({"n": n, "k": k, "value": json::cyclotomic(&v), "text": display_cyclotomic(&v)}),
            })
        }
    }
}

fn relation(c: AbsClass) -> &'static str {
    match c {
        AbsClass::Less => "< 1",
        AbsClass::Equal => "= 1",
        AbsClass::Greater => "> 1",
    }
}

fn equation_text(eq: &AlgEquation) -> String {
    format!("{eq} (verified to {} terms)", eq.verified_order)
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Algebraic {
            equation, bound, ..
        } => {
            format!("algebraic: {} at bound {bound}", equation_text(equation))
        }
        Verdict::Transcendental {
            certificate:
                Certificate::DegreeGrowth {
                    degree_poly,
                    abs_class,
                    ..
                },
        } => format!(
            "transcendental: degree growth, deg u_j = {}, |q| {}",
            degree_poly.format_var("j"),
            relation(*abs_class)
        ),
        Verdict::Transcendental {
            certificate:
                Certificate::NotRootOfUnity {
                    exponent,
                    abs_class,
                    searched,
                },
        } => {
            let mut s = format!(
                "transcendental: not a root of unity (q^{exponent} != 1), |q| {}",
                relation(*abs_class)
            );
            for g in searched {
                s.push_str(&format!(
                    "\n  no {} guess at ({}, {}) on {} terms",
                    g.kind.as_str(),
                    g.bounds.0,
                    g.bounds.1,
                    g.terms
                ));
            }
            s
        }
        Verdict::Undecided { max_degree, terms } => {
            format!("undecided: no equation up to ({max_degree}, {max_degree}) on {terms} terms")
        }
    }
}
