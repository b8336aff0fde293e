//! The `jdiv` command line.
//!
//! Every subcommand prints one JSON document (or CSV where offered) to
//! stdout or `--output`. Exit codes: 0 success, 2 invalid input or
//! arguments (with `{"error": ...}` on stderr), 64 unknown or missing
//! subcommand, 65 unreadable or unparsable input file, 74 output write
//! failure. `JG_TOLERANCE_SCALE` multiplies every check tolerance.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bounds;
use crate::classical::{self, Alpha, Distribution};
use crate::error::Error;
use crate::geometry::{self, DistanceMatrix, MENGER_MAX_POINTS};
use crate::io::{self, InputError, Points};
use crate::jensen::{self, WeightedFamily};
use crate::quantum::{self, DensityMatrix};
use crate::random;

/// Name of the environment variable scaling check tolerances.
pub const TOLERANCE_SCALE_VAR: &str = "JG_TOLERANCE_SCALE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_MALFORMED: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "jdiv",
    version,
    about = "Jensen divergences of order alpha and their geometry"
)]
pub struct Cli {
    /// Seed for every random generator used by the command.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format; `diagram` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlphaArg {
    /// Order of the entropy (α > 0).
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct PairInput {
    #[command(flatten)]
    pub alpha: AlphaArg,
    /// First distribution, inline JSON.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub p_file: Option<PathBuf>,
    /// Second distribution, inline JSON.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub q_file: Option<PathBuf>,
    /// First density matrix, inline JSON.
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long)]
    pub rho_file: Option<PathBuf>,
    /// Second density matrix, inline JSON.
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub sigma_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyInput {
    /// Weighted family `{"kind", "weights", "members"}`, inline JSON.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub family_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TargetInput {
    /// Distribution or density matrix to code for, inline JSON.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub target_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    #[command(flatten)]
    pub alpha: AlphaArg,
    /// Array of distributions or density matrices, inline JSON.
    #[arg(long)]
    pub points: Option<String>,
    #[arg(long)]
    pub points_file: Option<PathBuf>,
    /// Squared-distance matrix `{"n", "d"}` or an array of rows, inline JSON.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long)]
    pub matrix_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy of order α of a distribution or state.
    Entropy(PairInput),
    /// JD_α of two distributions.
    Jd(PairInput),
    /// QJD_α of two density matrices.
    Qjd(PairInput),
    /// Weighted JD_α of a classical family.
    JdGeneral {
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        family: FamilyInput,
    },
    /// Weighted QJD_α of a quantum family.
    QjdGeneral {
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        family: FamilyInput,
    },
    /// Mean redundancy Σπ_i D(P_i‖target) and its value at the barycenter.
    Redundancy {
        #[command(flatten)]
        family: FamilyInput,
        #[command(flatten)]
        target: TargetInput,
    },
    /// Compensation (classical) or Donald (quantum) identity residual.
    Identities {
        #[command(flatten)]
        family: FamilyInput,
        #[command(flatten)]
        target: TargetInput,
    },
    /// Lower and upper bounds on JD_α or QJD_α.
    Bounds(PairInput),
    /// The chain V²/8 ≤ αV²/8 ≤ JD_α ≤ U_n ≤ (ln2/2)V for α in [1, 2].
    Chain(PairInput),
    /// Boundary curves of the (V, JD_α) range and a homotopy between witnesses.
    Diagram {
        #[command(flatten)]
        alpha: AlphaArg,
        /// Alphabet size.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Points per curve and per homotopy axis.
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
    /// Negative-type test of a divergence matrix.
    CheckNegativeType {
        #[command(flatten)]
        input: MatrixInput,
        /// Eigenvalue tolerance; defaults to 1e-9·n·max|D|.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Euclidean coordinates realizing a divergence matrix.
    Embed {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Cayley–Menger determinant and Menger's embeddability test.
    CayleyMenger {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Triangle violation of √JD_α on (0,1), (1/2,1/2), (1,0).
    Counterexample {
        #[arg(long)]
        alpha: f64,
    },
    /// Cayley–Menger determinant of four nearby two-letter points.
    QuadrupleCm {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
    },
    /// x^α for 0 < α < 2, α ≠ 1, by its integral representation.
    PowerIntegral {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        alpha: f64,
    },
    /// Holevo quantity of a quantum ensemble.
    Holevo {
        #[command(flatten)]
        family: FamilyInput,
    },
    /// Random test inputs, driven by --seed.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Uniform draws from the probability simplex.
    Distributions {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
    },
    /// Ginibre mixed states, or Gaussian pure states with --pure.
    States {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        pure: bool,
    },
    /// A weighted family with random weights and members.
    Family {
        #[arg(long, default_value_t = 2)]
        size: usize,
        /// Alphabet size (classical) or Hilbert-space dimension (--quantum).
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long)]
        quantum: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Malformed(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Malformed(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Malformed(m) => Failure::Malformed(m),
            InputError::Invalid(m) => Failure::Invalid(m),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A command's result: its JSON document and, when it has one, a native CSV
/// rendering.
struct Report {
    json: Value,
    csv: Option<Vec<u8>>,
}

impl Report {
    fn json(json: Value) -> Self {
        Report { json, csv: None }
    }
}

/// Finite numbers as JSON numbers, the rest as `"inf"`, `"-inf"`, `"nan"`.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn error_json(msg: &str) -> String {
    json!({ "error": msg }).to_string()
}

fn tolerance_scale() -> Outcome<f64> {
    match std::env::var(TOLERANCE_SCALE_VAR) {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
            _ => Err(Failure::Invalid(format!(
                "{TOLERANCE_SCALE_VAR} must be a positive number, got {s:?}"
            ))),
        },
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output; returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return clap_failure(e, stdout, stderr),
    };
    let result = tolerance_scale().and_then(|scale| {
        let report = execute(&cli.command, cli.seed, scale)?;
        render(&cli, report)
    });
    match result.and_then(|bytes| deliver(&cli, &bytes, stdout)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "{}", error_json(f.message()));
            f.code()
        }
    }
}

fn clap_failure(e: clap::Error, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(stdout, "{}", e.render());
            EXIT_OK
        }
        kind => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let msg = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(stderr, "{}", error_json(msg));
            match kind {
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn render(cli: &Cli, report: Report) -> Outcome<Vec<u8>> {
    let default = if matches!(cli.command, Command::Diagram { .. }) {
        Format::Csv
    } else {
        Format::Json
    };
    match cli.format.unwrap_or(default) {
        Format::Json => {
            let mut s = serde_json::to_string(&report.json).expect("json value");
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => match report.csv {
            Some(bytes) => Ok(bytes),
            None => flat_csv(&report.json),
        },
    }
}

/// One header row and one value row for an object of scalars.
fn flat_csv(v: &Value) -> Outcome<Vec<u8>> {
    let obj = v
        .as_object()
        .filter(|o| o.values().all(|x| !x.is_array() && !x.is_object()))
        .ok_or_else(|| Failure::Invalid("csv output is not available for this command".into()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let cell = |x: &Value| match x {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(obj.keys()).map_err(io)?;
    w.write_record(obj.values().map(cell)).map_err(io)?;
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}

fn rows_csv(rows: &[Vec<f64>]) -> Outcome<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for r in rows {
        w.write_record(r.iter().map(f64::to_string))
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}

fn deliver(cli: &Cli, bytes: &[u8], stdout: &mut dyn Write) -> Outcome<()> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn alpha(a: f64) -> Outcome<Alpha> {
    Ok(Alpha::new(a)?)
}

fn opt(path: &Option<PathBuf>) -> Option<&Path> {
    path.as_deref()
}

fn classical_pair(input: &PairInput) -> Outcome<(Distribution, Distribution)> {
    let p = io::require_value("p", input.p.as_deref(), opt(&input.p_file))?;
    let q = io::require_value("q", input.q.as_deref(), opt(&input.q_file))?;
    Ok((io::decode("p", p)?, io::decode("q", q)?))
}

fn quantum_pair(input: &PairInput) -> Outcome<(DensityMatrix, DensityMatrix)> {
    let r = io::require_value("rho", input.rho.as_deref(), opt(&input.rho_file))?;
    let s = io::require_value("sigma", input.sigma.as_deref(), opt(&input.sigma_file))?;
    Ok((io::decode("rho", r)?, io::decode("sigma", s)?))
}

fn has_quantum(input: &PairInput) -> bool {
    input.rho.is_some()
        || input.rho_file.is_some()
        || input.sigma.is_some()
        || input.sigma_file.is_some()
}

fn has_classical(input: &PairInput) -> bool {
    input.p.is_some() || input.p_file.is_some() || input.q.is_some() || input.q_file.is_some()
}

enum Pair {
    Classical(Distribution, Distribution),
    Quantum(DensityMatrix, DensityMatrix),
}

fn either_pair(input: &PairInput) -> Outcome<Pair> {
    match (has_classical(input), has_quantum(input)) {
        (true, true) => Err(Failure::Invalid(
            "give either --p/--q or --rho/--sigma, not both".into(),
        )),
        (_, true) => quantum_pair(input).map(|(r, s)| Pair::Quantum(r, s)),
        _ => classical_pair(input).map(|(p, q)| Pair::Classical(p, q)),
    }
}

/// Reads a family; a missing `kind` defaults to `default_kind`.
fn family(input: &FamilyInput, default_kind: &str) -> Outcome<WeightedFamily> {
    let mut v = io::require_value("family", input.family.as_deref(), opt(&input.family_file))?;
    if let Some(obj) = v.as_object_mut() {
        obj.entry("kind").or_insert_with(|| json!(default_kind));
    }
    Ok(io::decode("family", v)?)
}

fn sniff_kind(input: &FamilyInput) -> Outcome<&'static str> {
    let v = io::require_value("family", input.family.as_deref(), opt(&input.family_file))?;
    let quantum = v.get("kind").and_then(Value::as_str) == Some("quantum")
        || v.get("members")
            .and_then(|m| m.get(0))
            .and_then(Value::as_object)
            .is_some_and(|o| o.contains_key("entries"));
    Ok(if quantum { "quantum" } else { "classical" })
}

fn target(input: &TargetInput) -> Outcome<Value> {
    Ok(io::require_value(
        "target",
        input.target.as_deref(),
        opt(&input.target_file),
    )?)
}

fn distance_matrix(input: &MatrixInput) -> Outcome<DistanceMatrix> {
    let points = io::read_value("points", input.points.as_deref(), opt(&input.points_file))?;
    let matrix = io::read_value("matrix", input.matrix.as_deref(), opt(&input.matrix_file))?;
    match (points, matrix) {
        (Some(_), Some(_)) => Err(Failure::Invalid(
            "give either --points or --matrix, not both".into(),
        )),
        (Some(p), None) => {
            let a = alpha(input.alpha.alpha)?;
            let d = match io::decode_points(p)? {
                Points::Classical(ps) => geometry::divergence_matrix(&ps, a)?,
                Points::Quantum(ps) => geometry::divergence_matrix(&ps, a)?,
            };
            Ok(d)
        }
        (None, Some(m)) => {
            if m.is_array() {
                let rows: Vec<Vec<f64>> = io::decode("matrix", m)?;
                Ok(DistanceMatrix::from_rows(&rows)?)
            } else {
                Ok(io::decode("matrix", m)?)
            }
        }
        (None, None) => Err(Failure::Invalid(
            "missing --points/--points-file or --matrix/--matrix-file".into(),
        )),
    }
}

fn divergence_report(r: &jensen::DivergenceResult) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), num(r.value));
    m.insert("alpha".into(), num(r.alpha));
    if let Some(c) = r.cross_check {
        m.insert("kl_average".into(), num(c));
    }
    Value::Object(m)
}

fn execute(cmd: &Command, seed: u64, scale: f64) -> Outcome<Report> {
    match cmd {
        Command::Entropy(input) => {
            let a = alpha(input.alpha.alpha)?;
            let v = if input.rho.is_some() || input.rho_file.is_some() {
                let r = io::require_value("rho", input.rho.as_deref(), opt(&input.rho_file))?;
                quantum::alpha_entropy_q(&io::decode("rho", r)?, a)
            } else {
                let p = io::require_value("p", input.p.as_deref(), opt(&input.p_file))?;
                classical::alpha_entropy(&io::decode("p", p)?, a)
            };
            Ok(Report::json(json!({ "value": num(v) })))
        }
        Command::Jd(input) => {
            let a = alpha(input.alpha.alpha)?;
            let (p, q) = classical_pair(input)?;
            let r = jensen::jd_alpha(&p, &q, a)?;
            Ok(Report::json(json!({ "value": num(r.value) })))
        }
        Command::Qjd(input) => {
            let a = alpha(input.alpha.alpha)?;
            let (r, s) = quantum_pair(input)?;
            let res = jensen::qjd_alpha(&r, &s, a)?;
            Ok(Report::json(json!({ "value": num(res.value) })))
        }
        Command::JdGeneral {
            alpha: al,
            family: f,
        } => {
            let fam = family(f, "classical")?.into_classical()?;
            let r = jensen::jd_alpha_general(&fam, alpha(al.alpha)?)?;
            Ok(Report::json(divergence_report(&r)))
        }
        Command::QjdGeneral {
            alpha: al,
            family: f,
        } => {
            let fam = family(f, "quantum")?.into_quantum()?;
            let r = jensen::qjd_alpha_general(&fam, alpha(al.alpha)?)?;
            Ok(Report::json(divergence_report(&r)))
        }
        Command::Redundancy {
            family: f,
            target: t,
        } => {
            let kind = sniff_kind(f)?;
            let t = target(t)?;
            let (value, at_bar) = if kind == "quantum" {
                let fam = family(f, kind)?.into_quantum()?;
                let s: DensityMatrix = io::decode("target", t)?;
                (
                    jensen::q_redundancy(&fam, &s)?,
                    jensen::q_redundancy(&fam, &fam.barycenter()?)?,
                )
            } else {
                let fam = family(f, kind)?.into_classical()?;
                let q: Distribution = io::decode("target", t)?;
                (
                    jensen::redundancy(&fam, &q)?,
                    jensen::redundancy(&fam, &fam.barycenter()?)?,
                )
            };
            Ok(Report::json(json!({
                "value": num(value),
                "at_barycenter": num(at_bar),
                "barycenter_is_better": at_bar <= value + 1e-12 * scale,
            })))
        }
        Command::Identities {
            family: f,
            target: t,
        } => {
            let kind = sniff_kind(f)?;
            let t = target(t)?;
            let (name, residual, tol) = if kind == "quantum" {
                let fam = family(f, kind)?.into_quantum()?;
                let s: DensityMatrix = io::decode("target", t)?;
                ("donald", jensen::donald_residual(&fam, &s)?, 1e-9)
            } else {
                let fam = family(f, kind)?.into_classical()?;
                let q: Distribution = io::decode("target", t)?;
                (
                    "compensation",
                    jensen::compensation_residual(&fam, &q)?,
                    1e-10,
                )
            };
            let tol = tol * scale;
            Ok(Report::json(json!({
                "identity": name,
                "residual": num(residual),
                "tolerance": num(tol),
                "holds": residual <= tol,
            })))
        }
        Command::Bounds(input) => {
            let a = alpha(input.alpha.alpha)?;
            let (report, tol) = match either_pair(input)? {
                Pair::Classical(p, q) => (bounds::bound_report(&p, &q, a)?, 1e-10),
                Pair::Quantum(r, s) => (bounds::q_bound_report(&r, &s, a)?, 1e-9),
            };
            let mut v = to_value(&report);
            v["holds"] = json!(report.holds(tol * scale));
            Ok(Report::json(v))
        }
        Command::Chain(input) => {
            let a = alpha(input.alpha.alpha)?;
            let (p, q) = classical_pair(input)?;
            let mut report = bounds::chain_check(&p, &q, a)?;
            report.monotone = report
                .values()
                .windows(2)
                .all(|w| w[0] <= w[1] + 1e-10 * scale);
            Ok(Report::json(to_value(&report)))
        }
        Command::Diagram { alpha: al, n, grid } => {
            let d = bounds::diagram(alpha(al.alpha)?, *n, *grid)?;
            let mut csv = Vec::new();
            d.write_csv(&mut csv)?;
            Ok(Report {
                json: to_value(&d),
                csv: Some(csv),
            })
        }
        Command::CheckNegativeType { input, tol } => {
            let d = distance_matrix(input)?;
            if let Some(t) = tol {
                if !(t.is_finite() && *t >= 0.0) {
                    return Err(Failure::Invalid(
                        "--tol must be a nonnegative number".into(),
                    ));
                }
            }
            let tol = tol.unwrap_or_else(|| geometry::default_tolerance(&d) * scale);
            let r = geometry::negative_type_check(&d, Some(tol));
            let mut v = json!({
                "is_negative_type": r.is_negative_type,
                "min_eigenvalue": num(r.witness_min_eigenvalue),
                "tolerance": num(r.tolerance),
                "n": d.n(),
            });
            if let Some(c) = r.witness_vector {
                v["witness_vector"] = json!(c);
            }
            Ok(Report::json(v))
        }
        Command::Embed { input } => {
            let d = distance_matrix(input)?;
            let e = geometry::embed_scaled(&d, scale)?;
            let rows = e.rows();
            let mut v = to_value(&e);
            v["dim"] = json!(e.dim());
            Ok(Report {
                json: v,
                csv: Some(rows_csv(&rows)?),
            })
        }
        Command::CayleyMenger { input } => {
            let d = distance_matrix(input)?;
            let mut v = json!({
                "n": d.n(),
                "determinant": num(geometry::cayley_menger_det(&d)),
            });
            if d.n() <= MENGER_MAX_POINTS {
                v["embeddable"] = json!(geometry::menger_embeddability_scaled(&d, scale)?);
            }
            Ok(Report::json(v))
        }
        Command::Counterexample { alpha: al } => {
            let a = alpha(*al)?;
            let energy = geometry::counterexample_energy(a);
            let d = geometry::divergence_matrix(&geometry::counterexample_points(), a)?;
            let gap = geometry::triangle_gap(&d, 0, 1, 2)?;
            Ok(Report::json(json!({
                "energy": num(energy),
                "violates_triangle": gap < 0.0,
                "triangle_gap": num(gap),
            })))
        }
        Command::QuadrupleCm { alpha: al, eps } => {
            let a = alpha(*al)?;
            let det = geometry::quadruple_cm_determinant(a, *eps)?;
            let sign = geometry::cm_leading_sign(a);
            Ok(Report::json(json!({
                "alpha": num(a.value()),
                "eps": num(*eps),
                "determinant": num(det),
                "leading_sign": num(sign),
                "leading_coefficient": num(geometry::cm_leading_coefficient(a)),
                "sign_matches": det.signum() == -sign.signum(),
                "four_point_embeddable": det >= 0.0,
            })))
        }
        Command::PowerIntegral { x, alpha: al } => {
            let a = alpha(*al)?;
            let value = geometry::power_integral(*x, a)?;
            let exact = x.powf(a.value());
            Ok(Report::json(json!({
                "value": num(value),
                "exact": num(exact),
                "abs_error": num((value - exact).abs()),
            })))
        }
        Command::Holevo { family: f } => {
            let fam = family(f, "quantum")?.into_quantum()?;
            Ok(Report::json(
                json!({ "value": num(jensen::holevo_bound(&fam)?) }),
            ))
        }
        Command::Gen { what } => generate(what, seed),
    }
}

fn generate(what: &GenCommand, seed: u64) -> Outcome<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positive = |name: &str, x: usize| {
        if x == 0 {
            Err(Failure::Invalid(format!("--{name} must be at least 1")))
        } else {
            Ok(())
        }
    };
    match *what {
        GenCommand::Distributions { count, letters } => {
            positive("count", count)?;
            positive("letters", letters)?;
            let ds: Vec<Distribution> = (0..count)
                .map(|_| random::distribution(&mut rng, letters))
                .collect();
            let rows: Vec<Vec<f64>> = ds.iter().map(|d| d.probs().to_vec()).collect();
            Ok(Report {
                json: to_value(&ds),
                csv: Some(rows_csv(&rows)?),
            })
        }
        GenCommand::States { count, dim, pure } => {
            positive("count", count)?;
            positive("dim", dim)?;
            let states: Vec<DensityMatrix> = (0..count)
                .map(|_| {
                    if pure {
                        random::pure_state(&mut rng, dim)
                    } else {
                        random::ginibre_state(&mut rng, dim)
                    }
                })
                .collect();
            Ok(Report::json(to_value(&states)))
        }
        GenCommand::Family {
            size,
            letters,
            quantum,
        } => {
            positive("size", size)?;
            positive("letters", letters)?;
            let weights = random::distribution(&mut rng, size);
            let fam = if quantum {
                WeightedFamily::Quantum {
                    weights,
                    members: (0..size)
                        .map(|_| random::ginibre_state(&mut rng, letters))
                        .collect(),
                }
            } else {
                WeightedFamily::Classical {
                    weights,
                    members: (0..size)
                        .map(|_| random::distribution(&mut rng, letters))
                        .collect(),
                }
            };
            Ok(Report::json(to_value(&fam)))
        }
    }
}
