//! Command-line front end: argument parsing, dispatch and rendering.
//!
//! [`run_cli`] is the whole program minus process I/O, so tests can drive
//! every subcommand and inspect the exact bytes and exit code.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use sumsynth::exactnum::BigInt;
use sumsynth::factsum::NoSolutionCertificate;
use sumsynth::oracle::{default_n_max, DEFAULT_N_MAX_POLY};
use sumsynth::{
    faulhaber_row, format_canonical, membership_sz, parse_poly, synth_fact_sum, synth_poly_sum,
    synth_weighted, verify_closed_form, weighted_sum_oracle, BiPoly, DegreeBounds,
    MembershipVerdict, ResidueClosedForms, SynthesisResult, UniPoly, VerificationStatus,
    WeightSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sumsynth",
    version,
    about = "Closed forms for running sums of polynomial and factorial terms"
)]
struct Cli {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the power-sum polynomial for 1^k + 2^k + ... + n^k.
    Faulhaber { k: u32 },
    /// Closed form of f(1) + ... + f(n) for a polynomial f.
    Synth {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Search for a closed form in n and n! within a degree box.
    SynthFact {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Largest power of n in the ansatz [default: deg_n(expr) + 2].
        #[arg(long = "deg-x")]
        deg_x: Option<u32>,
        /// Largest power of n! in the ansatz [default: deg_n!(expr) + 1].
        #[arg(long = "deg-y")]
        deg_y: Option<u32>,
    },
    /// Decide whether g is the running sum of an integer polynomial.
    Member {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Closed form of a weighted sum a_1 f(1) + ... + a_n f(n).
    Weighted {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// const:<c> | poly:<expr> | periodic:<c1,c2,...>
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Check g(n) = f(1) + ... + f(n) for n = 1..=N.
    Verify {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Last n to check [default: 100, or 30 if n! appears]
        #[arg(long = "n-max")]
        n_max: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Faulhaber { .. } => "faulhaber",
            Command::Synth { .. } => "synth",
            Command::SynthFact { .. } => "synth-fact",
            Command::Member { .. } => "member",
            Command::Weighted { .. } => "weighted",
            Command::Verify { .. } => "verify",
        }
    }

    fn input(&self) -> Value {
        match self {
            Command::Faulhaber { k } => json!(k.to_string()),
            Command::Synth { expr } | Command::SynthFact { expr, .. } | Command::Member { expr } => {
                json!(expr)
            }
            Command::Weighted { expr, weights } => json!({ "expr": expr, "weights": weights }),
            Command::Verify { f, g, .. } => json!({ "f": f, "g": g }),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    NoSolution,
    NotMember,
    Mismatch,
    Error,
}

impl Status {
    fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::NoSolution | Status::NotMember | Status::Mismatch => EXIT_NEGATIVE,
            Status::Error => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct Bounds {
    deg_x: u32,
    deg_y: u32,
}

impl From<DegreeBounds> for Bounds {
    fn from(b: DegreeBounds) -> Self {
        Bounds {
            deg_x: b.deg_x,
            deg_y: b.deg_y,
        }
    }
}

/// The structured record behind `--json`.
#[derive(Debug, Clone, Serialize)]
struct Record {
    command: &'static str,
    status: Status,
    input: Value,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified_upto: Option<u64>,
}

/// What a subcommand produced: the record plus its text rendering.
struct Outcome {
    status: Status,
    text: String,
    result: Value,
    bounds: Option<Bounds>,
    verified_upto: Option<u64>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(status: Status, text: impl Into<String>, result: Value) -> Self {
        Self {
            status,
            text: text.into(),
            result,
            bounds: None,
            verified_upto: None,
            notes: Vec::new(),
        }
    }

    fn verified(mut self, upto: u64) -> Self {
        self.verified_upto = Some(upto);
        self
    }

    fn with_bounds(mut self, b: DegreeBounds) -> Self {
        self.bounds = Some(b.into());
        self
    }
}

/// Usage-level failure; rendered to stderr with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Runs one invocation. `args` includes the program name, like `std::env::args`.
pub fn run_cli<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };

    let outcome = dispatch(&cli.command).unwrap_or_else(|UsageError(msg)| Outcome {
        notes: vec![format!("error: {msg}")],
        ..Outcome::new(Status::Error, String::new(), json!(msg))
    });

    let mut stderr = String::new();
    for note in &outcome.notes {
        stderr.push_str(note);
        stderr.push('\n');
    }
    let stdout = if cli.json {
        let record = Record {
            command: cli.command.name(),
            status: outcome.status,
            input: cli.command.input(),
            result: outcome.result,
            bounds: outcome.bounds,
            verified_upto: outcome.verified_upto,
        };
        let mut s = serde_json::to_string(&record).expect("record serializes");
        s.push('\n');
        s
    } else if outcome.text.is_empty() {
        String::new()
    } else {
        format!("{}\n", outcome.text)
    };
    CliOutput {
        code: outcome.status.exit_code(),
        stdout,
        stderr,
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, UsageError> {
    match cmd {
        Command::Faulhaber { k } => faulhaber(*k),
        Command::Synth { expr } => synth(expr),
        Command::SynthFact {
            expr,
            deg_x,
            deg_y,
        } => synth_fact(expr, *deg_x, *deg_y),
        Command::Member { expr } => member(expr),
        Command::Weighted { expr, weights } => weighted(expr, weights),
        Command::Verify { f, g, n_max } => verify(f, g, *n_max),
    }
}

fn parse_univariate(expr: &str, what: &str) -> Result<UniPoly, UsageError> {
    let p = parse_poly(expr)?;
    p.to_uni()
        .ok_or_else(|| UsageError(format!("{what} does not accept n!; use synth-fact")))
}

fn faulhaber(k: u32) -> Result<Outcome, UsageError> {
    if k == 0 {
        return Err(UsageError("k must be at least 1".into()));
    }
    let g = faulhaber_row(k)?.poly();
    let power = BiPoly::monomial(k, 0, sumsynth::Rational::from_integer(1.into()));
    let report = verify_closed_form(&power, &g.to_bi(), DEFAULT_N_MAX_POLY);
    if !report.is_match() {
        return Err(UsageError(format!("internal error: power-sum row failed verification: {report:?}")));
    }
    let text = g.to_string();
    Ok(Outcome::new(Status::Ok, text.clone(), json!(text)).verified(report.checked_upto))
}

fn synth(expr: &str) -> Result<Outcome, UsageError> {
    let f = parse_univariate(expr, "synth")?;
    let g = synth_poly_sum(&f)?;
    let report = verify_closed_form(&f.to_bi(), &g.to_bi(), DEFAULT_N_MAX_POLY);
    if !report.is_match() {
        return Err(UsageError(format!("internal error: synthesized sum failed verification: {report:?}")));
    }
    let text = g.to_string();
    Ok(Outcome::new(Status::Ok, text.clone(), json!(text)).verified(report.checked_upto))
}

fn synth_fact(expr: &str, deg_x: Option<u32>, deg_y: Option<u32>) -> Result<Outcome, UsageError> {
    let p = parse_poly(expr)?;
    let defaults = DegreeBounds::default_for(&p);
    let bounds = DegreeBounds::new(
        deg_x.unwrap_or(defaults.deg_x),
        deg_y.unwrap_or(defaults.deg_y),
    );
    let mut outcome = match synth_fact_sum(&p, bounds)? {
        SynthesisResult::ClosedForm { q, verified_upto } => {
            let text = format_canonical(&q);
            Outcome::new(Status::Ok, text.clone(), json!(text)).verified(verified_upto)
        }
        SynthesisResult::NoSolutionWithinBounds { bounds, certificate } => {
            let text = format!(
                "no-solution-within-bounds deg_x={} deg_y={}",
                bounds.deg_x, bounds.deg_y
            );
            Outcome::new(Status::NoSolution, text, certificate_json(&certificate))
        }
    }
    .with_bounds(bounds);
    if !p.has_integer_coeffs() {
        outcome
            .notes
            .push("note: input has non-integer coefficients (not in Z[n, n!])".into());
    }
    Ok(outcome)
}

fn certificate_json(cert: &NoSolutionCertificate) -> Value {
    let multipliers: Vec<String> = cert
        .inconsistency
        .multipliers
        .iter()
        .map(ToString::to_string)
        .collect();
    json!({
        "certificate": {
            "unknowns": cert.system.unknowns.iter().map(|&(a, b)| format_canonical(
                &BiPoly::monomial(a, b, sumsynth::Rational::from_integer(1.into()))
            )).collect::<Vec<_>>(),
            "rows": cert.system.matrix.rows(),
            "multipliers": multipliers,
            "rhs": cert.inconsistency.rhs.to_string(),
        }
    })
}

fn member(expr: &str) -> Result<Outcome, UsageError> {
    let g = parse_univariate(expr, "member")?;
    Ok(match membership_sz(&g) {
        MembershipVerdict::Accepted { witness_f } => {
            let f = witness_f.to_string();
            Outcome::new(Status::Ok, format!("member f = {f}"), json!(f))
        }
        MembershipVerdict::Rejected(reason) => {
            let r = reason.to_string();
            Outcome::new(Status::NotMember, format!("not-member: {r}"), json!(r))
        }
    })
}

fn parse_weights(spec: &str) -> Result<WeightSpec, UsageError> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| UsageError(format!("weights must be const:<c>, poly:<expr> or periodic:<c1,...>, got {spec:?}")))?;
    let int = |s: &str| -> Result<BigInt, UsageError> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| UsageError(format!("weight {:?} is not an integer", s.trim())))
    };
    Ok(match kind {
        "const" => WeightSpec::Constant(int(body)?),
        "poly" => WeightSpec::polynomial(parse_univariate(body, "a weight polynomial")?)?,
        "periodic" => {
            let pattern = body.split(',').map(int).collect::<Result<Vec<_>, _>>()?;
            WeightSpec::periodic(pattern)?
        }
        other => return Err(UsageError(format!("unknown weight family {other:?}"))),
    })
}

fn weighted(expr: &str, weights: &str) -> Result<Outcome, UsageError> {
    let alpha = parse_weights(weights)?;
    let p = parse_poly(expr)?;

    let Some(f) = p.to_uni() else {
        // Factorial terms: fold a non-periodic weight into the term and
        // fall back to the bounded search.
        let w = match &alpha {
            WeightSpec::Constant(c) => BiPoly::constant(sumsynth::Rational::from_integer(c.clone())),
            WeightSpec::Polynomial(w) => w.to_bi(),
            WeightSpec::Periodic(_) => {
                return Err(UsageError("periodic weights do not accept n!".into()))
            }
        };
        let weighted_term = &w * &p;
        return synth_fact(&format_canonical(&weighted_term), None, None);
    };

    let forms = synth_weighted(&f, &alpha)?;
    let checked = check_weighted(&p, &alpha, &forms, DEFAULT_N_MAX_POLY)?;
    Ok(match forms.uniform() {
        Some(g) => {
            let text = g.to_string();
            Outcome::new(Status::Ok, text.clone(), json!(text))
        }
        None => {
            let lines: Vec<String> = forms
                .forms
                .iter()
                .enumerate()
                .map(|(i, g)| format!("r={}: {g}", i + 1))
                .collect();
            let list: Vec<Value> = forms
                .forms
                .iter()
                .enumerate()
                .map(|(i, g)| json!({ "residue": i + 1, "period": forms.period, "form": g.to_string() }))
                .collect();
            Outcome::new(Status::Ok, lines.join("\n"), Value::Array(list))
        }
    }
    .verified(checked))
}

fn check_weighted(
    p: &BiPoly,
    alpha: &WeightSpec,
    forms: &ResidueClosedForms,
    n_max: u64,
) -> Result<u64, UsageError> {
    for n in 1..=n_max {
        if forms.eval(n) != weighted_sum_oracle(p, alpha, n) {
            return Err(UsageError(format!(
                "internal error: weighted closed form fails at n={n}"
            )));
        }
    }
    Ok(n_max)
}

fn verify(f: &str, g: &str, n_max: Option<u64>) -> Result<Outcome, UsageError> {
    let (p, q) = (parse_poly(f)?, parse_poly(g)?);
    let n_max = n_max.unwrap_or_else(|| default_n_max(&p, &q));
    if n_max == 0 {
        return Err(UsageError("--n-max must be at least 1".into()));
    }
    let report = verify_closed_form(&p, &q, n_max);
    Ok(match report.status {
        VerificationStatus::AllMatch => {
            Outcome::new(Status::Ok, format!("ok upto {n_max}"), json!(format_canonical(&q)))
                .verified(n_max)
        }
        VerificationStatus::FirstMismatch { n, expected, got } => Outcome::new(
            Status::Mismatch,
            format!("mismatch at n={n} expected {expected} got {got}"),
            json!({ "n": n, "expected": expected.to_string(), "got": got.to_string() }),
        ),
    })
}
