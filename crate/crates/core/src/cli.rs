//! Command-line front end: `generate`, `lincomp`, `verify` and `survey`.
//!
//! Exit codes: 0 success, 1 a check or prediction failed, 2 invalid input,
//! 3 the complexity methods disagree.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::cyclotomy::VectorAssignment;
use crate::error::Error;
use crate::gf2poly::{build_field, DEFAULT_DEGREE_CAP};
use crate::lincomp::{lincomp_bm, lincomp_gcd, lincomp_spectral, LinComplexity, Method};
use crate::numtheory::{is_prime, validate_modulus, Modulus};
use crate::sequence::{delta, generate, parse_bits};
use crate::theorems::{check_theorem1, predicted_l_two_primes, run_check, CheckKind, Spectral};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

/// Largest `--max-n` a survey accepts.
pub const SURVEY_HARD_CAP: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "dhseq",
    version,
    about = "Generalized cyclotomic sequences and their linear complexity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one period of the sequence.
    Generate {
        #[command(flatten)]
        source: Source,
        /// Sequence file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Metadata sidecar (key=value lines).
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Linear complexity by one or all methods.
    Lincomp {
        #[arg(long, required_unless_present = "factors")]
        input: Option<PathBuf>,
        #[command(flatten)]
        source: OptionalSource,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Run the structural checks on one modulus.
    Verify {
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Sweep moduli and write a CSV table.
    Survey {
        #[arg(long, default_value_t = 2000)]
        max_n: u64,
        #[arg(long, value_enum)]
        mode: SurveyMode,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also compute the spectral complexity where the field is buildable.
        #[arg(long)]
        spectral: bool,
        #[command(flatten)]
        cap: CapArg,
    },
}

#[derive(Debug, Args)]
struct Source {
    /// Factorization `p:e,p:e,...`.
    #[arg(long)]
    factors: String,
    #[command(flatten)]
    assignment: AssignmentArgs,
}

#[derive(Debug, Args)]
struct OptionalSource {
    #[arg(long, conflicts_with = "input")]
    factors: Option<String>,
    #[command(flatten)]
    assignment: AssignmentArgs,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct AssignmentArgs {
    /// `a_d = (0,…,0,1)` for every divisor (the default).
    #[arg(long = "default")]
    default_vectors: bool,
    /// `a_n` all ones, every other divisor at the default.
    #[arg(long)]
    all_ones_top: bool,
    /// Assignment file with one `d:bits` line per divisor.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Inline entries `d:bits[,d:bits...]`.
    #[arg(long)]
    assignment: Option<String>,
}

#[derive(Debug, Args)]
struct CapArg {
    /// Largest extension degree for the spectral method.
    #[arg(long, env = "DHSEQ_DEGREE_CAP", default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Bm,
    Gcd,
    Spectral,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Theorem1,
    Corollary,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurveyMode {
    /// `n = p1·p2`, `a_n = (1,1)`, with the closed-form prediction.
    #[value(name = "two-primes-11")]
    TwoPrimes11,
    /// Every valid modulus with the default assignment.
    DefaultAll,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(e: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e)
    }
}

/// Parses `p:e,p:e,...`.
pub fn parse_factors(text: &str) -> crate::Result<Modulus> {
    let mut list = Vec::new();
    for (i, part) in text.split(',').enumerate() {
        let bad = || Error::MalformedSpec {
            line: i + 1,
            reason: format!("expected `p:e`, got {part:?}"),
        };
        let (p, e) = part.trim().split_once(':').unwrap_or((part.trim(), "1"));
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let e: u32 = e.trim().parse().map_err(|_| bad())?;
        list.push((p, e));
    }
    validate_modulus(&list)
}

fn load_assignment(args: &AssignmentArgs, modulus: &Modulus) -> Result<VectorAssignment, Failure> {
    if args.all_ones_top {
        return Ok(VectorAssignment::all_ones_top(modulus));
    }
    if let Some(path) = &args.spec {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        return Ok(VectorAssignment::parse_spec(&text, modulus)?);
    }
    if let Some(inline) = &args.assignment {
        let text = inline.replace([',', ';'], "\n");
        return Ok(VectorAssignment::parse_spec(&text, modulus)?);
    }
    Ok(VectorAssignment::default_for(modulus))
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Generate {
            source,
            out: path,
            meta,
        } => cmd_generate(&source, path, meta, out),
        Command::Lincomp {
            input,
            source,
            method,
            cap,
        } => cmd_lincomp(input, &source, method, cap.degree_cap, out),
        Command::Verify { check, source, cap } => cmd_verify(check, &source, cap.degree_cap, out),
        Command::Survey {
            max_n,
            mode,
            out: path,
            spectral,
            cap,
        } => cmd_survey(max_n, mode, path, spectral.then_some(cap.degree_cap), out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn write_target(path: Option<&PathBuf>, body: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| Failure::input(e.to_string())),
    }
}

fn cmd_generate(
    source: &Source,
    path: Option<PathBuf>,
    meta: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let modulus = parse_factors(&source.factors)?;
    let assignment = load_assignment(&source.assignment, &modulus)?;
    let seq = generate(&modulus, &assignment)?;
    write_target(path.as_ref(), &seq.to_line(), out)?;
    if let Some(m) = meta {
        write_target(Some(&m), &seq.metadata(), out)?;
    }
    Ok(EXIT_OK)
}

fn describe(r: &LinComplexity) -> String {
    match r.zero_count {
        Some(z) => format!("method={} L={} zero_count={z}", r.method, r.value),
        None => format!("method={} L={}", r.method, r.value),
    }
}

fn cmd_lincomp(
    input: Option<PathBuf>,
    source: &OptionalSource,
    method: MethodArg,
    cap: u64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let bits = match (input, &source.factors) {
        (Some(path), _) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            parse_bits(&text)?
        }
        (None, Some(factors)) => {
            let modulus = parse_factors(factors)?;
            let assignment = load_assignment(&source.assignment, &modulus)?;
            generate(&modulus, &assignment)?.bits().to_vec()
        }
        (None, None) => return Err(Failure::input("either --input or --factors is required")),
    };
    let n = bits.len() as u64;
    let mut lines = vec![format!("n={n}")];
    let mut results = Vec::new();
    if matches!(method, MethodArg::Bm | MethodArg::All) {
        results.push(lincomp_bm(&bits));
    }
    if matches!(method, MethodArg::Gcd | MethodArg::All) {
        results.push(lincomp_gcd(&bits));
    }
    if matches!(method, MethodArg::Spectral | MethodArg::All) {
        match build_field(n, cap) {
            Ok(field) => results.push(lincomp_spectral(&bits, &field)?),
            Err(e) if method == MethodArg::All => {
                lines.push(format!("method={} unavailable: {e}", Method::Spectral))
            }
            Err(e) => return Err(e.into()),
        }
    }
    lines.extend(results.iter().map(describe));
    write_target(None, &(lines.join("\n") + "\n"), out)?;

    if results.windows(2).any(|w| w[0].value != w[1].value) {
        return Err(Failure {
            code: EXIT_DISAGREE,
            message: "linear complexity methods disagree".into(),
        });
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    check: CheckArg,
    source: &Source,
    cap: u64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let modulus = parse_factors(&source.factors)?;
    let assignment = load_assignment(&source.assignment, &modulus)?;
    let kinds: Vec<CheckKind> = match check {
        CheckArg::Lemma1 => vec![CheckKind::Lemma1],
        CheckArg::Lemma2 => vec![CheckKind::Lemma2],
        CheckArg::Lemma3 => vec![CheckKind::Lemma3],
        CheckArg::Lemma4 => vec![CheckKind::Lemma4],
        CheckArg::Theorem1 => vec![CheckKind::Theorem1],
        CheckArg::Corollary => vec![CheckKind::Corollary],
        CheckArg::All => CheckKind::ALL.to_vec(),
    };
    let spectral = Spectral::build(modulus.n(), cap);
    let mut failed = false;
    let mut text = String::new();
    for kind in kinds {
        match run_check(kind, &modulus, &assignment, spectral.as_ref()) {
            Ok(verdicts) => {
                for v in verdicts {
                    failed |= v.is_failure();
                    text.push_str(&format!("{v}\n"));
                }
            }
            Err(e @ Error::DegreeCapExceeded { .. }) if check == CheckArg::All => {
                text.push_str(&format!(
                    "{} applicable=false holds=false witness=skipped: {e}\n",
                    format!("{kind:?}").to_lowercase()
                ));
            }
            Err(e) => return Err(e.into()),
        }
    }
    write_target(None, &text, out)?;
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}

/// One line of the survey CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub n: u64,
    pub factors: String,
    pub assignment: String,
    pub delta: u8,
    pub l_bm: usize,
    pub l_gcd: usize,
    pub l_spectral: Option<usize>,
    pub theorem1_applicable: bool,
    pub theorem1_holds: bool,
    pub predicted_l: Option<u64>,
    pub prediction_match: Option<bool>,
}

pub const SURVEY_HEADER: &str = "n,factors,assignment,delta,L_bm,L_gcd,L_spectral,theorem1_applicable,theorem1_holds,predicted_L,prediction_match";

fn blank<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SurveyRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.factors,
            self.assignment,
            self.delta,
            self.l_bm,
            self.l_gcd,
            blank(self.l_spectral),
            self.theorem1_applicable,
            self.theorem1_holds,
            blank(self.predicted_l),
            blank(self.prediction_match),
        )
    }

    /// The row refutes a prediction or an applicable bound.
    pub fn is_failure(&self) -> bool {
        self.prediction_match == Some(false) || (self.theorem1_applicable && !self.theorem1_holds)
    }
}

/// Moduli visited by a survey, ascending.
pub fn survey_moduli(mode: SurveyMode, max_n: u64) -> Vec<Modulus> {
    match mode {
        SurveyMode::DefaultAll => (3..=max_n)
            .step_by(2)
            .filter_map(|n| Modulus::from_n(n).ok())
            .collect(),
        SurveyMode::TwoPrimes11 => {
            let primes: Vec<u64> = (3..=max_n / 3).filter(|&p| is_prime(p)).collect();
            let mut out: Vec<Modulus> = primes
                .iter()
                .flat_map(|&p1| {
                    primes
                        .iter()
                        .filter(move |&&p2| p2 > p1 && p1 * p2 <= max_n)
                        .filter_map(move |&p2| validate_modulus(&[(p1, 1), (p2, 1)]).ok())
                })
                .collect();
            out.sort_by_key(Modulus::n);
            out
        }
    }
}

pub fn survey_row(
    mode: SurveyMode,
    modulus: &Modulus,
    spectral_cap: Option<u64>,
) -> crate::Result<SurveyRow> {
    let n = modulus.n();
    let assignment = match mode {
        SurveyMode::TwoPrimes11 => VectorAssignment::all_ones_top(modulus),
        SurveyMode::DefaultAll => VectorAssignment::default_for(modulus),
    };
    let seq = generate(modulus, &assignment)?;
    let l_bm = lincomp_bm(seq.bits()).value;
    let l_gcd = lincomp_gcd(seq.bits()).value;
    let spectral = spectral_cap.and_then(|cap| Spectral::build(n, cap).ok());
    let l_spectral = spectral
        .as_ref()
        .map(|sp| lincomp_spectral(seq.bits(), sp.field()).map(|r| r.value))
        .transpose()?;
    let t1 = check_theorem1(modulus, &assignment, spectral.as_ref())?;
    let predicted_l = match (mode, modulus.factors()) {
        (SurveyMode::TwoPrimes11, [f1, f2]) => predicted_l_two_primes(f1.prime, f2.prime).ok(),
        _ => None,
    };
    Ok(SurveyRow {
        n,
        factors: modulus.to_string(),
        assignment: assignment.to_string(),
        delta: delta(n),
        l_bm,
        l_gcd,
        l_spectral,
        theorem1_applicable: t1.applicable,
        theorem1_holds: t1.holds,
        predicted_l,
        prediction_match: predicted_l.map(|p| p == l_gcd as u64 && p == l_bm as u64),
    })
}

/// All rows of a survey, in ascending `n`.
pub fn survey(
    mode: SurveyMode,
    max_n: u64,
    spectral_cap: Option<u64>,
) -> crate::Result<Vec<SurveyRow>> {
    survey_moduli(mode, max_n)
        .par_iter()
        .map(|m| survey_row(mode, m, spectral_cap))
        .collect()
}

fn cmd_survey(
    max_n: u64,
    mode: SurveyMode,
    path: Option<PathBuf>,
    spectral_cap: Option<u64>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if max_n > SURVEY_HARD_CAP {
        return Err(Failure::input(format!(
            "--max-n {max_n} exceeds the survey cap {SURVEY_HARD_CAP}"
        )));
    }
    let rows = survey(mode, max_n, spectral_cap)?;
    if let Some(bad) = rows
        .iter()
        .find(|r| r.l_bm != r.l_gcd || r.l_spectral.is_some_and(|s| s != r.l_gcd))
    {
        return Err(Failure {
            code: EXIT_DISAGREE,
            message: format!("methods disagree at n={}: {}", bad.n, bad.to_csv()),
        });
    }
    let mut csv = String::from(SURVEY_HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.to_csv());
        csv.push('\n');
    }
    write_target(path.as_ref(), &csv, out)?;
    Ok(if rows.iter().any(SurveyRow::is_failure) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}
