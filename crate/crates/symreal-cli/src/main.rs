//! Command-line front end for exact real-algebraic computation on symmetric
//! polynomial systems.
//!
//! Subcommands expose the library's decision procedures one question per
//! process: `rewrite` (symmetric-function bases), `roots` (real-root
//! counting and Thom encodings), `decide` (real points in compressed orbit
//! families), `empty` (real emptiness of symmetric systems), `nonneg`
//! (nonnegativity via the degree principle), `gram`/`sdpa` (sums-of-squares
//! machinery), and `sort` (minimal adjacent transpositions).
//!
//! Exit codes: `0` a verdict was computed, `1` the input failed to parse or
//! validate, `2` the run ended inconclusively (an "unknown" verdict or a
//! degenerate instance). With `--json` a single JSON document is printed;
//! identical seeds produce byte-identical documents. The default seed comes
//! from `SYMREAL_SEED`, falling back to 0.

use clap::{Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use symreal::combi::{minimal_adjacent_transpositions, Partition};
use symreal::decide::{decide_real_preimage, DecideError, OrbitParam};
use symreal::emptiness::{
    nonneg_degree_principle, real_emptiness, verify_regularity, EmptinessError, NonnegOutcome,
};
use symreal::poly::{Polynomial, Rational};
use symreal::realroot::{count_real_roots, sign_at, thom_encodings, UniPoly};
use symreal::sos::{emit_sdpa, gram_system, sdpa_document, verify_gram, SosError};
use symreal::symfun::{ftsp_rewrite, BasisKind};
use symreal::zerodim::ZeroDimParam;
use symreal::Mat;

/// Exact real-algebraic computation for symmetric polynomial systems.
#[derive(Parser)]
#[command(name = "symreal", version, disable_help_subcommand = true)]
struct Cli {
    /// Print one JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for all randomized subroutines (default: $SYMREAL_SEED, else 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a symmetric polynomial in a symmetric-function basis.
    ///
    /// POLY is inline text like "x1^2*x2 + x1*x2^2" or @FILE to read a file.
    Rewrite {
        /// Target basis: e (elementary), p (power sums), h (complete
        /// homogeneous).
        #[arg(long, default_value = "e")]
        basis: String,
        /// Ambient variable count (default: largest index appearing).
        #[arg(long)]
        nvars: Option<usize>,
        /// The polynomial to rewrite.
        poly: String,
    },
    /// Count the real roots of a univariate polynomial in T and print their
    /// Thom encodings.
    Roots {
        /// The polynomial, e.g. "T^3 - 3*T + 1".
        poly: String,
        /// Also report the sign of this polynomial at every real root.
        #[arg(long)]
        sign: Option<String>,
    },
    /// Decide whether a compressed orbit family contains a real point.
    Decide {
        /// Path to a JSON zero-dimensional parametrization.
        param: PathBuf,
        /// Orbit type as comma-separated positive parts, e.g. "1,1,2".
        lambda: String,
    },
    /// Decide whether a symmetric polynomial system has no real solution.
    Empty {
        /// First check that the system is regular (the answer is only
        /// reliable under that assumption); inconclusive when the check
        /// fails.
        #[arg(long)]
        verify_regularity: bool,
        /// Ambient variable count (default: largest index appearing).
        #[arg(long)]
        nvars: Option<usize>,
        /// The system's polynomials.
        #[arg(required = true)]
        polys: Vec<String>,
    },
    /// Check whether a symmetric polynomial is nonnegative on real space.
    Nonneg {
        /// Ambient variable count (default: largest index appearing).
        #[arg(long)]
        nvars: Option<usize>,
        /// The polynomial to check.
        poly: String,
    },
    /// Build the Gram coefficient-matching system of an even-degree
    /// polynomial; optionally verify a candidate Gram matrix.
    Gram {
        /// Ambient variable count (default: largest index appearing).
        #[arg(long)]
        nvars: Option<usize>,
        /// The polynomial.
        poly: String,
        /// Path to a JSON matrix (rows of integers or "a/b" strings),
        /// indexed against the system's basis order.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Emit the Gram system in sparse SDPA format (.dat-s).
    Sdpa {
        /// Ambient variable count (default: largest index appearing).
        #[arg(long)]
        nvars: Option<usize>,
        /// The polynomial.
        poly: String,
        /// Output path; without it the document goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sort comma-separated integers, reporting a minimal sequence of
    /// adjacent transpositions.
    Sort {
        /// The list, e.g. "3,1,2".
        values: String,
    },
}

/// A failed run, carrying the exit status it maps to.
enum Failure {
    /// Exit 1: the input did not parse or validate.
    Input(String),
    /// Exit 2: no verdict could be reached.
    Inconclusive(String),
}

/// A successful run: the human rendering and the JSON document body
/// (without the seed, which is attached uniformly at print time).
struct Outcome {
    human: String,
    json: Value,
}

impl Outcome {
    fn new(human: impl Into<String>, json: Value) -> Self {
        Outcome {
            human: human.into(),
            json,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not errors; everything else is
            // an input problem (exit 1, since 2 means "inconclusive" here).
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let seed = cli
        .seed
        .or_else(|| {
            std::env::var("SYMREAL_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);

    match run(&cli.command, seed) {
        Ok(outcome) => {
            if cli.json {
                let mut doc = outcome.json;
                doc["seed"] = json!(seed);
                println!("{doc}");
            } else {
                println!("{}", outcome.human);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(reason)) => {
            if cli.json {
                let doc = json!({ "answer": "unknown", "reason": reason, "seed": seed });
                println!("{doc}");
            } else {
                println!("unknown: {reason}");
            }
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command, seed: u64) -> Result<Outcome, Failure> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    match command {
        Command::Rewrite { basis, nvars, poly } => cmd_rewrite(basis, *nvars, poly),
        Command::Roots { poly, sign } => cmd_roots(poly, sign.as_deref()),
        Command::Decide { param, lambda } => cmd_decide(param, lambda),
        Command::Empty {
            verify_regularity,
            nvars,
            polys,
        } => cmd_empty(*verify_regularity, *nvars, polys, &mut rng),
        Command::Nonneg { nvars, poly } => cmd_nonneg(*nvars, poly, &mut rng),
        Command::Gram {
            nvars,
            poly,
            verify,
        } => cmd_gram(*nvars, poly, verify.as_deref()),
        Command::Sdpa { nvars, poly, out } => cmd_sdpa(*nvars, poly, out.as_deref()),
        Command::Sort { values } => cmd_sort(values),
    }
}

// ---------------------------------------------------------------------------
// Input helpers
// ---------------------------------------------------------------------------

/// Resolves an argument that is either inline text or `@path`.
fn read_arg(text: &str) -> Result<String, Failure> {
    if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

/// The largest variable index mentioned as `x<k>` in the text, as a
/// variable count (at least 1, so constants still live somewhere).
fn infer_nvars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut max = 1usize;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end > start {
                if let Ok(k) = text[start..end].parse::<usize>() {
                    max = max.max(k);
                }
            }
            i = end;
        } else {
            i += 1;
        }
    }
    max
}

/// Parses one multivariate polynomial argument.
fn parse_poly(text: &str, nvars: Option<usize>) -> Result<Polynomial, Failure> {
    let body = read_arg(text)?;
    let n = nvars.unwrap_or_else(|| infer_nvars(&body));
    Polynomial::parse(body.trim(), n)
        .map_err(|e| Failure::Input(format!("cannot parse polynomial {body:?}: {e}")))
}

/// Parses a univariate polynomial argument written in `T`.
fn parse_unipoly(text: &str) -> Result<UniPoly, Failure> {
    let body = read_arg(text)?;
    let p = Polynomial::parse_univariate(body.trim())
        .map_err(|e| Failure::Input(format!("cannot parse polynomial {body:?}: {e}")))?;
    Ok(UniPoly::from_polynomial(&p))
}

/// Parses a comma-separated partition such as "1,1,2".
fn parse_partition(text: &str) -> Result<Partition, Failure> {
    let mut parts = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        let part: usize = token
            .parse()
            .map_err(|_| Failure::Input(format!("partition part {token:?} is not an integer")))?;
        if part == 0 {
            return Err(Failure::Input(
                "partition parts must be positive".to_string(),
            ));
        }
        parts.push(part);
    }
    if parts.is_empty() {
        return Err(Failure::Input(
            "partition must have at least one part".to_string(),
        ));
    }
    Ok(Partition::new(parts))
}

/// Parses one rational from a JSON value: an integer or an "a/b" string.
fn rational_from_json(value: &Value) -> Result<Rational, String> {
    match value {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| format!("{n} is not an exact integer")),
        Value::String(s) => {
            let mut pieces = s.splitn(2, '/');
            let numer: num_bigint::BigInt = pieces
                .next()
                .unwrap_or_default()
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s:?}"))?;
            let denom: num_bigint::BigInt = match pieces.next() {
                None => 1.into(),
                Some(d) => d
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad denominator in {s:?}"))?,
            };
            if denom == 0.into() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(numer, denom))
        }
        other => Err(format!("expected integer or \"a/b\" string, got {other}")),
    }
}

/// Reads a JSON matrix of rationals from a file.
fn matrix_from_file(path: &Path) -> Result<Mat, Failure> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&body)
        .map_err(|e| Failure::Input(format!("{} is not valid JSON: {e}", path.display())))?;
    let rows = value
        .as_array()
        .ok_or_else(|| Failure::Input("matrix file must hold an array of rows".to_string()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Failure::Input("matrix rows must be arrays".to_string()))?;
        let mut parsed = Vec::with_capacity(cells.len());
        for cell in cells {
            parsed.push(rational_from_json(cell).map_err(Failure::Input)?);
        }
        out.push(parsed);
    }
    if out.is_empty() || out.iter().any(|r| r.len() != out[0].len()) {
        return Err(Failure::Input(
            "matrix must be rectangular and nonempty".to_string(),
        ));
    }
    Ok(Mat::from_rows(out))
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

fn sign_char(s: i8) -> &'static str {
    match s.cmp(&0) {
        std::cmp::Ordering::Greater => "+",
        std::cmp::Ordering::Less => "-",
        std::cmp::Ordering::Equal => "0",
    }
}

/// Renders a monomial in `x1, x2, ...` notation.
fn monomial_text(m: &symreal::poly::Monomial, nvars: usize) -> String {
    let mut p = Polynomial::zero(nvars);
    p.add_term(m.clone(), Rational::from_integer(1.into()));
    p.to_string()
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_rewrite(basis: &str, nvars: Option<usize>, poly: &str) -> Result<Outcome, Failure> {
    let (kind, letter) = match basis {
        "e" => (BasisKind::Elementary, "e"),
        "p" => (BasisKind::PowerSum, "p"),
        "h" => (BasisKind::CompleteHomogeneous, "h"),
        other => {
            return Err(Failure::Input(format!(
                "unknown basis {other:?}; expected e, p, or h"
            )))
        }
    };
    let f = parse_poly(poly, nvars)?;
    let rewritten =
        ftsp_rewrite(&f, kind, None).map_err(|e| Failure::Input(format!("cannot rewrite: {e}")))?;
    let names: Vec<String> = (1..=f.nvars()).map(|k| format!("{letter}{k}")).collect();
    let text = rewritten.display_with_names(&names).to_string();
    Ok(Outcome::new(
        text.clone(),
        json!({ "answer": text, "certificate": { "basis": letter } }),
    ))
}

fn cmd_roots(poly: &str, sign: Option<&str>) -> Result<Outcome, Failure> {
    let q = parse_unipoly(poly)?;
    let count =
        count_real_roots(&q).map_err(|e| Failure::Input(format!("cannot count roots: {e}")))?;
    let encodings =
        thom_encodings(&q).map_err(|e| Failure::Input(format!("cannot encode roots: {e}")))?;
    let mut human = format!("real roots: {count}");
    let enc_strings: Vec<Vec<&str>> = encodings
        .iter()
        .map(|enc| enc.signs().iter().map(|&s| sign_char(s)).collect())
        .collect();
    if !enc_strings.is_empty() {
        let rendered: Vec<String> = enc_strings
            .iter()
            .map(|signs| format!("({})", signs.join(",")))
            .collect();
        human.push_str(&format!(
            "\nthom encodings (ascending): {}",
            rendered.join(" ")
        ));
    }
    let mut certificate = json!({ "encodings": enc_strings });
    if let Some(sign_text) = sign {
        let p = parse_unipoly(sign_text)?;
        let mut signs = Vec::with_capacity(encodings.len());
        for enc in &encodings {
            let s = sign_at(&q, enc, &p)
                .map_err(|e| Failure::Input(format!("cannot determine signs: {e}")))?;
            signs.push(sign_char(s));
        }
        human.push_str(&format!("\nsigns (ascending): {}", signs.join(" ")));
        certificate["signs"] = json!(signs);
    }
    Ok(Outcome::new(
        human,
        json!({ "answer": count, "certificate": certificate }),
    ))
}

fn cmd_decide(param_path: &Path, lambda: &str) -> Result<Outcome, Failure> {
    let body = std::fs::read_to_string(param_path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", param_path.display())))?;
    let param: ZeroDimParam = serde_json::from_str(&body)
        .map_err(|e| Failure::Input(format!("invalid parametrization: {e}")))?;
    let lambda = parse_partition(lambda)?;
    let op = OrbitParam::new(lambda, param).map_err(failure_from_decide)?;
    let answer = decide_real_preimage(&op).map_err(failure_from_decide)?;
    Ok(Outcome::new(
        format!("real preimage exists: {answer}"),
        json!({ "answer": answer }),
    ))
}

fn failure_from_decide(e: DecideError) -> Failure {
    match e {
        DecideError::PatternMismatch(_) | DecideError::InvalidParam(_) => {
            Failure::Input(e.to_string())
        }
        DecideError::RealRoot(_) => Failure::Inconclusive(e.to_string()),
    }
}

fn failure_from_emptiness(e: EmptinessError) -> Failure {
    match e {
        EmptinessError::AssumptionViolated(_)
        | EmptinessError::SymFun(_)
        | EmptinessError::Arity(_) => Failure::Input(e.to_string()),
        EmptinessError::DegenerateInstance(_)
        | EmptinessError::ZeroDim(_)
        | EmptinessError::Decide(_)
        | EmptinessError::RealRoot(_) => Failure::Inconclusive(e.to_string()),
    }
}

fn cmd_empty(
    check_regularity: bool,
    nvars: Option<usize>,
    polys: &[String],
    rng: &mut ChaCha20Rng,
) -> Result<Outcome, Failure> {
    let bodies: Vec<String> = polys
        .iter()
        .map(|p| read_arg(p))
        .collect::<Result<_, _>>()?;
    let n = nvars.unwrap_or_else(|| bodies.iter().map(|b| infer_nvars(b)).max().unwrap_or(1));
    let fs: Vec<Polynomial> = bodies
        .iter()
        .map(|b| {
            Polynomial::parse(b.trim(), n)
                .map_err(|e| Failure::Input(format!("cannot parse polynomial {b:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let mut regularity = Value::Null;
    if check_regularity {
        match verify_regularity(&fs, rng) {
            Ok(true) => regularity = json!("verified"),
            Ok(false) => {
                return Err(Failure::Inconclusive(
                    "the system is not regular, so the critical-point method does not apply"
                        .to_string(),
                ))
            }
            Err(e) => {
                return Err(Failure::Inconclusive(format!(
                    "regularity could not be verified: {e}"
                )))
            }
        }
    }
    let answer = real_emptiness(&fs, rng).map_err(failure_from_emptiness)?;
    let mut doc = json!({ "answer": answer });
    let mut human = format!("real variety empty: {answer}");
    if regularity != Value::Null {
        doc["certificate"] = json!({ "regularity": regularity });
        human.push_str("\nregularity: verified");
    }
    Ok(Outcome::new(human, doc))
}

fn cmd_nonneg(nvars: Option<usize>, poly: &str, rng: &mut ChaCha20Rng) -> Result<Outcome, Failure> {
    let f = parse_poly(poly, nvars)?;
    match nonneg_degree_principle(&f, rng).map_err(failure_from_emptiness)? {
        NonnegOutcome::Nonnegative => {
            Ok(Outcome::new("nonnegative: true", json!({ "answer": true })))
        }
        NonnegOutcome::Witness(point) => {
            let value = f
                .evaluate(&point)
                .expect("witness has the polynomial's arity");
            let coords: Vec<String> = point.iter().map(Rational::to_string).collect();
            let human = format!(
                "nonnegative: false\nwitness: ({})\nvalue: {value}",
                coords.join(", ")
            );
            Ok(Outcome::new(
                human,
                json!({
                    "answer": false,
                    "witness": coords,
                    "certificate": { "value": value.to_string() },
                }),
            ))
        }
        NonnegOutcome::Unknown => Err(Failure::Inconclusive(
            "no certificate and no counterexample found by the degree-principle routes".to_string(),
        )),
    }
}

fn failure_from_sos(e: SosError) -> Failure {
    Failure::Input(e.to_string())
}

fn cmd_gram(nvars: Option<usize>, poly: &str, verify: Option<&Path>) -> Result<Outcome, Failure> {
    let f = parse_poly(poly, nvars)?;
    let gs = gram_system(&f).map_err(failure_from_sos)?;
    let basis_text: Vec<String> = gs
        .basis()
        .iter()
        .map(|m| monomial_text(m, gs.nvars()))
        .collect();
    let shape = json!({
        "block_size": gs.basis().len(),
        "constraints": gs.constraints().len(),
        "basis": basis_text,
    });
    match verify {
        None => {
            let human = format!(
                "block size: {}\nconstraints: {}\nbasis: {}",
                gs.basis().len(),
                gs.constraints().len(),
                basis_text.join(", ")
            );
            Ok(Outcome::new(
                human,
                json!({ "answer": gs.constraints().len(), "certificate": shape }),
            ))
        }
        Some(path) => {
            let q = matrix_from_file(path)?;
            let verdict = verify_gram(&f, gs.basis(), &q).map_err(failure_from_sos)?;
            let human = format!(
                "block size: {}\nconstraints: {}\nverified: {verdict}",
                gs.basis().len(),
                gs.constraints().len()
            );
            Ok(Outcome::new(
                human,
                json!({ "answer": verdict, "certificate": shape }),
            ))
        }
    }
}

fn cmd_sdpa(nvars: Option<usize>, poly: &str, out: Option<&Path>) -> Result<Outcome, Failure> {
    let f = parse_poly(poly, nvars)?;
    let gs = gram_system(&f).map_err(failure_from_sos)?;
    let m = gs.constraints().len();
    let block = gs.basis().len();
    match out {
        Some(path) => {
            emit_sdpa(&gs, path).map_err(failure_from_sos)?;
            Ok(Outcome::new(
                format!(
                    "wrote {}: {m} constraints, block size {block}",
                    path.display()
                ),
                json!({
                    "answer": m,
                    "certificate": {
                        "block_size": block,
                        "constraints": m,
                        "path": path.display().to_string(),
                    },
                }),
            ))
        }
        None => {
            let doc = sdpa_document(&gs);
            Ok(Outcome::new(
                // Trailing newline is supplied by the printer.
                doc.trim_end().to_string(),
                json!({
                    "answer": m,
                    "certificate": {
                        "block_size": block,
                        "constraints": m,
                        "document": doc,
                    },
                }),
            ))
        }
    }
}

fn cmd_sort(values: &str) -> Result<Outcome, Failure> {
    let mut list = Vec::new();
    for token in values.split(',') {
        let token = token.trim();
        let v: i64 = token
            .parse()
            .map_err(|_| Failure::Input(format!("list entry {token:?} is not an integer")))?;
        list.push(v);
    }
    let (seq, sorted) = minimal_adjacent_transpositions(&list);
    let swaps: Vec<[usize; 2]> = seq.swaps().iter().map(|&(i, j)| [i, j]).collect();
    let swap_text: Vec<String> = swaps.iter().map(|[i, j]| format!("({i},{j})")).collect();
    let sorted_text: Vec<String> = sorted.iter().map(i64::to_string).collect();
    let human = format!(
        "swaps: {}\nsequence: {}\nsorted: {}",
        swaps.len(),
        if swap_text.is_empty() {
            "(none)".to_string()
        } else {
            swap_text.join(" ")
        },
        sorted_text.join(" ")
    );
    Ok(Outcome::new(
        human,
        json!({
            "answer": swaps.len(),
            "certificate": { "swaps": swaps, "sorted": sorted },
        }),
    ))
}
