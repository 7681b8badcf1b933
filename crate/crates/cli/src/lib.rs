//! Library side of the `quasipos` command: argument types, report assembly
//! and rendering. `main` only parses arguments, prints and exits.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use quasipos::invariants::{alexander_burau, determinant_of};
use quasipos::legendrian::{legendrianize, slice_genus_lower_bound, tau_lower_bound};
use quasipos::syntax::{
    format_braid, format_braid_presentation, format_expression, parse_braid_presentation,
    parse_expression_text, ParseError,
};
use quasipos::{
    sample, BraidWord, Class, Classifier, ClassifierConfig, KnotExpression, LaurentPoly,
    SeifertMatrix, TbTable, Tri, Verdict,
};

/// Version of the JSON layout. Bumped on any key change.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "quasipos",
    version,
    about = "Braid-closure invariants and positivity verdicts for knots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Options {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Allow the conjectural Whitehead-double rule; its conclusions are marked.
    #[arg(long, global = true)]
    pub enable_conjectural: bool,
    /// Extra maximal-TB entries, one `name<TAB>value<TAB>source` per line.
    #[arg(long, global = true, value_name = "FILE")]
    pub tb_table: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a knot expression such as `wh+(T(2,3); 5)`.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
    /// Compute invariants of a braid closure such as `s1^3 @2`.
    Braid {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Run the randomized oracle and consistency checks.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Cases per suite.
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    TbTable {
        path: PathBuf,
        source: quasipos::classifier::TbTableError,
    },
    #[error(transparent)]
    Classify(#[from] quasipos::Error),
}

impl CliError {
    /// 1 for bad input, 2 when the engine found its own results inconsistent.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Classify(quasipos::Error::Contradiction { .. })
            | CliError::Classify(quasipos::Error::Consistency(_)) => 2,
            _ => 1,
        }
    }
}

/// A Laurent polynomial term. Coefficients that overflow `i64` are written
/// as decimal strings.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exponent: i32,
    pub coefficient: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

fn terms(p: &LaurentPoly) -> Vec<Term> {
    p.terms()
        .map(|(exponent, c)| Term {
            exponent,
            coefficient: Integer(c.clone()),
        })
        .collect()
}

/// Invariants of one braid presentation. Knot-only fields are `None` for
/// links; polynomial fields are `None` when the presentation is too large.
#[derive(Serialize, Debug, Clone)]
pub struct Invariants {
    pub braid: String,
    pub strands: usize,
    pub length: usize,
    pub writhe: i64,
    pub components: usize,
    pub tb: Option<i64>,
    pub rot_abs: Option<i64>,
    pub bennequin_sum: Option<i64>,
    pub slice_genus_bound: Option<i64>,
    pub tau_bound: Option<i64>,
    pub alexander: Option<Vec<Term>>,
    pub signature: Option<i64>,
    pub determinant: Option<Integer>,
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub schema: u32,
    pub command: &'static str,
    pub input: String,
    pub canonical: String,
    pub invariants: Option<Invariants>,
    pub verdict: Option<Verdict>,
    pub warnings: Vec<String>,
    /// Set when the Burau and Seifert routes disagree.
    pub oracle_mismatch: Option<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct SelftestReport {
    pub schema: u32,
    pub command: &'static str,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    /// Wall time, shown in text output only so JSON stays reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Serialize, Debug, Clone)]
#[serde(untagged)]
pub enum Output {
    Report(Box<Report>),
    Selftest(SelftestReport),
}

impl Output {
    /// 0 on success, 2 if any internal cross-check failed.
    pub fn exit_code(&self) -> i32 {
        let failed = match self {
            Output::Report(r) => r.oracle_mismatch.is_some(),
            Output::Selftest(s) => s.suites.iter().any(|x| !x.failures.is_empty()),
        };
        if failed {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn classifier_for(options: &Options) -> Result<Classifier, CliError> {
    let mut config = ClassifierConfig {
        enable_conjectural: options.enable_conjectural,
        ..ClassifierConfig::default()
    };
    if let Some(path) = &options.tb_table {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        let extra = TbTable::parse(&text).map_err(|source| CliError::TbTable {
            path: path.clone(),
            source,
        })?;
        config.tb_table.extend(extra);
    }
    Ok(Classifier::new(config))
}

/// Runs one invocation.
pub fn run_report(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Analyze { expression } => {
            let classifier = classifier_for(&cli.options)?;
            analyze(&classifier, expression).map(|r| Output::Report(Box::new(r)))
        }
        Command::Braid { word } => {
            let classifier = classifier_for(&cli.options)?;
            braid(&classifier, word).map(|r| Output::Report(Box::new(r)))
        }
        Command::Selftest { seed, cases } => Ok(Output::Selftest(selftest(*seed, *cases))),
    }
}

pub fn analyze(classifier: &Classifier, text: &str) -> Result<Report, CliError> {
    let expr = parse_expression_text(text)?;
    let verdict = classifier.classify(&expr)?;
    let mut warnings = Vec::new();
    let mut oracle_mismatch = None;
    let invariants = match expr.braid_presentation() {
        Some(word) => Some(invariants_of(
            &word,
            format_braid(&word),
            classifier.config().max_seifert_size,
            &mut warnings,
            &mut oracle_mismatch,
        )),
        None => {
            warnings.push("no braid presentation known; braid invariants omitted".into());
            None
        }
    };
    Ok(Report {
        schema: SCHEMA,
        command: "analyze",
        input: text.to_string(),
        canonical: format_expression(&expr),
        invariants,
        verdict: Some(verdict),
        warnings,
        oracle_mismatch,
    })
}

pub fn braid(classifier: &Classifier, text: &str) -> Result<Report, CliError> {
    let (word, origin) = parse_braid_presentation(text)?;
    let canonical = format_braid_presentation(&word, &origin);
    let mut warnings = Vec::new();
    let mut oracle_mismatch = None;
    let invariants = invariants_of(
        &word,
        canonical.clone(),
        classifier.config().max_seifert_size,
        &mut warnings,
        &mut oracle_mismatch,
    );
    let verdict = if word.is_knot() {
        let expr = KnotExpression::from(quasipos::KnotKind::BraidClosure { word, origin });
        Some(classifier.classify(&expr)?)
    } else {
        warnings.push(format!(
            "closure has {} components; knot invariants and the verdict are omitted",
            invariants.components
        ));
        None
    };
    Ok(Report {
        schema: SCHEMA,
        command: "braid",
        input: text.to_string(),
        canonical,
        invariants: Some(invariants),
        verdict,
        warnings,
        oracle_mismatch,
    })
}

fn invariants_of(
    word: &BraidWord,
    shown: String,
    max_seifert_size: usize,
    warnings: &mut Vec<String>,
    mismatch: &mut Option<String>,
) -> Invariants {
    let mut inv = Invariants {
        braid: shown,
        strands: word.strands(),
        length: word.len(),
        writhe: word.writhe(),
        components: word.component_count(),
        tb: None,
        rot_abs: None,
        bennequin_sum: None,
        slice_genus_bound: None,
        tau_bound: None,
        alexander: None,
        signature: None,
        determinant: None,
    };
    if !word.is_knot() {
        return inv;
    }
    if let Ok(front) = legendrianize(word) {
        inv.tb = Some(front.tb());
        inv.rot_abs = Some(front.rot_abs());
        inv.bennequin_sum = Some(front.bennequin_sum());
    }
    inv.slice_genus_bound = slice_genus_lower_bound(word).ok();
    inv.tau_bound = tau_lower_bound(word).ok();

    // the Seifert surface of the closure has rank len - strands + 1
    let reduced = word.free_reduce();
    let rank = (reduced.len() + 1).saturating_sub(reduced.strands());
    if rank > max_seifert_size {
        warnings.push(format!(
            "Seifert matrix of rank {rank} exceeds {max_seifert_size}; Alexander polynomial and signature omitted"
        ));
        return inv;
    }
    let burau = alexander_burau(word);
    let seifert = SeifertMatrix::from_braid(word);
    match (burau, seifert) {
        (Ok(burau), Ok(v)) => {
            match v.alexander() {
                Ok(from_seifert) if from_seifert == burau => {}
                Ok(from_seifert) => {
                    *mismatch = Some(format!("Burau gives {burau}, Seifert gives {from_seifert}"));
                }
                Err(e) => *mismatch = Some(format!("Seifert route failed: {e}")),
            }
            inv.determinant = Some(Integer(determinant_of(&burau)));
            inv.alexander = Some(terms(&burau));
            inv.signature = Some(v.signature());
        }
        (Err(e), _) | (_, Err(e)) => *mismatch = Some(format!("polynomial invariants failed: {e}")),
    }
    if let Some(m) = mismatch {
        warnings.push(format!("oracle mismatch: {m}"));
    }
    inv
}

/// Seeded cross-checks: the two Alexander routes, chain consistency of
/// random verdicts, and the three ways to get the genus of a band closure.
pub fn selftest(seed: u64, cases: usize) -> SelftestReport {
    let start = Instant::now();
    let classifier = Classifier::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut oracle = Vec::new();
    for _ in 0..cases {
        let w = sample::random_knot_word(&mut rng, 6, 14);
        let burau = alexander_burau(&w).map(|p| p.to_string());
        let seifert = SeifertMatrix::from_braid(&w)
            .and_then(|v| v.alexander())
            .map(|p| p.to_string());
        if burau != seifert {
            oracle.push(format!("{w}: Burau {burau:?} vs Seifert {seifert:?}"));
        }
    }

    let mut chain = Vec::new();
    for _ in 0..cases {
        let e = sample::random_expression(&mut rng, 3);
        let shown = format_expression(&e);
        match classifier.classify(&e) {
            Ok(v) => {
                if let Some(violation) = v.consistency_violation() {
                    chain.push(format!("{shown}: {violation}"));
                }
            }
            Err(err) => chain.push(format!("{shown}: {err}")),
        }
    }

    let mut sqp = Vec::new();
    for _ in 0..cases {
        let f = sample::random_band_factorization(&mut rng, 6, 10);
        let surface = f.surface_stats().map(|s| s.genus).ok();
        let bound = slice_genus_lower_bound(&f.expand()).ok();
        let v = classifier.classify(&KnotExpression::sqp_closure(f.clone()));
        let tau = v.as_ref().ok().and_then(|v| v.tau);
        let flagged = v
            .as_ref()
            .is_ok_and(|v| v.flag(Class::StronglyQuasipositive) == Tri::Yes);
        if !(surface.is_some() && surface == bound && surface == tau && flagged) {
            sqp.push(format!(
                "{}: surface {surface:?}, bound {bound:?}, tau {tau:?}",
                format_braid(&f.expand())
            ));
        }
    }

    SelftestReport {
        schema: SCHEMA,
        command: "selftest",
        seed,
        suites: vec![
            SuiteResult {
                name: "alexander-oracles",
                cases,
                failures: oracle,
            },
            SuiteResult {
                name: "chain-consistency",
                cases,
                failures: chain,
            },
            SuiteResult {
                name: "sqp-genus",
                cases,
                failures: sqp,
            },
        ],
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Human-readable rendering.
pub fn render_text(output: &Output) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match output {
        Output::Selftest(s) => {
            line(format!("selftest seed {} ({:.2}s)", s.seed, s.seconds));
            for suite in &s.suites {
                let status = if suite.failures.is_empty() {
                    "ok"
                } else {
                    "FAILED"
                };
                line(format!(
                    "  {:<18} {:>5} cases  {status}",
                    suite.name, suite.cases
                ));
                for f in &suite.failures {
                    line(format!("    {f}"));
                }
            }
        }
        Output::Report(r) => {
            line(format!("input      {}", r.input));
            line(format!("canonical  {}", r.canonical));
            if let Some(inv) = &r.invariants {
                line(format!("braid      {}", inv.braid));
                line(format!(
                    "  strands {}  length {}  writhe {}  components {}",
                    inv.strands, inv.length, inv.writhe, inv.components
                ));
                if inv.tb.is_some() {
                    line(format!(
                        "  tb {}  |rot| {}  tb+|rot| {}",
                        opt(&inv.tb),
                        opt(&inv.rot_abs),
                        opt(&inv.bennequin_sum)
                    ));
                    line(format!(
                        "  g4 >= {}  tau >= {}",
                        opt(&inv.slice_genus_bound),
                        opt(&inv.tau_bound)
                    ));
                }
                if let Some(alexander) = &inv.alexander {
                    let poly = LaurentPoly::from_terms(
                        alexander
                            .iter()
                            .map(|t| (t.exponent, t.coefficient.0.clone())),
                    );
                    line(format!("  alexander {poly}"));
                    line(format!(
                        "  signature {}  determinant {}",
                        opt(&inv.signature),
                        inv.determinant
                            .as_ref()
                            .map_or("-".into(), |d| d.0.to_string())
                    ));
                }
            }
            if let Some(v) = &r.verdict {
                line("verdict".into());
                for class in Class::ALL {
                    line(format!("  {:<14}{}", class.as_str(), v.flag(class)));
                }
                line(format!(
                    "  tau {}  genus {}  g4 {}  signature {}",
                    opt(&v.tau),
                    opt(&v.genus),
                    opt(&v.g4),
                    opt(&v.signature)
                ));
                if !v.certificate.is_empty() {
                    line("certificate".into());
                    for d in &v.certificate {
                        for l in d.to_string().lines() {
                            line(format!("  {l}"));
                        }
                    }
                }
            }
            let engine_warnings = r.verdict.iter().flat_map(|v| v.warnings.iter());
            let all: Vec<&String> = engine_warnings.chain(r.warnings.iter()).collect();
            if !all.is_empty() {
                line("warnings".into());
                for w in all {
                    line(format!("  {w}"));
                }
            }
        }
    }
    out
}
