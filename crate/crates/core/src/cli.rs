//! The `deodhar` command line. Exit codes: 0 success, 1 bad input, 2 a
//! verification failed (a counterexample is printed as JSON).

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Field, LaurentPolynomial, LaurentRing, Matrix, PrimeField, Rationals, Ring, VarKind, Variable};
use crate::godiagram::{diagrams_of_shape, enumerate_diagrams, is_le_diagram, stats, validate, GoDiagram};
use crate::marshrietsch::{
    chip_word, group_element, mr_matrix, rescale, rref_division_free, verify_entry_formulas, verify_theorem_row,
    Counterexample, TheoremReport,
};
use crate::network::{build_network, evaluate_network, plucker_det, plucker_lgv, weight_matrix};
use crate::strata::{
    check_extremal, component_point_count, grassmann_necklace, grassmannian_point_polynomial, identify,
    k_subsets, membership, mr_plucker, plucker_vector, r_polynomial, verify_box_minors,
    PluckerJson, PluckerVector,
};
use crate::weyl::{parse_index_list, standard_reading_order, Permutation, ReducedWord, Shape};

/// Bind `$f` to the field named by `$spec` (`rational` or a prime) and
/// evaluate `$body`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match field_spec($spec)? {
            FieldSpec::Rational => {
                let $f = &Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = &p;
                $body
            }
        }
    };
}

#[derive(Parser, Debug)]
#[command(name = "deodhar", version, about = "Go-diagrams, networks and Deodhar components of Gr(k,n)")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the Go-diagrams in a k × (n−k) rectangle.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Restrict to one shape, e.g. `2,1`.
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        le_only: bool,
    },
    /// The network of a diagram.
    Network {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, value_enum, default_value_t = NetFormat::Dot)]
        format: NetFormat,
    },
    /// The weight matrix, symbolic or evaluated.
    Weights {
        #[command(flatten)]
        diagram: DiagramArg,
        /// Assignments such as `a2=3,c4=5`.
        #[arg(long)]
        eval: Option<String>,
        #[arg(long, default_value = "rational")]
        field: String,
    },
    /// Plücker coordinates of a diagram's weight matrix or of a matrix.
    Plucker {
        #[command(flatten)]
        diagram: OptDiagramArg,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value = "rational")]
        field: String,
        /// One coordinate only, e.g. `1,3`.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Chip factorization matrices of a diagram.
    Mr {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, value_enum, default_value_t = MrShow::M)]
        show: MrShow,
    },
    /// Check a theorem on diagrams of Gr(k,n).
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Every diagram instead of a random sample.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Find the component and network weights of a point.
    Identify {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        plucker: Option<String>,
        #[arg(long, default_value = "rational")]
        field: String,
    },
    /// The Grassmann necklace of a point.
    Necklace {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        plucker: Option<String>,
        #[arg(long, default_value = "rational")]
        field: String,
    },
    /// Point count of Gr(k,n) over F_q as a sum over components.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        symbolic: bool,
    },
    /// R-polynomial from distinguished subexpressions.
    Rpoly {
        #[arg(long)]
        v: String,
        #[arg(long = "w-word")]
        w_word: String,
    },
}

#[derive(clap::Args, Debug)]
pub struct DiagramArg {
    /// A file (JSON or text) or an inline diagram such as `*+/+o`.
    #[arg(long)]
    pub diagram: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct OptDiagramArg {
    #[arg(long)]
    pub diagram: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum NetFormat {
    Dot,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MrShow {
    G,
    M,
    Mtilde,
    L,
    Word,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Entries,
    Row,
    Lgv,
    Extremal,
    BoxMinors,
    Identify,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Failed(String),
}

impl<E: Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    exit_code(dispatch(cli, out), err)
}

fn exit_code(result: CliResult, err: &mut dyn Write) -> i32 {
    match result {
        Ok(()) => 0,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(CliError::Failed(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let json = cli.json;
    match &cli.command {
        Command::Enumerate { k, n, shape, le_only } => cmd_enumerate(out, json, *k, *n, shape.as_deref(), *le_only),
        Command::Network { diagram, format } => {
            let net = build_network(&load_diagram(diagram)?);
            match format {
                NetFormat::Dot => write!(out, "{}", net.to_dot())?,
                NetFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&net.to_json())?)?,
            }
            Ok(())
        }
        Command::Weights { diagram, eval, field } => {
            let d = load_diagram(diagram)?;
            match eval {
                None => print_poly_matrix(out, json, &weight_matrix(&build_network(&d))),
                Some(e) => with_field!(field, |f| cmd_weights_eval(out, json, &d, e, f)),
            }
        }
        Command::Plucker { diagram, matrix, field, subset } => {
            let subset = subset.as_deref().map(parse_index_list).transpose()?;
            match (&diagram.diagram, matrix) {
                (Some(text), None) => {
                    let d = parse_diagram(text, diagram.k, diagram.n)?;
                    let w = weight_matrix(&build_network(&d));
                    match subset {
                        Some(s) => writeln!(out, "{}", plucker_det(&w, &s)?)?,
                        None => {
                            let p = plucker_vector(&LaurentRing, &w)?;
                            print_plucker(out, json, &p, |x| x.to_string())?;
                        }
                    }
                    Ok(())
                }
                (None, Some(m)) => with_field!(field, |f| {
                    let a = load_matrix(m, f)?;
                    let p = plucker_vector(f, &a)?;
                    match &subset {
                        Some(s) => {
                            let mut s = s.clone();
                            s.sort_unstable();
                            let v = p.get(&s).cloned().unwrap_or_else(|| f.zero());
                            writeln!(out, "{}", f.format_elem(&v))?;
                        }
                        None => print_plucker(out, json, &p, |x| f.format_elem(x))?,
                    }
                    Ok(())
                }),
                _ => Err(CliError::Input("give exactly one of --diagram and --matrix".into())),
            }
        }
        Command::Mr { diagram, show } => {
            let d = load_diagram(diagram)?;
            match show {
                MrShow::Word => {
                    let w = chip_word(&d);
                    if json {
                        writeln!(out, "{}", serde_json::to_string(&w)?)?;
                    } else {
                        writeln!(out, "{w}")?;
                    }
                    Ok(())
                }
                MrShow::G => print_poly_matrix(out, json, &group_element(&chip_word(&d), d.n())?),
                MrShow::M => print_poly_matrix(out, json, &mr_matrix(&d).matrix),
                MrShow::Mtilde => print_poly_matrix(out, json, &rescale(&mr_matrix(&d))?.matrix),
                MrShow::L => print_poly_matrix(out, json, &rref_division_free(&rescale(&mr_matrix(&d))?)),
            }
        }
        Command::Verify {
            theorem,
            k,
            n,
            exhaustive,
            trials,
            seed,
        } => cmd_verify(out, json, *theorem, *k, *n, *exhaustive, *trials, *seed),
        Command::Identify { matrix, plucker, field } => with_field!(field, |f| {
            let p = load_point(matrix.as_deref(), plucker.as_deref(), f)?;
            let id = identify(f, &p)?;
            let weights: BTreeMap<String, String> =
                id.weights.iter().map(|(v, x)| (v.to_string(), f.format_elem(x))).collect();
            if json {
                let body = serde_json::json!({
                    "diagram": id.diagram.to_json(),
                    "text": id.diagram.to_text(),
                    "weights": weights,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
            } else {
                writeln!(out, "{}", id.diagram)?;
                for (v, x) in &weights {
                    writeln!(out, "{v} = {x}")?;
                }
            }
            Ok(())
        }),
        Command::Necklace { matrix, plucker, field } => with_field!(field, |f| {
            let p = load_point(matrix.as_deref(), plucker.as_deref(), f)?;
            let nk = grassmann_necklace(&p);
            if json {
                writeln!(out, "{}", serde_json::to_string(&nk)?)?;
            } else {
                writeln!(out, "{nk}")?;
            }
            Ok(())
        }),
        Command::Count { k, n, q, symbolic } => cmd_count(out, json, *k, *n, *q, *symbolic),
        Command::Rpoly { v, w_word } => {
            let v: Permutation = v.parse()?;
            let word = ReducedWord::new(v.n(), parse_index_list(w_word)?)?;
            writeln!(out, "{}", r_polynomial(&v, &word)?)?;
            Ok(())
        }
    }
}

fn cmd_enumerate(out: &mut dyn Write, json: bool, k: usize, n: usize, shape: Option<&str>, le_only: bool) -> CliResult {
    if k > n {
        return Err(CliError::Input(format!("k = {k} exceeds n = {n}")));
    }
    let all = match shape {
        Some(s) => diagrams_of_shape(&Shape::new(k, n, parse_index_list(s)?)?),
        None => enumerate_diagrams(k, n),
    };
    let ds: Vec<GoDiagram> = all.into_iter().filter(|d| !le_only || is_le_diagram(d)).collect();
    if json {
        let list: Vec<_> = ds.iter().map(GoDiagram::to_json).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&list)?)?;
    } else {
        for d in &ds {
            let (t, u) = stats(d);
            let text = d.to_inline();
            writeln!(out, "{:<24} t={t} u={u}", if text.is_empty() { "(empty)" } else { &text })?;
        }
        writeln!(out, "{} diagrams", ds.len())?;
    }
    Ok(())
}

fn cmd_weights_eval<F: Field>(out: &mut dyn Write, json: bool, d: &GoDiagram, eval: &str, f: &F) -> CliResult {
    let asg = parse_assignment(eval, f)?;
    let m = evaluate_network(&build_network(d), f, &asg)?;
    print_matrix(out, json, &m, |x| f.format_elem(x))
}

fn cmd_count(out: &mut dyn Write, json: bool, k: usize, n: usize, q: Option<u64>, symbolic: bool) -> CliResult {
    if k > n {
        return Err(CliError::Input(format!("k = {k} exceeds n = {n}")));
    }
    let poly = grassmannian_point_polynomial(k, n);
    match q {
        Some(q) if !symbolic => {
            let census: Vec<(String, usize, usize, String)> = enumerate_diagrams(k, n)
                .iter()
                .map(|d| {
                    let (t, u) = stats(d);
                    Ok((d.to_inline(), t, u, component_point_count(d, q)?.to_string()))
                })
                .collect::<Result<_, crate::strata::StrataError>>()?;
            let total = poly.eval(&q.into());
            if json {
                let rows: Vec<_> = census
                    .iter()
                    .map(|(d, t, u, c)| serde_json::json!({"diagram": d, "t": t, "u": u, "count": c}))
                    .collect();
                let body = serde_json::json!({"k": k, "n": n, "q": q, "total": total.to_string(), "census": rows});
                writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
            } else {
                writeln!(out, "{total}")?;
                for (d, t, u, c) in census {
                    writeln!(out, "{:<24} t={t} u={u} {c}", if d.is_empty() { "(empty)" } else { &d })?;
                }
            }
        }
        _ => {
            if json {
                writeln!(out, "{}", serde_json::json!({"k": k, "n": n, "polynomial": poly.to_string()}))?;
            } else {
                writeln!(out, "{poly}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifySummary {
    theorem: String,
    k: usize,
    n: usize,
    checked: usize,
    passed: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<TheoremReport>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    out: &mut dyn Write,
    json: bool,
    theorem: Theorem,
    k: usize,
    n: usize,
    exhaustive: bool,
    trials: usize,
    seed: u64,
) -> CliResult {
    if k > n {
        return Err(CliError::Input(format!("k = {k} exceeds n = {n}")));
    }
    let all = enumerate_diagrams(k, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked: Vec<(GoDiagram, u64)> = if exhaustive {
        all.into_iter().map(|d| (d, rng.gen())).collect()
    } else {
        (0..trials)
            .map(|_| (all[rng.gen_range(0..all.len())].clone(), rng.gen()))
            .collect()
    };
    let reports: Vec<TheoremReport> = picked
        .par_iter()
        .map(|(d, s)| check_theorem(theorem, d, *s))
        .collect();
    let failure = reports.iter().find(|r| !r.passed()).cloned();
    let summary = VerifySummary {
        theorem: format!("{theorem:?}").to_lowercase(),
        k,
        n,
        checked: reports.len(),
        passed: reports.iter().filter(|r| r.passed()).count(),
        seed,
        failure: failure.clone(),
    };
    if json || failure.is_some() {
        writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
    } else {
        writeln!(
            out,
            "{} on Gr({k},{n}): {}/{} passed (seed {seed})",
            summary.theorem, summary.passed, summary.checked
        )?;
    }
    match failure {
        Some(r) => Err(CliError::Failed(format!("{} on {}", r.theorem, r.diagram))),
        None => Ok(()),
    }
}

/// Run one named check on one diagram; `seed` drives any random choices.
pub fn check_theorem(theorem: Theorem, d: &GoDiagram, seed: u64) -> TheoremReport {
    match theorem {
        Theorem::Entries => verify_entry_formulas(d),
        Theorem::Row => verify_theorem_row(d),
        Theorem::Lgv => verify_lgv(d),
        Theorem::Extremal => {
            let order = standard_reading_order(d.shape());
            match mr_plucker(d, &order) {
                Ok(p) => check_extremal(d, &order, &p),
                Err(e) => failed(d, "extremal", "a Plücker vector", &e.to_string()),
            }
        }
        Theorem::BoxMinors => verify_box_minors(d, &standard_reading_order(d.shape())),
        Theorem::Identify => verify_identify(d, seed),
    }
}

fn failed(d: &GoDiagram, theorem: &str, expected: &str, actual: &str) -> TheoremReport {
    TheoremReport::new(
        d,
        theorem,
        Some(Counterexample {
            row: 0,
            col: 0,
            expected: expected.into(),
            actual: actual.into(),
        }),
    )
}

/// Path-family expansion against the determinant for every subset.
pub fn verify_lgv(d: &GoDiagram) -> TheoremReport {
    let net = build_network(d);
    let w = weight_matrix(&net);
    for j in k_subsets(d.n(), d.k()) {
        let (a, b) = match (plucker_lgv(&net, &j), plucker_det(&w, &j)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return failed(d, "lgv", "minors", &e.to_string()),
        };
        if a != b {
            return failed(d, "lgv", &format!("det = {b} on {j:?}"), &format!("lgv = {a}"));
        }
    }
    TheoremReport::new(d, "lgv", None)
}

/// Evaluate the network at random weights over F_101 and recover them.
pub fn verify_identify(d: &GoDiagram, seed: u64) -> TheoremReport {
    let f = PrimeField::new(101).expect("prime");
    let net = build_network(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let asg: BTreeMap<Variable, _> = net
        .variables()
        .into_iter()
        .map(|v| {
            let lo = if v.kind == VarKind::A { 1 } else { 0 };
            (v, f.elem(rng.gen_range(lo..101)))
        })
        .collect();
    let show = |a: &BTreeMap<Variable, crate::algebra::Fp>| {
        a.iter().map(|(v, x)| format!("{v}={}", f.format_elem(x))).collect::<Vec<_>>().join(",")
    };
    let point = evaluate_network(&net, &f, &asg)
        .map_err(|e| e.to_string())
        .and_then(|m| plucker_vector(&f, &m).map_err(|e| e.to_string()));
    let p = match point {
        Ok(p) => p,
        Err(e) => return failed(d, "identify", "a point", &e),
    };
    if !membership(d, &p) {
        return failed(d, "identify", "membership of its own point", &show(&asg));
    }
    match identify(&f, &p) {
        Ok(id) if id.diagram == *d && id.weights == asg => TheoremReport::new(d, "identify", None),
        Ok(id) => failed(
            d,
            "identify",
            &format!("{} with {}", d.to_inline(), show(&asg)),
            &format!("{} with {}", id.diagram.to_inline(), show(&id.weights)),
        ),
        Err(e) => failed(d, "identify", &show(&asg), &e.to_string()),
    }
}

enum FieldSpec {
    Rational,
    Prime(PrimeField),
}

fn field_spec(spec: &str) -> Result<FieldSpec, CliError> {
    match spec.trim().to_ascii_lowercase().as_str() {
        "rational" | "q" | "qq" => Ok(FieldSpec::Rational),
        s => {
            let p: u64 = s
                .trim_start_matches('f')
                .parse()
                .map_err(|_| CliError::Input(format!("unknown field `{spec}`")))?;
            Ok(FieldSpec::Prime(PrimeField::new(p)?))
        }
    }
}

fn parse_diagram(text: &str, k: Option<usize>, n: Option<usize>) -> Result<GoDiagram, CliError> {
    let body = if Path::new(text).is_file() {
        std::fs::read_to_string(text)?
    } else {
        text.to_string()
    };
    let d = if body.trim_start().starts_with('{') {
        serde_json::from_str::<GoDiagram>(&body)?
    } else {
        GoDiagram::from_text(&body, k, n)?
    };
    if !validate(&d) {
        return Err(CliError::Input(format!("`{}` is not a Go-diagram", d.to_inline())));
    }
    Ok(d)
}

fn load_diagram(a: &DiagramArg) -> Result<GoDiagram, CliError> {
    parse_diagram(&a.diagram, a.k, a.n)
}

/// A matrix from a file (JSON or whitespace-separated text) or inline with
/// `;` between rows.
fn load_matrix<F: Field>(spec: &str, f: &F) -> Result<Matrix<F::Elem>, CliError> {
    let body = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec)?
    } else {
        spec.replace(';', "\n")
    };
    let trimmed = body.trim_start();
    let rows: Vec<Vec<String>> = if trimmed.starts_with('{') {
        serde_json::from_str::<crate::algebra::matrix::MatrixJson>(trimmed)?.rows
    } else if trimmed.starts_with('[') {
        let v: Vec<Vec<serde_json::Value>> = serde_json::from_str(trimmed)?;
        v.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| match x {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    })
                    .collect()
            })
            .collect()
    } else {
        body.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(String::from)
                    .collect()
            })
            .collect()
    };
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| f.parse_elem(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(parsed)?)
}

fn load_point<F: Field>(
    matrix: Option<&str>,
    plucker: Option<&str>,
    f: &F,
) -> Result<PluckerVector<F::Elem>, CliError> {
    match (matrix, plucker) {
        (Some(m), None) => Ok(plucker_vector(f, &load_matrix(m, f)?)?),
        (None, Some(p)) => {
            let body = if Path::new(p).is_file() {
                std::fs::read_to_string(p)?
            } else {
                p.to_string()
            };
            let j: PluckerJson = serde_json::from_str(&body)?;
            Ok(PluckerVector::from_json_with(f, &j, |s| f.parse_elem(s))?)
        }
        _ => Err(CliError::Input("give exactly one of --matrix and --plucker".into())),
    }
}

fn parse_assignment<F: Field>(s: &str, f: &F) -> Result<BTreeMap<Variable, F::Elem>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (v, x) = t
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("expected var=value, got `{t}`")))?;
            Ok((v.trim().parse::<Variable>()?, f.parse_elem(x.trim())?))
        })
        .collect()
}

fn print_matrix<T: Clone>(out: &mut dyn Write, json: bool, m: &Matrix<T>, fmt: impl Fn(&T) -> String) -> CliResult {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&m.to_json_with(fmt))?)?;
    } else {
        writeln!(out, "{}", m.map(|x| Shown(fmt(x))))?;
    }
    Ok(())
}

fn print_poly_matrix(out: &mut dyn Write, json: bool, m: &Matrix<LaurentPolynomial>) -> CliResult {
    if json {
        print_matrix(out, true, m, LaurentPolynomial::to_wire)
    } else {
        print_matrix(out, false, m, ToString::to_string)
    }
}

fn print_plucker<T: Clone>(
    out: &mut dyn Write,
    json: bool,
    p: &PluckerVector<T>,
    fmt: impl Fn(&T) -> String,
) -> CliResult {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&p.to_json_with(fmt))?)?;
    } else {
        for (j, v) in &p.coords {
            let key: Vec<String> = j.iter().map(ToString::to_string).collect();
            writeln!(out, "Δ_{{{}}} = {}", key.join(","), fmt(v))?;
        }
    }
    Ok(())
}

#[derive(Clone)]
struct Shown(String);

impl Display for Shown {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(&self.0)
    }
}
