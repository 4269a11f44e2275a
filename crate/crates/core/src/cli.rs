//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a `check` identity failed, 2 usage error,
//! 3 validation error, 4 numerical failure, 5 resource cap exceeded.
//!
//! JSON output always has the shape
//! `{"algebra", "level", "result", "meta": {"kappa", "degree"?, "vanishes"?}}`.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affine_weyl::{AffineContext, ReductionStatus};
use crate::error::Error;
use crate::finite_reps::{tensor_decompose, weyl_dimension};
use crate::fusion::{check_alcove, fuse_kw, FusionElement, FusionRing, FusionTerm};
use crate::induction::{homomorphism_check, induce};
use crate::rootdata::{AlgebraSpec, RootSystem, Weight, DEFAULT_WEYL_CAP, WEYL_CAP_ENV};
use crate::verlinde::{cohomology_report, factorization_check, verlinde_sum, Surface};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Kac–Walton (exact).
    Kw,
    /// Verlinde formula over the S-matrix.
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    Roots,
    Dim,
    Tensor,
    Reduce,
    Fusion,
    Verlinde,
    Report,
    Induce,
    Check,
}

impl SubcommandKind {
    fn name(self) -> &'static str {
        match self {
            SubcommandKind::Roots => "roots",
            SubcommandKind::Dim => "dim",
            SubcommandKind::Tensor => "tensor",
            SubcommandKind::Reduce => "reduce",
            SubcommandKind::Fusion => "fusion",
            SubcommandKind::Verlinde => "verlinde",
            SubcommandKind::Report => "report",
            SubcommandKind::Induce => "induce",
            SubcommandKind::Check => "check",
        }
    }
}

/// A fully parsed and validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub subcommand: SubcommandKind,
    pub algebra: AlgebraSpec,
    pub level: u32,
    pub weights: Vec<Weight>,
    pub boundary: Vec<Weight>,
    pub genus: u32,
    pub format: Format,
    pub method: Method,
    pub weyl_cap: u64,
}

#[derive(Parser, Debug)]
#[command(name = "loopfusion", version, about = "Level-k fusion rings, alcove reduction and Verlinde dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Root system data.
    Roots(CommonArgs),
    /// Weyl dimensions of the given weights.
    Dim(CommonArgs),
    /// Tensor product of two irreps.
    Tensor(CommonArgs),
    /// Alcove reduction of λ+ρ at κ = level + c.
    Reduce(CommonArgs),
    /// Fusion product of two alcove weights.
    Fusion(CommonArgs),
    /// Conformal-block dimension with insertions.
    Verlinde(CommonArgs),
    /// Cohomology report: vanishing, degree and dimension.
    Report(CommonArgs),
    /// Holomorphic induction of one irrep.
    Induce(CommonArgs),
    /// Ring-homomorphism check (two weights) or factorization check (--genus ≥ 1).
    Check(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Cartan type, e.g. A2, G2, D4.
    #[arg(long)]
    algebra: String,
    /// Level k (or h).
    #[arg(long, default_value_t = 0)]
    level: u32,
    /// Weights as "a,b;c,d".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    weights: String,
    /// Boundary labels, inserted as given.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    boundary: String,
    #[arg(long, default_value_t = 0)]
    genus: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Method::Kw)]
    method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// `--help` or `--version`: not an error, printed to standard output.
    Help(String),
    Usage(String),
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => EXIT_OK,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Help(m) | CliError::Usage(m) | CliError::Validation(m) => m,
        }
    }
}

/// Parse `"a,b;c,d"` into weights. The empty string is the empty list.
pub fn parse_weights(s: &str) -> Result<Vec<Weight>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| format!("malformed weight component `{}` in `{part}`", c.trim()))
                })
                .collect::<Result<Vec<i64>, String>>()
                .map(Weight)
        })
        .collect()
}

/// Parse arguments (without the program name).
pub fn parse_args<I, S>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("loopfusion".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Help(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;
    let (kind, a) = match cli.command {
        Sub::Roots(a) => (SubcommandKind::Roots, a),
        Sub::Dim(a) => (SubcommandKind::Dim, a),
        Sub::Tensor(a) => (SubcommandKind::Tensor, a),
        Sub::Reduce(a) => (SubcommandKind::Reduce, a),
        Sub::Fusion(a) => (SubcommandKind::Fusion, a),
        Sub::Verlinde(a) => (SubcommandKind::Verlinde, a),
        Sub::Report(a) => (SubcommandKind::Report, a),
        Sub::Induce(a) => (SubcommandKind::Induce, a),
        Sub::Check(a) => (SubcommandKind::Check, a),
    };
    let weights = parse_weights(&a.weights).map_err(CliError::Usage)?;
    let boundary = parse_weights(&a.boundary).map_err(CliError::Usage)?;
    let algebra: AlgebraSpec = a.algebra.parse().map_err(|e: Error| CliError::Validation(e.to_string()))?;
    for w in weights.iter().chain(&boundary) {
        if w.rank() != algebra.rank() {
            return Err(CliError::Validation(
                Error::RankMismatch { expected: algebra.rank(), got: w.rank() }.to_string(),
            ));
        }
    }
    let count_ok = match kind {
        SubcommandKind::Roots | SubcommandKind::Verlinde | SubcommandKind::Report => true,
        SubcommandKind::Dim | SubcommandKind::Reduce => !weights.is_empty(),
        SubcommandKind::Tensor | SubcommandKind::Fusion => weights.len() == 2,
        SubcommandKind::Induce => weights.len() == 1,
        SubcommandKind::Check => a.genus >= 1 || weights.len() == 2,
    };
    if !count_ok {
        return Err(CliError::Validation(format!(
            "`{}` got {} weight(s)",
            kind.name(),
            weights.len()
        )));
    }
    let weyl_cap = match std::env::var(WEYL_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::Validation(format!("{WEYL_CAP_ENV} must be a positive integer")))?,
        Err(_) => DEFAULT_WEYL_CAP,
    };
    Ok(Command {
        subcommand: kind,
        algebra,
        level: a.level,
        weights,
        boundary,
        genus: a.genus,
        format: a.format,
        method: a.method,
        weyl_cap,
    })
}

/// Exit code plus what goes to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub kappa: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vanishes: Option<bool>,
}

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub algebra: String,
    pub level: u32,
    pub result: Value,
    pub meta: Meta,
}

struct Rendered {
    result: Value,
    table: String,
    degree: Option<u64>,
    vanishes: Option<bool>,
    check_failed: bool,
}

impl Rendered {
    fn new(result: Value, table: String) -> Self {
        Self { result, table, degree: None, vanishes: None, check_failed: false }
    }
}

pub fn run(cmd: &Command) -> Outcome {
    let rs = RootSystem::new(cmd.algebra).with_weyl_cap(cmd.weyl_cap);
    match execute(cmd, &rs) {
        Ok(r) => {
            let kappa = cmd.level as i64 + rs.dual_coxeter() as i64;
            let stdout = match cmd.format {
                Format::Json => {
                    let env = Envelope {
                        algebra: cmd.algebra.to_string(),
                        level: cmd.level,
                        result: r.result,
                        meta: Meta { kappa, degree: r.degree, vanishes: r.vanishes },
                    };
                    let mut s = serde_json::to_string(&env).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Table => {
                    let mut s = format!("algebra {}  level {}  kappa {}\n", cmd.algebra, cmd.level, kappa);
                    if let Some(d) = r.degree {
                        let _ = writeln!(s, "degree {d}");
                    }
                    if let Some(v) = r.vanishes {
                        let _ = writeln!(s, "vanishes {v}");
                    }
                    s.push_str(&r.table);
                    s
                }
            };
            let code = if r.check_failed { EXIT_CHECK_FAILED } else { EXIT_OK };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Parse and run; the entry point used by the binary.
pub fn main_with_args<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    match parse_args(argv) {
        Ok(cmd) => run(&cmd),
        Err(CliError::Help(m)) => Outcome { code: EXIT_OK, stdout: m, stderr: String::new() },
        Err(e) => {
            let mut stderr = e.message().to_string();
            if !stderr.starts_with("error:") {
                stderr.insert_str(0, "error: ");
            }
            if !stderr.ends_with('\n') {
                stderr.push('\n');
            }
            Outcome { code: e.exit_code(), stdout: String::new(), stderr }
        }
    }
}

/// ASCII table with left-aligned columns.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, c) in row.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = widths[i] - c.chars().count();
            s.push_str(c);
            if i + 1 < cells.len() {
                s.push_str(&" ".repeat(pad));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn fusion_table(e: &FusionElement) -> String {
    let rows: Vec<Vec<String>> = e.iter().map(|(w, c)| vec![w.to_string(), c.to_string()]).collect();
    table(&["weight", "coeff"], &rows)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn execute(cmd: &Command, rs: &RootSystem) -> Result<Rendered, Error> {
    let level = cmd.level;
    match cmd.subcommand {
        SubcommandKind::Roots => {
            let j = rs.to_json();
            let rows = vec![
                vec!["cartan".into(), format!("{:?}", j.cartan)],
                vec!["positive roots".into(), j.positive_roots.len().to_string()],
                vec!["highest root".into(), Weight(j.highest_root.clone()).to_string()],
                vec!["dual Coxeter".into(), j.dual_coxeter.to_string()],
                vec!["Weyl order".into(), j.weyl_order.to_string()],
            ];
            Ok(Rendered::new(to_value(&j), table(&["field", "value"], &rows)))
        }
        SubcommandKind::Dim => {
            let mut out = Vec::new();
            let mut rows = Vec::new();
            for w in &cmd.weights {
                let d = weyl_dimension(rs, w)?;
                out.push(json!({ "weight": w, "dimension": d }));
                rows.push(vec![w.to_string(), d.to_string()]);
            }
            Ok(Rendered::new(Value::Array(out), table(&["weight", "dimension"], &rows)))
        }
        SubcommandKind::Tensor => {
            let t = tensor_decompose(rs, &cmd.weights[0], &cmd.weights[1])?;
            let rows: Vec<Vec<String>> = t.iter().map(|(w, c)| vec![w.to_string(), c.to_string()]).collect();
            Ok(Rendered::new(to_value(&t), table(&["weight", "multiplicity"], &rows)))
        }
        SubcommandKind::Reduce => {
            let ctx = AffineContext::new(rs, level);
            let mut out = Vec::new();
            let mut rows = Vec::new();
            let mut degree = Some(0u64);
            for w in &cmd.weights {
                rs.check_dominant(w)?;
                let red = ctx.alcove_reduce(&w.shifted(1).0)?;
                let label = red.is_interior().then(|| Weight(red.reduced.iter().map(|c| c - 1).collect()));
                match red.status {
                    ReductionStatus::Interior => degree = degree.map(|d| d + red.length),
                    ReductionStatus::Wall => degree = None,
                }
                rows.push(vec![
                    w.to_string(),
                    format!("{:?}", red.status).to_lowercase(),
                    label.as_ref().map_or("-".into(), |l| l.to_string()),
                    red.length.to_string(),
                    red.sign.to_string(),
                ]);
                out.push(json!({
                    "weight": w,
                    "status": red.status,
                    "reduced": red.reduced,
                    "label": label,
                    "length": red.length,
                    "sign": red.sign,
                    "word": red.word,
                }));
            }
            let mut r = Rendered::new(Value::Array(out), table(&["weight", "status", "label", "length", "sign"], &rows));
            r.degree = degree;
            r.vanishes = Some(degree.is_none());
            Ok(r)
        }
        SubcommandKind::Fusion => {
            let (a, b) = (&cmd.weights[0], &cmd.weights[1]);
            let e = match cmd.method {
                Method::Kw => fuse_kw(rs, level, a, b)?,
                Method::S => {
                    check_alcove(rs, a, level)?;
                    check_alcove(rs, b, level)?;
                    FusionRing::new(rs, level)?.fuse_s(a, b)?
                }
            };
            Ok(Rendered::new(to_value(&e), fusion_table(&e)))
        }
        SubcommandKind::Verlinde => {
            let surface = Surface::new(cmd.genus, cmd.weights.clone()).with_boundary(cmd.boundary.clone());
            let labels: Vec<Weight> = surface.labels().cloned().collect();
            for w in &labels {
                check_alcove(rs, w, level)?;
            }
            let ring = FusionRing::new(rs, level)?;
            let d = verlinde_sum(&ring, cmd.genus, &labels)?;
            Ok(Rendered::new(json!({ "dimension": d }), table(&["genus", "dimension"], &[vec![cmd.genus.to_string(), d.to_string()]])))
        }
        SubcommandKind::Report => {
            let surface = Surface::new(cmd.genus, cmd.weights.clone()).with_boundary(cmd.boundary.clone());
            let rep = cohomology_report(rs, level, &surface)?;
            let rows = vec![
                vec!["vanishes".into(), rep.vanishes.to_string()],
                vec!["degree".into(), rep.degree.map_or("-".into(), |d| d.to_string())],
                vec!["dimension".into(), rep.dimension.to_string()],
                vec!["euler characteristic".into(), rep.euler_characteristic().to_string()],
            ];
            let mut r = Rendered::new(to_value(&rep), table(&["field", "value"], &rows));
            r.degree = rep.degree;
            r.vanishes = Some(rep.vanishes);
            Ok(r)
        }
        SubcommandKind::Induce => {
            let w = &cmd.weights[0];
            let res = induce(rs, level, w)?;
            let mut r = Rendered::new(to_value(&res.value), fusion_table(&res.value));
            r.degree = res.degree(w);
            r.vanishes = Some(res.value.is_empty());
            Ok(r)
        }
        SubcommandKind::Check => {
            if cmd.genus >= 1 {
                let ring = FusionRing::new(rs, level)?;
                let surface = Surface::new(cmd.genus, cmd.weights.clone()).with_boundary(cmd.boundary.clone());
                let c = factorization_check(&ring, &surface)?;
                let rows = vec![vec![c.lhs.to_string(), c.rhs.to_string(), c.equal.to_string()]];
                let mut r = Rendered::new(to_value(&c), table(&["lhs", "rhs", "equal"], &rows));
                r.check_failed = !c.equal;
                Ok(r)
            } else {
                let c = homomorphism_check(rs, level, &cmd.weights[0], &cmd.weights[1])?;
                let result = json!({ "lhs": c.lhs, "rhs": c.rhs, "equal": c.equal });
                let mut t = String::from("lhs\n");
                t.push_str(&fusion_table(&c.lhs));
                t.push_str("rhs\n");
                t.push_str(&fusion_table(&c.rhs));
                let _ = writeln!(t, "equal {}", c.equal);
                let mut r = Rendered::new(result, t);
                r.check_failed = !c.equal;
                Ok(r)
            }
        }
    }
}

/// Re-parse a fusion result list produced by `fusion` or `induce`.
pub fn parse_fusion_result(level: u32, v: &Value) -> Option<FusionElement> {
    let terms: Vec<FusionTerm> = serde_json::from_value(v.clone()).ok()?;
    Some(FusionElement::from_terms(level, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let c = parse_args(["fusion", "--algebra", "A1", "--level", "2", "--weights", "1;1"]).unwrap();
        assert_eq!(c.subcommand, SubcommandKind::Fusion);
        assert_eq!(c.algebra.to_string(), "A1");
        assert_eq!(c.level, 2);
        assert_eq!(c.weights, vec![Weight(vec![1]), Weight(vec![1])]);
        let c = parse_args(["verlinde", "--algebra", "A2", "--level", "1", "--genus", "2", "--weights", ""]).unwrap();
        assert_eq!((c.subcommand, c.genus, c.weights.len()), (SubcommandKind::Verlinde, 2, 0));
        let c = parse_args(["reduce", "--algebra", "A1", "--level", "1", "--weights", "3"]).unwrap();
        assert_eq!((c.subcommand, c.weights.clone()), (SubcommandKind::Reduce, vec![Weight(vec![3])]));
    }

    #[test]
    fn weights_syntax() {
        assert_eq!(parse_weights("1,2; 3,4").unwrap(), vec![Weight(vec![1, 2]), Weight(vec![3, 4])]);
        assert_eq!(parse_weights("  ").unwrap(), vec![]);
        assert_eq!(parse_weights("-1").unwrap(), vec![Weight(vec![-1])]);
        assert!(parse_weights("1,x").is_err());
        assert!(parse_weights("1;;2").is_err());
    }

    #[test]
    fn usage_and_validation_codes() {
        let code = |args: &[&str]| parse_args(args.iter().copied()).unwrap_err().exit_code();
        assert_eq!(code(&["fusion", "--algebra", "A1", "--bogus", "1"]), EXIT_USAGE);
        assert_eq!(code(&["frobnicate", "--algebra", "A1"]), EXIT_USAGE);
        assert_eq!(code(&["fusion", "--level", "1"]), EXIT_USAGE);
        assert_eq!(code(&["fusion", "--algebra", "A1", "--weights", "1;a"]), EXIT_USAGE);
        assert_eq!(code(&["fusion", "--algebra", "A1", "--level", "-1", "--weights", "1;1"]), EXIT_USAGE);
        assert_eq!(code(&["fusion", "--algebra", "A1", "--weights", "1,0;1"]), EXIT_VALIDATION);
        assert_eq!(code(&["fusion", "--algebra", "Q7", "--weights", "1;1"]), EXIT_VALIDATION);
        assert_eq!(code(&["fusion", "--algebra", "A1", "--weights", "1"]), EXIT_VALIDATION);
    }

    #[test]
    fn table_is_aligned() {
        let t = table(&["a", "bb"], &[vec!["xxx".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxxx  1\n");
    }
}
