use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use super::emit::{Format, Report};
use super::parse::{parse_poly, ParseError};
use crate::basis::{codim_formula, enumerate_basis};
use crate::eval::{self, codimension_seeded, Caps, EvalError, Mode, MultilinearImage};
use crate::poly::GenPolynomial;
use crate::rep::{cocharacter_from_image, multiplicity_formula, CharacterTable, RepError};
use crate::scalar::Rational;
use crate::suite;
use crate::walgebra::{action_from_str, check_axioms, is_trivial_linear, ActionTag, WAlgebraAction};

#[derive(Debug, Parser)]
#[command(
    name = "ut2gpi",
    version,
    about = "Generalized polynomial identities of UT2 under the regular, D and F actions"
)]
pub struct Cli {
    /// regular, D, F, all, or custom=<path to action JSON>; comma-separated lists are accepted
    #[arg(long, global = true, default_value = "all")]
    pub algebra: String,
    /// Degree or inclusive range, e.g. 3 or 1..4
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// exact or modular
    #[arg(long, global = true, default_value = "exact")]
    pub mode: String,
    /// Largest degree accepted by the selected mode
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// json, csv or text
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
    /// Write the document here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for prime selection and random evaluation points
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Codimensions against the closed formulas
    Codim,
    /// Cocharacter multiplicities against the closed formulas
    Cochar,
    /// Identity membership of the polynomials in a file
    Check {
        file: PathBuf,
        /// Fail with exit code 2 unless every verdict equals this
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Operator triviality of one-variable polynomials in a file
    Trivial {
        file: PathBuf,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Canonical basis dump with count and rank checks
    Basis,
    /// Ranks of the highest-weight families
    HwvRank,
    /// Axiom validation of the actions
    Axioms,
    /// Identities separating the D and F actions
    Witness,
    /// The full property suite
    Verify,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{file}: {err}")]
    Parse { file: String, err: ParseError },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Engine(String),
    /// A computed value contradicts a theorem.
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 2,
            _ => 1,
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::ModularDisagreement(_) => CliError::Mismatch(e.to_string()),
            other => CliError::Engine(other.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::NonIntegral { .. } => CliError::Mismatch(e.to_string()),
            RepError::Eval(inner) => inner.into(),
            other => CliError::Engine(other.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraChoice {
    pub label: String,
    pub action: WAlgebraAction<Rational>,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algebras: Vec<AlgebraChoice>,
    pub n: Option<RangeInclusive<usize>>,
    pub mode: Mode,
    pub caps: Caps,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

/// `"3"` or `"a..b"` (inclusive), with `1 <= a <= b`.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid degree `{t}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a == 0 || a > b {
        return Err(format!("invalid degree range `{s}` (need 1 <= start <= end)"));
    }
    Ok(a..=b)
}

fn load_algebras(list: &str) -> Result<Vec<AlgebraChoice>, CliError> {
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim) {
        if part == "all" {
            for tag in ActionTag::BUILTIN {
                out.push(AlgebraChoice {
                    label: tag.name().into(),
                    action: WAlgebraAction::builtin(tag).expect("builtin"),
                });
            }
        } else if let Some(path) = part.strip_prefix("custom=") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read action table {path}: {e}")))?;
            let mut action = action_from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            action.tag = ActionTag::Custom;
            out.push(AlgebraChoice { label: format!("custom={path}"), action });
        } else {
            let tag: ActionTag = part.parse().map_err(|_| CliError::Usage(format!("unknown algebra `{part}`")))?;
            let action = WAlgebraAction::builtin(tag)
                .map_err(|_| CliError::Usage("custom actions need a path: custom=<file>".into()))?;
            out.push(AlgebraChoice { label: tag.name().into(), action });
        }
    }
    Ok(out)
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mode: Mode = cli.mode.parse().map_err(CliError::Usage)?;
        let format: Format = cli.format.parse().map_err(CliError::Usage)?;
        let n = cli.n.as_deref().map(parse_n_range).transpose().map_err(CliError::Usage)?;
        let mut caps = Caps::default();
        if let Some(cap) = cli.cap {
            match mode {
                Mode::Exact => caps.exact_max_n = cap,
                Mode::Modular => caps.modular_max_n = cap,
            }
        }
        Ok(RunConfig {
            algebras: load_algebras(&cli.algebra)?,
            n,
            mode,
            caps,
            format,
            out: cli.out.clone(),
            seed: cli.seed,
        })
    }

    fn degrees(&self, default: RangeInclusive<usize>) -> RangeInclusive<usize> {
        self.n.clone().unwrap_or(default)
    }

    /// Custom tables must satisfy the axioms before anything else uses them.
    fn validated(&self) -> Result<&[AlgebraChoice], CliError> {
        for a in &self.algebras {
            let report = check_axioms(&a.action);
            if !report.passed() {
                let v = &report.violations[0];
                return Err(CliError::Mismatch(format!(
                    "{}: action violates {} ({} of {} cases fail)",
                    a.label,
                    v.axiom.equation(),
                    report.violations.len(),
                    report.checked
                )));
            }
        }
        Ok(&self.algebras)
    }
}

fn matches(value: u64, formula: Option<u64>) -> Value {
    formula.map_or(Value::Null, |f| Value::Bool(f == value))
}

fn opt(v: Option<u64>) -> Value {
    v.map_or(Value::Null, Value::from)
}

fn codim(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new("codim", &["algebra", "n", "codim", "mode", "formula", "matches"]);
    let default = match cfg.mode {
        Mode::Exact => 1..=cfg.caps.exact_max_n.min(5),
        Mode::Modular => 1..=cfg.caps.modular_max_n.min(5),
    };
    for a in cfg.validated()? {
        for n in cfg.degrees(default.clone()) {
            let res = codimension_seeded(&a.action, n, cfg.mode, &cfg.caps, cfg.seed)?;
            let formula = codim_formula(n, a.action.tag);
            let m = matches(res.value as u64, formula);
            r.require(m != Value::Bool(false));
            let mut doc = serde_json::to_value(&res).expect("serializable");
            doc["algebra"] = json!(a.label);
            doc["formula"] = opt(formula);
            doc["matches"] = m.clone();
            r.push(doc, vec![json!(a.label), json!(n), json!(res.value), json!(cfg.mode.name()), opt(formula), m]);
        }
    }
    Ok(r)
}

fn cochar(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.mode == Mode::Modular {
        return Err(CliError::Usage("cochar runs in exact mode only".into()));
    }
    let mut r = Report::new("cochar", &["algebra", "n", "partition", "multiplicity", "formula", "matches"]);
    for a in cfg.validated()? {
        for n in cfg.degrees(1..=4) {
            let image = MultilinearImage::exact(&a.action, n, &cfg.caps)?;
            let table = CharacterTable::new(n, cfg.caps.character_max_n)?;
            let decomp = cocharacter_from_image(&image, &table)?;
            let mut mults = Map::new();
            let mut formulas = Map::new();
            let mut all = true;
            for (lambda, m) in &decomp.multiplicities {
                let formula = multiplicity_formula(a.action.tag, lambda);
                let ok = matches(*m, formula);
                all &= ok != Value::Bool(false);
                mults.insert(lambda.to_string(), json!(m));
                formulas.insert(lambda.to_string(), opt(formula));
                r.push_row(vec![json!(a.label), json!(n), json!(lambda.to_string()), json!(m), opt(formula), ok]);
            }
            let sum_rule = decomp.degree_sum() == image.dim() as u128;
            r.require(all && sum_rule);
            r.results.push(json!({
                "algebra": a.label,
                "n": n,
                "multiplicities": mults,
                "formula": if a.action.tag == ActionTag::Custom { Value::Null } else { Value::Object(formulas) },
                "codim": image.dim(),
                "sum_rule": sum_rule,
                "matches": if a.action.tag == ActionTag::Custom { Value::Null } else { Value::Bool(all) },
            }));
        }
    }
    Ok(r)
}

impl Report {
    fn push_row(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }
}

/// Splits a source file into polynomial statements at newlines or `;`.
/// A statement continues past a newline inside brackets or after a
/// dangling operator. Each statement carries its starting line and column.
fn statements(src: &str) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 0usize);
    let mut start = (1usize, 1usize);
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut in_comment = false;
    let flush = |out: &mut Vec<_>, cur: &mut String, start: (usize, usize)| {
        if !cur.trim().is_empty() {
            out.push((start.0, start.1, std::mem::take(cur)));
        }
        cur.clear();
    };
    for c in src.chars() {
        col += 1;
        if c == '\n' {
            in_comment = false;
            let dangling = cur.trim_end().ends_with(['+', '-', '*', ',', '^']);
            if depth > 0 || dangling {
                cur.push('\n');
            } else {
                flush(&mut out, &mut cur, start);
            }
            line += 1;
            col = 0;
            continue;
        }
        if in_comment {
            continue;
        }
        match c {
            '#' => in_comment = true,
            ';' if depth <= 0 => flush(&mut out, &mut cur, start),
            c if c.is_whitespace() && cur.is_empty() => {}
            _ => {
                if cur.is_empty() {
                    start = (line, col);
                }
                match c {
                    '[' | '(' => depth += 1,
                    ']' | ')' => depth -= 1,
                    _ => {}
                }
                cur.push(c);
            }
        }
    }
    flush(&mut out, &mut cur, start);
    out
}

fn read_polys(path: &Path) -> Result<Vec<(usize, String, GenPolynomial<Rational>)>, CliError> {
    let src =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (line, column, text) in statements(&src) {
        let f = parse_poly(&text).map_err(|mut err| {
            if err.line == 1 {
                err.column += column - 1;
            }
            err.line += line - 1;
            CliError::Parse { file: path.display().to_string(), err }
        })?;
        out.push((line, text.trim().to_string(), f));
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("{} contains no polynomial", path.display())));
    }
    Ok(out)
}

fn check(cfg: &RunConfig, file: &Path, expect: Option<bool>) -> Result<Report, CliError> {
    let mut r = Report::new("check", &["line", "polynomial", "algebra", "identity", "expected", "matches"]);
    let polys = read_polys(file)?;
    for a in cfg.validated()? {
        for (line, _, f) in &polys {
            let verdict = eval::is_identity(f, &a.action)?;
            let ok = expect.map_or(Value::Null, |e| Value::Bool(e == verdict));
            r.require(ok != Value::Bool(false));
            let text = f.to_string();
            r.push(
                json!({"line": line, "polynomial": text, "algebra": a.label, "identity": verdict, "expected": expect, "matches": ok}),
                vec![json!(line), json!(text), json!(a.label), json!(verdict), json!(expect), ok.clone()],
            );
        }
    }
    Ok(r)
}

fn trivial(file: &Path, expect: Option<bool>) -> Result<Report, CliError> {
    let mut r = Report::new("trivial", &["line", "polynomial", "trivial", "expected", "matches"]);
    for (line, _, f) in read_polys(file)? {
        let verdict = is_trivial_linear(&f).map_err(|e| CliError::Usage(format!("line {line}: {e}")))?;
        let ok = expect.map_or(Value::Null, |e| Value::Bool(e == verdict));
        r.require(ok != Value::Bool(false));
        let text = f.to_string();
        r.push(
            json!({"line": line, "polynomial": text, "trivial": verdict, "expected": expect, "matches": ok}),
            vec![json!(line), json!(text), json!(verdict), json!(expect), ok.clone()],
        );
    }
    Ok(r)
}

fn basis(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new("basis", &["algebra", "n", "count", "formula", "rank", "matches"]);
    for a in cfg.validated()? {
        let tag = a.action.tag;
        let Some(_) = enumerate_basis(1, tag) else {
            return Err(CliError::Usage(format!("{}: no canonical basis for custom actions", a.label)));
        };
        for n in cfg.degrees(1..=3) {
            let elements = enumerate_basis(n, tag).expect("builtin");
            let polys: Vec<GenPolynomial<Rational>> = elements.iter().map(|b| b.poly()).collect();
            let formula = codim_formula(n, tag).expect("builtin");
            let rank = if n <= cfg.caps.exact_max_n {
                Some(eval::dependence(&polys, &a.action, n)?.rank as u64)
            } else {
                None
            };
            let ok = elements.len() as u64 == formula && rank.is_none_or(|k| k == formula);
            r.require(ok);
            let texts: Vec<String> = polys.iter().map(ToString::to_string).collect();
            r.push(
                json!({"algebra": a.label, "n": n, "count": elements.len(), "formula": formula, "rank": rank, "matches": ok, "basis": texts}),
                vec![json!(a.label), json!(n), json!(elements.len()), json!(formula), opt(rank), json!(ok)],
            );
        }
    }
    Ok(r)
}

fn hwv_rank(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new("hwv-rank", &["algebra", "n", "shape", "family", "rank", "formula", "matches"]);
    for a in cfg.validated()? {
        for n in cfg.degrees(1..=4) {
            if n > cfg.caps.exact_max_n {
                return Err(EvalError::ExactCap { n, cap: cfg.caps.exact_max_n }.into());
            }
            for (shape, fam) in suite::hwv_shapes(n) {
                let rank = suite::hwv_rank(&a.action, n, &fam)? as u64;
                let formula = multiplicity_formula(a.action.tag, &shape);
                let ok = matches(rank, formula);
                r.require(ok != Value::Bool(false));
                r.push(
                    json!({"algebra": a.label, "n": n, "shape": shape.to_string(), "family": fam.len(), "rank": rank, "formula": formula, "matches": ok}),
                    vec![json!(a.label), json!(n), json!(shape.to_string()), json!(fam.len()), json!(rank), opt(formula), ok.clone()],
                );
            }
        }
    }
    Ok(r)
}

fn axioms(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new("axioms", &["algebra", "checked", "violations", "passed"]);
    for a in &cfg.algebras {
        let report = check_axioms(&a.action);
        r.require(report.passed());
        let first: Vec<Value> = report
            .violations
            .iter()
            .take(10)
            .map(|v| json!({"axiom": v.axiom.equation(), "w": v.w.iter().map(|s| s.key()).collect::<Vec<_>>(), "a": v.a.iter().map(|u| u.key()).collect::<Vec<_>>()}))
            .collect();
        r.push(
            json!({"algebra": a.label, "checked": report.checked, "violations": report.violations.len(), "passed": report.passed(), "examples": first}),
            vec![json!(a.label), json!(report.checked), json!(report.violations.len()), json!(report.passed())],
        );
    }
    Ok(r)
}

fn witness() -> Result<Report, CliError> {
    let mut r = Report::new("witness", &["polynomial", "algebra", "identity", "expected", "matches"]);
    for c in suite::witness_cases() {
        let f = parse_poly(c.source).expect("built-in source parses");
        let verdict = eval::is_identity(&f, &WAlgebraAction::builtin(c.algebra).expect("builtin"))?;
        let ok = verdict == c.expected;
        r.require(ok);
        r.push(
            json!({"polynomial": f.to_string(), "algebra": c.algebra.name(), "identity": verdict, "expected": c.expected, "matches": ok}),
            vec![json!(f.to_string()), json!(c.algebra.name()), json!(verdict), json!(c.expected), json!(ok)],
        );
    }
    Ok(r)
}

fn verify(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validated()?;
    let max_n = cfg.n.as_ref().map_or(cfg.caps.exact_max_n.min(5), |r| *r.end());
    let mut r = Report::new("verify", &["check", "detail", "passed", "ms"]);
    for c in suite::run_property_suite(max_n, &cfg.caps, cfg.seed) {
        r.require(c.passed);
        r.push(
            json!({"check": c.group, "detail": c.detail, "passed": c.passed, "ms": c.millis as u64}),
            vec![json!(c.group), json!(c.detail), json!(c.passed), json!(c.millis as u64)],
        );
    }
    Ok(r)
}

/// Runs one command and returns its report; the caller renders it.
pub fn execute(cfg: &RunConfig, command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Codim => codim(cfg),
        Command::Cochar => cochar(cfg),
        Command::Check { file, expect } => check(cfg, file, *expect),
        Command::Trivial { file, expect } => trivial(file, *expect),
        Command::Basis => basis(cfg),
        Command::HwvRank => hwv_rank(cfg),
        Command::Axioms => axioms(cfg),
        Command::Witness => witness(),
        Command::Verify => verify(cfg),
    }
}
