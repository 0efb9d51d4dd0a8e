//! `key=value` run configuration, merged from a file and command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};

use crate::algebra::{AlgebraSpec, Element};
use crate::cauchy::QuadratureGrid;
use crate::error::Error;
use crate::geometry::{Gis, PlanarDomain};
use crate::parse::{parse_element, split_top_level};
use crate::slice::{SlicePolynomial, StemFunction};

pub const KEYS: [&str; 13] = [
    "algebra", "gis", "domain", "function", "points", "grid", "out", "seed", "tol", "timing",
    "samples", "max_n", "offsets",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    VerifyCauchy,
    VerifyJump,
    ExtensionTest,
    LemmaSuite,
    KernelEval,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommandKind::VerifyCauchy => "verify-cauchy",
            CommandKind::VerifyJump => "verify-jump",
            CommandKind::ExtensionTest => "extension-test",
            CommandKind::LemmaSuite => "lemma-suite",
            CommandKind::KernelEval => "kernel-eval",
        })
    }
}

/// Where a raw value came from, for diagnostics.
#[derive(Debug, Clone)]
pub enum Origin {
    File { path: PathBuf, line: usize, column: usize },
    Flag(String),
}

#[derive(Debug, Clone)]
pub struct RawValue {
    pub value: String,
    pub origin: Origin,
}

impl RawValue {
    pub fn flag(name: &str, value: &str) -> Self {
        RawValue { value: value.to_string(), origin: Origin::Flag(name.to_string()) }
    }

    /// An error located `column` characters into the value (1-based).
    pub fn error_at(&self, column: usize, message: impl fmt::Display) -> anyhow::Error {
        match &self.origin {
            Origin::File { path, line, column: start } => {
                anyhow!("{}:{}:{}: {}", path.display(), line, start + column.max(1) - 1, message)
            }
            Origin::Flag(name) => anyhow!("--{name}: column {column}: {message}"),
        }
    }

    fn wrap(&self, offset: usize, e: Error) -> anyhow::Error {
        match e {
            Error::Parse { column, message } => self.error_at(offset + column, message),
            other => self.error_at(offset + 1, other),
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(path: &Path, text: &str) -> anyhow::Result<BTreeMap<String, RawValue>> {
    let mut out = BTreeMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let key_col = line.len() - line.trim_start().len() + 1;
        let eq = line
            .find('=')
            .ok_or_else(|| anyhow!("{}:{}:{}: expected 'key = value'", path.display(), line_no, key_col))?;
        let key = line[..eq].trim();
        if !KEYS.contains(&key) {
            bail!(
                "{}:{}:{}: unknown key '{}' (expected one of {})",
                path.display(),
                line_no,
                key_col,
                key,
                KEYS.join(", ")
            );
        }
        let rest = &line[eq + 1..];
        let value = rest.trim();
        let value_col = eq + 2 + (rest.len() - rest.trim_start().len());
        if value.is_empty() {
            bail!("{}:{}:{}: empty value for '{}'", path.display(), line_no, value_col, key);
        }
        let entry = RawValue {
            value: value.to_string(),
            origin: Origin::File { path: path.to_path_buf(), line: line_no, column: value_col },
        };
        if out.insert(key.to_string(), entry).is_some() {
            bail!("{}:{}:{}: duplicate key '{}'", path.display(), line_no, key_col, key);
        }
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> anyhow::Result<BTreeMap<String, RawValue>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    parse_config_text(path, &text)
}

#[derive(Debug, Clone)]
pub enum FunctionChoice {
    Poly(SlicePolynomial),
    Identity,
    Conj,
    NormSq,
    Remark,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub algebra_spec: String,
    pub algebra: Arc<AlgebraSpec>,
    pub gis_spec: String,
    pub gis: Gis,
    pub domain: PlanarDomain,
    pub function_spec: String,
    pub function: FunctionChoice,
    /// Explicit points; empty means the command's default set.
    pub points: Vec<Element>,
    /// Second entries of `x|w` pairs for `kernel-eval`.
    pub kernel_w: Vec<Option<Element>>,
    pub grid: QuadratureGrid,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub timing: bool,
    pub samples: usize,
    pub max_n: usize,
    /// Approach offsets as fractions of `diam(D)`.
    pub offsets: Vec<f64>,
}

pub fn default_grid(command: CommandKind) -> &'static str {
    match command {
        CommandKind::VerifyCauchy => "32,8,24,24,8",
        CommandKind::VerifyJump | CommandKind::ExtensionTest => "256,16,2,2",
        CommandKind::LemmaSuite | CommandKind::KernelEval => "2,2,2,2",
    }
}

fn parse_algebra(raw: &RawValue) -> anyhow::Result<Arc<AlgebraSpec>> {
    let v = raw.value.trim();
    if v == "quaternion" {
        return Ok(AlgebraSpec::quaternions());
    }
    if let Some(n) = v.strip_prefix("clifford:") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| raw.error_at(10, format!("bad Clifford generator count '{n}'")))?;
        return AlgebraSpec::clifford(n).map_err(|e| raw.error_at(10, e));
    }
    Err(raw.error_at(1, format!("unknown algebra '{v}' (expected quaternion or clifford:n)")))
}

fn parse_gis(raw: &RawValue, algebra: &Arc<AlgebraSpec>) -> anyhow::Result<Gis> {
    let v = raw.value.trim();
    match v {
        "full" => Gis::full_quaternion(algebra).map_err(|e| raw.error_at(1, e)),
        "paravector" => Gis::paravector(algebra).map_err(|e| raw.error_at(1, e)),
        _ => {
            if let Some(spec) = v.strip_prefix("plane:") {
                let unit = parse_element(algebra, spec).map_err(|e| raw.wrap(6, e))?;
                Gis::plane(&unit).map_err(|e| raw.error_at(7, e))
            } else {
                Err(raw.error_at(1, format!("unknown gis '{v}' (expected full, paravector or plane:J)")))
            }
        }
    }
}

fn parse_function(raw: &RawValue, algebra: &Arc<AlgebraSpec>) -> anyhow::Result<FunctionChoice> {
    let v = raw.value.trim();
    if let Some(name) = v.strip_prefix("stem:") {
        return match name.trim() {
            "identity" => Ok(FunctionChoice::Identity),
            "conj" => Ok(FunctionChoice::Conj),
            "normsq" => Ok(FunctionChoice::NormSq),
            "remark" => Ok(FunctionChoice::Remark),
            other => Err(raw.error_at(
                6,
                format!("unknown stem '{other}' (expected identity, conj, normsq or remark)"),
            )),
        };
    }
    if let Some(list) = v.strip_prefix("poly:") {
        let list = list.trim();
        if !(list.starts_with('[') && list.ends_with(']')) {
            return Err(raw.error_at(6, "expected poly:[c0,c1,...]"));
        }
        let inner = &list[1..list.len() - 1];
        let coeffs = split_top_level(inner, ',')
            .into_iter()
            .map(|(off, piece)| parse_element(algebra, piece).map_err(|e| raw.wrap(6 + off, e)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let poly = SlicePolynomial::new(coeffs).map_err(|e| raw.error_at(6, e))?;
        return Ok(FunctionChoice::Poly(poly));
    }
    Err(raw.error_at(1, format!("unknown function '{v}' (expected poly:[..] or stem:name)")))
}

type PointList = (Vec<Element>, Vec<Option<Element>>);

fn parse_points(raw: &RawValue, algebra: &Arc<AlgebraSpec>, pairs: bool) -> anyhow::Result<PointList> {
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for (off, piece) in split_top_level(&raw.value, ';') {
        if piece.trim().is_empty() {
            continue;
        }
        let parts = split_top_level(piece, '|');
        if parts.len() > 2 || (parts.len() == 2 && !pairs) {
            return Err(raw.error_at(off + 1, "'x|w' pairs are only accepted by kernel-eval"));
        }
        xs.push(parse_element(algebra, parts[0].1).map_err(|e| raw.wrap(off, e))?);
        ws.push(match parts.get(1) {
            Some((o, w)) => Some(parse_element(algebra, w).map_err(|e| raw.wrap(off + o, e))?),
            None => None,
        });
    }
    if xs.is_empty() {
        return Err(raw.error_at(1, "empty point list"));
    }
    Ok((xs, ws))
}

fn parse_number<T: std::str::FromStr>(raw: &RawValue, what: &str) -> anyhow::Result<T> {
    raw.value
        .trim()
        .parse::<T>()
        .map_err(|_| raw.error_at(1, format!("expected {what}, got '{}'", raw.value)))
}

fn parse_bool(raw: &RawValue) -> anyhow::Result<bool> {
    match raw.value.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        v => Err(raw.error_at(1, format!("expected true or false, got '{v}'"))),
    }
}

impl RunConfig {
    /// Builds a configuration from merged raw values (flags already override file values).
    pub fn from_raw(command: CommandKind, raw: &BTreeMap<String, RawValue>) -> anyhow::Result<Self> {
        let get = |k: &str, default: &str| {
            raw.get(k).cloned().unwrap_or_else(|| RawValue::flag(k, default))
        };
        let algebra_raw = get("algebra", "quaternion");
        let algebra = parse_algebra(&algebra_raw)?;
        let default_gis = if algebra.name() == "quaternion" { "full" } else { "paravector" };
        let gis_raw = get("gis", default_gis);
        let gis = parse_gis(&gis_raw, &algebra)?;
        let domain_raw = get("domain", "disk:0,1");
        let domain: PlanarDomain =
            domain_raw.value.trim().parse().map_err(|e| domain_raw.error_at(1, e))?;
        let default_function = match command {
            CommandKind::VerifyJump | CommandKind::ExtensionTest if gis.dim() == 2 => "stem:remark",
            _ => "poly:[0,0,1]",
        };
        let function_raw = get("function", default_function);
        let function = parse_function(&function_raw, &algebra)?;
        if matches!(function, FunctionChoice::Remark) && gis.dim() != 2 {
            return Err(function_raw.error_at(6, "stem:remark needs a plane gis (plane:J)"));
        }
        let (points, kernel_w) = match raw.get("points") {
            Some(p) => parse_points(p, &algebra, command == CommandKind::KernelEval)?,
            None => (Vec::new(), Vec::new()),
        };
        let grid_raw = get("grid", default_grid(command));
        let grid: QuadratureGrid = grid_raw.value.parse().map_err(|e| grid_raw.error_at(1, e))?;
        let out = raw.get("out").map(|r| PathBuf::from(r.value.trim()));
        let seed = match raw.get("seed") {
            Some(r) => parse_number::<u64>(r, "an unsigned integer")?,
            None => 0,
        };
        let tol = match raw.get("tol") {
            Some(r) => {
                let t = parse_number::<f64>(r, "a tolerance")?;
                if !(t >= 0.0) {
                    return Err(r.error_at(1, "tolerance must be non-negative"));
                }
                Some(t)
            }
            None => None,
        };
        let timing = match raw.get("timing") {
            Some(r) => parse_bool(r)?,
            None => false,
        };
        let samples = match raw.get("samples") {
            Some(r) => parse_number::<usize>(r, "a sample count")?,
            None => 100,
        };
        let max_n = match raw.get("max_n") {
            Some(r) => {
                let n = parse_number::<usize>(r, "a dimension")?;
                if !(1..=4).contains(&n) {
                    return Err(r.error_at(1, "max_n must be between 1 and 4"));
                }
                n
            }
            None => 4,
        };
        let offsets = match raw.get("offsets") {
            Some(r) => r
                .value
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| r.error_at(1, format!("bad offset '{}'", s.trim())))
                })
                .collect::<anyhow::Result<Vec<_>>>()?,
            None => crate::jump::DEFAULT_OFFSET_FRACTIONS.to_vec(),
        };
        Ok(RunConfig {
            command,
            algebra_spec: algebra_raw.value.trim().to_string(),
            algebra,
            gis_spec: gis_raw.value.trim().to_string(),
            gis,
            domain,
            function_spec: function_raw.value.trim().to_string(),
            function,
            points,
            kernel_w,
            grid,
            out,
            seed,
            tol,
            timing,
            samples,
            max_n,
            offsets,
        })
    }

    /// The stem and an independent pointwise oracle for the configured function.
    pub fn stem(&self) -> StemFunction {
        match &self.function {
            FunctionChoice::Poly(p) => p.stem(),
            FunctionChoice::Identity => StemFunction::identity(&self.algebra),
            FunctionChoice::Conj => StemFunction::conjugate(&self.algebra),
            FunctionChoice::NormSq => StemFunction::norm_squared(&self.algebra),
            FunctionChoice::Remark => StemFunction::remark(&self.gis.basis()[1]),
        }
    }

    pub fn oracle(&self, x: &Element) -> Element {
        match &self.function {
            FunctionChoice::Poly(p) => p.eval(x),
            FunctionChoice::Identity => x.clone(),
            FunctionChoice::Conj => x.conj(),
            FunctionChoice::NormSq => x.norm(),
            FunctionChoice::Remark => {
                let mut c = vec![0.0; self.algebra.dim()];
                c[0] = x.coeffs()[0];
                c[1] = x.coeffs()[1];
                Element::new(&self.algebra, c).expect("dimension")
            }
        }
    }

    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut m = vec![
            ("generator".to_string(), format!("slice-cauchy {}", env!("CARGO_PKG_VERSION"))),
            ("command".to_string(), self.command.to_string()),
            ("algebra".to_string(), self.algebra_spec.clone()),
            ("gis".to_string(), self.gis_spec.clone()),
            ("domain".to_string(), self.domain.to_string()),
            ("function".to_string(), self.function_spec.clone()),
            ("grid".to_string(), self.grid.to_string()),
            ("seed".to_string(), self.seed.to_string()),
        ];
        if let Some(t) = self.tol {
            m.push(("tol".to_string(), format!("{t:e}")));
        }
        m
    }
}
