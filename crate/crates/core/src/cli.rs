//! Run specifications, orchestration of the check suites, and reports.
//!
//! A run specification is a line-oriented `key = value` file with the keys
//! `n, metric, deformation, layer, order, degree, samples, seed, output`.
//! Blank lines and lines starting with `#` are ignored. The metric is a
//! nested bracket list of integers or `p/q` rationals, or one of the
//! keywords `minkowski` and `light-cone`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::duality::{pairing_well_defined, verify_structure_maps_with, Pairing};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::liealg::{build_poincare, build_weyl, jacobi_check, matrix_rep_check, LieAlgebraData};
use crate::metric::Metric;
use crate::ortho;
use crate::poisson::{jacobi_suite, left_right_commute, verify_coordinate_brackets, GroupKind, PoissonStructure};
use crate::poly::NCPoly;
use crate::qalg::{axiom_suite_truncated, build_algebra, classical_limit_check, derive_antipode};
use crate::qgroup::{
    build_group, hopf_axiom_suite, lorentz_sector_undeformed, quantization_consistency, star_reality_check,
    weyl_jacobi_form, weyl_jacobiator, weyl_reduces_to_poincare,
};
use crate::report::{Check, Failure, SuiteReport};
use crate::rmatrix::{build_r, classify, is_cybe, CybeStatus};
use crate::scalar::{parse_rational, Rational};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_ORDER: usize = 4;
pub const DEFAULT_DEGREE: usize = 3;
pub const DEFAULT_SAMPLES: usize = 20;

pub const MAX_DIM: usize = 6;
pub const MAX_ORDER: usize = 10;
pub const MAX_DEGREE: usize = 4;
pub const MAX_SAMPLES: usize = 500;

pub const KEYS: [&str; 9] = ["n", "metric", "deformation", "layer", "order", "degree", "samples", "seed", "output"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Classical,
    Group,
    Algebra,
    Duality,
    All,
}

impl Layer {
    fn includes(self, other: Layer) -> bool {
        self == Layer::All || self == other
    }
}

impl FromStr for Layer {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "classical" => Ok(Layer::Classical),
            "group" => Ok(Layer::Group),
            "algebra" => Ok(Layer::Algebra),
            "duality" => Ok(Layer::Duality),
            "all" => Ok(Layer::All),
            _ => Err(format!("unknown layer `{s}` (expected classical, group, algebra, duality or all)")),
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Layer::Classical => "classical",
            Layer::Group => "group",
            Layer::Algebra => "algebra",
            Layer::Duality => "duality",
            Layer::All => "all",
        };
        f.write_str(s)
    }
}

pub fn parse_deformation(s: &str) -> std::result::Result<GroupKind, String> {
    match s {
        "poincare" => Ok(GroupKind::Poincare),
        "weyl" => Ok(GroupKind::Weyl),
        _ => Err(format!("unknown deformation `{s}` (expected poincare or weyl)")),
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub metric: Metric,
    pub deformation: GroupKind,
    pub layer: Layer,
    pub order: usize,
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults around a given metric.
    pub fn new(metric: Metric, deformation: GroupKind, layer: Layer) -> Self {
        Self {
            n: metric.dim(),
            metric,
            deformation,
            layer,
            order: DEFAULT_ORDER,
            degree: DEFAULT_DEGREE,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            output: None,
        }
    }

    /// Range and resource checks; [`ConfigBuilder::build`] applies them.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {}", self.n)));
        }
        if self.metric.dim() != self.n {
            return Err(Error::Config(format!("metric is {0}x{0} but n = {1}", self.metric.dim(), self.n)));
        }
        if self.order < 1 {
            return Err(Error::Config("order must be at least 1".into()));
        }
        if self.degree < 2 {
            return Err(Error::Config(format!("degree must be at least 2, got {}", self.degree)));
        }
        if self.n > MAX_DIM {
            return Err(Error::Limit(format!("n = {} exceeds the supported maximum {MAX_DIM}", self.n)));
        }
        if self.order > MAX_ORDER {
            return Err(Error::Limit(format!("order = {} exceeds the supported maximum {MAX_ORDER}", self.order)));
        }
        if self.degree > MAX_DEGREE {
            return Err(Error::Limit(format!("degree = {} exceeds the supported maximum {MAX_DEGREE}", self.degree)));
        }
        if self.samples > MAX_SAMPLES {
            return Err(Error::Limit(format!("samples = {} exceeds the supported maximum {MAX_SAMPLES}", self.samples)));
        }
        Ok(())
    }
}

/// Raw `key = value` entries, each remembering the spec line it came from.
/// Flags are applied with [`ConfigBuilder::set`] and replace file entries.
#[derive(Clone, Debug, Default)]
pub struct ConfigBuilder {
    entries: BTreeMap<String, (String, Option<usize>)>,
}

fn parse_error(line: Option<usize>, message: String) -> Error {
    match line {
        Some(line) => Error::Parse { line, message },
        None => Error::Config(message),
    }
}

impl ConfigBuilder {
    pub fn from_spec(text: &str) -> Result<Self> {
        let mut b = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Parse { line, message: format!("expected `key = value`, got `{content}`") })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Parse { line, message: format!("unknown key `{key}`") });
            }
            if b.entries.contains_key(key) {
                return Err(Error::Parse { line, message: format!("duplicate key `{key}`") });
            }
            b.entries.insert(key.to_string(), (value.trim().to_string(), Some(line)));
        }
        Ok(b)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        self.entries.insert(key.to_string(), (value.into(), None));
        Ok(())
    }

    fn parsed<T>(&self, key: &str, parse: impl Fn(&str) -> std::result::Result<T, String>) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((v, line)) => parse(v).map(Some).map_err(|m| parse_error(*line, format!("{key}: {m}"))),
        }
    }

    pub fn build(&self) -> Result<RunConfig> {
        let int = |s: &str| s.parse::<usize>().map_err(|_| format!("expected a non-negative integer, got `{s}`"));
        let n = self.parsed("n", int)?;
        let deformation = self.parsed("deformation", parse_deformation)?.unwrap_or(GroupKind::Poincare);
        let layer = self.parsed("layer", Layer::from_str)?.unwrap_or(Layer::All);
        let metric = match self.entries.get("metric") {
            None => return Err(Error::Config("missing key `metric`".into())),
            Some((text, line)) => match text.as_str() {
                "minkowski" | "light-cone" => {
                    let n = n.ok_or_else(|| parse_error(*line, format!("metric `{text}` needs `n`")))?;
                    if n < 2 {
                        return Err(Error::Config(format!("n must be at least 2, got {n}")));
                    }
                    if n > MAX_DIM {
                        return Err(Error::Limit(format!("n = {n} exceeds the supported maximum {MAX_DIM}")));
                    }
                    if text == "minkowski" {
                        Metric::minkowski(n)
                    } else {
                        Metric::light_cone(n)
                    }
                }
                _ => {
                    let rows = parse_matrix(text).map_err(|m| parse_error(*line, format!("metric: {m}")))?;
                    Metric::new(rows)?
                }
            },
        };
        let cfg = RunConfig {
            n: n.unwrap_or(metric.dim()),
            metric,
            deformation,
            layer,
            order: self.parsed("order", int)?.unwrap_or(DEFAULT_ORDER),
            degree: self.parsed("degree", int)?.unwrap_or(DEFAULT_DEGREE),
            samples: self.parsed("samples", int)?.unwrap_or(DEFAULT_SAMPLES),
            seed: self
                .parsed("seed", |s| s.parse::<u64>().map_err(|_| format!("expected a non-negative integer, got `{s}`")))?
                .unwrap_or(0),
            output: self.parsed("output", |s| Ok(PathBuf::from(s)))?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses and validates a run specification, filling defaults.
pub fn parse_spec(text: &str) -> Result<RunConfig> {
    ConfigBuilder::from_spec(text)?.build()
}

/// `[[a, b], [c, d]]` with integer or `p/q` entries; must be square.
pub fn parse_matrix(text: &str) -> std::result::Result<Vec<Vec<Rational>>, String> {
    let s = text.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed list of rows, got `{s}`"))?
        .trim();
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| format!("expected `[` at `{rest}`"))?;
        let close = body.find(']').ok_or("unterminated row")?;
        let row: Vec<Rational> = body[..close]
            .split(',')
            .map(|e| parse_rational(e).map_err(|_| format!("invalid entry `{}`", e.trim())))
            .collect::<std::result::Result<_, _>>()?;
        rows.push(row);
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err("trailing comma".into());
            }
        } else if !rest.is_empty() {
            return Err(format!("expected `,` between rows at `{rest}`"));
        }
    }
    if rows.is_empty() {
        return Err("empty matrix".into());
    }
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err("matrix is not square".into());
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    pub checked: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// First recorded residual, in canonical rendering.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    /// Lowest λ-power at which a residual is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_order: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
}

impl CheckRecord {
    fn from_check(name: String, parameters: BTreeMap<String, String>, c: &Check) -> Self {
        Self {
            name,
            parameters,
            status: if c.passed() { Status::Pass } else { Status::Fail },
            checked: c.checked,
            failed: c.failed,
            detail: None,
            residual: c.failures.first().map(|f| f.residual.clone()),
            lambda_order: c.failures.iter().filter_map(|f| f.lambda_order).min(),
            failures: c.failures.clone(),
        }
    }

    fn errored(name: String, parameters: BTreeMap<String, String>, e: &Error) -> Self {
        Self {
            name,
            parameters,
            status: Status::Fail,
            checked: 0,
            failed: 1,
            detail: Some(format!("error: {e}")),
            residual: None,
            lambda_order: None,
            failures: Vec::new(),
        }
    }

    fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub metric: String,
    pub deformation: GroupKind,
    pub layer: Layer,
    pub order: usize,
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Deterministic part of a report: identical for identical configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportBody {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader {
    pub unix_time: u64,
    /// Wall time in milliseconds per task; a task produces one or more checks.
    pub wall_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub header: ReportHeader,
    pub body: ReportBody,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.body.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report serializes")
    }

    /// One line per check, then the overall status.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.body.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag}  {} ({} checked, {} failed)", c.name, c.checked, c.failed));
            if let Some(d) = &c.detail {
                out.push_str(&format!(" [{d}]"));
            }
            out.push('\n');
            if c.status == Status::Fail {
                if let Some(f) = c.failures.first() {
                    out.push_str(&format!("      {}: {}\n", f.item, f.residual));
                }
            }
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("overall: {overall}\n"));
        out
    }
}

type Records = Vec<CheckRecord>;

struct Task {
    name: String,
    run: Box<dyn Fn() -> Records + Send + Sync>,
}

fn task(name: impl Into<String>, run: impl Fn() -> Records + Send + Sync + 'static) -> Task {
    Task { name: name.into(), run: Box::new(run) }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn suite_records(prefix: &str, p: &BTreeMap<String, String>, r: Result<SuiteReport>) -> Records {
    match r {
        Ok(rep) => rep.checks.iter().map(|c| CheckRecord::from_check(format!("{prefix}.{}", c.name), p.clone(), c)).collect(),
        Err(e) => vec![CheckRecord::errored(format!("{prefix}.suite"), p.clone(), &e)],
    }
}

fn boolean_check(name: &str, ok: bool, item: &str) -> Check {
    let mut c = Check::new(name);
    if ok {
        c.pass();
    } else {
        c.fail(item, "property does not hold", None);
    }
    c
}

fn lie_algebra(kind: GroupKind, g: &Metric) -> LieAlgebraData {
    match kind {
        GroupKind::Poincare => build_poincare(g),
        GroupKind::Weyl => build_weyl(g),
    }
}

/// Sampled metrics for randomized properties: even indices generic, odd
/// indices with `g₀₀ = 0`.
pub fn sample_metrics(n: usize, count: usize, seed: u64) -> Vec<Metric> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|k| Metric::random(n, &mut rng, k % 2 == 1)).collect()
}

fn cybe_detail(s: CybeStatus) -> &'static str {
    match s {
        CybeStatus::Holds => "holds: [r,r] = 0",
        CybeStatus::ModifiedAdInvariant => "modified: [r,r] != 0 but ad-invariant",
        CybeStatus::FailsNonInvariant => "fails: [r,r] != 0 and not ad-invariant",
    }
}

fn classical_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) {
    let (g, kind) = (cfg.metric.clone(), cfg.deformation);
    let base = params(&[("deformation", kind.to_string())]);

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("classical.lie_jacobi", move || {
        let rep = jacobi_check(&lie_algebra(kind, &g1));
        let mut c = Check::new("lie_jacobi");
        if !rep.antisymmetric {
            c.fail("antisymmetry", "structure constants are not antisymmetric", None);
        }
        for _ in 0..rep.triples_checked - rep.violations.len() {
            c.pass();
        }
        for v in &rep.violations {
            c.fail(format!("{:?}", v.triple), v.residual.clone(), None);
        }
        vec![CheckRecord::from_check("classical.lie_jacobi".into(), p1.clone(), &c)]
    }));

    let g1 = g.clone();
    tasks.push(task("classical.matrix_representation", move || {
        let rep = matrix_rep_check(&g1);
        let mut c = Check::new("matrix_representation");
        for _ in 0..rep.pairs_checked - rep.failures.len() {
            c.pass();
        }
        if !rep.diagonal_vanishes {
            c.fail("diagonal", "M^{aa} does not vanish", None);
        }
        for (a, b) in &rep.failures {
            c.fail(format!("[{a}, {b}]"), "matrix commutator differs from the bracket", None);
        }
        vec![CheckRecord::from_check("classical.matrix_representation".into(), BTreeMap::new(), &c)]
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("classical.cybe", move || {
        let alg = lie_algebra(kind, &g1);
        let name = "classical.cybe".to_string();
        match build_r(&g1, &alg).and_then(|r| classify(&r, &alg)) {
            Ok(s) => {
                let c = boolean_check("cybe", s != CybeStatus::FailsNonInvariant, "[r,r]");
                vec![CheckRecord::from_check(name, p1.clone(), &c).with_detail(cybe_detail(s))]
            }
            Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
        }
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("classical.coordinate_brackets", move || {
        let name = "classical.coordinate_brackets".to_string();
        match PoissonStructure::new(kind, &g1) {
            Ok(p) => {
                let rep = verify_coordinate_brackets(&p);
                let mut c = Check::new("coordinate_brackets");
                for _ in 0..rep.pairs_checked - rep.mismatches.len() {
                    c.pass();
                }
                for m in &rep.mismatches {
                    if m.on_group {
                        c.pass();
                    } else {
                        c.fail(format!("{{{}, {}}}", m.pair.0, m.pair.1), format!("{} vs {}", m.computed, m.expected), Some(1));
                    }
                }
                let detail = if rep.passed_literally() { "equal on the free coordinate ring" } else { "equal modulo orthogonality" };
                vec![CheckRecord::from_check(name, p1.clone(), &c).with_detail(detail)]
            }
            Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
        }
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("classical.fields_commute", move || {
        let c = boolean_check("fields_commute", left_right_commute(kind, &g1), "[X_L, X_R]");
        vec![CheckRecord::from_check("classical.fields_commute".into(), p1.clone(), &c)]
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("classical.poisson_jacobi", move || {
        let name = "classical.poisson_jacobi".to_string();
        match PoissonStructure::new(kind, &g1) {
            Ok(p) => vec![CheckRecord::from_check(name, p1.clone(), &jacobi_suite(&p))],
            Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
        }
    }));

    let samples = sample_metrics(cfg.n, cfg.samples, cfg.seed);
    let sp = params(&[("samples", cfg.samples.to_string()), ("seed", cfg.seed.to_string())]);

    let (s1, p1) = (samples.clone(), sp.clone());
    tasks.push(task("classical.sampled_cybe_dichotomy", move || {
        let mut c = Check::new("sampled_cybe_dichotomy");
        for gs in &s1 {
            let null = gs.g00() == &Rational::from_integer(0.into());
            let poincare = build_poincare(gs);
            let weyl = build_weyl(gs);
            let ok = (|| -> Result<bool> {
                let rp = build_r(gs, &poincare)?;
                let rw = build_r(gs, &weyl)?;
                let cybe = is_cybe(&rp, &poincare)?;
                if cybe != null {
                    return Ok(false);
                }
                if null {
                    return Ok(true);
                }
                Ok(classify(&rp, &poincare)? == CybeStatus::ModifiedAdInvariant
                    && classify(&rw, &weyl)? == CybeStatus::FailsNonInvariant)
            })();
            match ok {
                Ok(true) => c.pass(),
                Ok(false) => c.fail(gs.render(), "CYBE classification does not follow g00", None),
                Err(e) => c.fail(gs.render(), format!("error: {e}"), None),
            }
        }
        vec![CheckRecord::from_check("classical.sampled_cybe_dichotomy".into(), p1.clone(), &c)]
    }));

    let (s1, p1) = (samples, sp);
    tasks.push(task("classical.sampled_coordinate_brackets", move || {
        let mut c = Check::new("sampled_coordinate_brackets");
        for gs in &s1 {
            match PoissonStructure::new(GroupKind::Poincare, gs) {
                Ok(p) if verify_coordinate_brackets(&p).passed() => c.pass(),
                Ok(_) => c.fail(gs.render(), "coordinate brackets differ on the group", Some(1)),
                Err(e) => c.fail(gs.render(), format!("error: {e}"), None),
            }
        }
        let mut p = p1.clone();
        p.insert("deformation".into(), "poincare".into());
        vec![CheckRecord::from_check("classical.sampled_coordinate_brackets".into(), p, &c)]
    }));
}

/// `(Λ^α_β, a^ρ, a^σ)` jacobiators against `λ² g₀₀ (1 − e^{2b})(g^{ασ}Λ^ρ_β − g^{αρ}Λ^σ_β)`.
fn weyl_jacobiator_check(g: &Metric, order: usize) -> Result<Check> {
    let h = build_group(GroupKind::Weyl, g, order)?;
    let n = g.dim();
    let mut c = Check::new("weyl_jacobiator_form");
    for al in 0..n {
        for be in 0..n {
            for rho in 0..n {
                for sig in rho + 1..n {
                    let jac = weyl_jacobiator(&h, al, be, rho, sig)?;
                    let form = weyl_jacobi_form(&h, al, be, rho, sig, 1)?;
                    let res: NCPoly = jac.sub(&form);
                    if ortho::vanishes_on_group(&res, g) {
                        c.pass();
                    } else {
                        c.fail(format!("(L^{al}_{be}, a^{rho}, a^{sig})"), jac.render(), jac.valuation());
                    }
                }
            }
        }
    }
    Ok(c)
}

fn group_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) {
    let (g, kind) = (cfg.metric.clone(), cfg.deformation);
    let order = cfg.order;
    let base = params(&[("deformation", kind.to_string()), ("order", order.to_string())]);

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("group.hopf_axioms", move || {
        suite_records("group", &p1, build_group(kind, &g1, order).and_then(|h| hopf_axiom_suite(&h)))
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("group.star_reality", move || {
        let name = "group.star_reality".to_string();
        match build_group(kind, &g1, order).and_then(|h| star_reality_check(&h)) {
            Ok(c) => vec![CheckRecord::from_check(name, p1.clone(), &c)],
            Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
        }
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("group.quantization", move || {
        let name = "group.quantization".to_string();
        match build_group(kind, &g1, order).and_then(|h| quantization_consistency(&h)) {
            Ok(rep) => {
                let mut c = Check::new("quantization");
                for _ in 0..rep.pairs_checked - rep.mismatches.len() {
                    c.pass();
                }
                for m in &rep.mismatches {
                    c.fail("pair", m.clone(), Some(1));
                }
                vec![CheckRecord::from_check(name, p1.clone(), &c)]
            }
            Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
        }
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("group.lorentz_sector", move || {
        let name = "group.lorentz_sector".to_string();
        match build_group(kind, &g1, order) {
            Ok(h) => {
                let c = boolean_check("lorentz_sector", lorentz_sector_undeformed(&h), "Lorentz coproduct/antipode");
                vec![CheckRecord::from_check(name, p1.clone(), &c)]
            }
            Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
        }
    }));

    if kind == GroupKind::Weyl {
        let (g1, p1) = (g.clone(), base.clone());
        tasks.push(task("group.weyl_jacobiator_form", move || {
            let name = "group.weyl_jacobiator_form".to_string();
            match weyl_jacobiator_check(&g1, order) {
                Ok(c) => {
                    vec![CheckRecord::from_check(name, p1.clone(), &c).with_detail("form lambda^2 g00 (1 - e^{2b}) (g^{as} L^r_b - g^{ar} L^s_b)")]
                }
                Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
            }
        }));

        let (g1, p1) = (g.clone(), base.clone());
        tasks.push(task("group.weyl_reduces_to_poincare", move || {
            let name = "group.weyl_reduces_to_poincare".to_string();
            let r = build_group(GroupKind::Weyl, &g1, order)
                .and_then(|w| Ok((w, build_group(GroupKind::Poincare, &g1, order)?)))
                .and_then(|(w, p)| weyl_reduces_to_poincare(&w, &p));
            match r {
                Ok(ok) => vec![CheckRecord::from_check(name, p1.clone(), &boolean_check("reduction", ok, "b = 0"))],
                Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
            }
        }));
    }

    let samples = sample_metrics(cfg.n, cfg.samples, cfg.seed);
    let sp = params(&[
        ("deformation", kind.to_string()),
        ("order", order.to_string()),
        ("samples", cfg.samples.to_string()),
        ("seed", cfg.seed.to_string()),
    ]);
    let (s1, p1) = (samples.clone(), sp.clone());
    tasks.push(task("group.sampled_hopf_axioms", move || {
        let mut c = Check::new("sampled_hopf_axioms");
        for gs in &s1 {
            let expect = kind == GroupKind::Poincare || gs.g00() == &Rational::from_integer(0.into());
            match build_group(kind, gs, order).and_then(|h| hopf_axiom_suite(&h)) {
                Ok(rep) if rep.passed() == expect => c.pass(),
                Ok(rep) => c.fail(gs.render(), format!("suite passed = {}, expected {expect}", rep.passed()), rep.first_failing_order()),
                Err(e) => c.fail(gs.render(), format!("error: {e}"), None),
            }
        }
        let detail = match kind {
            GroupKind::Poincare => "every sampled metric passes",
            GroupKind::Weyl => "passes iff g00 = 0",
        };
        vec![CheckRecord::from_check("group.sampled_hopf_axioms".into(), p1.clone(), &c).with_detail(detail)]
    }));

    let (s1, p1) = (samples, sp);
    tasks.push(task("group.sampled_quantization", move || {
        let mut c = Check::new("sampled_quantization");
        for gs in &s1 {
            match build_group(kind, gs, order).and_then(|h| quantization_consistency(&h)) {
                Ok(rep) if rep.passed() => c.pass(),
                Ok(rep) => c.fail(gs.render(), rep.mismatches.join("; "), Some(1)),
                Err(e) => c.fail(gs.render(), format!("error: {e}"), None),
            }
        }
        vec![CheckRecord::from_check("group.sampled_quantization".into(), p1.clone(), &c)]
    }));
}

fn algebra_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) {
    let (g, kind, order) = (cfg.metric.clone(), cfg.deformation, cfg.order);
    let base = params(&[("deformation", kind.to_string()), ("order", order.to_string())]);

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("algebra.axioms", move || {
        suite_records("algebra", &p1, build_algebra(kind, &g1, order).and_then(|a| axiom_suite_truncated(&a)))
    }));

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("algebra.classical_limit", move || {
        let name = "algebra.classical_limit".to_string();
        match build_algebra(kind, &g1, order).and_then(|a| classical_limit_check(&a)) {
            Ok(rep) => {
                let c = boolean_check("classical_limit", rep.matches, "lambda^0 structure constants");
                let mut r = CheckRecord::from_check(name, p1.clone(), &c);
                if let Some(s) = rep.dilatation_sign_consistent {
                    r = r.with_detail(format!("[D, P] sign consistent with the Lie algebra: {s}"));
                }
                vec![r]
            }
            Err(e) => vec![CheckRecord::errored(name, p1.clone(), &e)],
        }
    }));

    let (g1, p1) = (g, base);
    tasks.push(task("algebra.antipode", move || {
        let name = "algebra.antipode".to_string();
        let closed = "algebra.antipode_closed_forms".to_string();
        let a = match build_algebra(kind, &g1, order) {
            Ok(a) => a,
            Err(e) => return vec![CheckRecord::errored(name, p1.clone(), &e)],
        };
        match derive_antipode(&a) {
            Ok(sol) => {
                let mut c = Check::new("antipode");
                for chk in &sol.report.checks {
                    c.checked += chk.checked;
                    c.failed += chk.failed;
                    c.failures.extend(chk.failures.iter().cloned());
                }
                let mut forms = Check::new("antipode_closed_forms");
                let n = g1.dim();
                let minus = |x: Generator| NCPoly::gen(x, order).neg();
                let mut expect = vec![(Generator::momentum(0), minus(Generator::momentum(0)))];
                for i in 1..n {
                    for j in i + 1..n {
                        let m = Generator::Rotation(i as u8, j as u8);
                        expect.push((m, minus(m)));
                    }
                }
                for (x, want) in expect {
                    match sol.antipode.get(&x) {
                        Some(s) if s == &want => forms.pass(),
                        Some(s) => forms.fail(format!("S({x})"), s.sub(&want).render(), s.sub(&want).valuation()),
                        None => forms.fail(format!("S({x})"), "missing", None),
                    }
                }
                vec![
                    CheckRecord::from_check(name, p1.clone(), &c).with_detail(format!("fixed point after {} passes", sol.passes)),
                    CheckRecord::from_check(closed, p1.clone(), &forms),
                ]
            }
            Err(e) => vec![
                CheckRecord::errored(name, p1.clone(), &e),
                CheckRecord {
                    status: Status::Skipped,
                    checked: 0,
                    failed: 0,
                    detail: Some("antipode derivation failed".into()),
                    residual: None,
                    lambda_order: None,
                    failures: Vec::new(),
                    name: closed,
                    parameters: p1.clone(),
                },
            ],
        }
    }));
}

fn duality_tasks(cfg: &RunConfig, tasks: &mut Vec<Task>) {
    let (g, kind, order, degree) = (cfg.metric.clone(), cfg.deformation, cfg.order, cfg.degree);
    let base = params(&[("deformation", kind.to_string()), ("order", order.to_string()), ("degree", degree.to_string())]);
    let build = move |g: &Metric| -> Result<(Pairing, crate::qgroup::HopfPresentation, crate::qalg::AlgebraPresentation)> {
        Ok((Pairing::standard(kind, g, degree, order), build_group(kind, g, order)?, build_algebra(kind, g, order)?))
    };

    let (g1, p1) = (g.clone(), base.clone());
    tasks.push(task("duality.pairing", move || {
        suite_records("duality", &p1, build(&g1).and_then(|(p, grp, alg)| pairing_well_defined(&p, &grp, &alg)))
    }));

    let (g1, p1) = (g, base);
    tasks.push(task("duality.structure_maps", move || {
        suite_records("duality", &p1, build(&g1).and_then(|(p, grp, alg)| verify_structure_maps_with(&p, &grp, &alg)))
    }));
}

/// Runs the suites selected by `cfg.layer`. Tasks run concurrently; the
/// report lists checks in a fixed order.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    cfg.validate()?;
    let mut tasks = Vec::new();
    if cfg.layer.includes(Layer::Classical) {
        classical_tasks(cfg, &mut tasks);
    }
    if cfg.layer.includes(Layer::Group) {
        group_tasks(cfg, &mut tasks);
    }
    if cfg.layer.includes(Layer::Algebra) {
        algebra_tasks(cfg, &mut tasks);
    }
    if cfg.layer.includes(Layer::Duality) {
        duality_tasks(cfg, &mut tasks);
    }
    let results: Vec<(String, Records, u64)> = tasks
        .par_iter()
        .map(|t| {
            let start = Instant::now();
            let recs = (t.run)();
            (t.name.clone(), recs, start.elapsed().as_millis() as u64)
        })
        .collect();
    let mut checks = Vec::new();
    let mut wall_ms = BTreeMap::new();
    for (name, recs, ms) in results {
        wall_ms.insert(name, ms);
        checks.extend(recs);
    }
    let status = if checks.iter().all(|c| c.status != Status::Fail) { Status::Pass } else { Status::Fail };
    let unix_time = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Ok(RunReport {
        header: ReportHeader { unix_time, wall_ms },
        body: ReportBody {
            schema_version: SCHEMA_VERSION,
            config: ConfigEcho {
                n: cfg.n,
                metric: cfg.metric.render(),
                deformation: cfg.deformation,
                layer: cfg.layer,
                order: cfg.order,
                degree: cfg.degree,
                samples: cfg.samples,
                seed: cfg.seed,
            },
            status,
            checks,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn minimal_spec_gets_defaults() {
        let cfg = parse_spec("n=2\nmetric=[[0,1],[1,0]]\ndeformation=weyl\nlayer=all").unwrap();
        assert_eq!(cfg.n, 2);
        assert_eq!(cfg.metric.g00(), &rat_int(0));
        assert_eq!(cfg.deformation, GroupKind::Weyl);
        assert_eq!(cfg.layer, Layer::All);
        assert_eq!((cfg.order, cfg.degree, cfg.samples, cfg.seed), (4, 3, 20, 0));
        assert!(cfg.output.is_none());
    }

    #[test]
    fn metric_errors() {
        let e = parse_spec("n=2\nmetric=[[1,0],[0,0]]").unwrap_err();
        assert_eq!(e.to_string(), "metric is singular");
        let e = parse_spec("n=2\nmetric=[[1,2],[3,4]]").unwrap_err();
        assert_eq!(e.to_string(), "metric is not symmetric");
        let e = parse_spec("n=3\nmetric=[[1,0],[0,-1]]").unwrap_err();
        assert!(matches!(e, Error::Config(_)));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let e = parse_spec("n=2\n\nmetric [[1,0],[0,-1]]").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_spec("n=2\ncolour=blue").unwrap_err();
        assert_eq!(e.to_string(), "line 2: unknown key `colour`");
        let e = parse_spec("n=2\nmetric=[[1,0],[0,-1]]\nn=3").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_spec("metric=[[1,0],[0,x]]").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        let e = parse_spec("metric=minkowski\nn=2\norder=four").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn ranges_and_limits() {
        assert!(matches!(parse_spec("metric=[[1,0],[0,-1]]\norder=0"), Err(Error::Config(_))));
        assert!(matches!(parse_spec("metric=[[1,0],[0,-1]]\ndegree=1"), Err(Error::Config(_))));
        assert!(matches!(parse_spec("metric=[[1]]"), Err(Error::Config(_))));
        assert!(matches!(parse_spec("metric=[[1,0],[0,-1]]\norder=50"), Err(Error::Limit(_))));
        assert!(matches!(parse_spec("n=9\nmetric=minkowski"), Err(Error::Limit(_))));
    }

    #[test]
    fn flags_override_file() {
        let mut b = ConfigBuilder::from_spec("n=3\nmetric=minkowski\ndeformation=weyl\n# comment\nseed = 7").unwrap();
        b.set("deformation", "poincare").unwrap();
        b.set("samples", "2").unwrap();
        let cfg = b.build().unwrap();
        assert_eq!(cfg.deformation, GroupKind::Poincare);
        assert_eq!((cfg.samples, cfg.seed), (2, 7));
        assert!(b.set("colour", "blue").is_err());
    }

    #[test]
    fn matrix_literals() {
        let m = parse_matrix("[[1/2, -3], [-3, 0]]").unwrap();
        assert_eq!(m[0][0], crate::scalar::rat(1, 2));
        assert!(parse_matrix("[[1,0],[0]]").is_err());
        assert!(parse_matrix("[[1,0],[0,1],]").is_err());
        assert!(parse_matrix("[1,0]").is_err());
    }

    #[test]
    fn report_inventory_and_determinism() {
        let mut cfg = RunConfig::new(Metric::light_cone(2), GroupKind::Weyl, Layer::All);
        cfg.samples = 2;
        cfg.order = 2;
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.body_json(), b.body_json());
        assert!(a.passed(), "{}", a.render_text());
        let mut names: Vec<&str> = a.body.checks.iter().map(|c| c.name.as_str()).collect();
        let total = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), total);
        for prefix in ["classical.", "group.", "algebra.", "duality."] {
            assert!(names.iter().any(|n| n.starts_with(prefix)));
        }
        cfg.layer = Layer::Algebra;
        let alg = run(&cfg).unwrap();
        assert!(alg.body.checks.iter().all(|c| c.name.starts_with("algebra.")));
    }
}
