//! Experiment configuration: a single JSON document, validated into the
//! core objects an experiment needs.

use std::path::PathBuf;

use ergolab_core::base_systems::{BaseSet, UnitIntervalMap};
use ergolab_core::cascades::StepFunction;
use ergolab_core::observables::MAX_DEGREE;
use ergolab_core::special_flow::MIN_ROOF;
use ergolab_core::zero_lab::Rect;
use ergolab_core::{
    Observable, Partition, Poly, Roof, SpecialFlow, TargetSet, GOLDEN_CONJUGATE, GOLDEN_RATIO,
};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Means above this trigger a warning for experiments that assume `∫ f = 0`.
pub const ZERO_MEAN_WARN: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    CascadeZeros,
    ShneibergDiscrete,
    FlowZeros,
    Theorem1,
    Denisova,
    Induced,
    Weiss,
    LemmaFuzz,
    Wiener,
    PhiTrace,
}

impl Experiment {
    fn needs_cocycle(self) -> bool {
        matches!(
            self,
            Experiment::CascadeZeros
                | Experiment::ShneibergDiscrete
                | Experiment::Induced
                | Experiment::Weiss
        )
    }

    fn needs_flow(self) -> bool {
        matches!(
            self,
            Experiment::FlowZeros
                | Experiment::Theorem1
                | Experiment::Denisova
                | Experiment::Wiener
                | Experiment::PhiTrace
        )
    }

    fn assumes_zero_mean(self) -> bool {
        matches!(
            self,
            Experiment::FlowZeros | Experiment::Theorem1 | Experiment::Denisova
        )
    }
}

/// A real number written as a JSON number, a rational `"p/q"`, or one of
/// the names `"golden-ratio"` and `"golden-conjugate"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealSpec {
    Number(f64),
    Text(String),
}

impl RealSpec {
    pub fn rational(&self) -> Option<Ratio<i64>> {
        match self {
            RealSpec::Number(v) if v.fract() == 0.0 && v.abs() < 1e15 => {
                Some(Ratio::from_integer(*v as i64))
            }
            RealSpec::Text(s) => {
                let (p, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                let p: i64 = p.trim().parse().ok()?;
                let q: i64 = q.trim().parse().ok()?;
                (q > 0).then(|| Ratio::new(p, q))
            }
            _ => None,
        }
    }

    pub fn value(&self) -> Result<f64, String> {
        match self {
            RealSpec::Number(v) => Ok(*v),
            RealSpec::Text(s) => match s.as_str() {
                "golden-ratio" => Ok(GOLDEN_RATIO),
                "golden-conjugate" | "golden" => Ok(GOLDEN_CONJUGATE),
                _ => self
                    .rational()
                    .map(|r| *r.numer() as f64 / *r.denom() as f64)
                    .ok_or_else(|| {
                        format!("cannot read \"{s}\" as a number, p/q or named constant")
                    }),
            },
        }
    }

    /// How the number was written, for the report.
    pub fn form(&self) -> String {
        match self {
            RealSpec::Number(_) => "decimal".into(),
            RealSpec::Text(s) if self.rational().is_some() => format!("rational {s}"),
            RealSpec::Text(s) => format!("named {s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SystemSpec {
    Rotation {
        alpha: RealSpec,
    },
    /// `permutation[i]` is the 1-based position of interval `i + 1` after
    /// the exchange.
    Iet {
        lengths: Vec<f64>,
        permutation: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoofSpec {
    #[serde(default = "zero_start")]
    pub starts: Vec<f64>,
    pub values: Vec<RealSpec>,
}

fn zero_start() -> Vec<f64> {
    vec![0.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Preset {
    SignedHalves,
    Height,
    Constant(f64),
    /// Indicator of the column over `[lo, hi)`.
    Indicator {
        lo: f64,
        hi: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellsSpec {
    pub starts: Vec<f64>,
    /// Per base piece, polynomial coefficients in the height, constant term
    /// first.
    pub coefficients: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<CellsSpec>,
    /// Subtract the mean.
    #[serde(default)]
    pub mean_center: bool,
    /// Divide by the sup norm (after centering).
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleValues {
    Integer(Vec<i64>),
    Real(Vec<f64>),
}

/// Step function on the base for cascade experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub breaks: Vec<RealSpec>,
    pub values: CocycleValues,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum TargetSpec {
    All,
    Rects(Vec<Rect>),
    /// `{f >= fraction * max f}`.
    Superlevel(f64),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    /// Number of cascade steps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Induced steps per sample.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Cap on a single excursion of the induced map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_events: Option<usize>,
    /// Per-sample success threshold on the main count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_events: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piece_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_values: Option<Vec<f64>>,
    /// Spacing of the phi-trace grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_step: Option<f64>,
    /// Tail start for the Birkhoff ratio deviation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_from: Option<u64>,
    /// Inducing set on the base for the induced experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_set: Option<Vec<(f64, f64)>>,
    /// Fixed flow start point `[a, b]`; replaces sampling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<[f64; 2]>,
    /// Fixed base start point for cascades; replaces sampling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_base: Option<f64>,
    /// Longest per-sample list kept in report.json and zeros.csv.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub list_limit: Option<usize>,
    /// Longest trace written to sums.csv.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    pub count: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roof: Option<RoofSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable: Option<ObservableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetSpec>,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Sample count, or one when a fixed start point replaces sampling.
    pub fn sample_count(&self) -> u64 {
        if self.params.start.is_some() || self.params.start_base.is_some() {
            1
        } else {
            self.sampling.map_or(0, |s| s.count)
        }
    }

    pub fn seed(&self) -> u64 {
        self.sampling.map_or(0, |s| s.seed)
    }

    fn is_sampled(&self) -> bool {
        match self.experiment {
            Experiment::LemmaFuzz | Experiment::Weiss => true,
            Experiment::PhiTrace => self.params.start.is_none(),
            e if e.needs_cocycle() => self.params.start_base.is_none(),
            _ => self.params.start.is_none(),
        }
    }
}

/// Cocycle with integer or real fibers.
#[derive(Debug, Clone)]
pub enum Cocycle {
    Integer(StepFunction<i64>),
    Real(StepFunction<f64>),
}

/// Core objects built from a valid configuration.
#[derive(Debug, Clone, Default)]
pub struct Setup {
    pub map: Option<UnitIntervalMap>,
    pub alpha_form: Option<String>,
    pub flow: Option<SpecialFlow>,
    pub observable: Option<Observable>,
    pub cocycle: Option<Cocycle>,
    pub target: Option<TargetSet>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Validation {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every violated constraint, plus warnings.
pub fn validate(cfg: &ExperimentConfig) -> Validation {
    build(cfg).1
}

/// Builds the core objects, collecting every violation on the way.
pub fn build(cfg: &ExperimentConfig) -> (Setup, Validation) {
    let mut v = Validation::default();
    let mut setup = Setup::default();
    let e = cfg.experiment;

    if e != Experiment::LemmaFuzz {
        match &cfg.system {
            None => v.violations.push("system is required".into()),
            Some(s) => {
                setup.map = build_map(s, &mut v);
                if let SystemSpec::Rotation { alpha } = s {
                    setup.alpha_form = Some(alpha.form());
                }
            }
        }
    }

    if e.needs_flow() {
        let roof = match &cfg.roof {
            None => {
                v.violations.push("roof is required".into());
                None
            }
            Some(r) => build_roof(r, &mut v),
        };
        if let (Some(map), Some(roof)) = (&setup.map, &roof) {
            setup.flow = Some(SpecialFlow::new(map.clone(), roof.clone()));
        }
        match (&cfg.observable, &roof) {
            (None, _) => v.violations.push("observable is required".into()),
            (Some(o), Some(roof)) => setup.observable = build_observable(o, roof, &mut v),
            _ => {}
        }
        if let Some(f) = &setup.observable {
            if f.is_identically_zero() {
                v.violations.push("observable is identically zero".into());
            }
            if e.assumes_zero_mean() && f.mean().abs() > ZERO_MEAN_WARN {
                v.warnings.push(format!(
                    "observable mean is {:e}; integral zeros need a zero-mean observable",
                    f.mean()
                ));
            }
        }
        if let (Some(t), Some(roof)) = (&cfg.target, &roof) {
            setup.target = build_target(t, roof, setup.observable.as_ref(), &mut v);
        } else if e == Experiment::Theorem1 {
            v.violations.push("theorem1 needs a target set".into());
        }
    }

    if e.needs_cocycle() {
        match &cfg.cocycle {
            None => v.violations.push("cocycle is required".into()),
            Some(c) => setup.cocycle = build_cocycle(c, &mut v),
        }
        if let Some(c) = &setup.cocycle {
            match (e, c) {
                (Experiment::CascadeZeros | Experiment::Induced, Cocycle::Real(_)) => v
                    .violations
                    .push(format!("{} needs integer cocycle values", name(e))),
                (Experiment::CascadeZeros, Cocycle::Integer(g)) if !g.mean().is_zero() => {
                    v.violations.push(format!(
                        "cocycle mean is {:e}; zero times need a zero-mean cocycle",
                        g.mean().to_f64()
                    ))
                }
                _ => {}
            }
        }
    }

    check_params(cfg, &mut v);
    check_sampling(cfg, &mut v);
    (setup, v)
}

fn name(e: Experiment) -> String {
    serde_json::to_value(e)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn build_map(s: &SystemSpec, v: &mut Validation) -> Option<UnitIntervalMap> {
    match s {
        SystemSpec::Rotation { alpha } => {
            let a = match alpha.value() {
                Ok(a) => a,
                Err(msg) => {
                    v.violations.push(format!("rotation alpha: {msg}"));
                    return None;
                }
            };
            UnitIntervalMap::rotation(a)
                .map_err(|e| v.violations.push(format!("rotation alpha: {e}")))
                .ok()
        }
        SystemSpec::Iet {
            lengths,
            permutation,
        } => {
            if permutation.contains(&0) {
                v.violations.push("IET permutation is 1-based".into());
                return None;
            }
            let perm = permutation.iter().map(|p| p - 1).collect();
            UnitIntervalMap::iet(lengths.clone(), perm)
                .map_err(|e| v.violations.push(format!("IET: {e}")))
                .ok()
        }
    }
}

fn build_roof(r: &RoofSpec, v: &mut Validation) -> Option<Roof> {
    let mut values = Vec::with_capacity(r.values.len());
    for (j, val) in r.values.iter().enumerate() {
        match val.value() {
            Ok(x) if x.is_finite() && x >= MIN_ROOF => values.push(x),
            Ok(x) => v
                .violations
                .push(format!("roof must be positive: value {j} is {x}")),
            Err(msg) => v.violations.push(format!("roof value {j}: {msg}")),
        }
    }
    if values.len() != r.values.len() {
        return None;
    }
    let partition = Partition::new(r.starts.clone())
        .map_err(|e| v.violations.push(format!("roof partition: {e}")))
        .ok()?;
    Roof::new(partition, values)
        .map_err(|e| v.violations.push(format!("roof: {e}")))
        .ok()
}

fn build_observable(o: &ObservableSpec, roof: &Roof, v: &mut Validation) -> Option<Observable> {
    let base = match (&o.preset, &o.cells) {
        (Some(_), Some(_)) | (None, None) => {
            v.violations
                .push("observable needs exactly one of preset and cells".into());
            return None;
        }
        (Some(p), None) => match p {
            Preset::SignedHalves => Observable::signed_halves(roof),
            Preset::Height => Observable::height(roof),
            Preset::Constant(c) => Observable::constant(roof, *c),
            Preset::Indicator { lo, hi } => {
                if !(0.0 <= *lo && lo < hi && *hi <= 1.0) {
                    v.violations
                        .push(format!("indicator range [{lo}, {hi}) is not inside [0, 1]"));
                    return None;
                }
                Observable::indicator(roof, *lo, *hi)
                    .map_err(|e| v.violations.push(format!("observable: {e}")))
                    .ok()?
            }
        },
        (None, Some(c)) => {
            for (i, coeffs) in c.coefficients.iter().enumerate() {
                if coeffs.len() > MAX_DEGREE + 1 {
                    v.violations
                        .push(format!("observable piece {i}: degree above {MAX_DEGREE}"));
                }
            }
            let pieces = Partition::new(c.starts.clone())
                .map_err(|e| v.violations.push(format!("observable partition: {e}")))
                .ok()?;
            let polys = c
                .coefficients
                .iter()
                .map(|k| Poly::new(k.clone()))
                .collect();
            Observable::new(roof, pieces, polys)
                .map_err(|e| v.violations.push(format!("observable: {e}")))
                .ok()?
        }
    };
    let centered = if o.mean_center {
        base.mean_centered()
    } else {
        base
    };
    if o.normalize {
        let s = centered.sup_norm();
        if s == 0.0 {
            v.violations
                .push("cannot normalize an identically zero observable".into());
            return None;
        }
        return Some(centered.scaled(1.0 / s));
    }
    Some(centered)
}

fn build_target(
    t: &TargetSpec,
    roof: &Roof,
    f: Option<&Observable>,
    v: &mut Validation,
) -> Option<TargetSet> {
    match t {
        TargetSpec::All => Some(TargetSet::full(roof)),
        TargetSpec::Rects(rects) => {
            let found = TargetSet::violations(roof, rects);
            if found.is_empty() {
                TargetSet::new(roof, rects.clone()).ok()
            } else {
                v.violations.extend(found);
                None
            }
        }
        TargetSpec::Superlevel(frac) => {
            if !(0.0..=1.0).contains(frac) {
                v.violations
                    .push(format!("superlevel fraction {frac} is outside [0, 1]"));
                return None;
            }
            let f = f?;
            TargetSet::superlevel(f, frac * f.sup_norm())
                .map_err(|e| v.violations.push(e.to_string()))
                .ok()
        }
    }
}

fn build_cocycle(c: &CocycleSpec, v: &mut Validation) -> Option<Cocycle> {
    let rational: Option<Vec<Ratio<i64>>> = c.breaks.iter().map(RealSpec::rational).collect();
    let floats: Result<Vec<f64>, String> = c.breaks.iter().map(RealSpec::value).collect();
    let floats = floats
        .map_err(|m| v.violations.push(format!("cocycle breaks: {m}")))
        .ok()?;
    let partition = Partition::new(floats)
        .map_err(|e| v.violations.push(format!("cocycle partition: {e}")))
        .ok()?;
    let res = match &c.values {
        CocycleValues::Integer(vals) => match rational {
            Some(r) => StepFunction::with_rational_breaks(r, vals.clone()).map(Cocycle::Integer),
            None => StepFunction::new(partition, vals.clone()).map(Cocycle::Integer),
        },
        CocycleValues::Real(vals) => {
            if vals.iter().any(|x| !x.is_finite()) {
                v.violations.push("cocycle values must be finite".into());
                return None;
            }
            match rational {
                Some(r) => StepFunction::with_rational_breaks(r, vals.clone()).map(Cocycle::Real),
                None => StepFunction::new(partition, vals.clone()).map(Cocycle::Real),
            }
        }
    };
    res.map_err(|e| v.violations.push(format!("cocycle: {e}")))
        .ok()
}

fn check_params(cfg: &ExperimentConfig, v: &mut Validation) {
    let p = &cfg.params;
    let e = cfg.experiment;
    let mut need = |ok: bool, msg: &str| {
        if !ok {
            v.violations.push(msg.to_string());
        }
    };
    let positive = |x: Option<f64>| x.is_some_and(|x| x > 0.0 && x.is_finite());
    if let Some(t) = p.zero_tol {
        need(t > 0.0 && t.is_finite(), "zero_tol must be positive");
    }
    match e {
        Experiment::CascadeZeros | Experiment::ShneibergDiscrete => {
            need(p.n.is_some_and(|n| n >= 1), "n must be at least 1")
        }
        Experiment::FlowZeros
        | Experiment::Theorem1
        | Experiment::Denisova
        | Experiment::PhiTrace => need(positive(p.horizon), "horizon must be positive"),
        Experiment::Induced => need(p.steps.is_some_and(|k| k >= 1), "steps must be at least 1"),
        Experiment::Weiss => {
            need(positive(p.eps), "eps must be positive");
            need(
                p.n_list
                    .as_ref()
                    .is_some_and(|l| !l.is_empty() && !l.contains(&0)),
                "n_list must be a non-empty list of positive integers",
            );
        }
        Experiment::LemmaFuzz => {
            need(
                p.trials.is_some_and(|t| t >= 1),
                "trials must be at least 1",
            );
            need(
                p.degree_cap.is_none_or(|d| d <= MAX_DEGREE),
                "degree_cap must be at most 5",
            );
            need(
                p.piece_cap.is_none_or(|c| c >= 1),
                "piece_cap must be at least 1",
            );
        }
        Experiment::Wiener => need(
            p.t_values
                .as_ref()
                .is_some_and(|t| !t.is_empty() && t.iter().all(|&x| x > 0.0 && x.is_finite())),
            "t_values must be a non-empty list of positive times",
        ),
    }
    if e == Experiment::Denisova {
        need(
            p.radii.as_ref().is_some_and(|r| {
                !r.is_empty() && r.iter().all(|&x| x > 0.0) && r.windows(2).all(|w| w[1] <= w[0])
            }),
            "radii must be a non-empty, non-increasing list of positive numbers",
        );
    }
    if e == Experiment::PhiTrace {
        need(positive(p.t_step), "t_step must be positive");
    }
    if p.b.is_some() || p.delta.is_some() {
        need(positive(p.b), "b must be positive");
        need(
            p.delta.is_some_and(|d| d > 0.0 && d < 1.0),
            "delta must lie in (0, 1)",
        );
    }
    if let Some(g) = p.grid_resolution {
        need(g >= 1, "grid_resolution must be at least 1");
    }
    if let Some(start) = p.start {
        need(e.needs_flow(), "start applies to flow experiments only");
        if let Some(roof) = cfg
            .roof
            .as_ref()
            .and_then(|r| build_roof(r, &mut Validation::default()))
        {
            let [a, b] = start;
            need(
                (0.0..1.0).contains(&a) && b >= 0.0 && b < roof.at(a),
                "start point is outside the phase space",
            );
        }
    }
    if let Some(set) = &p.base_set {
        need(
            e == Experiment::Induced,
            "base_set applies to the induced experiment only",
        );
        if let Err(err) = BaseSet::new(set.clone()) {
            need(false, &format!("base_set: {err}"));
        }
    }
    if let Some(a) = p.start_base {
        need(
            e.needs_cocycle() && e != Experiment::Weiss,
            "start_base applies to cascade experiments only",
        );
        need((0.0..1.0).contains(&a), "start_base must lie in [0, 1)");
    }
}

fn check_sampling(cfg: &ExperimentConfig, v: &mut Validation) {
    if !cfg.is_sampled() {
        return;
    }
    match cfg.sampling {
        None => v
            .violations
            .push("sampling with a seed is required for this experiment".into()),
        Some(s) if s.count == 0 => v
            .violations
            .push("sampling count must be at least 1".into()),
        _ => {}
    }
}

/// Configuration for constrained integral zeros on the default flow.
pub fn canonical_theorem1(count: u64, seed: u64, horizon: f64) -> ExperimentConfig {
    ExperimentConfig {
        experiment: Experiment::Theorem1,
        system: Some(SystemSpec::Rotation {
            alpha: RealSpec::Text("golden-conjugate".into()),
        }),
        roof: Some(RoofSpec {
            starts: vec![0.0, 0.5],
            values: vec![RealSpec::Number(1.0), RealSpec::Text("golden-ratio".into())],
        }),
        observable: Some(ObservableSpec {
            preset: Some(Preset::Indicator { lo: 0.0, hi: 0.5 }),
            cells: None,
            mean_center: true,
            normalize: false,
        }),
        cocycle: None,
        target: Some(TargetSpec::Superlevel(0.5)),
        params: Params {
            horizon: Some(horizon),
            ..Params::default()
        },
        sampling: Some(Sampling { count, seed }),
        output: None,
    }
}
