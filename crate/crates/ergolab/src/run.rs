//! Experiment execution.

use std::path::Path;
use std::time::Instant;

use ergolab_core::cascades::{
    birkhoff_sums, induced_cascade_run, shneiberg_sign_times, sum_zero_times, weiss_statistic,
    Fiber, SignTimes, StepFunction,
};
use ergolab_core::lemma_tools::{lemma_fuzz, local_wiener_check};
use ergolab_core::numeric::{substream, CompensatedSum};
use ergolab_core::zero_lab::{
    denisova_returns, ZeroKind, DEFAULT_GRID_RESOLUTION, DEFAULT_ZERO_TOL,
};
use ergolab_core::{
    ab_membership, find_integral_zeros, AbParams, BaseSet, FlowPoint, Observable, SpecialFlow,
    Target, TargetSet, UnitIntervalMap,
};
use rand::Rng;
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

use crate::config::{build, Cocycle, Experiment, ExperimentConfig, Setup};
use crate::report::*;
use crate::RunError;

const DEFAULT_LIST_LIMIT: usize = 100;
const DEFAULT_TRACE_LIMIT: usize = 10_000;
const DEFAULT_STEP_HORIZON: u64 = 1_000_000;
const MAX_REJECTIONS: usize = 100_000;

/// Runs the experiment and writes its outputs into `out_dir`, or the
/// configured output directory when `out_dir` is `None`.
pub fn execute(cfg: &ExperimentConfig, out_dir: Option<&Path>) -> Result<RunReport, RunError> {
    let (report, traces) = run(cfg)?;
    if let Some(dir) = out_dir.or(cfg.output.as_deref()) {
        write_outputs(dir, &report, &traces)?;
    }
    Ok(report)
}

/// Runs the experiment in memory.
pub fn run(cfg: &ExperimentConfig) -> Result<(RunReport, Traces), RunError> {
    let started = Instant::now();
    let (setup, validation) = build(cfg);
    if !validation.is_valid() {
        return Err(RunError::Invalid(validation.violations));
    }
    for w in &validation.warnings {
        log::warn!("{w}");
    }
    let ctx = Ctx::new(cfg, &setup);
    let (summary, results, traces) = match cfg.experiment {
        Experiment::CascadeZeros => ctx.cascade_zeros()?,
        Experiment::ShneibergDiscrete => ctx.shneiberg()?,
        Experiment::FlowZeros | Experiment::Theorem1 => ctx.flow_zeros()?,
        Experiment::Denisova => ctx.denisova()?,
        Experiment::Induced => ctx.induced()?,
        Experiment::Weiss => ctx.weiss()?,
        Experiment::LemmaFuzz => ctx.lemma()?,
        Experiment::Wiener => ctx.wiener()?,
        Experiment::PhiTrace => ctx.phi_trace()?,
    };
    let report = RunReport {
        config: cfg.clone(),
        alpha_form: setup.alpha_form.clone(),
        warnings: validation.warnings,
        summary,
        results,
        timing: Timing {
            wall_seconds: started.elapsed().as_secs_f64(),
            threads: rayon::current_num_threads(),
        },
    };
    Ok((report, traces))
}

type Outcome = Result<(Summary, Results, Traces), RunError>;

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    setup: &'a Setup,
    seed: u64,
    count: u64,
    list_limit: usize,
    zero_tol: f64,
}

fn cap<T: Clone>(v: &[T], n: usize) -> Vec<T> {
    v[..v.len().min(n)].to_vec()
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a ExperimentConfig, setup: &'a Setup) -> Self {
        Ctx {
            cfg,
            setup,
            seed: cfg.seed(),
            count: cfg.sample_count(),
            list_limit: cfg.params.list_limit.unwrap_or(DEFAULT_LIST_LIMIT),
            zero_tol: cfg.params.zero_tol.unwrap_or(DEFAULT_ZERO_TOL),
        }
    }

    fn rng(&self, i: u64) -> SplitMix64 {
        substream(self.seed, i)
    }

    fn map(&self) -> &UnitIntervalMap {
        self.setup.map.as_ref().expect("validated map")
    }

    fn flow(&self) -> &SpecialFlow {
        self.setup.flow.as_ref().expect("validated flow")
    }

    fn observable(&self) -> &Observable {
        self.setup
            .observable
            .as_ref()
            .expect("validated observable")
    }

    fn cocycle(&self) -> &Cocycle {
        self.setup.cocycle.as_ref().expect("validated cocycle")
    }

    fn integer_cocycle(&self) -> &StepFunction<i64> {
        match self.cocycle() {
            Cocycle::Integer(g) => g,
            Cocycle::Real(_) => unreachable!("validation requires integer values"),
        }
    }

    fn min_events(&self, default: usize) -> usize {
        self.cfg.params.min_events.unwrap_or(default)
    }

    fn base_start(&self, i: u64) -> f64 {
        self.cfg
            .params
            .start_base
            .unwrap_or_else(|| self.rng(i).random())
    }

    fn flow_start(&self, i: u64) -> FlowPoint {
        match self.cfg.params.start {
            Some([a, b]) => FlowPoint::new(a, b),
            None => self.flow().sample_point(&mut self.rng(i)),
        }
    }

    fn parallel<T: Send>(
        &self,
        f: impl Fn(u64) -> Result<T, RunError> + Sync + Send,
    ) -> Result<Vec<T>, RunError> {
        (0..self.count).into_par_iter().map(f).collect()
    }

    fn cascade_zeros(&self) -> Outcome {
        let g = self.integer_cocycle();
        let n = self.cfg.params.n.expect("validated n");
        let samples = self.parallel(|i| {
            let x = self.base_start(i);
            let zeros = sum_zero_times(self.map(), g, x, n)?;
            Ok(CascadeZerosSample {
                id: i,
                x,
                zero_count: zeros.len() as u64,
                last_zero: zeros.last().copied(),
                zeros: cap(&zeros, self.list_limit),
            })
        })?;
        let min = self.min_events(1) as u64;
        let ok: Vec<bool> = samples.iter().map(|s| s.zero_count >= min).collect();
        let counts: Vec<f64> = samples.iter().map(|s| s.zero_count as f64).collect();
        let mut traces = Traces::default();
        for s in &samples {
            traces
                .zeros
                .extend(s.zeros.iter().map(|&z| (s.id, z as f64, true, 0.0)));
        }
        traces.sums = self.sums_trace(self.base_start(0), n)?;
        let summary = Summary::new(
            &format!("at least {min} zero times"),
            "zero times",
            &ok,
            &counts,
            self.count,
        );
        Ok((summary, Results::CascadeZeros { samples }, traces))
    }

    fn sums_trace(&self, x: f64, n: u64) -> Result<Vec<(u64, String)>, RunError> {
        let limit = n.min(self.cfg.params.trace_limit.unwrap_or(DEFAULT_TRACE_LIMIT) as u64);
        fn fmt<V: Fiber + ToString>(v: Vec<V>) -> Vec<(u64, String)> {
            v.into_iter()
                .enumerate()
                .map(|(k, s)| (k as u64 + 1, s.to_string()))
                .collect()
        }
        Ok(match self.cocycle() {
            Cocycle::Integer(g) => fmt(birkhoff_sums(self.map(), g, x, limit)?),
            Cocycle::Real(g) => fmt(birkhoff_sums(self.map(), g, x, limit)?),
        })
    }

    fn shneiberg(&self) -> Outcome {
        let n = self.cfg.params.n.expect("validated n");
        let tail_from = self.cfg.params.tail_from.unwrap_or((n / 10).max(1));
        let sign_times = |x: f64| -> Result<SignTimes, RunError> {
            Ok(match self.cocycle() {
                Cocycle::Integer(g) => shneiberg_sign_times(self.map(), g, x, n)?,
                Cocycle::Real(g) => shneiberg_sign_times(self.map(), g, x, n)?,
            })
        };
        let samples = self.parallel(|i| {
            let x = self.base_start(i);
            let st = sign_times(x)?;
            Ok(SignTimesSample {
                id: i,
                x,
                below_count: st.below.len() as u64,
                above_count: st.above.len() as u64,
                below: cap(&st.below, self.list_limit),
                above: cap(&st.above, self.list_limit),
                tail_deviation: st.tail_deviation(tail_from),
                tail_from,
                final_ratio: *st.ratios.last().expect("n >= 1"),
            })
        })?;
        let mean = match self.cocycle() {
            Cocycle::Integer(g) => g.mean().to_f64(),
            Cocycle::Real(g) => g.mean().to_f64(),
        };
        let ok: Vec<bool> = samples
            .iter()
            .map(|s| s.below_count > 0 && s.above_count > 0)
            .collect();
        let counts: Vec<f64> = samples
            .iter()
            .map(|s| s.below_count.min(s.above_count) as f64)
            .collect();
        let traces = Traces {
            sums: self.sums_trace(self.base_start(0), n)?,
            ..Traces::default()
        };
        let summary = Summary::new(
            "both sign-time lists non-empty",
            "shorter sign-time list",
            &ok,
            &counts,
            self.count,
        );
        Ok((
            summary,
            Results::ShneibergDiscrete { mean, samples },
            traces,
        ))
    }

    fn theorem1_start(&self, i: u64, target: &TargetSet) -> Result<FlowPoint, RunError> {
        if let Some([a, b]) = self.cfg.params.start {
            return Ok(FlowPoint::new(a, b));
        }
        let mut rng = self.rng(i);
        let f = self.observable();
        for _ in 0..MAX_REJECTIONS {
            let x = target.sample(&mut rng);
            if f.eval(&x) != 0.0 {
                return Ok(x);
            }
        }
        Err(RunError::Sampling(
            "no point of the target set with f(x) != 0".into(),
        ))
    }

    fn flow_zeros(&self) -> Outcome {
        let theorem1 = self.cfg.experiment == Experiment::Theorem1;
        let flow = self.flow();
        let f = self.observable();
        let p = &self.cfg.params;
        let horizon = p.horizon.expect("validated horizon");
        let max_events = p.max_events.unwrap_or(usize::MAX);
        let target_set = self.setup.target.clone();
        let target = match &target_set {
            Some(t) => Target::Set(t.clone()),
            None => Target::All,
        };
        let ab = match (p.b, p.delta, &target_set) {
            (Some(b), Some(delta), Some(_)) => Some(AbParams {
                b,
                delta,
                grid_resolution: p.grid_resolution.unwrap_or(DEFAULT_GRID_RESOLUTION),
            }),
            _ => None,
        };
        let samples = self.parallel(|i| {
            let x = match (&target_set, theorem1) {
                (Some(t), true) => self.theorem1_start(i, t)?,
                _ => self.flow_start(i),
            };
            let search =
                find_integral_zeros(flow, f, x, horizon, &target, self.zero_tol, max_events)?;
            let count = |k: ZeroKind| search.events.iter().filter(|e| e.kind == k).count() as u64;
            let start_in_ab = match (&ab, &target_set) {
                (Some(params), Some(a)) => Some(ab_membership(flow, f, a, x, params)?),
                _ => None,
            };
            Ok(FlowZerosSample {
                id: i,
                start: x,
                status: if search.truncated {
                    SampleStatus::Truncated
                } else {
                    SampleStatus::Complete
                },
                event_count: search.events.len() as u64,
                in_target_count: search.events.iter().filter(|e| e.in_target).count() as u64,
                transversal_count: count(ZeroKind::Transversal),
                tangential_count: count(ZeroKind::TangentialSuspect),
                max_residual: search.events.iter().map(|e| e.residual).fold(0.0, f64::max),
                events: cap(&search.events, self.list_limit),
                stats: search.stats,
                start_in_ab,
            })
        })?;
        let min = self.min_events(if theorem1 { 3 } else { 1 }) as u64;
        let (ok, counts, rule, label): (Vec<bool>, Vec<f64>, String, &str) = if theorem1 {
            (
                samples.iter().map(|s| s.in_target_count >= min).collect(),
                samples.iter().map(|s| s.in_target_count as f64).collect(),
                format!("at least {min} integral zeros landing in the target"),
                "in-target integral zeros",
            )
        } else {
            (
                samples.iter().map(|s| s.event_count >= min).collect(),
                samples.iter().map(|s| s.event_count as f64).collect(),
                format!("at least {min} integral zeros"),
                "integral zeros",
            )
        };
        let complete = samples
            .iter()
            .filter(|s| s.status == SampleStatus::Complete)
            .count() as u64;
        let mut traces = Traces::default();
        for s in &samples {
            traces.zeros.extend(
                s.events
                    .iter()
                    .map(|e| (s.id, e.time, e.in_target, e.residual)),
            );
        }
        let summary = Summary::new(&rule, label, &ok, &counts, complete);
        let results = if theorem1 {
            Results::Theorem1 {
                target_measure: target_set.as_ref().map_or(0.0, TargetSet::measure),
                samples,
            }
        } else {
            Results::FlowZeros { samples }
        };
        Ok((summary, results, traces))
    }

    fn denisova(&self) -> Outcome {
        let flow = self.flow();
        let f = self.observable();
        let horizon = self.cfg.params.horizon.expect("validated horizon");
        let radii = self.cfg.params.radii.clone().expect("validated radii");
        let samples = self.parallel(|i| {
            let x = self.flow_start(i);
            let r = denisova_returns(flow, f, x, horizon, &radii, self.zero_tol)?;
            Ok(DenisovaSample {
                id: i,
                start: x,
                radii_consumed: r.radii_consumed,
                zeros_seen: r.zeros_seen,
                accepted: r.accepted,
            })
        })?;
        let ok: Vec<bool> = samples
            .iter()
            .map(|s| s.radii_consumed == radii.len())
            .collect();
        let counts: Vec<f64> = samples.iter().map(|s| s.radii_consumed as f64).collect();
        let mut traces = Traces::default();
        for s in &samples {
            traces
                .zeros
                .extend(s.accepted.iter().map(|e| (s.id, e.time, true, e.residual)));
        }
        let summary = Summary::new(
            "every radius consumed",
            "radii consumed",
            &ok,
            &counts,
            self.count,
        );
        Ok((summary, Results::Denisova { radii, samples }, traces))
    }

    fn induced(&self) -> Outcome {
        let g = self.integer_cocycle();
        let map = self.map();
        let steps = self.cfg.params.steps.expect("validated steps");
        let step_horizon = self.cfg.params.step_horizon.unwrap_or(DEFAULT_STEP_HORIZON);
        let set = self.induced_set()?;
        let samples = self.parallel(|i| {
            let x = match self.cfg.params.start_base {
                Some(a) => a,
                None => {
                    let mut rng = self.rng(i);
                    sample_base_set(&set, &mut rng)
                }
            };
            let run = induced_cascade_run(map, g, &set, x, steps, step_horizon)?;
            let total_time = run.total_time();
            let induced_sum = run
                .total_sum()
                .ok_or(RunError::Core("induced sum overflow".into()))?;
            let birkhoff_sum = if total_time == 0 {
                0
            } else {
                *birkhoff_sums(map, g, x, total_time)?
                    .last()
                    .expect("non-empty")
            };
            Ok(InducedSample {
                id: i,
                x,
                status: if run.complete {
                    SampleStatus::Complete
                } else {
                    SampleStatus::Partial
                },
                steps_done: run.steps.len() as u64,
                total_time,
                induced_sum,
                birkhoff_sum,
                telescoping_holds: induced_sum == birkhoff_sum,
                steps: cap(&run.steps, self.list_limit),
            })
        })?;
        let ok: Vec<bool> = samples
            .iter()
            .map(|s| s.telescoping_holds && s.status == SampleStatus::Complete)
            .collect();
        let counts: Vec<f64> = samples.iter().map(|s| s.total_time as f64).collect();
        let complete = samples
            .iter()
            .filter(|s| s.status == SampleStatus::Complete)
            .count() as u64;
        let summary = Summary::new(
            "all steps completed and the induced sums telescope exactly",
            "base steps covered",
            &ok,
            &counts,
            complete,
        );
        Ok((summary, Results::Induced { samples }, Traces::default()))
    }

    /// Base set for induction: `base_set` when given, else the first cell
    /// of the cocycle's partition.
    fn induced_set(&self) -> Result<BaseSet, RunError> {
        let intervals = match &self.cfg.params.base_set {
            Some(v) => v.clone(),
            None => vec![self.integer_cocycle().partition().cell(0)],
        };
        BaseSet::new(intervals).map_err(|e| RunError::Core(e.to_string()))
    }

    fn weiss(&self) -> Outcome {
        let p = &self.cfg.params;
        let n_list = p.n_list.clone().expect("validated n_list");
        let eps = p.eps.expect("validated eps");
        let table = match self.cocycle() {
            Cocycle::Integer(g) => {
                weiss_statistic(self.map(), g, &n_list, eps, self.count, self.seed)?
            }
            Cocycle::Real(g) => {
                weiss_statistic(self.map(), g, &n_list, eps, self.count, self.seed)?
            }
        };
        let monotone = table
            .rows
            .windows(2)
            .all(|w| w[0].fraction >= w[1].fraction);
        let fractions: Vec<f64> = table.rows.iter().map(|r| r.fraction).collect();
        let summary = Summary::new(
            "exceedance fraction non-increasing in n",
            "exceedance fraction",
            &[monotone],
            &fractions,
            1,
        );
        Ok((summary, Results::Weiss { table }, Traces::default()))
    }

    fn lemma(&self) -> Outcome {
        let p = &self.cfg.params;
        let trials = p.trials.expect("validated trials");
        let report = lemma_fuzz(
            self.seed,
            trials,
            p.degree_cap.unwrap_or(5),
            p.piece_cap.unwrap_or(6),
        )?;
        let summary = Summary::new(
            "no trial with slack below -1e-9",
            "minimum slack",
            &[true],
            &[report.min_slack],
            1,
        );
        Ok((summary, Results::LemmaFuzz { report }, Traces::default()))
    }

    /// Start point whose first run is longer than every tested time.
    fn wiener_start(&self, i: u64, t_max: f64) -> Result<FlowPoint, RunError> {
        if let Some([a, b]) = self.cfg.params.start {
            return Ok(FlowPoint::new(a, b));
        }
        let flow = self.flow();
        let cells = self.observable().cells();
        let mut rng = self.rng(i);
        for _ in 0..MAX_REJECTIONS {
            let x = flow.sample_point(&mut rng);
            if x.height + t_max < flow.roof().at(x.base_pos)
                && !cells.starts().contains(&x.base_pos)
            {
                return Ok(x);
            }
        }
        Err(RunError::Sampling(
            "no interior point with a first run longer than max t".into(),
        ))
    }

    fn wiener(&self) -> Outcome {
        let flow = self.flow();
        let f = self.observable();
        let t_values = self
            .cfg
            .params
            .t_values
            .clone()
            .expect("validated t_values");
        let t_max = t_values.iter().copied().fold(0.0, f64::max);
        let samples = self.parallel(|i| {
            let x = self.wiener_start(i, t_max)?;
            let w = local_wiener_check(flow, f, x, &t_values)?;
            let within_bound = w
                .residuals
                .iter()
                .zip(&w.bounds)
                .all(|(r, b)| b.is_some_and(|b| *r <= b + self.zero_tol));
            Ok(WienerSample {
                id: i,
                start: x,
                t_values: w.t_values,
                residuals: w.residuals,
                bounds: w.bounds,
                slope_bound: w.slope_bound,
                within_bound,
            })
        })?;
        let ok: Vec<bool> = samples.iter().map(|s| s.within_bound).collect();
        let counts: Vec<f64> = samples
            .iter()
            .map(|s| s.residuals.iter().copied().fold(0.0, f64::max))
            .collect();
        let summary = Summary::new(
            "every residual within slope_bound * t / 2 + zero_tol",
            "largest residual",
            &ok,
            &counts,
            self.count,
        );
        Ok((summary, Results::Wiener { samples }, Traces::default()))
    }

    fn phi_trace(&self) -> Outcome {
        let flow = self.flow();
        let f = self.observable();
        let horizon = self.cfg.params.horizon.expect("validated horizon");
        let step = self.cfg.params.t_step.expect("validated t_step");
        let x = self.flow_start(0);
        let n = (horizon / step + 1e-9).floor() as u64;
        let mut rows = Vec::with_capacity(n as usize + 1);
        let mut acc = CompensatedSum::new();
        let mut k = 0u64;
        for seg in flow.walk(x, horizon)? {
            let j = f.cell_of(seg.base_pos);
            let end = seg.start_time + seg.duration;
            while k <= n && (k as f64 * step) <= end {
                let t = k as f64 * step;
                let u = (t - seg.start_time).max(0.0);
                rows.push((
                    t,
                    acc.value() + f.integral_in_cell(j, seg.start_height, seg.start_height + u),
                ));
                k += 1;
            }
            acc.add(f.integral_in_cell(j, seg.start_height, seg.end_height()));
        }
        while k <= n {
            rows.push((k as f64 * step, acc.value()));
            k += 1;
        }
        let final_phi = acc.value();
        let summary = Summary::new(
            "trace written",
            "trace points",
            &[true],
            &[rows.len() as f64],
            1,
        );
        let results = Results::PhiTrace {
            start: x,
            points: rows.len() as u64,
            final_phi,
        };
        Ok((
            summary,
            results,
            Traces {
                phi_trace: rows,
                ..Traces::default()
            },
        ))
    }
}

fn sample_base_set(set: &BaseSet, rng: &mut impl Rng) -> f64 {
    let mut pick = rng.random::<f64>() * set.measure();
    let intervals = set.intervals();
    let mut chosen = intervals[intervals.len() - 1];
    for &(lo, hi) in intervals {
        if pick < hi - lo {
            chosen = (lo, hi);
            break;
        }
        pick -= hi - lo;
    }
    (chosen.0 + rng.random::<f64>() * (chosen.1 - chosen.0)).min(chosen.1.next_down())
}
