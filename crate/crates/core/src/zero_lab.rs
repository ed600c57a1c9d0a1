//! Integral zeros of special flows.
//!
//! The scanner walks the vertical runs of a trajectory. On each run
//! `Φ(t, x)` is a polynomial in time whose critical points are the roots of
//! the cell polynomial of `f` (precomputed once per cell), so the run splits
//! into monotone pieces. A strict sign change on a monotone piece brackets
//! exactly one transversal zero, refined by bisection. Points where `|Φ|`
//! has a local minimum no larger than the tolerance without a sign change
//! are reported as tangential suspects; they are flagged, not certified.
//!
//! Runs whose starting value exceeds `sup|f| · duration + tol` in absolute
//! value cannot contain a zero and are skipped without isolation.

use std::ops::ControlFlow;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::CompensatedSum;
use crate::observables::{phi, Observable};
use crate::special_flow::{flow_distance, FlowError, FlowPoint, Roof, SpecialFlow, WalkSegment};

pub const DEFAULT_ZERO_TOL: f64 = 1e-9;
pub const DEFAULT_GRID_RESOLUTION: usize = 64;

const MEAN_WARN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZeroLabError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("identically zero observable: every time is an integral zero")]
    IdenticallyZero,
    #[error("invalid target set: {0}")]
    BadTarget(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// Half-open rectangle `[a_lo, a_hi) x [b_lo, b_hi)` of the phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub a_lo: f64,
    pub a_hi: f64,
    pub b_lo: f64,
    pub b_hi: f64,
}

impl Rect {
    pub fn new(a_lo: f64, a_hi: f64, b_lo: f64, b_hi: f64) -> Self {
        Rect {
            a_lo,
            a_hi,
            b_lo,
            b_hi,
        }
    }

    pub fn area(&self) -> f64 {
        (self.a_hi - self.a_lo) * (self.b_hi - self.b_lo)
    }

    #[inline]
    pub fn contains(&self, x: &FlowPoint) -> bool {
        self.a_lo <= x.base_pos
            && x.base_pos < self.a_hi
            && self.b_lo <= x.height
            && x.height < self.b_hi
    }

    fn overlaps(&self, o: &Rect) -> bool {
        self.a_lo < o.a_hi && o.a_lo < self.a_hi && self.b_lo < o.b_hi && o.b_lo < self.b_hi
    }
}

/// Finite disjoint union of rectangles inside the phase space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetSet {
    rects: Vec<Rect>,
}

impl TargetSet {
    pub fn new(roof: &Roof, rects: Vec<Rect>) -> Result<Self, ZeroLabError> {
        let violations = Self::violations(roof, &rects);
        if let Some(v) = violations.into_iter().next() {
            return Err(ZeroLabError::BadTarget(v));
        }
        Ok(TargetSet { rects })
    }

    /// Every constraint a rectangle list breaks, as messages.
    pub fn violations(roof: &Roof, rects: &[Rect]) -> Vec<String> {
        let mut out = Vec::new();
        if rects.is_empty() {
            out.push("target set has no rectangles".to_string());
        }
        for (i, r) in rects.iter().enumerate() {
            if !(0.0 <= r.a_lo && r.a_lo < r.a_hi && r.a_hi <= 1.0) {
                out.push(format!(
                    "target rectangle {i}: base range [{}, {}) is not inside [0,1)",
                    r.a_lo, r.a_hi
                ));
                continue;
            }
            if !(0.0 <= r.b_lo && r.b_lo < r.b_hi) {
                out.push(format!(
                    "target rectangle {i}: height range [{}, {}) is empty or negative",
                    r.b_lo, r.b_hi
                ));
                continue;
            }
            let min_roof = roof.min_on(r.a_lo, r.a_hi);
            if r.b_hi > min_roof {
                out.push(format!(
                    "target rectangle {i}: top {} exceeds the roof {} over its base",
                    r.b_hi, min_roof
                ));
            }
        }
        for i in 0..rects.len() {
            for j in i + 1..rects.len() {
                if rects[i].overlaps(&rects[j]) {
                    out.push(format!("target rectangles {i} and {j} overlap"));
                }
            }
        }
        out
    }

    /// The whole phase space, one rectangle per roof piece.
    pub fn full(roof: &Roof) -> Self {
        let p = roof.partition();
        let rects = (0..p.len())
            .map(|j| {
                let (s, e) = p.cell(j);
                Rect::new(s, e, 0.0, roof.values()[j])
            })
            .collect();
        TargetSet { rects }
    }

    /// `{x : f(x) >= level}` as a union of rectangles.
    pub fn superlevel(f: &Observable, level: f64) -> Result<Self, ZeroLabError> {
        let cells = f.cells();
        let mut rects = Vec::new();
        for j in 0..cells.len() {
            let (a_lo, a_hi) = cells.cell(j);
            let roof = f.cell_roof(j);
            let p = f.cell_poly(j).add_constant(-level);
            let mut nodes = vec![0.0];
            nodes.extend(
                p.roots_in(0.0, roof)
                    .into_iter()
                    .filter(|&r| r > 0.0 && r < roof),
            );
            nodes.push(roof);
            for w in nodes.windows(2) {
                if w[1] > w[0] && p.eval(0.5 * (w[0] + w[1])) >= 0.0 {
                    match rects.last_mut() {
                        Some(Rect { a_lo: l, b_hi, .. }) if *l == a_lo && *b_hi == w[0] => {
                            *b_hi = w[1]
                        }
                        _ => rects.push(Rect::new(a_lo, a_hi, w[0], w[1])),
                    }
                }
            }
        }
        if rects.is_empty() {
            return Err(ZeroLabError::BadTarget(format!(
                "superlevel set {{f >= {level}}} is empty"
            )));
        }
        Ok(TargetSet { rects })
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn measure(&self) -> f64 {
        self.rects.iter().map(Rect::area).sum()
    }

    #[inline]
    pub fn contains(&self, x: &FlowPoint) -> bool {
        self.rects.iter().any(|r| r.contains(x))
    }

    /// Length of `{a} x [b0, b1]` inside the set.
    #[inline]
    pub fn vertical_overlap(&self, a: f64, b0: f64, b1: f64) -> f64 {
        self.rects
            .iter()
            .filter(|r| r.a_lo <= a && a < r.a_hi)
            .map(|r| (b1.min(r.b_hi) - b0.max(r.b_lo)).max(0.0))
            .sum()
    }

    /// Uniform sample from the set.
    pub fn sample(&self, rng: &mut impl Rng) -> FlowPoint {
        let total = self.measure();
        let mut pick = rng.random::<f64>() * total;
        let mut chosen = self.rects[self.rects.len() - 1];
        for r in &self.rects {
            if pick < r.area() {
                chosen = *r;
                break;
            }
            pick -= r.area();
        }
        let a = chosen.a_lo + rng.random::<f64>() * (chosen.a_hi - chosen.a_lo);
        let b = chosen.b_lo + rng.random::<f64>() * (chosen.b_hi - chosen.b_lo);
        FlowPoint::new(
            a.min(chosen.a_hi.next_down()),
            b.min(chosen.b_hi.next_down()),
        )
    }
}

/// Where landing points must fall for an event to count as on target.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    All,
    Set(TargetSet),
}

impl Target {
    pub fn contains(&self, x: &FlowPoint) -> bool {
        match self {
            Target::All => true,
            Target::Set(s) => s.contains(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroKind {
    Transversal,
    TangentialSuspect,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroEvent {
    pub time: f64,
    pub landing: FlowPoint,
    pub in_target: bool,
    pub residual: f64,
    pub kind: ZeroKind,
}

/// A time where `Φ(t, x)` meets the scanned level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelHit {
    pub time: f64,
    pub landing: FlowPoint,
    pub residual: f64,
    pub kind: ZeroKind,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanStats {
    pub segments: u64,
    pub skipped_segments: u64,
    /// Sign changes whose refined residual still exceeded the tolerance.
    pub imprecise_roots: u64,
    /// Whether the visitor stopped the scan before the horizon.
    pub stopped_early: bool,
}

#[inline]
fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

struct Scanner<'a, V> {
    flow: &'a SpecialFlow,
    tol: f64,
    visit: V,
    stats: ScanStats,
    have_prev: bool,
    prev_left: f64,
    last_nonzero: i8,
    pending: Option<(f64, FlowPoint, i8)>,
    last_time: f64,
}

impl<V: FnMut(LevelHit) -> ControlFlow<()>> Scanner<'_, V> {
    fn emit(&mut self, hit: LevelHit) -> ControlFlow<()> {
        if hit.time <= self.last_time {
            return ControlFlow::Continue(());
        }
        self.last_time = hit.time;
        (self.visit)(hit)
    }

    /// Monotone piece `[ul, ur]` of run `seg`, on which the offset integral
    /// is `q(u)` with `q(ul) = ql`, `q(ur) = qr`.
    fn piece(
        &mut self,
        seg: &WalkSegment,
        q: &dyn Fn(f64) -> f64,
        (ul, ql): (f64, f64),
        (ur, qr): (f64, f64),
    ) -> ControlFlow<()> {
        let tol = self.tol;
        if self.have_prev
            && ql != 0.0
            && ql.abs() <= tol
            && sign(self.prev_left) == sign(ql)
            && sign(qr) == sign(ql)
            && self.prev_left.abs() > ql.abs()
            && qr.abs() >= ql.abs()
        {
            self.emit(LevelHit {
                time: seg.start_time + ul,
                landing: self.flow.point_on(seg, ul),
                residual: ql.abs(),
                kind: ZeroKind::TangentialSuspect,
            })?;
        }
        if qr != 0.0 {
            if let Some((time, landing, before)) = self.pending.take() {
                let kind = if before != 0 && sign(qr) != before {
                    ZeroKind::Transversal
                } else {
                    ZeroKind::TangentialSuspect
                };
                self.emit(LevelHit {
                    time,
                    landing,
                    residual: 0.0,
                    kind,
                })?;
            }
        }
        if ql != 0.0 && qr != 0.0 && sign(ql) != sign(qr) {
            let u = crate::poly::bisect(q, ul, ur, ql);
            let residual = q(u).abs();
            if residual <= tol {
                self.emit(LevelHit {
                    time: seg.start_time + u,
                    landing: self.flow.point_on(seg, u),
                    residual,
                    kind: ZeroKind::Transversal,
                })?;
            } else {
                self.stats.imprecise_roots += 1;
            }
        }
        if qr == 0.0 && self.pending.is_none() && (ql != 0.0 || self.have_prev) {
            let before = if ql != 0.0 {
                sign(ql)
            } else {
                self.last_nonzero
            };
            self.pending = Some((seg.start_time + ur, self.flow.point_on(seg, ur), before));
        }
        if qr != 0.0 {
            self.last_nonzero = sign(qr);
        }
        self.prev_left = ql;
        self.have_prev = true;
        ControlFlow::Continue(())
    }

    fn finish(&mut self) {
        if let Some((time, landing, _)) = self.pending.take() {
            let _ = self.emit(LevelHit {
                time,
                landing,
                residual: 0.0,
                kind: ZeroKind::TangentialSuspect,
            });
        }
    }
}

/// Visits every `t` in `(0, horizon]` with `Φ(t, x) = level`, ascending.
pub fn scan_level<V>(
    flow: &SpecialFlow,
    f: &Observable,
    x: FlowPoint,
    horizon: f64,
    level: f64,
    tol: f64,
    visit: V,
) -> Result<ScanStats, ZeroLabError>
where
    V: FnMut(LevelHit) -> ControlFlow<()>,
{
    if !f.is_compatible(flow) {
        return Err(FlowError::IncompatibleObservable.into());
    }
    if !(horizon > 0.0) {
        return Err(ZeroLabError::BadParams(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    if !(tol > 0.0) {
        return Err(ZeroLabError::BadParams(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut sc = Scanner {
        flow,
        tol,
        visit,
        stats: ScanStats::default(),
        have_prev: false,
        prev_left: 0.0,
        last_nonzero: 0,
        pending: None,
        last_time: 0.0,
    };
    let mut phi_acc = CompensatedSum::new();
    let mut nodes: Vec<f64> = Vec::with_capacity(8);
    for seg in flow.walk(x, horizon)? {
        sc.stats.segments += 1;
        let j = f.cell_of(seg.base_pos);
        let b0 = seg.start_height;
        let b1 = seg.end_height();
        let q_start = phi_acc.value() - level;
        let inc = f.integral_in_cell(j, b0, b1);
        phi_acc.add(inc);
        let q_end = phi_acc.value() - level;

        if q_start.abs() > f.cell_sup(j) * seg.duration + tol && sc.have_prev {
            sc.stats.skipped_segments += 1;
            sc.last_nonzero = sign(q_end);
            sc.prev_left = q_start;
            continue;
        }

        let antider = |b: f64| f.integral_in_cell(j, b0, b);
        let q = |u: f64| q_start + antider(b0 + u);
        nodes.clear();
        nodes.push(0.0);
        nodes.extend(
            f.cell_roots(j)
                .iter()
                .filter(|&&r| r > b0 && r < b1)
                .map(|&r| r - b0),
        );
        nodes.push(seg.duration);
        let mut ql = q_start;
        for w in 1..nodes.len() {
            let ur = nodes[w];
            let qr = if w + 1 == nodes.len() { q_end } else { q(ur) };
            if sc.piece(&seg, &q, (nodes[w - 1], ql), (ur, qr)).is_break() {
                sc.stats.stopped_early = true;
                return Ok(sc.stats);
            }
            ql = qr;
        }
    }
    sc.finish();
    Ok(sc.stats)
}

fn check_observable(f: &Observable) -> Result<(), ZeroLabError> {
    if f.is_identically_zero() {
        return Err(ZeroLabError::IdenticallyZero);
    }
    let m = f.mean();
    if m.abs() > MEAN_WARN_TOL {
        log::warn!("observable mean {m:e} is not zero; integral zeros may be finite in number");
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSearch {
    pub events: Vec<ZeroEvent>,
    pub stats: ScanStats,
    /// `max_events` was reached before the horizon.
    pub truncated: bool,
}

/// Integral zeros of `x` up to `horizon`, flagged by target membership of
/// the landing point. At most `max_events` are returned.
pub fn find_integral_zeros(
    flow: &SpecialFlow,
    f: &Observable,
    x: FlowPoint,
    horizon: f64,
    target: &Target,
    zero_tol: f64,
    max_events: usize,
) -> Result<ZeroSearch, ZeroLabError> {
    check_observable(f)?;
    let mut events = Vec::new();
    if max_events == 0 {
        return Ok(ZeroSearch {
            events,
            stats: ScanStats::default(),
            truncated: true,
        });
    }
    let stats = scan_level(flow, f, x, horizon, 0.0, zero_tol, |hit| {
        events.push(ZeroEvent {
            time: hit.time,
            landing: hit.landing,
            in_target: target.contains(&hit.landing),
            residual: hit.residual,
            kind: hit.kind,
        });
        if events.len() >= max_events {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(ZeroSearch {
        events,
        truncated: stats.stopped_early,
        stats,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenisovaResult {
    pub accepted: Vec<ZeroEvent>,
    pub radii_consumed: usize,
    pub zeros_seen: u64,
}

/// Integral zeros whose landing points fall in shrinking balls around `x`;
/// each accepted event consumes the next radius of the schedule.
pub fn denisova_returns(
    flow: &SpecialFlow,
    f: &Observable,
    x: FlowPoint,
    horizon: f64,
    radii: &[f64],
    zero_tol: f64,
) -> Result<DenisovaResult, ZeroLabError> {
    check_observable(f)?;
    if radii.iter().any(|&r| !(r > 0.0)) || radii.windows(2).any(|w| w[1] > w[0]) {
        return Err(ZeroLabError::BadParams(
            "radii must be positive and non-increasing".into(),
        ));
    }
    let mut out = DenisovaResult {
        accepted: Vec::new(),
        radii_consumed: 0,
        zeros_seen: 0,
    };
    if radii.is_empty() {
        return Ok(out);
    }
    scan_level(flow, f, x, horizon, 0.0, zero_tol, |hit| {
        out.zeros_seen += 1;
        if flow_distance(&hit.landing, &x) <= radii[out.radii_consumed] {
            out.accepted.push(ZeroEvent {
                time: hit.time,
                landing: hit.landing,
                in_target: true,
                residual: hit.residual,
                kind: hit.kind,
            });
            out.radii_consumed += 1;
            if out.radii_consumed == radii.len() {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Parameters of the set `A_b`: trajectory averages of `|f|` and of the
/// indicator of `A` must stay within `(1 - delta, 1 + delta)` for
/// `0 < t <= b`. Keep `delta` and the matching offset below `b / 100`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbParams {
    pub b: f64,
    pub delta: f64,
    pub grid_resolution: usize,
}

impl AbParams {
    pub fn new(b: f64, delta: f64) -> Self {
        AbParams {
            b,
            delta,
            grid_resolution: DEFAULT_GRID_RESOLUTION,
        }
    }

    fn check(&self) -> Result<(), ZeroLabError> {
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(ZeroLabError::BadParams(format!(
                "b must be positive, got {}",
                self.b
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(ZeroLabError::BadParams(format!(
                "delta must lie in (0,1), got {}",
                self.delta
            )));
        }
        if self.grid_resolution == 0 {
            return Err(ZeroLabError::BadParams(
                "grid_resolution must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Grid test of `x ∈ A_b`: `x ∈ A` and both trajectory averages lie in
/// `(1 - δ, 1 + δ)` at `grid_resolution` equally spaced times on every run
/// within `(0, b]`. Assumes `f` has been scaled so that `|f| ≈ 1` on `A`.
pub fn ab_membership(
    flow: &SpecialFlow,
    f: &Observable,
    a: &TargetSet,
    x: FlowPoint,
    p: &AbParams,
) -> Result<bool, ZeroLabError> {
    p.check()?;
    if !f.is_compatible(flow) {
        return Err(FlowError::IncompatibleObservable.into());
    }
    if !a.contains(&x) {
        return Ok(false);
    }
    let lo = 1.0 - p.delta;
    let hi = 1.0 + p.delta;
    let g = p.grid_resolution;
    let mut abs_acc = CompensatedSum::new();
    let mut occ_acc = CompensatedSum::new();
    for seg in flow.walk(x, p.b)? {
        let j = f.cell_of(seg.base_pos);
        let b0 = seg.start_height;
        for k in 1..=g {
            let u = if k == g {
                seg.duration
            } else {
                seg.duration * k as f64 / g as f64
            };
            let t = seg.start_time + u;
            if t <= 0.0 {
                continue;
            }
            let abs_avg = (abs_acc.value() + f.abs_integral_in_cell(j, b0, b0 + u)) / t;
            let occ_avg = (occ_acc.value() + a.vertical_overlap(seg.base_pos, b0, b0 + u)) / t;
            if !(lo < abs_avg && abs_avg < hi && lo < occ_avg && occ_avg < hi) {
                return Ok(false);
            }
        }
        abs_acc.add(f.abs_integral_in_cell(j, b0, seg.end_height()));
        occ_acc.add(a.vertical_overlap(seg.base_pos, b0, seg.end_height()));
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairMatch {
    pub s: f64,
    pub s_prime: f64,
    /// `Φ(s, x)`.
    pub matched_value: f64,
    pub d: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PairScanStats {
    pub grid_points: u64,
    pub in_ab: u64,
    pub candidate_roots: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PairOutcome {
    Found(PairMatch, PairScanStats),
    NotFound(PairScanStats),
}

/// Searches `s, s' ∈ [0, b)` with `Φ(s, x) = Φ(s', T_{t'} x) + d` and both
/// `T_s x` and `T_{t'+s'} x` in `A_b`.
///
/// `s` runs over `grid_resolution` equally spaced points of `[0, b)`; for
/// each admissible `s` the equation in `s'` is solved exactly by level
/// scanning, and the first root whose landing point is in `A_b` wins.
#[allow(clippy::too_many_arguments)]
pub fn joint_pair_search(
    flow: &SpecialFlow,
    f: &Observable,
    a: &TargetSet,
    x: FlowPoint,
    t_prime: f64,
    p: &AbParams,
    d: f64,
    match_tol: f64,
) -> Result<PairOutcome, ZeroLabError> {
    p.check()?;
    if !(0.0 <= d && d < p.b / 100.0) {
        return Err(ZeroLabError::BadParams(format!(
            "offset d = {d} must lie in [0, b/100)"
        )));
    }
    if !(t_prime >= 0.0) {
        return Err(ZeroLabError::BadParams(format!(
            "t' must be non-negative, got {t_prime}"
        )));
    }
    let y = flow.evolve(x, t_prime)?;
    let mut stats = PairScanStats::default();
    let g = p.grid_resolution;
    for k in 0..g {
        let s = p.b * k as f64 / g as f64;
        stats.grid_points += 1;
        let xs = flow.evolve(x, s)?;
        if !ab_membership(flow, f, a, xs, p)? {
            continue;
        }
        stats.in_ab += 1;
        let f1 = phi(flow, f, x, s, false)?.value;
        let level = f1 - d;
        let mut candidates = Vec::new();
        if level.abs() <= match_tol {
            candidates.push(0.0);
        }
        scan_level(flow, f, y, p.b, level, match_tol, |hit| {
            if hit.time < p.b {
                candidates.push(hit.time);
            }
            ControlFlow::Continue(())
        })?;
        stats.candidate_roots += candidates.len() as u64;
        for s_prime in candidates {
            let z = flow.evolve(y, s_prime)?;
            if ab_membership(flow, f, a, z, p)? {
                return Ok(PairOutcome::Found(
                    PairMatch {
                        s,
                        s_prime,
                        matched_value: f1,
                        d,
                    },
                    stats,
                ));
            }
        }
    }
    Ok(PairOutcome::NotFound(stats))
}

/// Default experiment configuration for constrained integral zeros.
#[derive(Debug, Clone)]
pub struct CanonicalSetup {
    pub flow: SpecialFlow,
    /// Mean-centered indicator of the column over `[0, 1/2)`.
    pub observable: Observable,
    /// `{f >= max f / 2}`.
    pub target: TargetSet,
}

/// Golden rotation under the roof `1` on `[0, 1/2)`, golden ratio on
/// `[1/2, 1)`.
pub fn canonical_setup() -> CanonicalSetup {
    let roof = Roof::two_valued(0.5, 1.0, crate::GOLDEN_RATIO).expect("roof");
    let flow = SpecialFlow::new(
        crate::base_systems::UnitIntervalMap::golden_rotation(),
        roof,
    );
    let observable = Observable::indicator(flow.roof(), 0.0, 0.5)
        .expect("indicator")
        .mean_centered();
    let target = TargetSet::superlevel(&observable, 0.5 * observable.sup_norm()).expect("target");
    CanonicalSetup {
        flow,
        observable,
        target,
    }
}
