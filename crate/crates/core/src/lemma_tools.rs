//! Image-measure inequality `m(F D) <= ∫_D |f| dm` for piecewise
//! polynomial `f` on `[0, b]` and finite interval unions `D`, plus the
//! small-time limit `Φ(t, x) / t -> f(x)`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{substream, CompensatedSum};
use crate::observables::{phi, Observable, MAX_DEGREE};
use crate::poly::Poly;
use crate::special_flow::{FlowError, FlowPoint, SpecialFlow};

pub const LEMMA_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LemmaError {
    #[error("invalid piecewise polynomial: {0}")]
    BadPoly(String),
    #[error("invalid interval union: {0}")]
    BadUnion(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("inequality violated with slack {}: {}", .0.slack, serde_json::to_string(.0).unwrap_or_default())]
    Violation(Box<Counterexample>),
}

/// Piecewise polynomial on `[0, b]`. Piece `i` lives on
/// `[breakpoints[i], breakpoints[i+1]]` and is a polynomial in the local
/// variable `u = s - breakpoints[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly1D {
    breakpoints: Vec<f64>,
    polys: Vec<Poly>,
    antiderivs: Vec<Poly>,
    /// `F` at each breakpoint.
    cumulative: Vec<f64>,
}

impl Poly1D {
    /// `breakpoints` has `pieces + 1` entries, from `0` to `b`.
    pub fn new(breakpoints: Vec<f64>, polys: Vec<Poly>) -> Result<Self, LemmaError> {
        if breakpoints.len() < 2 || breakpoints.len() != polys.len() + 1 {
            return Err(LemmaError::BadPoly(format!(
                "{} breakpoints for {} pieces",
                breakpoints.len(),
                polys.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(LemmaError::BadPoly("first breakpoint must be 0".into()));
        }
        if breakpoints.iter().any(|b| !b.is_finite())
            || breakpoints.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(LemmaError::BadPoly(
                "breakpoints must be finite and strictly increasing".into(),
            ));
        }
        for p in &polys {
            if p.degree().unwrap_or(0) > MAX_DEGREE {
                return Err(LemmaError::BadPoly(format!("degree above {MAX_DEGREE}")));
            }
            if p.coeffs().iter().any(|c| !c.is_finite()) {
                return Err(LemmaError::BadPoly("non-finite coefficient".into()));
            }
        }
        let antiderivs: Vec<Poly> = polys.iter().map(Poly::antiderivative).collect();
        let mut cumulative = Vec::with_capacity(breakpoints.len());
        let mut acc = CompensatedSum::new();
        cumulative.push(0.0);
        for (i, a) in antiderivs.iter().enumerate() {
            acc.add(a.eval(breakpoints[i + 1] - breakpoints[i]));
            cumulative.push(acc.value());
        }
        Ok(Poly1D {
            breakpoints,
            polys,
            antiderivs,
            cumulative,
        })
    }

    pub fn constant(b: f64, c: f64) -> Result<Self, LemmaError> {
        Self::new(vec![0.0, b], vec![Poly::constant(c)])
    }

    pub fn b(&self) -> f64 {
        *self.breakpoints.last().expect("non-empty")
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    fn piece_of(&self, s: f64) -> usize {
        let i = self.breakpoints.partition_point(|&x| x <= s);
        i.saturating_sub(1).min(self.polys.len() - 1)
    }

    pub fn eval(&self, s: f64) -> f64 {
        let i = self.piece_of(s);
        self.polys[i].eval(s - self.breakpoints[i])
    }

    /// `F(t) = ∫_0^t f dm`.
    pub fn integral_to(&self, t: f64) -> f64 {
        let i = self.piece_of(t);
        self.cumulative[i] + self.antiderivs[i].eval(t - self.breakpoints[i])
    }

    fn coefficients(&self) -> Vec<Vec<f64>> {
        self.polys.iter().map(|p| p.coeffs().to_vec()).collect()
    }
}

/// Sorted disjoint closed intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self, LemmaError> {
        for &(lo, hi) in &intervals {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(LemmaError::BadUnion(format!("bad interval [{lo}, {hi}]")));
            }
        }
        if intervals.windows(2).any(|w| w[0].1 >= w[1].0) {
            return Err(LemmaError::BadUnion(
                "intervals must be sorted and disjoint".into(),
            ));
        }
        Ok(IntervalUnion { intervals })
    }

    /// Union of arbitrary closed intervals.
    pub fn from_unsorted(mut intervals: Vec<(f64, f64)>) -> Result<Self, LemmaError> {
        for &(lo, hi) in &intervals {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(LemmaError::BadUnion(format!("bad interval [{lo}, {hi}]")));
            }
        }
        Ok(IntervalUnion {
            intervals: merge(&mut intervals),
        })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    fn check_within(&self, b: f64) -> Result<(), LemmaError> {
        match (self.intervals.first(), self.intervals.last()) {
            (Some(&(lo, _)), Some(&(_, hi))) if lo < 0.0 || hi > b => {
                Err(LemmaError::BadUnion(format!("union leaves [0, {b}]")))
            }
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<(f64, f64)>> for IntervalUnion {
    type Error = LemmaError;
    fn try_from(v: Vec<(f64, f64)>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<IntervalUnion> for Vec<(f64, f64)> {
    fn from(u: IntervalUnion) -> Self {
        u.intervals
    }
}

fn merge(intervals: &mut [(f64, f64)]) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for &(lo, hi) in intervals.iter() {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageMeasureResult {
    pub image_measure: f64,
    pub integral_abs: f64,
    /// `integral_abs - image_measure`.
    pub slack: f64,
}

/// `m(F D)` and `∫_D |f| dm`. On each interval of `D` the image of the
/// continuous `F` is `[min F, max F]`, attained at an endpoint, a piece
/// boundary or a sign change of `f`.
pub fn image_measure(f: &Poly1D, d: &IntervalUnion) -> Result<ImageMeasureResult, LemmaError> {
    d.check_within(f.b())?;
    let mut images = Vec::with_capacity(d.intervals.len());
    let mut integral = CompensatedSum::new();
    for &(t1, t2) in &d.intervals {
        let mut lo = f.integral_to(t1);
        let mut hi = lo;
        let first = f.piece_of(t1);
        let last = f.piece_of(t2);
        for i in first..=last {
            let base = f.breakpoints[i];
            let u0 = (t1.max(base)) - base;
            let u1 = (t2.min(f.breakpoints[i + 1])) - base;
            if u1 < u0 {
                continue;
            }
            let p = &f.polys[i];
            let a = &f.antiderivs[i];
            let mut prev_u = u0;
            let mut prev_a = a.eval(u0);
            let mut nodes = p.roots_in(u0, u1);
            nodes.push(u1);
            for u in nodes {
                if u <= prev_u && u != u1 {
                    continue;
                }
                let au = a.eval(u);
                integral.add((au - prev_a).abs());
                let fu = f.cumulative[i] + au;
                lo = lo.min(fu);
                hi = hi.max(fu);
                prev_u = u;
                prev_a = au;
            }
        }
        images.push((lo, hi));
    }
    let image_measure = merge(&mut images)
        .iter()
        .map(|(lo, hi)| hi - lo)
        .sum::<f64>();
    let integral_abs = integral.value();
    Ok(ImageMeasureResult {
        image_measure,
        integral_abs,
        slack: integral_abs - image_measure,
    })
}

/// Serialized fuzz instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub breakpoints: Vec<f64>,
    pub coefficients: Vec<Vec<f64>>,
    #[serde(rename = "D_intervals")]
    pub d_intervals: Vec<(f64, f64)>,
    pub slack: f64,
}

impl Counterexample {
    fn new(f: &Poly1D, d: &IntervalUnion, slack: f64) -> Self {
        Counterexample {
            breakpoints: f.breakpoints.clone(),
            coefficients: f.coefficients(),
            d_intervals: d.intervals.clone(),
            slack,
        }
    }

    /// Rebuild the instance.
    pub fn instance(&self) -> Result<(Poly1D, IntervalUnion), LemmaError> {
        let polys = self
            .coefficients
            .iter()
            .map(|c| Poly::new(c.clone()))
            .collect();
        Ok((
            Poly1D::new(self.breakpoints.clone(), polys)?,
            IntervalUnion::new(self.d_intervals.clone())?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaFuzzReport {
    pub seed: u64,
    pub trials: u64,
    pub min_slack: f64,
    pub witness: Counterexample,
    /// Largest `|slack|` over the paired equality instances (constant-sign
    /// `f`, single interval `D`).
    pub max_equality_abs_slack: f64,
    pub equality_witness: Counterexample,
}

/// Random instance for trial `i`: piece count, degrees and coefficients
/// drawn from substream `i` of `seed`.
pub fn fuzz_instance(
    seed: u64,
    trial: u64,
    degree_cap: usize,
    piece_cap: usize,
) -> (Poly1D, IntervalUnion) {
    let mut rng = substream(seed, 2 * trial);
    let (breaks, b) = random_breaks(&mut rng, piece_cap);
    let polys = (0..breaks.len() - 1)
        .map(|_| {
            if rng.random_bool(0.05) {
                return Poly::zero();
            }
            let deg = rng.random_range(0..=degree_cap);
            let scale = 10f64.powf(rng.random_range(-1.0..1.0));
            Poly::new(
                (0..=deg)
                    .map(|_| scale * rng.random_range(-1.0..1.0))
                    .collect(),
            )
        })
        .collect();
    let m = rng.random_range(1..=4usize);
    let mut pts: Vec<f64> = (0..2 * m).map(|_| rng.random_range(0.0..=b)).collect();
    pts.sort_by(f64::total_cmp);
    let d = IntervalUnion::from_unsorted(pts.chunks(2).map(|c| (c[0], c[1])).collect())
        .expect("finite");
    (Poly1D::new(breaks, polys).expect("valid instance"), d)
}

/// Equality instance for trial `i`: `f` of one sign (non-negative
/// coefficients in the local variable, times a common sign) and a single
/// interval `D`.
pub fn fuzz_equality_instance(
    seed: u64,
    trial: u64,
    degree_cap: usize,
    piece_cap: usize,
) -> (Poly1D, IntervalUnion) {
    let mut rng = substream(seed, 2 * trial + 1);
    let (breaks, b) = random_breaks(&mut rng, piece_cap);
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let polys = (0..breaks.len() - 1)
        .map(|_| {
            let deg = rng.random_range(0..=degree_cap);
            Poly::new(
                (0..=deg)
                    .map(|_| sign * rng.random_range(0.0..1.0))
                    .collect(),
            )
        })
        .collect();
    let mut t = [rng.random_range(0.0..=b), rng.random_range(0.0..=b)];
    t.sort_by(f64::total_cmp);
    let d = IntervalUnion::new(vec![(t[0], t[1])]).expect("ordered");
    (Poly1D::new(breaks, polys).expect("valid instance"), d)
}

fn random_breaks(rng: &mut impl Rng, piece_cap: usize) -> (Vec<f64>, f64) {
    let b = rng.random_range(0.1..4.0);
    let pieces = rng.random_range(1..=piece_cap);
    let mut inner: Vec<f64> = (1..pieces).map(|_| rng.random_range(0.0..b)).collect();
    inner.sort_by(f64::total_cmp);
    let mut breaks = vec![0.0];
    for s in inner {
        if s > *breaks.last().expect("non-empty") {
            breaks.push(s);
        }
    }
    breaks.push(b);
    (breaks, b)
}

/// Runs `trials` random instances and their paired equality instances in
/// parallel. Any slack below `-LEMMA_TOL` is a hard error carrying the
/// instance.
pub fn lemma_fuzz(
    seed: u64,
    trials: u64,
    degree_cap: usize,
    piece_cap: usize,
) -> Result<LemmaFuzzReport, LemmaError> {
    if trials == 0 {
        return Err(LemmaError::BadParams("trials must be at least 1".into()));
    }
    if degree_cap > MAX_DEGREE || piece_cap == 0 {
        return Err(LemmaError::BadParams(format!(
            "need degree_cap <= {MAX_DEGREE} and piece_cap >= 1"
        )));
    }
    let results: Vec<(Counterexample, Counterexample)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let (f, d) = fuzz_instance(seed, i, degree_cap, piece_cap);
            let r = image_measure(&f, &d)?;
            let ce = Counterexample::new(&f, &d, r.slack);
            if r.slack < -LEMMA_TOL {
                return Err(LemmaError::Violation(Box::new(ce)));
            }
            let (fe, de) = fuzz_equality_instance(seed, i, degree_cap, piece_cap);
            let re = image_measure(&fe, &de)?;
            if re.slack < -LEMMA_TOL {
                return Err(LemmaError::Violation(Box::new(Counterexample::new(
                    &fe, &de, re.slack,
                ))));
            }
            Ok((ce, Counterexample::new(&fe, &de, re.slack)))
        })
        .collect::<Result<_, _>>()?;
    let (general, equality): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let witness = general
        .into_iter()
        .min_by(|a, b| a.slack.total_cmp(&b.slack))
        .expect("trials >= 1");
    let equality_witness = equality
        .into_iter()
        .max_by(|a, b| a.slack.abs().total_cmp(&b.slack.abs()))
        .expect("trials >= 1");
    Ok(LemmaFuzzReport {
        seed,
        trials,
        min_slack: witness.slack,
        max_equality_abs_slack: equality_witness.slack.abs(),
        witness,
        equality_witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WienerCheck {
    pub t_values: Vec<f64>,
    /// `|Φ(t, x)/t - f(x)|`.
    pub residuals: Vec<f64>,
    /// Bound on `|∂f/∂b|` over the initial vertical run.
    pub slope_bound: f64,
    /// `slope_bound * t / 2` where `t` stays inside the initial run.
    pub bounds: Vec<Option<f64>>,
    pub on_cell_boundary: bool,
}

/// Residuals of the small-time limit `Φ(t, x)/t -> f(x)`.
pub fn local_wiener_check(
    flow: &SpecialFlow,
    f: &Observable,
    x: FlowPoint,
    t_values: &[f64],
) -> Result<WienerCheck, FlowError> {
    flow.check_point(&x)?;
    if let Some(&t) = t_values.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
        return Err(FlowError::BadTime(t));
    }
    if t_values.windows(2).any(|w| w[0] <= w[1]) {
        log::warn!("t values are not strictly decreasing");
    }
    let on_cell_boundary = f.cells().starts().contains(&x.base_pos);
    if on_cell_boundary {
        log::warn!("base point {} lies on a cell boundary", x.base_pos);
    }
    let j = f.cell_of(x.base_pos);
    let roof = f.cell_roof(j);
    let slope_bound = f.cell_poly(j).derivative().max_abs_on(x.height, roof);
    let fx = f.eval(&x);
    let mut residuals = Vec::with_capacity(t_values.len());
    let mut bounds = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let p = phi(flow, f, x, t, false)?;
        residuals.push((p.value / t - fx).abs());
        bounds.push((x.height + t <= roof).then_some(slope_bound * t / 2.0));
    }
    Ok(WienerCheck {
        t_values: t_values.to_vec(),
        residuals,
        slope_bound,
        bounds,
        on_cell_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_systems::UnitIntervalMap;
    use crate::special_flow::Roof;

    fn whole(b: f64) -> IntervalUnion {
        IntervalUnion::new(vec![(0.0, b)]).unwrap()
    }

    /// Image measure by rasterizing `F` on a uniform grid.
    pub(crate) fn raster_image(f: &Poly1D, d: &IntervalUnion, n: usize) -> f64 {
        let mut images: Vec<(f64, f64)> = d
            .intervals()
            .iter()
            .map(|&(t1, t2)| {
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for k in 0..=n {
                    let v = f.integral_to(t1 + (t2 - t1) * k as f64 / n as f64);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                (lo, hi)
            })
            .collect();
        merge(&mut images).iter().map(|(a, b)| b - a).sum()
    }

    #[test]
    fn identity_example() {
        let f = Poly1D::constant(1.0, 1.0).unwrap();
        let r = image_measure(&f, &IntervalUnion::new(vec![(0.2, 0.5)]).unwrap()).unwrap();
        assert!((r.image_measure - 0.3).abs() < 1e-15);
        assert!((r.integral_abs - 0.3).abs() < 1e-15);
        assert!(r.slack.abs() < 1e-15);
    }

    #[test]
    fn parabola_example() {
        let f = Poly1D::new(vec![0.0, 1.0], vec![Poly::new(vec![-1.0, 2.0])]).unwrap();
        let r = image_measure(&f, &whole(1.0)).unwrap();
        assert!((r.image_measure - 0.25).abs() < 1e-15);
        assert!((r.integral_abs - 0.5).abs() < 1e-15);
        assert!((r.slack - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sine_like_matches_raster_and_quadrature() {
        // Cubic approximant of sin(2πs)-like shape with one interior sign
        // change at 1/2, split into two pieces.
        let left = Poly::new(vec![0.0, 4.0, 0.0, -16.0]);
        let right = Poly::new(vec![0.0, -4.0, 0.0, 16.0]);
        let f = Poly1D::new(vec![0.0, 0.5, 1.0], vec![left, right]).unwrap();
        let d = whole(1.0);
        let r = image_measure(&f, &d).unwrap();
        let raster = raster_image(&f, &d, 200_000);
        assert!((r.image_measure - raster).abs() < 1e-8);
        let n = 400_000;
        let h = 1.0 / n as f64;
        let quad: f64 = (0..n)
            .map(|k| {
                let s = k as f64 * h;
                h / 6.0 * (f.eval(s).abs() + 4.0 * f.eval(s + h / 2.0).abs() + f.eval(s + h).abs())
            })
            .sum();
        assert!((r.integral_abs - quad).abs() < 1e-8);
        assert!(r.slack > 0.0);
        assert!((r.slack - (quad - raster)).abs() < 1e-8);
    }

    #[test]
    fn zero_and_monotone_cases() {
        let zero = Poly1D::constant(2.0, 0.0).unwrap();
        let r = image_measure(&zero, &whole(2.0)).unwrap();
        assert_eq!((r.image_measure, r.integral_abs, r.slack), (0.0, 0.0, 0.0));
        let one = Poly1D::constant(2.5, 1.0).unwrap();
        assert_eq!(image_measure(&one, &whole(2.5)).unwrap().slack, 0.0);
    }

    #[test]
    fn overlapping_images_are_counted_once() {
        // F(t) = t on [0,1], 2 - t on [1,2]: both halves map onto [0,1].
        let f = Poly1D::new(
            vec![0.0, 1.0, 2.0],
            vec![Poly::constant(1.0), Poly::constant(-1.0)],
        )
        .unwrap();
        let d = IntervalUnion::new(vec![(0.0, 0.9), (1.1, 2.0)]).unwrap();
        let r = image_measure(&f, &d).unwrap();
        assert!((r.image_measure - 0.9).abs() < 1e-15);
        assert!((r.integral_abs - 1.8).abs() < 1e-15);
    }

    #[test]
    fn union_outside_domain_is_rejected() {
        let f = Poly1D::constant(1.0, 1.0).unwrap();
        let d = IntervalUnion::new(vec![(0.5, 1.5)]).unwrap();
        assert!(matches!(
            image_measure(&f, &d),
            Err(LemmaError::BadUnion(_))
        ));
        assert!(IntervalUnion::new(vec![(0.5, 0.7), (0.6, 0.8)]).is_err());
        assert_eq!(
            IntervalUnion::from_unsorted(vec![(0.6, 0.8), (0.5, 0.7)])
                .unwrap()
                .intervals(),
            &[(0.5, 0.8)]
        );
    }

    #[test]
    fn fuzz_small_run_and_spot_checks() {
        let rep = lemma_fuzz(42, 200, 5, 6).unwrap();
        assert!(rep.min_slack >= -LEMMA_TOL);
        assert!(rep.max_equality_abs_slack <= 1e-12);
        for i in 0..10 {
            let (f, d) = fuzz_instance(42, i, 5, 6);
            let r = image_measure(&f, &d).unwrap();
            let raster = raster_image(&f, &d, 100_000);
            let scale = 1.0
                + f.polys()
                    .iter()
                    .map(|p| p.max_abs_coeff())
                    .fold(0.0, f64::max);
            assert!(r.image_measure >= raster - 1e-12 * scale);
            assert!(
                (r.image_measure - raster).abs() < 1e-6 * scale,
                "{} vs {}",
                r.image_measure,
                raster
            );
        }
        let again = lemma_fuzz(42, 200, 5, 6).unwrap();
        assert_eq!(rep, again);
    }

    #[test]
    fn counterexample_round_trips() {
        let rep = lemma_fuzz(7, 5, 3, 3).unwrap();
        let json = serde_json::to_value(&rep.witness).unwrap();
        assert!(json.get("D_intervals").is_some());
        let back: Counterexample = serde_json::from_value(json).unwrap();
        let (f, d) = back.instance().unwrap();
        assert_eq!(image_measure(&f, &d).unwrap().slack, rep.min_slack);
    }

    #[test]
    fn fuzz_rejects_bad_params() {
        assert!(lemma_fuzz(1, 0, 3, 3).is_err());
        assert!(lemma_fuzz(1, 1, 6, 3).is_err());
    }

    #[test]
    fn wiener_examples() {
        let roof = Roof::constant(1.0).unwrap();
        let flow = SpecialFlow::new(UnitIntervalMap::golden_rotation(), roof.clone());
        let c = Observable::constant(&roof, 2.5);
        let w = local_wiener_check(&flow, &c, FlowPoint::new(0.3, 0.2), &[0.1, 0.01]).unwrap();
        assert!(w.residuals.iter().all(|&r| r < 1e-13));

        let h = Observable::height(&roof);
        let w = local_wiener_check(&flow, &h, FlowPoint::new(0.3, 0.3), &[0.1]).unwrap();
        assert!((w.residuals[0] - 0.05).abs() < 1e-12);
        assert_eq!(w.slope_bound, 1.0);
        assert!((w.bounds[0].unwrap() - 0.05).abs() < 1e-15);
        assert!(local_wiener_check(&flow, &h, FlowPoint::new(0.3, 0.3), &[0.0]).is_err());
    }
}
