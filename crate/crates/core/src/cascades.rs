//! Cylindrical cascades `C(x, z) = (S x, z + g(x))` over interval maps.
//!
//! Integer-valued cascades carry exact `i64` fibers end to end; overflow is
//! an error, never a wrap. Birkhoff sums are produced in fixed-size blocks
//! but are observable one step at a time.

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base_systems::{BaseError, BaseSet, Partition, ReturnStep, UnitIntervalMap};
use crate::numeric::substream;

const BLOCK: usize = 1024;
const ZERO_MEAN_TOL: f64 = 1e-12;
const REAL_SIGN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CascadeError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("{cells} cells but {values} values")]
    Shape { cells: usize, values: usize },
    #[error("fiber overflow after {steps} steps")]
    Overflow { steps: u64 },
    #[error("step function mean is {0}, not zero")]
    NonZeroMean(String),
    #[error("invalid rational breakpoints: {0}")]
    BadRational(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// Fiber values of a cascade.
pub trait Fiber: Copy + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    const ZERO: Self;
    fn checked_add(self, rhs: Self) -> Option<Self>;
    fn to_f64(self) -> f64;
    /// Exact integer value, when the fiber is integral.
    fn exact(self) -> Option<i128>;
}

impl Fiber for i64 {
    const ZERO: Self = 0;
    #[inline]
    fn checked_add(self, rhs: Self) -> Option<Self> {
        i64::checked_add(self, rhs)
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn exact(self) -> Option<i128> {
        Some(self as i128)
    }
}

impl Fiber for f64 {
    const ZERO: Self = 0.0;
    #[inline]
    fn checked_add(self, rhs: Self) -> Option<Self> {
        let s = self + rhs;
        s.is_finite().then_some(s)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn exact(self) -> Option<i128> {
        None
    }
}

/// The mean `∫ g dμ`, exact when the breakpoints were given as rationals
/// and the values are integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mean {
    Exact(Ratio<i128>),
    Float(f64),
}

impl Mean {
    pub fn to_f64(&self) -> f64 {
        match self {
            Mean::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Mean::Float(m) => *m,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Mean::Exact(r) => *r.numer() == 0,
            Mean::Float(m) => m.abs() <= ZERO_MEAN_TOL,
        }
    }
}

/// Piecewise-constant function on `[0,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction<V> {
    partition: Partition,
    values: Vec<V>,
    exact_breaks: Option<Vec<Ratio<i64>>>,
}

impl<V: Fiber> StepFunction<V> {
    pub fn new(partition: Partition, values: Vec<V>) -> Result<Self, CascadeError> {
        if partition.len() != values.len() {
            return Err(CascadeError::Shape {
                cells: partition.len(),
                values: values.len(),
            });
        }
        Ok(StepFunction {
            partition,
            values,
            exact_breaks: None,
        })
    }

    /// Step function whose breakpoints are exact rationals; the float
    /// partition uses their nearest doubles.
    pub fn with_rational_breaks(
        breaks: Vec<Ratio<i64>>,
        values: Vec<V>,
    ) -> Result<Self, CascadeError> {
        if breaks.first().map(|b| *b.numer()) != Some(0) {
            return Err(CascadeError::BadRational(
                "first breakpoint must be 0".into(),
            ));
        }
        if breaks.iter().any(|b| *b >= Ratio::from_integer(1)) {
            return Err(CascadeError::BadRational("breakpoints must be < 1".into()));
        }
        let floats = breaks
            .iter()
            .map(|b| *b.numer() as f64 / *b.denom() as f64)
            .collect();
        let mut g = Self::new(Partition::new(floats)?, values)?;
        g.exact_breaks = Some(breaks);
        Ok(g)
    }

    pub fn constant(v: V) -> Self {
        StepFunction {
            partition: Partition::trivial(),
            values: vec![v],
            exact_breaks: None,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn exact_breaks(&self) -> Option<&[Ratio<i64>]> {
        self.exact_breaks.as_deref()
    }

    #[inline]
    pub fn eval(&self, a: f64) -> V {
        self.values[self.partition.locate(a)]
    }

    pub fn mean(&self) -> Mean {
        if let (Some(breaks), Some(exact)) = (
            &self.exact_breaks,
            self.values
                .iter()
                .map(|v| v.exact())
                .collect::<Option<Vec<i128>>>(),
        ) {
            let widen = |r: &Ratio<i64>| Ratio::new(*r.numer() as i128, *r.denom() as i128);
            let mut m = Ratio::from_integer(0i128);
            for (j, v) in exact.iter().enumerate() {
                let lo = widen(&breaks[j]);
                let hi = breaks
                    .get(j + 1)
                    .map(widen)
                    .unwrap_or(Ratio::from_integer(1));
                m += (hi - lo) * Ratio::from_integer(*v);
            }
            return Mean::Exact(m);
        }
        let m = (0..self.partition.len())
            .map(|j| self.partition.cell_len(j) * self.values[j].to_f64())
            .sum();
        Mean::Float(m)
    }
}

impl StepFunction<i64> {
    /// `+1` on `[0, 1/2)`, `-1` on `[1/2, 1)`.
    pub fn signed_halves() -> Self {
        Self::with_rational_breaks(vec![Ratio::from_integer(0), Ratio::new(1, 2)], vec![1, -1])
            .expect("halves")
    }

    /// Indicator of `[0, p/q)`.
    pub fn initial_indicator(p: i64, q: i64) -> Result<Self, CascadeError> {
        Self::with_rational_breaks(vec![Ratio::from_integer(0), Ratio::new(p, q)], vec![1, 0])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeState<V> {
    pub base_pos: f64,
    pub fiber: V,
}

pub fn cascade_step<V: Fiber>(
    map: &UnitIntervalMap,
    g: &StepFunction<V>,
    st: CascadeState<V>,
) -> Result<CascadeState<V>, CascadeError> {
    let base_pos = map.apply(st.base_pos)?;
    let fiber = st
        .fiber
        .checked_add(g.eval(st.base_pos))
        .ok_or(CascadeError::Overflow { steps: 1 })?;
    Ok(CascadeState { base_pos, fiber })
}

/// Stream of Birkhoff sums `S(x, n) = Σ_{i<n} g(S^i x)` for `n = 1..=N`.
pub struct BirkhoffSums<'a, V> {
    map: &'a UnitIntervalMap,
    g: &'a StepFunction<V>,
    pos: f64,
    sum: V,
    produced: u64,
    limit: u64,
    buf: Vec<V>,
    cursor: usize,
    failed: bool,
}

impl<'a, V: Fiber> BirkhoffSums<'a, V> {
    pub fn new(
        map: &'a UnitIntervalMap,
        g: &'a StepFunction<V>,
        x: f64,
        n: u64,
    ) -> Result<Self, CascadeError> {
        if !(0.0..1.0).contains(&x) {
            return Err(BaseError::Domain(x).into());
        }
        Ok(BirkhoffSums {
            map,
            g,
            pos: x,
            sum: V::ZERO,
            produced: 0,
            limit: n,
            buf: Vec::with_capacity(BLOCK),
            cursor: 0,
            failed: false,
        })
    }

    fn refill(&mut self) -> Result<(), CascadeError> {
        self.buf.clear();
        self.cursor = 0;
        let remaining = (self.limit - self.produced).min(BLOCK as u64) as usize;
        for _ in 0..remaining {
            self.sum =
                self.sum
                    .checked_add(self.g.eval(self.pos))
                    .ok_or(CascadeError::Overflow {
                        steps: self.produced + self.buf.len() as u64 + 1,
                    })?;
            self.pos = self.map.step(self.pos);
            self.buf.push(self.sum);
        }
        Ok(())
    }
}

impl<V: Fiber> Iterator for BirkhoffSums<'_, V> {
    /// `(n, S(x, n))`.
    type Item = Result<(u64, V), CascadeError>;

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.produced >= self.limit {
            return None;
        }
        if self.cursor == self.buf.len() {
            if let Err(e) = self.refill() {
                self.failed = true;
                return Some(Err(e));
            }
        }
        let v = self.buf[self.cursor];
        self.cursor += 1;
        self.produced += 1;
        Some(Ok((self.produced, v)))
    }
}

/// `[S(x,1), ..., S(x,N)]`.
pub fn birkhoff_sums<V: Fiber>(
    map: &UnitIntervalMap,
    g: &StepFunction<V>,
    x: f64,
    n: u64,
) -> Result<Vec<V>, CascadeError> {
    BirkhoffSums::new(map, g, x, n)?
        .map(|r| r.map(|(_, v)| v))
        .collect()
}

/// All `n <= N` with `S(x, n) = 0`, for an integer-valued zero-mean `g`.
pub fn sum_zero_times(
    map: &UnitIntervalMap,
    g: &StepFunction<i64>,
    x: f64,
    n: u64,
) -> Result<Vec<u64>, CascadeError> {
    let mean = g.mean();
    if !mean.is_zero() {
        return Err(CascadeError::NonZeroMean(format!("{:e}", mean.to_f64())));
    }
    let mut out = Vec::new();
    for item in BirkhoffSums::new(map, g, x, n)? {
        let (k, s) = item?;
        if s == 0 {
            out.push(k);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignTimes {
    /// `n` with `S(x, n) - n m <= 0`.
    pub below: Vec<u64>,
    /// `n` with `S(x, n) - n m >= 0`.
    pub above: Vec<u64>,
    /// `ratios[n - 1] = S(x, n) / n`.
    pub ratios: Vec<f64>,
    pub mean: f64,
}

impl SignTimes {
    /// `max |S(x,n)/n - m|` over listed times `n >= from`.
    pub fn tail_deviation(&self, from: u64) -> f64 {
        self.below
            .iter()
            .chain(&self.above)
            .filter(|&&n| n >= from)
            .map(|&n| (self.ratios[n as usize - 1] - self.mean).abs())
            .fold(0.0, f64::max)
    }
}

/// Times where the Birkhoff sum lies below, respectively above, `n ∫ g`.
pub fn shneiberg_sign_times<V: Fiber>(
    map: &UnitIntervalMap,
    g: &StepFunction<V>,
    x: f64,
    n: u64,
) -> Result<SignTimes, CascadeError> {
    let mean = g.mean();
    let m = mean.to_f64();
    let mut out = SignTimes {
        below: Vec::new(),
        above: Vec::new(),
        ratios: Vec::with_capacity(n as usize),
        mean: m,
    };
    for item in BirkhoffSums::new(map, g, x, n)? {
        let (k, s) = item?;
        let (below, above) = match (mean, s.exact()) {
            (Mean::Exact(r), Some(si)) => {
                let dev = si * r.denom() - (k as i128) * r.numer();
                (dev <= 0, dev >= 0)
            }
            _ => {
                let dev = s.to_f64() - k as f64 * m;
                let tol = REAL_SIGN_TOL * k as f64;
                (dev <= tol, dev >= -tol)
            }
        };
        if below {
            out.below.push(k);
        }
        if above {
            out.above.push(k);
        }
        out.ratios.push(s.to_f64() / k as f64);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InducedRun<V> {
    pub steps: Vec<ReturnStep<V>>,
    /// False when some excursion exceeded the per-step horizon.
    pub complete: bool,
}

impl<V: Fiber> InducedRun<V> {
    pub fn total_time(&self) -> u64 {
        self.steps.iter().map(|s| s.return_time).sum()
    }

    pub fn total_sum(&self) -> Option<V> {
        self.steps
            .iter()
            .try_fold(V::ZERO, |acc, s| acc.checked_add(s.cocycle_sum))
    }
}

/// `K` steps of the induced cascade on `A x Z`: return time, landing point
/// and the induced cocycle `Σ_{i<n(x)} g(S^i x)`.
pub fn induced_cascade_run<V: Fiber>(
    map: &UnitIntervalMap,
    g: &StepFunction<V>,
    set: &BaseSet,
    x: f64,
    k: usize,
    step_horizon: u64,
) -> Result<InducedRun<V>, CascadeError> {
    if !(0.0..1.0).contains(&x) {
        return Err(BaseError::Domain(x).into());
    }
    if !set.contains(x) {
        return Err(BaseError::NotInBaseSet(x).into());
    }
    let mut steps = Vec::with_capacity(k);
    let mut pos = x;
    let mut elapsed = 0u64;
    for _ in 0..k {
        let mut sum = V::ZERO;
        let mut n = 0u64;
        let mut returned = false;
        while n < step_horizon {
            sum = sum.checked_add(g.eval(pos)).ok_or(CascadeError::Overflow {
                steps: elapsed + n + 1,
            })?;
            pos = map.step(pos);
            n += 1;
            if set.contains(pos) {
                returned = true;
                break;
            }
        }
        if !returned {
            return Ok(InducedRun {
                steps,
                complete: false,
            });
        }
        elapsed += n;
        steps.push(ReturnStep {
            return_time: n,
            landing: pos,
            cocycle_sum: sum,
        });
    }
    Ok(InducedRun {
        steps,
        complete: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeissRow {
    pub n: u64,
    pub exceed: u64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeissTable {
    pub eps: f64,
    pub samples: u64,
    pub rows: Vec<WeissRow>,
}

/// Empirical `μ(|S(x, n)| > eps n)` for each `n` in `n_list`, over
/// `samples` uniform points drawn from per-sample substreams of `seed`.
pub fn weiss_statistic<V: Fiber>(
    map: &UnitIntervalMap,
    g: &StepFunction<V>,
    n_list: &[u64],
    eps: f64,
    samples: u64,
    seed: u64,
) -> Result<WeissTable, CascadeError> {
    if !(eps > 0.0) {
        return Err(CascadeError::BadParams(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if samples == 0 || n_list.is_empty() || n_list.contains(&0) {
        return Err(CascadeError::BadParams(
            "need samples >= 1 and a non-empty list of n >= 1".into(),
        ));
    }
    let mut sorted: Vec<u64> = n_list.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let n_max = *sorted.last().expect("non-empty");
    let per_sample: Vec<Vec<bool>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let x: f64 = substream(seed, i).random();
            let mut flags = Vec::with_capacity(sorted.len());
            let mut next = 0;
            for item in BirkhoffSums::new(map, g, x, n_max)? {
                let (k, s) = item?;
                if k == sorted[next] {
                    flags.push(s.to_f64().abs() > eps * k as f64);
                    next += 1;
                    if next == sorted.len() {
                        break;
                    }
                }
            }
            Ok(flags)
        })
        .collect::<Result<_, CascadeError>>()?;
    let rows = sorted
        .iter()
        .enumerate()
        .map(|(idx, &n)| {
            let exceed = per_sample.iter().filter(|f| f[idx]).count() as u64;
            WeissRow {
                n,
                exceed,
                fraction: exceed as f64 / samples as f64,
            }
        })
        .collect();
    Ok(WeissTable { eps, samples, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> UnitIntervalMap {
        UnitIntervalMap::rotation(0.5).unwrap()
    }

    #[test]
    fn cascade_step_examples() {
        let g = StepFunction::signed_halves();
        let zero = StepFunction::constant(0i64);
        let st = CascadeState {
            base_pos: 0.1,
            fiber: 5i64,
        };
        assert_eq!(cascade_step(&half(), &zero, st).unwrap().fiber, 5);
        let s1 = cascade_step(
            &half(),
            &g,
            CascadeState {
                base_pos: 0.1,
                fiber: 0,
            },
        )
        .unwrap();
        assert!((s1.base_pos - 0.6).abs() < 1e-15);
        assert_eq!(s1.fiber, 1);
        let s2 = cascade_step(&half(), &g, s1).unwrap();
        assert!((s2.base_pos - 0.1).abs() < 1e-15);
        assert_eq!(s2.fiber, 0);
    }

    #[test]
    fn overflow_is_an_error() {
        let g = StepFunction::constant(i64::MAX / 2 + 1);
        let st = CascadeState {
            base_pos: 0.1,
            fiber: i64::MAX / 2 + 1,
        };
        assert!(matches!(
            cascade_step(&half(), &g, st),
            Err(CascadeError::Overflow { .. })
        ));
        let sums = birkhoff_sums(&half(), &g, 0.1, 3);
        assert_eq!(sums, Err(CascadeError::Overflow { steps: 2 }));
    }

    #[test]
    fn birkhoff_examples() {
        let one = StepFunction::constant(1i64);
        let s = birkhoff_sums(&UnitIntervalMap::golden_rotation(), &one, 0.3, 5000).unwrap();
        assert!(s.iter().enumerate().all(|(i, &v)| v == i as i64 + 1));
        let s = birkhoff_sums(&half(), &StepFunction::signed_halves(), 0.1, 6).unwrap();
        assert_eq!(s, vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn golden_birkhoff_matches_reiteration() {
        let g = StepFunction::signed_halves();
        let sums = birkhoff_sums(&UnitIntervalMap::golden_rotation(), &g, 0.1, 100_000).unwrap();
        let alpha = crate::GOLDEN_CONJUGATE;
        let mut x = 0.1f64;
        let mut s = 0i64;
        for &v in &sums {
            s += if x < 0.5 { 1 } else { -1 };
            x = (x + alpha) % 1.0;
            assert_eq!(v, s);
        }
    }

    #[test]
    fn zero_time_examples() {
        let g = StepFunction::signed_halves();
        assert_eq!(
            sum_zero_times(&half(), &g, 0.1, 10).unwrap(),
            vec![2, 4, 6, 8, 10]
        );
        let z = StepFunction::constant(0i64);
        assert_eq!(
            sum_zero_times(&half(), &z, 0.1, 7).unwrap(),
            (1..=7).collect::<Vec<_>>()
        );
        let ind = StepFunction::initial_indicator(3, 10).unwrap();
        assert!(matches!(
            sum_zero_times(&half(), &ind, 0.1, 7),
            Err(CascadeError::NonZeroMean(_))
        ));
    }

    #[test]
    fn mean_is_exact_with_rational_breaks() {
        let ind = StepFunction::initial_indicator(3, 10).unwrap();
        assert_eq!(ind.mean(), Mean::Exact(Ratio::new(3, 10)));
        let thirds = StepFunction::with_rational_breaks(
            vec![Ratio::from_integer(0), Ratio::new(1, 3), Ratio::new(2, 3)],
            vec![1i64, 1, -2],
        )
        .unwrap();
        assert!(thirds.mean().is_zero());
    }

    #[test]
    fn sign_time_examples() {
        let c = StepFunction::constant(3i64);
        let st = shneiberg_sign_times(&UnitIntervalMap::golden_rotation(), &c, 0.2, 50).unwrap();
        assert_eq!(st.below.len(), 50);
        assert_eq!(st.above.len(), 50);

        let g = StepFunction::signed_halves();
        let st = shneiberg_sign_times(&half(), &g, 0.1, 20).unwrap();
        assert_eq!(st.below, (1..=10).map(|k| 2 * k).collect::<Vec<u64>>());
        assert_eq!(st.above, (1..=20).collect::<Vec<u64>>());

        let ind = StepFunction::initial_indicator(3, 10).unwrap();
        let st =
            shneiberg_sign_times(&UnitIntervalMap::golden_rotation(), &ind, 0.05, 100_000).unwrap();
        assert!(!st.below.is_empty() && !st.above.is_empty());
        // Oracle scan with exact integer arithmetic.
        let sums = birkhoff_sums(&UnitIntervalMap::golden_rotation(), &ind, 0.05, 100_000).unwrap();
        let below: Vec<u64> = (1..=100_000u64)
            .filter(|&n| 10 * sums[n as usize - 1] <= 3 * n as i64)
            .collect();
        let above: Vec<u64> = (1..=100_000u64)
            .filter(|&n| 10 * sums[n as usize - 1] >= 3 * n as i64)
            .collect();
        assert_eq!(st.below, below);
        assert_eq!(st.above, above);
    }

    #[test]
    fn shneiberg_ratio_tail_shrinks() {
        let ind = StepFunction::initial_indicator(3, 10).unwrap();
        let st =
            shneiberg_sign_times(&UnitIntervalMap::golden_rotation(), &ind, 0.05, 100_000).unwrap();
        let d1 = st.tail_deviation(100);
        let d2 = st.tail_deviation(1_000);
        let d3 = st.tail_deviation(10_000);
        assert!(d1 >= d2 && d2 >= d3, "{d1} {d2} {d3}");
    }

    #[test]
    fn induced_examples() {
        let a = BaseSet::new(vec![(0.0, 0.5)]).unwrap();
        let g = StepFunction::signed_halves();
        let r = UnitIntervalMap::rotation(0.25).unwrap();
        let run = induced_cascade_run(&r, &g, &a, 0.3, 1, 100).unwrap();
        assert_eq!(run.steps[0].return_time, 3);
        assert_eq!(run.steps[0].cocycle_sum, -1);
        assert!((run.steps[0].landing - 0.05).abs() < 1e-15);

        let gold = UnitIntervalMap::golden_rotation();
        let whole = induced_cascade_run(&gold, &g, &BaseSet::whole(), 0.3, 50, 10).unwrap();
        let sums = birkhoff_sums(&gold, &g, 0.3, 50).unwrap();
        let mut prev = 0;
        for (step, s) in whole.steps.iter().zip(&sums) {
            assert_eq!(step.return_time, 1);
            assert_eq!(step.cocycle_sum, s - prev);
            prev = *s;
        }

        let run = induced_cascade_run(&gold, &g, &a, 0.1, 1000, 1000).unwrap();
        assert!(run.complete);
        let total = run.total_time();
        let sums = birkhoff_sums(&gold, &g, 0.1, total).unwrap();
        assert_eq!(run.total_sum(), Some(sums[total as usize - 1]));

        let tiny = BaseSet::new(vec![(0.0, 1e-6)]).unwrap();
        let partial = induced_cascade_run(&gold, &g, &tiny, 0.0, 5, 10).unwrap();
        assert!(!partial.complete);
    }

    #[test]
    fn weiss_examples() {
        let zero = StepFunction::constant(0i64);
        let t = weiss_statistic(
            &UnitIntervalMap::golden_rotation(),
            &zero,
            &[10, 100],
            0.1,
            50,
            1,
        )
        .unwrap();
        assert!(t.rows.iter().all(|r| r.fraction == 0.0));
        let g = StepFunction::signed_halves();
        let t = weiss_statistic(&half(), &g, &[10], 0.5, 100, 2).unwrap();
        assert_eq!(t.rows[0].fraction, 0.0);
    }

    #[test]
    fn weiss_golden_matches_direct_monte_carlo() {
        let g = StepFunction::signed_halves();
        let gold = UnitIntervalMap::golden_rotation();
        let ns = [100, 1_000, 10_000];
        let t = weiss_statistic(&gold, &g, &ns, 0.01, 200, 9).unwrap();
        let mut oracle = [0u64; 3];
        for i in 0..200 {
            let mut x: f64 = substream(9, i).random();
            let mut s = 0i64;
            for n in 1..=10_000u64 {
                s += if x < 0.5 { 1 } else { -1 };
                x = (x + crate::GOLDEN_CONJUGATE) % 1.0;
                if let Some(idx) = ns.iter().position(|&m| m == n) {
                    if (s as f64).abs() > 0.01 * n as f64 {
                        oracle[idx] += 1;
                    }
                }
            }
        }
        let got: Vec<u64> = t.rows.iter().map(|r| r.exceed).collect();
        assert_eq!(got, oracle.to_vec());
        assert!(t.rows.windows(2).all(|w| w[0].fraction >= w[1].fraction));
    }
}
