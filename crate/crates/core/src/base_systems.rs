//! Invertible measure-preserving maps of the unit interval and first-return
//! machinery over them.
//!
//! All intervals are left-closed and right-open, so a list of breakpoints
//! partitions `[0,1)` exactly, shared endpoints included.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::circle_distance;

/// Largest number of intervals accepted for an interval exchange.
pub const MAX_IET_INTERVALS: usize = 16;

const IET_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaseError {
    #[error("point {0} lies outside [0,1)")]
    Domain(f64),
    #[error("rotation number must lie in (0,1), got {0}")]
    BadRotation(f64),
    #[error("invalid interval exchange: {0}")]
    BadIet(String),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("invalid base set: {0}")]
    BadBaseSet(String),
    #[error("start point {0} is not in the base set")]
    NotInBaseSet(f64),
    #[error("no return to the base set within {max_steps} steps")]
    HorizonExhausted { max_steps: u64 },
}

#[inline]
fn check_unit(a: f64) -> Result<(), BaseError> {
    if (0.0..1.0).contains(&a) {
        Ok(())
    } else {
        Err(BaseError::Domain(a))
    }
}

/// Sorted left endpoints `0 = p_0 < p_1 < ... < p_{k-1} < 1` of a partition
/// of `[0,1)` into `k` half-open cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Partition {
    starts: Vec<f64>,
}

#[allow(clippy::len_without_is_empty)]
impl Partition {
    pub fn new(starts: Vec<f64>) -> Result<Self, BaseError> {
        if starts.first() != Some(&0.0) {
            return Err(BaseError::BadPartition("first breakpoint must be 0".into()));
        }
        if starts.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(BaseError::BadPartition(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if starts.iter().any(|&s| !(s < 1.0)) {
            return Err(BaseError::BadPartition("breakpoints must be < 1".into()));
        }
        Ok(Partition { starts })
    }

    pub fn trivial() -> Self {
        Partition { starts: vec![0.0] }
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn starts(&self) -> &[f64] {
        &self.starts
    }

    /// Cell `j` as `[start, end)`.
    pub fn cell(&self, j: usize) -> (f64, f64) {
        let end = self.starts.get(j + 1).copied().unwrap_or(1.0);
        (self.starts[j], end)
    }

    pub fn cell_len(&self, j: usize) -> f64 {
        let (s, e) = self.cell(j);
        e - s
    }

    /// Index of the cell containing `a`; `a` must lie in `[0,1)`.
    #[inline]
    pub fn locate(&self, a: f64) -> usize {
        self.starts.partition_point(|&s| s <= a) - 1
    }

    /// Common refinement of two partitions.
    pub fn refine(&self, other: &Partition) -> Partition {
        let mut starts: Vec<f64> = self.starts.iter().chain(&other.starts).copied().collect();
        starts.sort_by(f64::total_cmp);
        starts.dedup();
        Partition { starts }
    }
}

impl TryFrom<Vec<f64>> for Partition {
    type Error = BaseError;
    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<f64> {
    fn from(p: Partition) -> Self {
        p.starts
    }
}

/// The base automorphism: a rotation or an interval exchange of `[0,1)`.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitIntervalMap {
    Rotation { alpha: f64 },
    Iet(Iet),
}

/// Interval exchange: interval `i` of the source order (lengths as given)
/// is translated to slot `permutation[i]` of the target order.
#[derive(Debug, Clone, PartialEq)]
pub struct Iet {
    lengths: Vec<f64>,
    permutation: Vec<usize>,
    src: Partition,
    shift: Vec<f64>,
    // Inverse data: target-order partition and per-slot shift back.
    dst: Partition,
    back_shift: Vec<f64>,
}

impl Iet {
    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Zero-based permutation.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }
}

#[inline]
fn wrap_unit(x: f64) -> f64 {
    if x >= 1.0 {
        let y = x - 1.0;
        if y >= 1.0 {
            0.0
        } else {
            y
        }
    } else if x < 0.0 {
        let y = x + 1.0;
        if y >= 1.0 {
            0.0
        } else {
            y
        }
    } else {
        x
    }
}

impl UnitIntervalMap {
    pub fn rotation(alpha: f64) -> Result<Self, BaseError> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(UnitIntervalMap::Rotation { alpha })
        } else {
            Err(BaseError::BadRotation(alpha))
        }
    }

    /// Rotation by the golden-ratio conjugate `(sqrt(5) - 1) / 2`.
    pub fn golden_rotation() -> Self {
        UnitIntervalMap::Rotation {
            alpha: crate::GOLDEN_CONJUGATE,
        }
    }

    /// Interval exchange from positive lengths (normalized to sum 1; the raw
    /// sum must be within 1e-9 of 1) and a zero-based permutation.
    pub fn iet(lengths: Vec<f64>, permutation: Vec<usize>) -> Result<Self, BaseError> {
        let k = lengths.len();
        if k == 0 || k > MAX_IET_INTERVALS {
            return Err(BaseError::BadIet(format!(
                "need between 1 and {MAX_IET_INTERVALS} intervals, got {k}"
            )));
        }
        if permutation.len() != k {
            return Err(BaseError::BadIet(
                "permutation length differs from lengths".into(),
            ));
        }
        if lengths.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return Err(BaseError::BadIet("lengths must be positive".into()));
        }
        let total: f64 = lengths.iter().sum();
        if (total - 1.0).abs() > IET_SUM_TOL {
            return Err(BaseError::BadIet(format!("lengths sum to {total}, not 1")));
        }
        let mut seen = vec![false; k];
        for &p in &permutation {
            if p >= k || seen[p] {
                return Err(BaseError::BadIet("permutation is not a bijection".into()));
            }
            seen[p] = true;
        }
        let lengths: Vec<f64> = lengths.iter().map(|l| l / total).collect();
        let prefix = |order: &mut dyn Iterator<Item = f64>| -> Vec<f64> {
            let mut acc = 0.0;
            order
                .map(|l| {
                    let s = acc;
                    acc += l;
                    s
                })
                .collect()
        };
        let src_starts = prefix(&mut lengths.iter().copied());
        // Interval occupying target slot q.
        let mut by_slot = vec![0usize; k];
        for (i, &q) in permutation.iter().enumerate() {
            by_slot[q] = i;
        }
        let dst_starts = prefix(&mut by_slot.iter().map(|&i| lengths[i]));
        let shift: Vec<f64> = (0..k)
            .map(|i| dst_starts[permutation[i]] - src_starts[i])
            .collect();
        let back_shift: Vec<f64> = (0..k).map(|q| -shift[by_slot[q]]).collect();
        let part = |s: Vec<f64>| Partition::new(s).map_err(|e| BaseError::BadIet(e.to_string()));
        Ok(UnitIntervalMap::Iet(Iet {
            src: part(src_starts)?,
            dst: part(dst_starts)?,
            lengths,
            permutation,
            shift,
            back_shift,
        }))
    }

    /// `S(a)` without the domain check.
    #[inline]
    pub fn step(&self, a: f64) -> f64 {
        match self {
            UnitIntervalMap::Rotation { alpha } => {
                let s = a + alpha;
                if s >= 1.0 {
                    s - 1.0
                } else {
                    s
                }
            }
            UnitIntervalMap::Iet(iet) => wrap_unit(a + iet.shift[iet.src.locate(a)]),
        }
    }

    /// `S^{-1}(a)` without the domain check.
    #[inline]
    pub fn step_back(&self, a: f64) -> f64 {
        match self {
            UnitIntervalMap::Rotation { alpha } => wrap_unit(a - alpha),
            UnitIntervalMap::Iet(iet) => wrap_unit(a + iet.back_shift[iet.dst.locate(a)]),
        }
    }

    pub fn apply(&self, a: f64) -> Result<f64, BaseError> {
        check_unit(a)?;
        Ok(self.step(a))
    }

    pub fn apply_inverse(&self, a: f64) -> Result<f64, BaseError> {
        check_unit(a)?;
        Ok(self.step_back(a))
    }

    /// Orbit `a, S a, ..., S^{n-1} a`.
    pub fn orbit(&self, a: f64, n: usize) -> Result<Vec<f64>, BaseError> {
        check_unit(a)?;
        let mut out = Vec::with_capacity(n);
        let mut x = a;
        for _ in 0..n {
            out.push(x);
            x = self.step(x);
        }
        Ok(out)
    }

    /// Smallest `n >= 1` with `S^n a in set`, searching at most `max_steps`
    /// iterates.
    pub fn first_return(
        &self,
        set: &BaseSet,
        a: f64,
        max_steps: u64,
    ) -> Result<ReturnStep, BaseError> {
        check_unit(a)?;
        if !set.contains(a) {
            return Err(BaseError::NotInBaseSet(a));
        }
        let mut x = a;
        for n in 1..=max_steps {
            x = self.step(x);
            if set.contains(x) {
                return Ok(ReturnStep {
                    return_time: n,
                    landing: x,
                    cocycle_sum: (),
                });
            }
        }
        Err(BaseError::HorizonExhausted { max_steps })
    }
}

/// Finite union of disjoint half-open subintervals `[u, v)` of `[0,1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct BaseSet {
    intervals: Vec<(f64, f64)>,
}

impl BaseSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self, BaseError> {
        if intervals.is_empty() {
            return Err(BaseError::BadBaseSet("no intervals".into()));
        }
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        for &(u, v) in &intervals {
            if !(0.0 <= u && u < v && v <= 1.0) {
                return Err(BaseError::BadBaseSet(format!(
                    "[{u}, {v}) is not a nonempty subinterval of [0,1)"
                )));
            }
        }
        if intervals.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(BaseError::BadBaseSet("intervals overlap".into()));
        }
        Ok(BaseSet { intervals })
    }

    pub fn whole() -> Self {
        BaseSet {
            intervals: vec![(0.0, 1.0)],
        }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(u, v)| v - u).sum()
    }

    #[inline]
    pub fn contains(&self, a: f64) -> bool {
        let i = self.intervals.partition_point(|&(u, _)| u <= a);
        i > 0 && a < self.intervals[i - 1].1
    }
}

impl TryFrom<Vec<(f64, f64)>> for BaseSet {
    type Error = BaseError;
    fn try_from(v: Vec<(f64, f64)>) -> Result<Self, Self::Error> {
        BaseSet::new(v)
    }
}

impl From<BaseSet> for Vec<(f64, f64)> {
    fn from(s: BaseSet) -> Self {
        s.intervals
    }
}

/// One step of the induced (first-return) map: `n(x)`, `S^{n(x)} x` and,
/// for induced cascades, the summed cocycle along the excursion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReturnStep<C = ()> {
    pub return_time: u64,
    pub landing: f64,
    pub cocycle_sum: C,
}

/// Round-trip error `|S^{-1} S a - a|` on the circle.
pub fn round_trip_error(map: &UnitIntervalMap, a: f64) -> f64 {
    circle_distance(map.step_back(map.step(a)), a)
}
