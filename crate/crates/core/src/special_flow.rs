//! Special flows under a piecewise-constant roof.
//!
//! A point `(a, b)` with `0 <= b < r(a)` rises at unit speed; on reaching the
//! roof it is identified with `(S a, 0)`. Because the roof is piecewise
//! constant, every crossing time is exact and a trajectory over `[0, t]`
//! decomposes into vertical runs ([`TrajectorySegment`]).
//!
//! Elapsed time along a walk is accumulated with compensated summation and
//! the remaining time is always `t - elapsed`, so every walk from the same
//! start point produces bit-identical segment boundaries whatever its
//! horizon.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base_systems::{BaseError, Partition, UnitIntervalMap};
use crate::numeric::{circle_distance, CompensatedSum};

/// Roof values below this are rejected at construction.
pub const MIN_ROOF: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("roof value {0} is below the minimum {MIN_ROOF}")]
    RoofTooLow(f64),
    #[error("roof has {pieces} pieces but {values} values")]
    RoofShape { pieces: usize, values: usize },
    #[error("height {height} is outside [0, {roof}) at base point {base}")]
    BadHeight { base: f64, height: f64, roof: f64 },
    #[error("time must be finite and non-negative, got {0}")]
    BadTime(f64),
    #[error("observable was built for a different roof")]
    IncompatibleObservable,
}

/// Piecewise-constant roof `r(a) = values[j]` on partition cell `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Roof {
    partition: Partition,
    values: Vec<f64>,
}

impl Roof {
    pub fn new(partition: Partition, values: Vec<f64>) -> Result<Self, FlowError> {
        if partition.len() != values.len() {
            return Err(FlowError::RoofShape {
                pieces: partition.len(),
                values: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| !(v >= MIN_ROOF) || !v.is_finite()) {
            return Err(FlowError::RoofTooLow(bad));
        }
        Ok(Roof { partition, values })
    }

    pub fn constant(h: f64) -> Result<Self, FlowError> {
        Roof::new(Partition::trivial(), vec![h])
    }

    /// Two-valued roof: `low` on `[0, split)`, `high` on `[split, 1)`.
    pub fn two_valued(split: f64, low: f64, high: f64) -> Result<Self, FlowError> {
        Roof::new(Partition::new(vec![0.0, split])?, vec![low, high])
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, a: f64) -> f64 {
        self.values[self.partition.locate(a)]
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest roof value over `[lo, hi)`.
    pub fn min_on(&self, lo: f64, hi: f64) -> f64 {
        (0..self.partition.len())
            .filter(|&j| {
                let (s, e) = self.partition.cell(j);
                s < hi && lo < e
            })
            .map(|j| self.values[j])
            .fold(f64::INFINITY, f64::min)
    }

    /// `∫_0^1 r(a) da`.
    pub fn integral(&self) -> f64 {
        (0..self.partition.len())
            .map(|j| self.partition.cell_len(j) * self.values[j])
            .sum()
    }
}

/// A point `(a, b)` of the phase space with `0 <= b < r(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowPoint {
    pub base_pos: f64,
    pub height: f64,
}

impl FlowPoint {
    pub fn new(base_pos: f64, height: f64) -> Self {
        FlowPoint { base_pos, height }
    }
}

/// Product metric: circle distance of base points plus height difference.
pub fn flow_distance(x: &FlowPoint, y: &FlowPoint) -> f64 {
    circle_distance(x.base_pos, y.base_pos) + (x.height - y.height).abs()
}

/// A vertical run `{base_pos} x [start_height, start_height + duration]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySegment {
    pub base_pos: f64,
    pub start_height: f64,
    pub duration: f64,
}

/// A segment as produced by the walker, with its position in time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkSegment {
    pub base_pos: f64,
    pub start_height: f64,
    pub duration: f64,
    /// Time at which the run starts (compensated sum of earlier durations).
    pub start_time: f64,
    /// Roof value over `base_pos`.
    pub roof: f64,
    /// Whether the run ends on the roof (and the point jumps to `S a`).
    pub reaches_roof: bool,
}

impl WalkSegment {
    pub fn end_height(&self) -> f64 {
        self.start_height + self.duration
    }

    pub fn to_segment(&self) -> TrajectorySegment {
        TrajectorySegment {
            base_pos: self.base_pos,
            start_height: self.start_height,
            duration: self.duration,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialFlow {
    base: UnitIntervalMap,
    roof: Roof,
}

impl SpecialFlow {
    pub fn new(base: UnitIntervalMap, roof: Roof) -> Self {
        SpecialFlow { base, roof }
    }

    pub fn base(&self) -> &UnitIntervalMap {
        &self.base
    }

    pub fn roof(&self) -> &Roof {
        &self.roof
    }

    /// Measure of the phase space, `Σ_j length_j · r_j`.
    pub fn total_measure(&self) -> f64 {
        self.roof.integral()
    }

    pub fn point(&self, base_pos: f64, height: f64) -> Result<FlowPoint, FlowError> {
        let x = FlowPoint { base_pos, height };
        self.check_point(&x)?;
        Ok(x)
    }

    pub fn check_point(&self, x: &FlowPoint) -> Result<(), FlowError> {
        if !(0.0..1.0).contains(&x.base_pos) {
            return Err(BaseError::Domain(x.base_pos).into());
        }
        let roof = self.roof.at(x.base_pos);
        if !(x.height >= 0.0 && x.height < roof) {
            return Err(FlowError::BadHeight {
                base: x.base_pos,
                height: x.height,
                roof,
            });
        }
        Ok(())
    }

    /// Point drawn from the normalized invariant measure: a roof cell with
    /// probability proportional to its area, then uniform inside it.
    pub fn sample_point(&self, rng: &mut impl Rng) -> FlowPoint {
        let p = self.roof.partition();
        let mut pick = rng.random::<f64>() * self.total_measure();
        let mut j = p.len() - 1;
        for k in 0..p.len() {
            let area = p.cell_len(k) * self.roof.values()[k];
            if pick < area {
                j = k;
                break;
            }
            pick -= area;
        }
        let (lo, hi) = p.cell(j);
        let r = self.roof.values()[j];
        let a = lo + rng.random::<f64>() * (hi - lo);
        let b = rng.random::<f64>() * r;
        FlowPoint {
            base_pos: a.min(hi.next_down()),
            height: b.min(r.next_down()),
        }
    }

    /// Segments of the trajectory of `x` over `[0, t]`.
    pub fn walk(&self, x: FlowPoint, t: f64) -> Result<Walk<'_>, FlowError> {
        self.check_point(&x)?;
        if !(t >= 0.0) || !t.is_finite() {
            return Err(FlowError::BadTime(t));
        }
        Ok(Walk {
            flow: self,
            pos: x,
            elapsed: CompensatedSum::new(),
            horizon: t,
            done: false,
        })
    }

    /// `T_t x` together with the vertical runs tiling `[0, t]`.
    pub fn advance(
        &self,
        x: FlowPoint,
        t: f64,
    ) -> Result<(FlowPoint, Vec<TrajectorySegment>), FlowError> {
        let mut walk = self.walk(x, t)?;
        let segments = walk.by_ref().map(|s| s.to_segment()).collect();
        Ok((walk.position(), segments))
    }

    /// `T_t x` without materializing the segments.
    pub fn evolve(&self, x: FlowPoint, t: f64) -> Result<FlowPoint, FlowError> {
        let mut walk = self.walk(x, t)?;
        walk.by_ref().for_each(drop);
        Ok(walk.position())
    }

    /// Point reached at local offset `u` along a walk segment, with the
    /// roof identification applied.
    pub fn point_on(&self, seg: &WalkSegment, u: f64) -> FlowPoint {
        let h = seg.start_height + u;
        if h >= seg.roof {
            FlowPoint {
                base_pos: self.base.step(seg.base_pos),
                height: 0.0,
            }
        } else {
            FlowPoint {
                base_pos: seg.base_pos,
                height: h,
            }
        }
    }
}

/// Iterator over the vertical runs of one trajectory.
#[derive(Debug, Clone)]
pub struct Walk<'a> {
    flow: &'a SpecialFlow,
    pos: FlowPoint,
    elapsed: CompensatedSum,
    horizon: f64,
    done: bool,
}

impl Walk<'_> {
    /// Current point: after exhaustion this is `T_t x`.
    pub fn position(&self) -> FlowPoint {
        self.pos
    }
}

impl Iterator for Walk<'_> {
    type Item = WalkSegment;

    #[inline]
    fn next(&mut self) -> Option<WalkSegment> {
        if self.done {
            return None;
        }
        let start_time = self.elapsed.value();
        let remaining = self.horizon - start_time;
        if remaining <= 0.0 {
            self.done = true;
            return None;
        }
        let roof = self.flow.roof.at(self.pos.base_pos);
        let full = roof - self.pos.height;
        let seg = if remaining >= full {
            let seg = WalkSegment {
                base_pos: self.pos.base_pos,
                start_height: self.pos.height,
                duration: full,
                start_time,
                roof,
                reaches_roof: true,
            };
            self.elapsed.add(full);
            self.pos = FlowPoint {
                base_pos: self.flow.base.step(self.pos.base_pos),
                height: 0.0,
            };
            seg
        } else {
            let seg = WalkSegment {
                base_pos: self.pos.base_pos,
                start_height: self.pos.height,
                duration: remaining,
                start_time,
                roof,
                reaches_roof: false,
            };
            self.pos.height += remaining;
            self.done = true;
            seg
        };
        Some(seg)
    }
}
