//! Special flows over interval maps, cylindrical cascades and trajectory
//! integrals, with tools to locate zeros of those integrals and of
//! Birkhoff sums.
//!
//! A point of a special flow is `(a, b)` with `a` in `[0, 1)` and
//! `0 <= b < r(a)`; it moves up at unit speed and jumps to `(S a, 0)` on
//! hitting the roof. Observables are polynomial in the height on each cell
//! of a partition of the base, so the trajectory integral
//! `Φ(t, x) = ∫_0^t f(T_s x) ds` is a sum of closed-form increments.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod base_systems;
pub mod cascades;
pub mod lemma_tools;
pub mod numeric;
pub mod observables;
pub mod poly;
pub mod special_flow;
pub mod zero_lab;

/// `(√5 - 1) / 2`.
pub const GOLDEN_CONJUGATE: f64 = 0.618_033_988_749_894_9;
/// `(√5 + 1) / 2`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

pub use base_systems::{BaseError, BaseSet, Partition, ReturnStep, UnitIntervalMap};
pub use cascades::{CascadeError, CascadeState, StepFunction};
pub use lemma_tools::{
    image_measure, lemma_fuzz, local_wiener_check, IntervalUnion, LemmaError, Poly1D,
};
pub use observables::{phi, Observable, ObservableError, PhiResult};
pub use poly::Poly;
pub use special_flow::{FlowError, FlowPoint, Roof, SpecialFlow};
pub use zero_lab::{
    ab_membership, canonical_setup, find_integral_zeros, joint_pair_search, AbParams, Rect, Target,
    TargetSet, ZeroEvent, ZeroKind, ZeroLabError,
};
