//! Piecewise-polynomial observables on the phase space of a special flow and
//! exact trajectory integrals `Φ(t, x) = ∫_0^t f(T_s x) ds`.
//!
//! On base cell `j` the observable is a polynomial in the height,
//! `f(a, b) = Σ_k c_{j,k} b^k` with degree at most [`MAX_DEGREE`]. Cells form
//! the common refinement of the roof partition and the observable's own
//! partition, so each cell has a single roof value. Restricted to one
//! vertical run, `Φ` is an explicit polynomial in time, which is what the
//! zero search relies on.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base_systems::{BaseError, Partition};
use crate::numeric::CompensatedSum;
use crate::poly::Poly;
use crate::special_flow::{FlowError, FlowPoint, Roof, SpecialFlow};
use crate::zero_lab::TargetSet;

pub const MAX_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObservableError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("{pieces} observable pieces but {polys} polynomials")]
    Shape { pieces: usize, polys: usize },
    #[error("degree {0} exceeds the maximum {MAX_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("non-finite coefficient")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq)]
struct Cell {
    roof: f64,
    poly: Poly,
    antider: Poly,
    /// Sign-change roots of `poly` in `[0, roof]`.
    roots: Vec<f64>,
    full_integral: f64,
    full_abs: f64,
    sup: f64,
}

impl Cell {
    fn new(roof: f64, poly: Poly) -> Self {
        let antider = poly.antiderivative();
        let roots = poly.roots_in(0.0, roof);
        let mut cell = Cell {
            roof,
            sup: poly.max_abs_on(0.0, roof),
            poly,
            antider,
            roots,
            full_integral: 0.0,
            full_abs: 0.0,
        };
        cell.full_integral = cell.antider.eval(roof) - cell.antider.eval(0.0);
        cell.full_abs = cell.abs_between(0.0, roof);
        cell
    }

    #[inline]
    fn integral_between(&self, b0: f64, b1: f64) -> f64 {
        if b0 == 0.0 && b1 == self.roof {
            self.full_integral
        } else {
            self.antider.eval(b1) - self.antider.eval(b0)
        }
    }

    fn abs_between(&self, b0: f64, b1: f64) -> f64 {
        let mut acc = 0.0;
        let mut lo = b0;
        let mut p_lo = self.antider.eval(b0);
        for &r in self.roots.iter().filter(|&&r| r > b0 && r < b1) {
            let p_r = self.antider.eval(r);
            acc += (p_r - p_lo).abs();
            lo = r;
            p_lo = p_r;
        }
        debug_assert!(lo <= b1);
        acc + (self.antider.eval(b1) - p_lo).abs()
    }
}

/// Piecewise-polynomial function `f(a, b)` tied to one roof.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    roof: Roof,
    pieces: Partition,
    piece_polys: Vec<Poly>,
    cells: Partition,
    cell_data: Vec<Cell>,
}

impl Observable {
    /// Observable equal to `polys[i]` (a polynomial in the height) on base
    /// piece `i` of `pieces`.
    pub fn new(roof: &Roof, pieces: Partition, polys: Vec<Poly>) -> Result<Self, ObservableError> {
        if pieces.len() != polys.len() {
            return Err(ObservableError::Shape {
                pieces: pieces.len(),
                polys: polys.len(),
            });
        }
        for p in &polys {
            if p.coeffs().iter().any(|c| !c.is_finite()) {
                return Err(ObservableError::NonFinite);
            }
            if let Some(d) = p.degree().filter(|&d| d > MAX_DEGREE) {
                return Err(ObservableError::DegreeTooHigh(d));
            }
        }
        let cells = roof.partition().refine(&pieces);
        let cell_data = cells
            .starts()
            .iter()
            .map(|&s| Cell::new(roof.at(s), polys[pieces.locate(s)].clone()))
            .collect();
        Ok(Observable {
            roof: roof.clone(),
            pieces,
            piece_polys: polys,
            cells,
            cell_data,
        })
    }

    pub fn constant(roof: &Roof, c: f64) -> Self {
        Observable::new(roof, Partition::trivial(), vec![Poly::constant(c)])
            .expect("constant observable")
    }

    /// `f(a, b) = b`.
    pub fn height(roof: &Roof) -> Self {
        Observable::new(roof, Partition::trivial(), vec![Poly::new(vec![0.0, 1.0])])
            .expect("height observable")
    }

    /// Indicator of the full column over `[lo, hi)`.
    pub fn indicator(roof: &Roof, lo: f64, hi: f64) -> Result<Self, ObservableError> {
        let mut starts = vec![0.0];
        let mut polys = vec![];
        if lo > 0.0 {
            polys.push(Poly::zero());
            starts.push(lo);
        }
        polys.push(Poly::constant(1.0));
        if hi < 1.0 {
            starts.push(hi);
            polys.push(Poly::zero());
        }
        Observable::new(roof, Partition::new(starts)?, polys)
    }

    /// `+1` on `[0, 1/2)` and `-1` on `[1/2, 1)`, constant in height.
    pub fn signed_halves(roof: &Roof) -> Self {
        Observable::new(
            roof,
            Partition::new(vec![0.0, 0.5]).expect("halves"),
            vec![Poly::constant(1.0), Poly::constant(-1.0)],
        )
        .expect("signed halves")
    }

    pub fn roof(&self) -> &Roof {
        &self.roof
    }

    /// The base partition the observable was specified on.
    pub fn pieces(&self) -> &Partition {
        &self.pieces
    }

    pub fn piece_polys(&self) -> &[Poly] {
        &self.piece_polys
    }

    /// Refined cell partition (roof partition ∨ observable partition).
    pub fn cells(&self) -> &Partition {
        &self.cells
    }

    #[inline]
    pub fn cell_of(&self, a: f64) -> usize {
        self.cells.locate(a)
    }

    pub fn cell_poly(&self, j: usize) -> &Poly {
        &self.cell_data[j].poly
    }

    pub fn cell_roof(&self, j: usize) -> f64 {
        self.cell_data[j].roof
    }

    /// Sign-change roots in `[0, roof]` of the height polynomial of cell `j`.
    pub fn cell_roots(&self, j: usize) -> &[f64] {
        &self.cell_data[j].roots
    }

    /// `max |f|` over cell `j`.
    pub fn cell_sup(&self, j: usize) -> f64 {
        self.cell_data[j].sup
    }

    /// `∫_{b0}^{b1} f(a, b) db` for `a` in cell `j`.
    #[inline]
    pub fn integral_in_cell(&self, j: usize, b0: f64, b1: f64) -> f64 {
        self.cell_data[j].integral_between(b0, b1)
    }

    /// `∫_{b0}^{b1} |f(a, b)| db` for `a` in cell `j`, split at sign changes.
    pub fn abs_integral_in_cell(&self, j: usize, b0: f64, b1: f64) -> f64 {
        let c = &self.cell_data[j];
        if b0 == 0.0 && b1 == c.roof {
            c.full_abs
        } else {
            c.abs_between(b0, b1)
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.cell_data.iter().map(|c| c.sup).fold(0.0, f64::max)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.cell_data.iter().all(|c| c.poly.is_zero())
    }

    pub fn is_compatible(&self, flow: &SpecialFlow) -> bool {
        flow.roof() == &self.roof
    }

    pub fn eval(&self, x: &FlowPoint) -> f64 {
        self.cell_data[self.cell_of(x.base_pos)].poly.eval(x.height)
    }

    /// `∫ f dμ` with respect to the normalized invariant measure.
    pub fn mean(&self) -> f64 {
        let mut num = 0.0;
        for (j, c) in self.cell_data.iter().enumerate() {
            num += self.cells.cell_len(j) * c.full_integral;
        }
        num / self.roof.integral()
    }

    /// Same observable minus its mean.
    pub fn mean_centered(&self) -> Self {
        let m = self.mean();
        let polys = self
            .piece_polys
            .iter()
            .map(|p| p.add_constant(-m))
            .collect();
        Observable::new(&self.roof, self.pieces.clone(), polys).expect("valid shape")
    }

    /// `f / c`, for bringing `f` into the `c = 1` regime on a target set.
    pub fn scaled(&self, k: f64) -> Self {
        let polys = self.piece_polys.iter().map(|p| p.scale(k)).collect();
        Observable::new(&self.roof, self.pieces.clone(), polys).expect("valid shape")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiResult {
    pub value: f64,
    pub segments_used: u64,
    /// `∫_0^t |f(T_s x)| ds`, when requested.
    pub abs_value: Option<f64>,
}

/// `Φ(t, x)` by summing closed-form antiderivative increments over the
/// vertical runs of the trajectory.
pub fn phi(
    flow: &SpecialFlow,
    f: &Observable,
    x: FlowPoint,
    t: f64,
    with_abs: bool,
) -> Result<PhiResult, FlowError> {
    if !f.is_compatible(flow) {
        return Err(FlowError::IncompatibleObservable);
    }
    let mut value = CompensatedSum::new();
    let mut abs = CompensatedSum::new();
    let mut segments_used = 0;
    for seg in flow.walk(x, t)? {
        let j = f.cell_of(seg.base_pos);
        let b1 = seg.end_height();
        value.add(f.integral_in_cell(j, seg.start_height, b1));
        if with_abs {
            abs.add(f.abs_integral_in_cell(j, seg.start_height, b1));
        }
        segments_used += 1;
    }
    Ok(PhiResult {
        value: value.value(),
        segments_used,
        abs_value: with_abs.then(|| abs.value()),
    })
}

/// Time spent in `target` along the trajectory over `[0, t]`.
pub fn occupation_time(
    flow: &SpecialFlow,
    target: &TargetSet,
    x: FlowPoint,
    t: f64,
) -> Result<f64, FlowError> {
    let mut acc = CompensatedSum::new();
    for seg in flow.walk(x, t)? {
        acc.add(target.vertical_overlap(seg.base_pos, seg.start_height, seg.end_height()));
    }
    Ok(acc.value())
}
