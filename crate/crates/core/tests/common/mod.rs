#![allow(dead_code)]

use ergolab_core::{FlowPoint, Observable, Partition, Poly, Roof, SpecialFlow, UnitIntervalMap};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_base(rng: &mut impl Rng) -> UnitIntervalMap {
    if rng.random_bool(0.5) {
        return UnitIntervalMap::rotation(rng.random_range(0.01..0.99)).unwrap();
    }
    let k = rng.random_range(2..=5);
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let lengths = raw.iter().map(|l| l / total).collect();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    UnitIntervalMap::iet(lengths, perm).unwrap()
}

fn random_starts(rng: &mut impl Rng, max_cells: usize) -> Vec<f64> {
    let k = rng.random_range(1..=max_cells);
    let mut s: Vec<f64> = (1..k).map(|_| rng.random_range(0.02..0.98)).collect();
    s.push(0.0);
    s.sort_by(f64::total_cmp);
    s.dedup();
    s
}

pub fn random_flow(rng: &mut impl Rng) -> SpecialFlow {
    let starts = random_starts(rng, 4);
    let values = (0..starts.len())
        .map(|_| rng.random_range(0.2..3.0))
        .collect();
    let roof = Roof::new(Partition::new(starts).unwrap(), values).unwrap();
    SpecialFlow::new(random_base(rng), roof)
}

pub fn random_observable(flow: &SpecialFlow, rng: &mut impl Rng) -> Observable {
    let starts = random_starts(rng, 4);
    let polys = starts
        .iter()
        .map(|_| {
            let d = rng.random_range(0..=5);
            Poly::new((0..=d).map(|_| rng.random_range(-1.0..1.0)).collect())
        })
        .collect();
    Observable::new(flow.roof(), Partition::new(starts).unwrap(), polys).unwrap()
}

/// Adaptive Simpson on `[a, b]` to absolute tolerance `eps`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    rec(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), eps, 40)
}

/// `(∫ f, ∫ |f|)` along the trajectory by quadrature of point evaluations,
/// one panel per vertical run.
pub fn quadrature_phi(flow: &SpecialFlow, f: &Observable, x: FlowPoint, t: f64) -> (f64, f64) {
    let (_, segs) = flow.advance(x, t).unwrap();
    let mut value = 0.0;
    let mut abs = 0.0;
    for s in segs {
        let g = |u: f64| f.eval(&FlowPoint::new(s.base_pos, s.start_height + u));
        value += adaptive_simpson(&g, 0.0, s.duration, 1e-14);
        abs += adaptive_simpson(&|u| g(u).abs(), 0.0, s.duration, 1e-14);
    }
    (value, abs)
}
