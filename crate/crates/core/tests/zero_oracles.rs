mod common;

use common::{random_flow, random_observable};
use ergolab_core::numeric::substream;
use ergolab_core::zero_lab::{PairOutcome, ZeroKind};
use ergolab_core::{
    ab_membership, canonical_setup, find_integral_zeros, joint_pair_search, phi, AbParams,
    FlowPoint, Observable, SpecialFlow, Target, TargetSet,
};
use rand::Rng;

fn phi_at(flow: &SpecialFlow, f: &Observable, x: FlowPoint, t: f64) -> f64 {
    phi(flow, f, x, t, false).unwrap().value
}

/// Sign-change brackets of `Φ(·, x)` on a uniform grid.
fn grid_brackets(
    flow: &SpecialFlow,
    f: &Observable,
    x: FlowPoint,
    horizon: f64,
    step: f64,
) -> Vec<(f64, f64)> {
    let n = (horizon / step).floor() as usize;
    let mut out = Vec::new();
    let mut prev = (0.0, 0.0);
    for k in 1..=n {
        let t = k as f64 * step;
        let v = phi_at(flow, f, x, t);
        if prev.1 * v < 0.0 {
            out.push((prev.0, t));
        }
        prev = (t, v);
    }
    out
}

/// Root inside a bracket by plain bisection on `Φ`.
fn bisect_phi(
    flow: &SpecialFlow,
    f: &Observable,
    x: FlowPoint,
    (mut lo, mut hi): (f64, f64),
) -> f64 {
    let s_lo = phi_at(flow, f, x, lo).signum();
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if phi_at(flow, f, x, mid).signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn scanner_finds_every_grid_sign_change() {
    for i in 0..40 {
        let mut rng = substream(2002, i);
        let flow = random_flow(&mut rng);
        let f = random_observable(&flow, &mut rng).mean_centered();
        let x = flow.sample_point(&mut rng);
        let horizon = 40.0;
        let search =
            find_integral_zeros(&flow, &f, x, horizon, &Target::All, 1e-9, usize::MAX).unwrap();
        let times: Vec<f64> = search.events.iter().map(|e| e.time).collect();
        assert!(
            times.windows(2).all(|w| w[0] < w[1]),
            "config {i}: times not increasing"
        );
        for e in &search.events {
            let v = phi_at(&flow, &f, x, e.time);
            assert!(v.abs() <= 1e-8, "config {i}: Φ({}) = {v}", e.time);
        }
        for (lo, hi) in grid_brackets(&flow, &f, x, horizon, 1e-3) {
            assert!(
                times.iter().any(|&t| lo <= t && t <= hi),
                "config {i}: no event in [{lo}, {hi}]"
            );
        }
    }
}

#[test]
fn canonical_events_match_grid_oracle() {
    let setup = canonical_setup();
    let (flow, f) = (&setup.flow, &setup.observable);
    for i in 0..5 {
        let mut rng = substream(2003, i);
        let x = flow.sample_point(&mut rng);
        let horizon = 300.0;
        let search =
            find_integral_zeros(flow, f, x, horizon, &Target::All, 1e-9, usize::MAX).unwrap();
        let transversal: Vec<f64> = search
            .events
            .iter()
            .filter(|e| e.kind == ZeroKind::Transversal)
            .map(|e| e.time)
            .collect();
        let oracle: Vec<f64> = grid_brackets(flow, f, x, horizon, 1e-3)
            .into_iter()
            .map(|b| bisect_phi(flow, f, x, b))
            .collect();
        assert!(!oracle.is_empty());
        for &r in &oracle {
            assert!(
                transversal.iter().any(|&t| (t - r).abs() <= 1e-6),
                "sample {i}: oracle root {r} unmatched"
            );
        }
        // Roots closer together than the grid step can hide from it; every
        // reported root must still be a genuine zero.
        for &t in &transversal {
            assert!(phi_at(flow, f, x, t).abs() <= 1e-9);
        }
    }
}

fn scaled_canonical() -> (SpecialFlow, Observable, TargetSet) {
    let setup = canonical_setup();
    let f = setup.observable.scaled(1.0 / setup.observable.sup_norm());
    (setup.flow, f, setup.target)
}

#[test]
fn ab_fraction_is_stable_under_grid_refinement() {
    let (flow, f, a) = scaled_canonical();
    let coarse = AbParams::new(0.2, 0.05);
    let fine = AbParams {
        grid_resolution: 10 * coarse.grid_resolution,
        ..coarse
    };
    let mut rng = substream(2004, 0);
    let n = 400;
    let (mut c, mut fcount) = (0, 0);
    for _ in 0..n {
        let x = a.sample(&mut rng);
        c += ab_membership(&flow, &f, &a, x, &coarse).unwrap() as usize;
        fcount += ab_membership(&flow, &f, &a, x, &fine).unwrap() as usize;
    }
    let (pc, pf) = (c as f64 / n as f64, fcount as f64 / n as f64);
    assert!((pc - pf).abs() <= 0.02, "{pc} vs {pf}");
    assert!(pc > 0.5, "{pc}");
}

#[test]
fn pair_search_agrees_with_grid() {
    let (flow, f, a) = scaled_canonical();
    let p = AbParams::new(0.4, 0.1);
    let d = 0.002;
    let mut found = 0;
    for i in 0..10 {
        let mut rng = substream(2005, i);
        let x = a.sample(&mut rng);
        let t_prime = rng.random_range(5.0..50.0);
        let y = flow.evolve(x, t_prime).unwrap();
        let outcome = joint_pair_search(&flow, &f, &a, x, t_prime, &p, d, 1e-10).unwrap();
        // Brute force over the same s grid and a fine s' grid.
        let m = 2000;
        let mut grid_match = false;
        'outer: for k in 0..p.grid_resolution {
            let s = p.b * k as f64 / p.grid_resolution as f64;
            if !ab_membership(&flow, &f, &a, flow.evolve(x, s).unwrap(), &p).unwrap() {
                continue;
            }
            let target = phi_at(&flow, &f, x, s) - d;
            let mut prev: Option<(f64, bool)> = None;
            for j in 0..m {
                let sp = p.b * j as f64 / m as f64;
                let g = phi_at(&flow, &f, y, sp) - target;
                let ok = ab_membership(&flow, &f, &a, flow.evolve(y, sp).unwrap(), &p).unwrap();
                if let Some((gp, okp)) = prev {
                    if gp * g < 0.0 && ok && okp {
                        grid_match = true;
                        break 'outer;
                    }
                }
                prev = Some((g, ok));
            }
        }
        match outcome {
            PairOutcome::Found(pm, _) => {
                found += 1;
                let lhs = phi_at(&flow, &f, x, pm.s);
                let rhs = phi_at(&flow, &f, y, pm.s_prime) + d;
                assert!((lhs - rhs).abs() <= 1e-9, "sample {i}: {lhs} vs {rhs}");
                assert!(ab_membership(&flow, &f, &a, flow.evolve(x, pm.s).unwrap(), &p).unwrap());
                assert!(
                    ab_membership(&flow, &f, &a, flow.evolve(y, pm.s_prime).unwrap(), &p).unwrap()
                );
            }
            PairOutcome::NotFound(_) => assert!(
                !grid_match,
                "sample {i}: grid found a match the search missed"
            ),
        }
    }
    assert!(found > 0);
}
