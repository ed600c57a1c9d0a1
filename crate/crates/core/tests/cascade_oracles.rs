mod common;

use common::random_base;
use ergolab_core::cascades::{
    birkhoff_sums, induced_cascade_run, shneiberg_sign_times, sum_zero_times,
};
use ergolab_core::numeric::substream;
use ergolab_core::{BaseSet, Partition, StepFunction, UnitIntervalMap};
use rand::Rng;

#[test]
fn birkhoff_sums_match_naive_orbit_on_random_maps() {
    for i in 0..50 {
        let mut rng = substream(3001, i);
        let map = random_base(&mut rng);
        let g = StepFunction::new(
            Partition::new(vec![0.0, 0.4, 0.7]).unwrap(),
            vec![2i64, -1, 3],
        )
        .unwrap();
        let x: f64 = rng.random();
        let sums = birkhoff_sums(&map, &g, x, 5000).unwrap();
        let orbit = map.orbit(x, 5000).unwrap();
        let mut s = 0i64;
        for (n, a) in orbit.iter().take(5000).enumerate() {
            s += g.eval(*a);
            assert_eq!(sums[n], s);
        }
    }
}

#[test]
fn real_valued_sums_track_integer_sums() {
    let map = UnitIntervalMap::golden_rotation();
    let gi = StepFunction::signed_halves();
    let gf =
        StepFunction::new(Partition::new(vec![0.0, 0.5]).unwrap(), vec![1.0f64, -1.0]).unwrap();
    let si = birkhoff_sums(&map, &gi, 0.37, 20_000).unwrap();
    let sf = birkhoff_sums(&map, &gf, 0.37, 20_000).unwrap();
    assert!(si.iter().zip(&sf).all(|(a, b)| *a as f64 == *b));
}

#[test]
fn zero_times_of_golden_halves_recur() {
    let map = UnitIntervalMap::golden_rotation();
    let g = StepFunction::signed_halves();
    for i in 0..10 {
        let x: f64 = substream(3002, i).random();
        let z = sum_zero_times(&map, &g, x, 200_000).unwrap();
        assert!(z.len() >= 20, "{}", z.len());
        assert!(*z.last().unwrap() > 100_000);
    }
}

#[test]
fn sign_time_ratios_converge() {
    let map = UnitIntervalMap::golden_rotation();
    let g = StepFunction::initial_indicator(3, 10).unwrap();
    for i in 0..10 {
        let x: f64 = substream(3003, i).random();
        let st = shneiberg_sign_times(&map, &g, x, 100_000).unwrap();
        assert!(!st.below.is_empty() && !st.above.is_empty());
        assert!(st.tail_deviation(10_000) <= 0.02);
    }
}

#[test]
fn induced_sums_telescope_on_random_sets() {
    let map = UnitIntervalMap::golden_rotation();
    let g = StepFunction::signed_halves();
    for i in 0..20 {
        let mut rng = substream(3004, i);
        let lo: f64 = rng.random_range(0.0..0.8);
        let set = BaseSet::new(vec![(lo, lo + 0.15)]).unwrap();
        let x = lo + 0.15 * rng.random::<f64>();
        let run = induced_cascade_run(&map, &g, &set, x, 500, 10_000).unwrap();
        assert!(run.complete);
        let total = run.total_time();
        let sums = birkhoff_sums(&map, &g, x, total).unwrap();
        assert_eq!(run.total_sum(), Some(sums[total as usize - 1]));
        assert!(run.steps.iter().all(|s| set.contains(s.landing)));
    }
}
