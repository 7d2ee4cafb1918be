use std::f64::consts::{FRAC_PI_4, TAU};

use harmclass::bounds::{
    an_sum_bound, bn_bound, convex_null_condition, convex_null_sequence_check, extremal_analytic, growth_envelope,
    random_member, re_half_check, sampled_membership, SamplingGrid, Verdict,
};
use harmclass::harmonic::convex_combination;
use harmclass::{ClassParams, Complex64, SeriesEvalConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_params(rng: &mut impl Rng) -> ClassParams {
    ClassParams::new(rng.random_range(0.05..=1.0), rng.random_range(0.01..3.0)).unwrap()
}

/// Parameters with `κ ≤ 3(1 + α)/(6α + 4)`; only possible for `α > 1/3`.
fn convex_null_params(rng: &mut impl Rng) -> ClassParams {
    loop {
        let alpha: f64 = rng.random_range(0.34..=1.0);
        let m_max = 3.0 * (1.0 + alpha) / (6.0 * alpha + 4.0) - 1.0 + alpha;
        if m_max <= 0.0 {
            continue;
        }
        let p = ClassParams::new(alpha, rng.random_range(0.0..1.0) * m_max + 1e-9 * m_max).unwrap();
        if convex_null_condition(&p) {
            return p;
        }
    }
}

fn disk_point(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(rng.random_range(0.0..0.99), rng.random_range(0.0..TAU))
}

#[test]
fn members_respect_coefficient_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let p = random_params(&mut rng);
        let f = random_member(&p, &mut rng);
        for (n, a, b) in f.terms() {
            assert!(b.norm() <= bn_bound(n, &p).unwrap());
            assert!(a.norm() + b.norm() <= an_sum_bound(n, &p).unwrap());
        }
    }
}

#[test]
fn members_lie_inside_growth_envelope() {
    let cfg = SeriesEvalConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let f = random_member(&p, &mut rng);
        for _ in 0..20 {
            let z = disk_point(&mut rng);
            let env = growth_envelope(&p, z.norm(), &cfg).unwrap();
            let v = f.eval(z).unwrap().norm();
            assert!(env.lower <= v + 1e-12, "{} > {v}", env.lower);
            assert!(v <= env.upper + 1e-9);
        }
    }
}

#[test]
fn extremal_function_attains_upper_envelope() {
    let cfg = SeriesEvalConfig::default();
    for (alpha, m) in [(1.0, 1.0), (0.5, 0.25), (0.3, 2.0)] {
        let p = ClassParams::new(alpha, m).unwrap();
        let f = extremal_analytic(&p, 256).unwrap();
        for r in [0.1, 0.3, 0.5] {
            let env = growth_envelope(&p, r, &cfg).unwrap();
            let v = f.eval(Complex64::new(r, 0.0)).unwrap().norm();
            assert!((v - env.upper).abs() < 1e-9, "alpha={alpha} r={r}");
        }
    }
}

#[test]
fn members_pass_sampled_test_and_slices() {
    let grid = SamplingGrid::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let p = random_params(&mut rng);
        let f = random_member(&p, &mut rng);
        let v = sampled_membership(&f, &p, &grid);
        assert_eq!(v.verdict, Verdict::Inconclusive);
        assert!(v.margin_min >= -1e-12);
        for eps in [
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::from_polar(1.0, FRAC_PI_4),
        ] {
            let slice = f.epsilon_slice(eps).unwrap();
            let min = grid
                .points()
                .map(|z| slice.apply_l(&p, z).unwrap().re + p.m())
                .fold(f64::INFINITY, f64::min);
            assert!(min >= -1e-12);
        }
    }
}

#[test]
fn convex_combinations_stay_in_class() {
    let grid = SamplingGrid::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let p = random_params(&mut rng);
        let fs: Vec<_> = (0..3).map(|_| random_member(&p, &mut rng)).collect();
        let raw: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let ts: Vec<f64> = raw.iter().map(|t| t / total).collect();
        let combo = convex_combination(&fs, &ts).unwrap();
        let v = sampled_membership(&combo, &p, &grid);
        assert!(v.witness.is_none() && v.margin_min >= -1e-12);
    }
}

#[test]
fn convolutions_under_convex_null_condition() {
    let grid = SamplingGrid::default();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..40 {
        let p = convex_null_params(&mut rng);
        let f1 = random_member(&p, &mut rng);
        let f2 = random_member(&p, &mut rng);
        let v = sampled_membership(&f1.convolve(&f2), &p, &grid);
        assert!(v.witness.is_none());
        for eps in [Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)] {
            assert!(re_half_check(&f1.epsilon_slice(eps).unwrap(), &grid).holds_on_grid);
        }
        let ext = extremal_analytic(&p, 64).unwrap();
        assert!(re_half_check(ext.analytic(), &grid).holds_on_grid);
    }
}

#[test]
fn sequence_check_agrees_with_closed_form() {
    for i in 0..10 {
        for j in 0..5 {
            let alpha = 0.1 + 0.1 * i as f64;
            let m = [0.05, 0.2, 0.4, 0.7, 1.5][j];
            let p = ClassParams::new(alpha.min(1.0), m).unwrap();
            assert_eq!(
                convex_null_sequence_check(&p, 8).unwrap(),
                convex_null_condition(&p),
                "alpha={alpha} m={m}"
            );
        }
    }
}
