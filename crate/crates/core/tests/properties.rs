//! Randomized invariant checks over the quantile, estimator and pooling
//! layers. Seeds are fixed so failures reproduce.

use medpool_core::{
    apply_approach, bowley_skewness, pool_fixed, pool_median_mm, pool_median_wm, pool_random,
    sample_quantile, summarize_sample, weighted_quantile, Approach, StudySummary, WeightedSample,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn sorted_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 200.0 - 100.0).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

#[test]
fn quantile_monotone_in_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..500 {
        let n = rng.random_range(1..40);
        let v = sorted_values(&mut rng, n);
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=50 {
            let q = i as f64 / 50.0;
            let x = sample_quantile(&v, q).unwrap();
            assert!(x >= prev);
            prev = x;
        }
    }
}

#[test]
fn weighted_equals_plain_under_equal_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..100 {
        let n = rng.random_range(1..60);
        let v = sorted_values(&mut rng, n);
        let w = rng.random::<f64>() + 0.1;
        let ws = WeightedSample::new(v.clone(), vec![w; n]).unwrap();
        for i in 0..=100 {
            let q = i as f64 / 100.0;
            let a = weighted_quantile(&ws, q).unwrap();
            let b = sample_quantile(&v, q).unwrap();
            assert!((a - b).abs() <= 1e-12, "n={n} q={q}: {a} vs {b}");
        }
    }
}

#[test]
fn weighted_quantile_monotone_in_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..300 {
        let n = rng.random_range(1..30);
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 50.0).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let Ok(ws) = WeightedSample::new(v, w) else { continue };
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=60 {
            let q = i as f64 / 60.0;
            let x = weighted_quantile(&ws, q).unwrap();
            assert!(x >= prev);
            prev = x;
        }
    }
}

#[test]
fn quantile_affine_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..300 {
        let n = rng.random_range(2..25);
        let v = sorted_values(&mut rng, n);
        let a = rng.random::<f64>() * 3.0 + 0.1;
        let b = rng.random::<f64>() * 10.0 - 5.0;
        let mapped: Vec<f64> = v.iter().map(|x| a * x + b).collect();
        for q in [0.0, 0.15, 0.5, 0.85, 1.0] {
            let lhs = sample_quantile(&mapped, q).unwrap();
            let rhs = a * sample_quantile(&v, q).unwrap() + b;
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
        }
    }
}

#[test]
fn estimator_means_stay_inside_reported_spread() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..1000 {
        let n = rng.random_range(2..500);
        let mut q: Vec<f64> = (0..3).map(|_| rng.random::<f64>() * 40.0 - 10.0).collect();
        q.sort_by(|a, b| a.total_cmp(b));
        if q[0] == q[2] {
            continue;
        }
        let t1 = medpool_core::t1_estimate(n, q[0], q[1], q[2]).unwrap();
        assert!(t1.mean >= q[0] && t1.mean <= q[2]);
        assert!(t1.sd > 0.0);
        let t2 = medpool_core::t2_estimate(n, q[0], q[1], q[2]).unwrap();
        assert!(t2.mean >= q[0] && t2.mean <= q[2]);
        assert!(t2.sd > 0.0);
    }
}

fn random_studies(rng: &mut ChaCha8Rng, k: usize) -> Vec<StudySummary> {
    (0..k)
        .map(|i| {
            let raw: Vec<f64> =
                (0..rng.random_range(5..40)).map(|_| rng.random::<f64>() * 30.0 + 1.0).collect();
            summarize_sample(&raw, format!("s{i}")).unwrap()
        })
        .collect()
}

#[test]
fn pooling_permutation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let approaches = [
        Approach::Mm,
        Approach::Wm,
        Approach::MeansFe,
        Approach::MeansRe,
        Approach::T1Fe,
        Approach::T1Re,
        Approach::T2Fe,
        Approach::T2Re,
        Approach::TransFe,
        Approach::TransRe,
    ];
    for _ in 0..100 {
        let k = rng.random_range(2..12);
        let mut studies = random_studies(&mut rng, k);
        for &ap in &approaches {
            let before = apply_approach(&studies, ap).unwrap();
            studies.shuffle(&mut rng);
            let after = apply_approach(&studies, ap).unwrap();
            assert!((before.point - after.point).abs() < 1e-9, "{ap}");
            assert!((before.ci_low - after.ci_low).abs() < 1e-9, "{ap}");
            assert!((before.ci_high - after.ci_high).abs() < 1e-9, "{ap}");
        }
    }
}

#[test]
fn pooled_points_stay_inside_input_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..500 {
        let k = rng.random_range(1..15);
        let effects: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * 20.0 - 10.0).collect();
        let variances: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * 3.0 + 0.01).collect();
        let lo = effects.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = effects.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let fe = pool_fixed(&effects, &variances).unwrap();
        assert!(fe.point >= lo - 1e-12 && fe.point <= hi + 1e-12);
        let mm = pool_median_mm(&effects).unwrap();
        assert!(mm.point >= lo && mm.point <= hi);
        assert!(mm.ci_low >= lo && mm.ci_high <= hi);
        let sizes: Vec<u32> = (0..k).map(|_| rng.random_range(1..500)).collect();
        let wm = pool_median_wm(&effects, &sizes).unwrap();
        assert!(wm.point >= lo && wm.point <= hi);
        if k >= 2 {
            let re = pool_random(&effects, &variances).unwrap();
            assert!(re.point >= lo - 1e-12 && re.point <= hi + 1e-12);
            assert!(re.se.unwrap() >= fe.se.unwrap() - 1e-15, "RE se below FE se");
        }
    }
}

#[test]
fn fixed_effect_se_shrinks_as_studies_accrue() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for _ in 0..200 {
        let mut effects = vec![rng.random::<f64>()];
        let mut variances = vec![rng.random::<f64>() + 0.05];
        let mut prev = pool_fixed(&effects, &variances).unwrap().se.unwrap();
        for _ in 0..6 {
            effects.push(rng.random::<f64>() * 4.0);
            variances.push(rng.random::<f64>() * 2.0 + 0.05);
            let se = pool_fixed(&effects, &variances).unwrap().se.unwrap();
            assert!(se < prev);
            prev = se;
        }
    }
}

#[test]
fn pooling_affine_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..200 {
        let k = rng.random_range(2..10);
        let effects: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * 10.0).collect();
        let variances: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 0.05).collect();
        let sizes: Vec<u32> = (0..k).map(|_| rng.random_range(1..300)).collect();
        let a = rng.random::<f64>() * 2.0 + 0.2;
        let b = rng.random::<f64>() * 8.0 - 4.0;
        let eff2: Vec<f64> = effects.iter().map(|y| a * y + b).collect();
        let var2: Vec<f64> = variances.iter().map(|v| a * a * v).collect();

        for (lhs, rhs) in [
            (pool_fixed(&eff2, &var2).unwrap(), pool_fixed(&effects, &variances).unwrap()),
            (pool_random(&eff2, &var2).unwrap(), pool_random(&effects, &variances).unwrap()),
        ] {
            assert!((lhs.point - (a * rhs.point + b)).abs() < 1e-9);
            assert!((lhs.ci_low - (a * rhs.ci_low + b)).abs() < 1e-9);
            assert!((lhs.ci_high - (a * rhs.ci_high + b)).abs() < 1e-9);
        }
        let mm1 = pool_median_mm(&eff2).unwrap();
        let mm0 = pool_median_mm(&effects).unwrap();
        assert!((mm1.point - (a * mm0.point + b)).abs() < 1e-9);
        let wm1 = pool_median_wm(&eff2, &sizes).unwrap();
        let wm0 = pool_median_wm(&effects, &sizes).unwrap();
        assert!((wm1.point - (a * wm0.point + b)).abs() < 1e-9);
        assert!((wm1.ci_low - (a * wm0.ci_low + b)).abs() < 1e-9);
        assert!((wm1.ci_high - (a * wm0.ci_high + b)).abs() < 1e-9);
    }
}

#[test]
fn bowley_rejects_degenerate_and_accepts_randoms() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for _ in 0..500 {
        let mut q: Vec<f64> = (0..3).map(|_| rng.random::<f64>()).collect();
        q.sort_by(|a, b| a.total_cmp(b));
        match bowley_skewness(q[0], q[1], q[2]) {
            Ok(s) => assert!((-1.0..=1.0).contains(&s)),
            Err(e) => assert_eq!(e, medpool_core::Error::DegenerateIqr),
        }
    }
}
