use occulab_core::analytic::{exit_prob_zero, taboo_stationary_cdf, SeriesTolerance};
use occulab_core::inversion::{prob_nu_in_0s, InversionConfig};
use occulab_core::montecarlo::{
    estimate_event, estimate_event_with, path_rng, sample_conditioned, sample_sigma, simulate_taboo, ConditionRequest,
    Event, McOptions, OccupationMode, Record, StartLaw, TabooMode,
};
use occulab_core::stats::{chi_square_gof, ks_critical_two, ks_two_sample, log_log_slope};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn joint(a: f64, b: f64) -> f64 {
    (a * a + b * b).sqrt()
}

fn eq_zero_exact() -> f64 {
    exit_prob_zero(0.0, 2.0, SeriesTolerance::default()).unwrap()
}

#[test]
fn bridge_estimator_hits_the_series_and_plain_does_not() {
    let exact = eq_zero_exact();
    let bridge = estimate_event(0.0, 2.0, 1e-3, 0.0, Event::EqZero, 200_000, 5).unwrap();
    assert!((bridge.p_hat - exact).abs() <= 3.0 * bridge.std_err, "{} ± {}", bridge.p_hat, bridge.std_err);
    let plain_opts = McOptions { mode: OccupationMode::Plain, ..Default::default() };
    let plain =
        estimate_event_with(StartLaw::Point(0.0), 2.0, 1e-3, 0.0, Event::EqZero, 200_000, 5, &plain_opts).unwrap();
    assert!((plain.p_hat - exact).abs() > (bridge.p_hat - exact).abs() + 3.0 * plain.std_err);
}

#[test]
fn grid_monitoring_bias_shrinks_like_root_dt() {
    let exact = eq_zero_exact();
    let dts = [4e-3, 1e-3, 2.5e-4];
    let plain_opts = McOptions { mode: OccupationMode::Plain, ..Default::default() };
    let mut bias = Vec::new();
    for &dt in &dts {
        let b = estimate_event(0.0, 2.0, dt, 0.0, Event::EqZero, 100_000, 11).unwrap();
        assert!((b.p_hat - exact).abs() <= 3.0 * b.std_err, "bridge dt={dt}: {} ± {}", b.p_hat, b.std_err);
        let p =
            estimate_event_with(StartLaw::Point(0.0), 2.0, dt, 0.0, Event::EqZero, 100_000, 11, &plain_opts).unwrap();
        bias.push(p.p_hat - exact);
    }
    assert!(bias.iter().all(|&b| b > 0.0));
    let slope = log_log_slope(&dts, &bias).unwrap();
    assert!((0.35..=0.65).contains(&slope), "slope {slope}");
}

#[test]
fn farther_starts_never_do_better() {
    let ys = [0.0, 0.5, 0.9, 1.2, 1.5];
    let est: Vec<_> = ys.iter().map(|&y| estimate_event(y, 2.0, 1e-2, 0.5, Event::LeqS, 20_000, 3).unwrap()).collect();
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            let (a, b) = (&est[i], &est[j]);
            assert!(b.p_hat <= a.p_hat + 3.0 * joint(a.std_err, b.std_err), "y={} vs y={}", ys[j], ys[i]);
        }
    }
    let neg = estimate_event(-0.9, 2.0, 1e-2, 0.5, Event::LeqS, 20_000, 3).unwrap();
    assert!((neg.p_hat - est[2].p_hat).abs() <= 3.0 * joint(neg.std_err, est[2].std_err));
}

#[test]
fn budget_exhaustion_time_matches_leq_s_from_the_wall() {
    let (s, t, dt, n) = (0.3, 1.0, 1e-3, 20_000u64);
    let survived = (0..n).filter(|&i| sample_sigma(s, dt, &mut path_rng(21, i)).unwrap() > t).count() as f64;
    let p = survived / n as f64;
    let sp = (p * (1.0 - p) / n as f64).sqrt();
    let e = estimate_event(1.0, t, dt, s, Event::LeqS, n, 22).unwrap();
    assert!((p - e.p_hat).abs() <= 3.0 * joint(sp, e.std_err), "{p} vs {}", e.p_hat);
}

#[test]
fn acceptance_rate_matches_the_event_estimate() {
    let req = ConditionRequest {
        start: StartLaw::Point(0.0),
        t: 4.0,
        dt: 1e-2,
        s: 0.5,
        event: Event::LeqS,
        n_wanted: 3000,
        seed: 8,
        max_paths: 1_000_000,
        record: Record::Probes(vec![1.0]),
    };
    let c = sample_conditioned(&req, &McOptions::default()).unwrap();
    assert_eq!(c.accepted.len(), 3000);
    let e = estimate_event(0.0, 4.0, 1e-2, 0.5, Event::LeqS, 50_000, 9).unwrap();
    let z = (c.acceptance_rate() - e.p_hat) / joint(c.acceptance_std_err(), e.std_err);
    assert!(z.abs() <= 3.0, "z = {z}");
}

#[test]
fn qsd_start_matches_inverted_transform() {
    let (s, t) = (0.5, 4.0);
    let exact = prob_nu_in_0s(s, t, &InversionConfig::bromwich()).unwrap();
    let e = estimate_event_with(StartLaw::Qsd, t, 2e-3, s, Event::In0s, 100_000, 17, &McOptions::default()).unwrap();
    assert!((e.p_hat - exact).abs() <= 3.0 * e.std_err, "{} ± {} vs {exact}", e.p_hat, e.std_err);
    let strat = StartLaw::QsdStratified { strata: 128 };
    let e2 = estimate_event_with(strat, t, 2e-3, s, Event::In0s, 100_000, 18, &McOptions::default()).unwrap();
    assert!((e.p_hat - e2.p_hat).abs() <= 3.0 * joint(e.std_err, e2.std_err));
}

#[test]
fn taboo_paths_stay_inside() {
    for i in 0..100_000u64 {
        let p = simulate_taboo(0.0, 10.0, 2e-3, TabooMode::EulerMaruyama, &mut path_rng(4, i)).unwrap();
        assert!(p.values.iter().all(|v| v.abs() < 1.0), "path {i}");
    }
}

#[test]
fn euler_and_exact_taboo_marginals_agree() {
    let n = 10_000u64;
    let em: Vec<f64> = (0..n)
        .map(|i| simulate_taboo(0.2, 1.0, 1e-3, TabooMode::EulerMaruyama, &mut path_rng(30, i)).unwrap().at(1.0))
        .collect();
    let ex: Vec<f64> = (0..n)
        .map(|i| simulate_taboo(0.2, 1.0, 0.25, TabooMode::Exact, &mut path_rng(31, i)).unwrap().at(1.0))
        .collect();
    let d = ks_two_sample(&em, &ex).unwrap();
    assert!(d < ks_critical_two(n as usize, n as usize, 0.01), "D = {d}");
}

#[test]
fn long_run_taboo_law_is_cos_squared() {
    let xs: Vec<f64> = (0..20_000u64)
        .map(|i| simulate_taboo(0.7, 50.0, 5.0, TabooMode::Exact, &mut path_rng(40, i)).unwrap().at(50.0))
        .collect();
    let quantile = |u: f64| {
        let (mut lo, mut hi) = (-1.0, 1.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if taboo_stationary_cdf(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let chi = chi_square_gof(&xs, taboo_stationary_cdf, quantile, 20).unwrap();
    assert!(chi.p_value > 0.01, "p = {}", chi.p_value);
}

#[test]
fn streams_are_reproducible() {
    let a = estimate_event(0.1, 1.0, 1e-2, 0.2, Event::LeqS, 5000, 77).unwrap();
    let b = estimate_event(0.1, 1.0, 1e-2, 0.2, Event::LeqS, 5000, 77).unwrap();
    assert_eq!(a, b);
    let mut r1 = ChaCha8Rng::seed_from_u64(1);
    let mut r2 = ChaCha8Rng::seed_from_u64(1);
    let p1 = simulate_taboo(0.0, 1.0, 0.5, TabooMode::Exact, &mut r1).unwrap();
    let p2 = simulate_taboo(0.0, 1.0, 0.5, TabooMode::Exact, &mut r2).unwrap();
    assert_eq!(p1.values, p2.values);
}
