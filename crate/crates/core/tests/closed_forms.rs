//! Closed forms checked against the textbook `tan`-based formulas and against
//! finite differences.

use std::f64::consts::{FRAC_PI_2, PI};

use basel_verify::parametric::{
    eval_dfdt, eval_f, g_numeric, gprime_closed, inner_antiderivative, AngleX, ParamT,
};
use basel_verify::quadrature::QuadConfig;

fn naive_f(x: f64, t: f64) -> f64 {
    let tan2 = x.tan().powi(2);
    ((t - tan2) / (t + tan2)).acos()
}

fn naive_dfdt(x: f64, t: f64) -> f64 {
    let tan = x.tan();
    -tan / (t.sqrt() * (t + tan * tan))
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp().clamp(lo, hi))
        .collect()
}

fn x_grid() -> Vec<f64> {
    // log-dense toward both ends of [1e-3, π/2 - 1e-3]
    let left = log_space(1e-3, FRAC_PI_2 / 2.0, 40);
    let right: Vec<f64> = log_space(1e-3, FRAC_PI_2 / 2.0, 40).into_iter().map(|d| FRAC_PI_2 - d).collect();
    left.into_iter().chain(right).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

#[test]
fn stable_and_naive_forms_agree() {
    let mut worst_f = 0.0_f64;
    let mut worst_d = 0.0_f64;
    for &t in &log_space(1e-6, 1.0, 60) {
        for &x in &x_grid() {
            let (nf, nd) = (naive_f(x, t), naive_dfdt(x, t));
            if !nf.is_finite() || !nd.is_finite() {
                continue;
            }
            let ax = AngleX::new(x).unwrap();
            worst_f = worst_f.max(rel(eval_f(ax, ParamT::new(t).unwrap()).unwrap(), nf));
            worst_d = worst_d.max(rel(eval_dfdt(ax, t).unwrap(), nd));
        }
    }
    assert!(worst_f <= 1e-10, "f: {worst_f:e}");
    assert!(worst_d <= 1e-10, "df/dt: {worst_d:e}");
}

#[test]
fn f_stays_in_zero_to_pi() {
    for &t in &[0.0, 1e-12, 1e-6, 0.3, 0.999, 1.0] {
        for &x in &x_grid() {
            let v = eval_f(AngleX::new(x).unwrap(), ParamT::new(t).unwrap()).unwrap();
            assert!((0.0..=PI).contains(&v));
        }
    }
}

#[test]
fn dfdt_is_central_difference_of_f() {
    let h = 1e-6;
    for t in (1..=9).map(|k| k as f64 / 10.0) {
        for x in (1..=14).map(|k| k as f64 * 0.1) {
            let ax = AngleX::new(x).unwrap();
            let fp = eval_f(ax, ParamT::new(t + h).unwrap()).unwrap();
            let fm = eval_f(ax, ParamT::new(t - h).unwrap()).unwrap();
            let fd = (fp - fm) / (2.0 * h);
            let d = eval_dfdt(ax, t).unwrap();
            assert!((fd - d).abs() <= 1e-6, "x={x} t={t}: {fd} vs {d}");
        }
    }
}

#[test]
fn antiderivative_difference_is_gprime() {
    for t in (1..100).map(|k| k as f64 / 100.0) {
        let diff = inner_antiderivative(FRAC_PI_2, t).unwrap() - inner_antiderivative(0.0, t).unwrap();
        let gp = gprime_closed(t).unwrap();
        assert!(rel(diff, gp) <= 1e-12, "t={t}: {diff} vs {gp}");
    }
}

#[test]
fn antiderivative_x_derivative_is_dfdt() {
    let h = 1e-6;
    for &t in &[0.1, 0.5, 0.9] {
        for &x in &[0.2, 0.6, 1.0, 1.4] {
            let fd = (inner_antiderivative(x + h, t).unwrap() - inner_antiderivative(x - h, t).unwrap()) / (2.0 * h);
            let d = eval_dfdt(AngleX::new(x).unwrap(), t).unwrap();
            assert!((fd - d).abs() <= 1e-6);
        }
    }
}

#[test]
fn gprime_negative_and_g_decreasing() {
    for t in log_space(1e-12, 1.0, 200) {
        assert!(gprime_closed(t).unwrap() < 0.0, "t={t}");
    }
    let cfg = QuadConfig::default();
    let values: Vec<f64> = (0..=10)
        .map(|k| g_numeric(ParamT::new(k as f64 / 10.0).unwrap(), &cfg).unwrap().value)
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
}

#[test]
fn gprime_matches_central_difference_of_g() {
    let cfg = QuadConfig::default().with_abs_tol(1e-13);
    let h = 1e-3;
    let g = |t: f64| g_numeric(ParamT::new(t).unwrap(), &cfg).unwrap().value;
    let fd = (g(0.25 + h) - g(0.25 - h)) / (2.0 * h);
    assert!((fd - gprime_closed(0.25).unwrap()).abs() < 1e-4);
}

#[test]
fn gprime_asymptotics_near_zero() {
    // gprime · 2√t / log t = 1/(1 - t) exactly, so ratio - 1 = t/(1 - t) ≤ 2t for t ≤ 1/2.
    for &t in &[1e-2, 1e-4, 1e-6] {
        let ratio = gprime_closed(t).unwrap() * 2.0 * t.sqrt() / t.ln();
        let brute = t / (1.0 - t);
        assert!(((ratio - 1.0) - brute).abs() <= 1e-12, "t={t}");
        assert!((ratio - 1.0).abs() <= 2.0 * t);
    }
}

#[test]
fn domain_validation_on_public_types() {
    assert!(ParamT::try_from(1.5).is_err());
    assert!(AngleX::try_from(-0.1).is_err());
    assert!(AngleX::try_from(2.0).is_err());
    assert_eq!(ParamT::try_from(0.5).unwrap().get(), 0.5);
}
