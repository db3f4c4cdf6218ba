use basel_verify::leibniz::{check_domination, check_leibniz, DOMINATION_SLACK};
use basel_verify::parametric::{g_numeric, gprime_closed, ParamT};
use basel_verify::quadrature::QuadConfig;

#[test]
fn three_way_agreement_on_t_grid() {
    let cfg = QuadConfig::default().with_abs_tol(1e-10);
    for t in (1..=9).map(|k| k as f64 / 10.0) {
        let c = check_leibniz(t, 1e-5, &cfg, 1e-6).unwrap();
        assert!(c.pass, "t={t}: {c:?}");
        assert!((c.closed_form - gprime_closed(t).unwrap()).abs() == 0.0);
    }
}

#[test]
fn central_difference_error_is_second_order() {
    let cfg = QuadConfig::default().with_abs_tol(1e-13);
    let t = 0.5;
    let g = |s: f64| g_numeric(ParamT::new(s).unwrap(), &cfg).unwrap().value;
    let exact = gprime_closed(t).unwrap();
    let dev: Vec<f64> = [0.04, 0.02, 0.01]
        .iter()
        .map(|&h| ((g(t + h) - g(t - h)) / (2.0 * h) - exact).abs())
        .collect();
    for w in dev.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 4.0).abs() <= 0.5, "ratio {ratio}, deviations {dev:?}");
    }
}

#[test]
fn domination_sweeps_with_various_deltas() {
    for &delta in &[0.5, 0.1, 0.01, 1e-4] {
        let r = check_domination(delta, 50, 50).unwrap();
        assert!(r.pass);
        assert!(r.max_violation <= DOMINATION_SLACK);
        assert!(r.grid.iter().all(|&(_, t)| t > delta && t < 1.0));
        // |∂f/∂t| ≤ 1/(2t) < 1/(2δ) on the strip
        assert!(r.grid.iter().all(|&(x, t)| {
            let d = basel_verify::parametric::eval_dfdt(basel_verify::AngleX::new(x).unwrap(), t).unwrap();
            d.abs() <= 0.5 / delta
        }));
    }
}
