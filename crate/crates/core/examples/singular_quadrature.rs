//! Adaptive Gauss-Kronrod on integrands with endpoint singularities.

use std::f64::consts::PI;

use basel_verify::quadrature::{integrate, integrate_with_transform, QuadConfig, SquareAtLower};

fn main() {
    let cfg = QuadConfig::default().with_abs_tol(1e-12);

    let cases: [(&str, fn(f64) -> f64, f64); 3] = [
        ("log u", f64::ln, -1.0),
        ("1/sqrt(u)", |u| 1.0 / u.sqrt(), 2.0),
        ("log u / (1 - u^2)", |u| u.ln() / (1.0 - u * u), -PI * PI / 8.0),
    ];
    for (name, f, exact) in cases {
        let r = integrate(f, 0.0, 1.0, &cfg).expect("converges");
        println!(
            "{name:<20} {:>20.15}  err {:.1e}  est {:.1e}  evals {}",
            r.value,
            (r.value - exact).abs(),
            r.error_est,
            r.n_evals
        );
    }

    // u = s^2 removes the 1/sqrt singularity before the rule sees it
    let plain = integrate(|u| 1.0 / u.sqrt(), 0.0, 1.0, &cfg).unwrap();
    let mapped = integrate_with_transform(|u| 1.0 / u.sqrt(), 0.0, 1.0, &SquareAtLower, &cfg).unwrap();
    println!("1/sqrt(u): {} evals plain, {} evals with u = s^2", plain.n_evals, mapped.n_evals);

    let starved = QuadConfig { max_evals: 45, ..cfg };
    match integrate(f64::ln, 0.0, 1.0, &starved) {
        Ok(r) => println!("unexpected convergence: {r:?}"),
        Err(e) => println!("budget of 45 evaluations: {e}"),
    }
}
