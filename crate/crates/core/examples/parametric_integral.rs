//! The integral g(t) of arccos((t - tan^2 x)/(t + tan^2 x)) over (0, pi/2)
//! and its closed-form derivative.

use std::f64::consts::PI;

use basel_verify::parametric::{eval_f, g_numeric, gprime_closed, AngleX, ParamT};
use basel_verify::quadrature::QuadConfig;

fn main() {
    let cfg = QuadConfig::default().with_abs_tol(1e-12);

    println!("f(pi/4, t):");
    for t in [0.0, 0.25, 1.0] {
        let v = eval_f(AngleX::new(PI / 4.0).unwrap(), ParamT::new(t).unwrap()).unwrap();
        println!("  t = {t:<5} {v:.15}");
    }

    println!("\n{:>6} {:>18} {:>18}", "t", "g(t)", "g'(t)");
    for k in 0..=10 {
        let t = k as f64 / 10.0;
        let g = g_numeric(ParamT::new(t).unwrap(), &cfg).unwrap();
        let gp = if t > 0.0 { format!("{:18.12}", gprime_closed(t).unwrap()) } else { format!("{:>18}", "-inf") };
        println!("{t:>6.1} {:>18.12} {gp}", g.value);
    }
    println!("\npi^2/2 = {:.12}, pi^2/4 = {:.12}", PI * PI / 2.0, PI * PI / 4.0);
}
