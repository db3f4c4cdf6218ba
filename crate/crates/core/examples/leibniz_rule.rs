//! Differentiation under the integral sign, its domination bound, and
//! continuity of g at the ends of [0, 1].

use basel_verify::leibniz::{check_domination, check_endpoint_continuity, check_leibniz, Endpoint};
use basel_verify::quadrature::QuadConfig;

fn main() {
    let cfg = QuadConfig::default().with_abs_tol(1e-10);

    println!("{:>4} {:>18} {:>16} {:>16} {:>9}", "t", "(g(t+h)-g(t-h))/2h", "int df/dt", "closed form", "gap");
    for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let c = check_leibniz(t, 1e-5, &cfg, 1e-6).unwrap();
        println!(
            "{t:>4} {:>18.12} {:>16.12} {:>16.12} {:>9.1e}",
            c.fd_value, c.quad_of_dfdt, c.closed_form, c.max_pairwise_gap
        );
    }

    let d = check_domination(0.01, 100, 100).unwrap();
    println!(
        "\n|df/dt| <= 1/(2t) on {} points: max violation {:.1e}, max 2t|df/dt| = {:.15}",
        d.grid.len(),
        d.max_violation,
        d.max_scaled
    );

    for (end, seq) in [
        (Endpoint::Zero, &[1e-2, 1e-4, 1e-6, 1e-8][..]),
        (Endpoint::One, &[0.9, 0.99, 0.9999, 0.999_999][..]),
    ] {
        let c = check_endpoint_continuity(end, seq, &cfg, 1e-3).unwrap();
        println!("\ng -> {:.12} as t -> {}", c.limit, end.value());
        for (t, gap) in seq.iter().zip(&c.gaps) {
            println!("  t = {t:<10} gap {gap:.3e}");
        }
    }
}
