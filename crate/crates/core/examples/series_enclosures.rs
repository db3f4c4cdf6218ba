//! Guaranteed enclosures for the sums of 1/n^2 and 1/(2k+1)^2.

use std::f64::consts::PI;

use basel_verify::series::{basel_via_odd_relation, sum_odd_reciprocal_squares, sum_reciprocal_squares};

fn main() {
    println!("{:>9} {:>40} {:>10}", "N", "sum 1/n^2", "width");
    for n in [1, 10, 100, 10_000, 1_000_000] {
        let e = sum_reciprocal_squares(n);
        println!("{n:>9} {e:>40} {:>10.2e}", e.width());
    }
    println!("pi^2/6 = {:.16}", PI * PI / 6.0);

    let odd = sum_odd_reciprocal_squares(100_000);
    println!("\nsum 1/(2k+1)^2 in {odd}, contains pi^2/8: {}", odd.contains(PI * PI / 8.0));

    let via = basel_via_odd_relation(100_000).expect("odd and full enclosures overlap");
    println!("4/3 of the odd sum, intersected with the direct sum: {via}");
    println!("contains pi^2/6: {}", via.contains(PI * PI / 6.0));
}
