//! Runs the whole chain and prints it in all three report formats.

use basel_verify::pipeline::{run_all, run_step};
use basel_verify::quadrature::QuadConfig;
use basel_verify::report::{serialize_report, ReportFormat};

fn main() {
    let cfg = QuadConfig::default().with_abs_tol(1e-8);
    let report = run_all(&cfg);

    print!("{}", String::from_utf8(serialize_report(&report, ReportFormat::Plain)).unwrap());
    println!();
    print!("{}", String::from_utf8(serialize_report(&report, ReportFormat::Markdown)).unwrap());

    let moments = run_step("moments", &cfg).unwrap();
    println!("\nsingle step as JSON:\n{}", serde_json::to_string_pretty(&moments).unwrap());
    println!("\nall pass: {}", report.all_pass);
}
