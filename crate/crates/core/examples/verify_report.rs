// Running a verification suite in-process and printing the JSON report.

use heisenberg_cr::cli::{verify_report, Suite};

pub fn run_example() {
    let report = verify_report(1, 7, &[Suite::Group], 1.0).unwrap();
    for c in &report.checks {
        println!("{:<36} {:.2e} <= {:.0e}: {}", c.id, c.max_residual, c.tolerance, c.passed);
    }
    assert!(report.passed());
}

fn main() {
    run_example();
}
