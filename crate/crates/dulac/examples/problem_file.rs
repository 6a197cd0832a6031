//! Parse problem text, run it, and print the JSON report.
//!
//! This is exactly what the `dulac` binary does; the example shows the
//! library calls behind it and that the printed problem round-trips
//! through the parser.
//!
//! ```text
//! cargo run -p dulac --example problem_file
//! ```

use dulac::problem::parse_problem;
use dulac::report::{render, run};

const PROBLEM: &str = "\
# a saddle with one removable term
vars x, y;
field x + x^2, -y;
order 4;
resbound 8;
mode normalize;
";

fn main() {
    let spec = parse_problem(PROBLEM).unwrap();
    println!("parsed problem in dimension {}:", spec.dim());
    print!("{spec}");

    // the canonical printing parses back to the same problem
    assert_eq!(parse_problem(&spec.to_string()).unwrap(), spec);

    let report = run(&spec).unwrap();
    println!("\nreport:");
    print!("{}", render(&report));
}
