//! Runs every identity checker over a small grid and prints the summary and
//! the first counterexample of each declared deviation.
//!
//!     cargo run --release --example verify_identities

use std::collections::BTreeSet;

use kbonacci::identities::{run_suite, CheckerId, Grid};

fn main() {
    let report = run_suite(&CheckerId::ALL, &Grid::new(3, 2, 6));
    print!("{}", report.to_plain());

    let mut shown = BTreeSet::new();
    for case in &report.cases {
        let Some(dev) = case.deviation() else {
            continue;
        };
        if !shown.insert(dev.family) {
            continue;
        }
        println!("\n{}: {}", dev.family, case.id);
        if let Some(ce) = &case.counterexample {
            println!("  lhs = {}", serde_json::to_string(&ce.lhs).unwrap());
            println!("  rhs = {}", serde_json::to_string(&ce.rhs).unwrap());
        }
    }
}
