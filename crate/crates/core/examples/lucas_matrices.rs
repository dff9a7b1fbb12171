//! Lucas numbers and their order-`2^r` matrices next to the Fibonacci ones.

use kbonacci::kbx::{build_higher, build_lucas};
use kbonacci::LucasSequence;

fn main() -> kbonacci::Result<()> {
    let lucas = LucasSequence::new();
    let terms: Vec<String> = (-5..=10).map(|j| lucas.term(j).to_string()).collect();
    println!("L[-5..=10]: {}", terms.join(" "));

    for r in 1..=2 {
        println!("L[3] at order {}:\n{}", 1 << r, build_lucas(r, 3)?);
    }

    // F[n] + L[n] = 2 F[n+1]
    let n = 6;
    let lhs = &build_higher(2, 1, n)? + &build_lucas(1, n)?;
    assert_eq!(lhs, build_higher(2, 1, n + 1)?.scale(&2.into()));
    println!("F[{n}] + L[{n}] = 2 F[{}] at order 2", n + 1);
    Ok(())
}
