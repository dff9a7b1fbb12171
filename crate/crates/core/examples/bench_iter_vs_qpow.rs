//! Iterative recurrence against the `Q`-power path.
//!
//!     cargo run --release --example bench_iter_vs_qpow -- 2 200000 50000

use kbonacci::bench::bench;
use kbonacci::Order;

fn main() -> kbonacci::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("integer argument"))
        .collect();
    let (k, j_max, step) = match args[..] {
        [k, j, s] => (k, j, s),
        _ => (2, 100_000, 25_000),
    };
    let k = Order::new(k as usize)?;
    println!(
        "{:>10} {:>12} {:>12} {:>8}",
        "j", "iter (s)", "qpow (s)", "digits"
    );
    for row in bench(k, j_max, step)? {
        println!(
            "{:>10} {:>12.4} {:>12.4} {:>8}",
            row.j, row.iter_seconds, row.qpow_seconds, row.digits
        );
    }
    Ok(())
}
