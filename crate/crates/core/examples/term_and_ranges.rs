//! Single terms and ranges on both sides of zero.
//!
//!     cargo run --example term_and_ranges -- 4

use kbonacci::sequence::{closed_form_band, KbonacciSequence, Order};

fn main() -> kbonacci::Result<()> {
    let k: usize = std::env::args()
        .nth(1)
        .map_or(Ok(3), |s| s.parse())
        .unwrap_or(3);
    let seq = KbonacciSequence::of_order(k)?;

    println!("f[j, {k}] for j in -12..=12:");
    for (j, v) in (-12..=12).zip(seq.range(-12, 12)?) {
        println!("{j:>4}  {v:>6}");
    }

    println!("\nclosed-form bands:");
    for j in k as i64..=3 * k as i64 - 2 {
        let band = closed_form_band(Order::new(k)?, j).expect("inside a band");
        let t = seq.term(j);
        let mark = if band == t { "" } else { "  <- differs" };
        println!("{j:>4}  term {t:>6}  band {band:>6}{mark}");
    }

    println!("\nf[500, {k}] = {}", seq.term(500));
    Ok(())
}
