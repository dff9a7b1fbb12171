//! `F[j] = F[1] Q^(j-1)`: the block companion and the `O(log j)` term.

use kbonacci::kbx::{build_q, fast_f, fast_term};
use kbonacci::sequence::{iterate_term, Order};

fn main() -> kbonacci::Result<()> {
    let k = Order::new(4)?;
    println!("Q at order 4:\n{}", build_q(k, 1)?);
    println!("Q at order 16 (blocks of I_4):\n{}", build_q(k, 2)?);
    println!("F[5] via powers at order 16:\n{}", fast_f(4, 2, 5)?);

    for j in [10, 100, 1000, 10_000] {
        let fast = fast_term(k, j)?;
        assert_eq!(fast, iterate_term(k, j));
        let digits = fast.to_string().len();
        println!("f[{j}, 4] has {digits} digits");
    }
    Ok(())
}
