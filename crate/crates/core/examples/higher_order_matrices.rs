//! Order-`k^r` matrices: nested blocks, symmetry and the recurrence.

use kbonacci::kbx::MultiIndex;
use kbonacci::{KbonacciMatrices, Order, SquareMatrix};

fn main() -> kbonacci::Result<()> {
    let k = Order::new(3)?;
    let family = KbonacciMatrices::new(k);

    println!("F[1] at order 3:\n{}", family.base(1));
    let m = family.higher(2, 2)?;
    println!("F[2] at order 9:\n{m}");
    println!("symmetric: {}", m.is_symmetric());

    let idx = MultiIndex::from_position(k, 2, 4, 7);
    println!(
        "entry (4, 7) has levels rows {:?} cols {:?}, so it is f[{}]",
        idx.rows,
        idx.cols,
        2 + idx.offset(k)
    );

    // F[j] + F[j+1] + F[j+2] = F[j+3], also at negative j
    let j = -4;
    let sum = (0..3)
        .map(|n| family.higher(2, j + n))
        .try_fold(SquareMatrix::zero(9), |acc, m| m.map(|m| &acc + &m))?;
    assert_eq!(sum, family.higher(2, j + 3)?);
    println!("recurrence holds at j = {j}");
    Ok(())
}
