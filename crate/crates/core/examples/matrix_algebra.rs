//! Exact matrix arithmetic, block grids and the JSON/plain renderings.

use kbonacci::{BlockGrid, SquareMatrix};

fn main() -> kbonacci::Result<()> {
    let q = SquareMatrix::from_i64([[1, 1], [1, 0]]);
    let a = SquareMatrix::from_i64([[2, -1], [0, 3]]);

    println!("Q * A =\n{}", &q * &a);
    println!("Q + A =\n{}", &q + &a);
    println!("Q o A (entrywise) =\n{}", q.checked_hadamard(&a)?);
    println!("Q^200 top-right = {}", q.pow(200).get(0, 1));

    let k = q.kron(&SquareMatrix::identity(2));
    let grid = BlockGrid::decompose(&k, 2)?;
    println!("Q (x) I_2 block (0, 0) =\n{}", grid.block(0, 0));
    assert_eq!(grid.compose(), k);

    let json = a.to_json();
    println!("json: {json}");
    assert_eq!(SquareMatrix::from_json(&json)?, a);

    assert!(q.checked_mul(&k).is_err());
    Ok(())
}
