//! Dense square matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `dim x dim` matrix of exact integers, stored row-major. `dim >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != dim {
                return Err(Error::RaggedRows {
                    row,
                    len: values.len(),
                    dim,
                });
            }
            entries.extend(values);
        }
        Ok(SquareMatrix { dim, entries })
    }

    /// Convenience for literals in tests and examples.
    pub fn from_i64<const N: usize>(rows: [[i64; N]; N]) -> Self {
        assert!(N > 0, "matrix dimension must be positive");
        SquareMatrix {
            dim: N,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    /// Builds a matrix from `f(row, col)` with zero-based indices.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        SquareMatrix { dim, entries }
    }

    pub fn scalar(value: BigInt) -> Self {
        SquareMatrix {
            dim: 1,
            entries: vec![value],
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| BigInt::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Matrix with every entry equal to one.
    pub fn ones(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| BigInt::one())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at zero-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        SquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Entrywise (Hadamard) product.
    pub fn checked_hadamard(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a * b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for t in 0..n {
                let a = &self.entries[r * n + t];
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.entries[t * n..(t + 1) * n];
                for (acc, b) in out[r * n..(r + 1) * n].iter_mut().zip(b_row) {
                    if !b.is_zero() {
                        *acc += a * b;
                    }
                }
            }
        }
        Ok(SquareMatrix {
            dim: n,
            entries: out,
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// `self^e` by square-and-multiply; `self^0` is the identity.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::identity(self.dim);
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        loop {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e == 0 {
                return result;
            }
            base = &base * &base;
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |r, c| {
            self.get(r / m, c / m) * other.get(r % m, c % m)
        })
    }

    /// Sum of an iterator of equal-dimension matrices; `None` when empty.
    pub fn sum<'a>(mut items: impl Iterator<Item = &'a SquareMatrix>) -> Option<Self> {
        let first = items.next()?.clone();
        Some(items.fold(first, |acc, m| &acc + m))
    }

    /// Column-aligned plain text, one row per line.
    pub fn to_plain(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells.chunks(self.dim) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument {
            dim: self.dim,
            entries: self
                .rows()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("matrix document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDocument =
            serde_json::from_str(text).map_err(|e| Error::MalformedMatrix(e.to_string()))?;
        SquareMatrix::try_from(doc)
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

/// Wire form of a matrix: entries as decimal strings so no consumer loses
/// precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixDocument> for SquareMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDocument) -> Result<Self> {
        if doc.entries.len() != doc.dim {
            return Err(Error::MalformedMatrix(format!(
                "dim is {} but {} rows given",
                doc.dim,
                doc.entries.len()
            )));
        }
        let rows = doc
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        cell.parse::<BigInt>()
                            .map_err(|_| Error::MalformedMatrix(format!("bad integer `{cell}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SquareMatrix::from_rows(rows)
    }
}

impl Serialize for SquareMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on a dimension mismatch; see the `checked_*` methods.
        impl $trait<&SquareMatrix> for &SquareMatrix {
            type Output = SquareMatrix;

            fn $method(self, rhs: &SquareMatrix) -> SquareMatrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait for SquareMatrix {
            type Output = SquareMatrix;

            fn $method(self, rhs: SquareMatrix) -> SquareMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;

    fn neg(self) -> SquareMatrix {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }
}

impl Neg for SquareMatrix {
    type Output = SquareMatrix;

    fn neg(self) -> SquareMatrix {
        -&self
    }
}

/// A `k x k` arrangement of equal-dimension blocks, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGrid {
    side: usize,
    block_dim: usize,
    blocks: Vec<SquareMatrix>,
}

impl BlockGrid {
    pub fn new(side: usize, blocks: Vec<SquareMatrix>) -> Result<Self> {
        if side == 0 || blocks.len() != side * side {
            return Err(Error::NonUniformBlocks(format!(
                "{} blocks for a {side}x{side} grid",
                blocks.len()
            )));
        }
        let block_dim = blocks[0].dim();
        if let Some(bad) = blocks.iter().position(|b| b.dim() != block_dim) {
            return Err(Error::NonUniformBlocks(format!(
                "block {bad} has dimension {} but block 0 has {block_dim}",
                blocks[bad].dim()
            )));
        }
        Ok(BlockGrid {
            side,
            block_dim,
            blocks,
        })
    }

    /// Builds a grid from `f(row, col)` with zero-based block indices.
    pub fn from_fn(side: usize, mut f: impl FnMut(usize, usize) -> SquareMatrix) -> Result<Self> {
        let blocks = (0..side * side).map(|i| f(i / side, i % side)).collect();
        Self::new(side, blocks)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn block(&self, row: usize, col: usize) -> &SquareMatrix {
        &self.blocks[row * self.side + col]
    }

    /// Flattens the grid into one `side * block_dim` matrix.
    pub fn compose(&self) -> SquareMatrix {
        let m = self.block_dim;
        SquareMatrix::from_fn(self.side * m, |r, c| {
            self.block(r / m, c / m).get(r % m, c % m).clone()
        })
    }

    /// Splits `a` into a `side x side` grid; inverse of [`compose`](Self::compose).
    pub fn decompose(a: &SquareMatrix, side: usize) -> Result<Self> {
        if side == 0 || !a.dim().is_multiple_of(side) {
            return Err(Error::IndivisibleDimension {
                dim: a.dim(),
                k: side,
            });
        }
        let m = a.dim() / side;
        Self::from_fn(side, |br, bc| {
            SquareMatrix::from_fn(m, |r, c| a.get(br * m + r, bc * m + c).clone())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> SquareMatrix {
        SquareMatrix::from_i64([[1, 1], [1, 0]])
    }

    #[test]
    fn additive_examples() {
        let i2 = SquareMatrix::identity(2);
        assert_eq!(&i2 + &SquareMatrix::zero(2), i2);
        let a = SquareMatrix::from_i64([[3, 2], [2, 1]]);
        assert_eq!(
            a.scale(&BigInt::from(5)),
            SquareMatrix::from_i64([[15, 10], [10, 5]])
        );
        assert!((&a - &a).is_zero());
        assert_eq!(-&a, SquareMatrix::from_i64([[-3, -2], [-2, -1]]));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&q() * &q(), SquareMatrix::from_i64([[2, 1], [1, 1]]));
        assert_eq!(&SquareMatrix::identity(2) * &q(), q());
        assert!((&q() * &SquareMatrix::zero(2)).is_zero());
    }

    #[test]
    fn power_examples() {
        assert_eq!(q().pow(0), SquareMatrix::identity(2));
        assert_eq!(q().pow(1), q());
        assert_eq!(q().pow(5), SquareMatrix::from_i64([[8, 5], [5, 3]]));
    }

    #[test]
    fn mismatched_dimensions() {
        let a = SquareMatrix::identity(2);
        let b = SquareMatrix::identity(3);
        let err = Error::DimensionMismatch { left: 2, right: 3 };
        assert_eq!(a.checked_add(&b), Err(err.clone()));
        assert_eq!(a.checked_sub(&b), Err(err.clone()));
        assert_eq!(a.checked_mul(&b), Err(err));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(SquareMatrix::from_rows(vec![]), Err(Error::EmptyMatrix));
        let ragged = vec![vec![BigInt::one()], vec![BigInt::one(), BigInt::zero()]];
        assert!(matches!(
            SquareMatrix::from_rows(ragged),
            Err(Error::RaggedRows { .. })
        ));
        assert_eq!(
            BlockGrid::decompose(&SquareMatrix::identity(5), 2),
            Err(Error::IndivisibleDimension { dim: 5, k: 2 })
        );
        let mixed = vec![
            SquareMatrix::identity(1),
            SquareMatrix::identity(2),
            SquareMatrix::identity(1),
            SquareMatrix::identity(1),
        ];
        assert!(matches!(
            BlockGrid::new(2, mixed),
            Err(Error::NonUniformBlocks(_))
        ));
    }

    #[test]
    fn compose_scalar_blocks() {
        let s = |v| SquareMatrix::scalar(BigInt::from(v));
        let grid = BlockGrid::new(2, vec![s(1), s(1), s(1), s(0)]).unwrap();
        assert_eq!(grid.compose(), q());
        assert_eq!(BlockGrid::decompose(&q(), 2).unwrap(), grid);
    }

    #[test]
    fn kron_with_identity_inflates() {
        let k = q().kron(&SquareMatrix::identity(2));
        let grid = BlockGrid::decompose(&k, 2).unwrap();
        assert_eq!(grid.block(0, 0), &SquareMatrix::identity(2));
        assert!(grid.block(1, 1).is_zero());
    }

    #[test]
    fn json_and_plain() {
        let json = q().to_json();
        assert_eq!(json, r#"{"dim":2,"entries":[["1","1"],["1","0"]]}"#);
        assert_eq!(SquareMatrix::from_json(&json).unwrap(), q());
        let big = SquareMatrix::from_i64([[-12, 3], [4, 100]]);
        assert_eq!(big.to_plain(), "-12   3\n  4 100\n");
        assert!(SquareMatrix::from_json(r#"{"dim":2,"entries":[["1"]]}"#).is_err());
        assert!(SquareMatrix::from_json(r#"{"dim":1,"entries":[["x"]]}"#).is_err());
    }

    #[test]
    fn symmetry() {
        assert!(q().is_symmetric());
        assert!(!SquareMatrix::from_i64([[1, 2], [3, 4]]).is_symmetric());
    }
}
