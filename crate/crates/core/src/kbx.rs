//! The k-bonacci matrices of order `k^r`, the Lucas matrices of order `2^r`,
//! and the block companion matrix whose powers shift the matrix index.
//!
//! The order-`k` matrix at index `j` has entry `f[j + k - λ - μ + 1]` at
//! one-based `(λ, μ)`, so it is constant along anti-diagonals. The order
//! `k^r` matrix is the `k x k` grid whose `(λ, μ)` block is the order
//! `k^(r-1)` matrix at index `j + k - λ - μ + 1`. Unrolled, the entry at
//! per-level indices `(λ_1..λ_r, μ_1..μ_r)` is `f[j + Σ_t (k - λ_t - μ_t + 1)]`.
//!
//! With `Q` the order-`k^r` companion, `F[j] · Q = F[j + 1]` for every
//! integer `j`, hence `F[j] = F[1] · Q^(j-1)` for `j >= 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{BlockGrid, SquareMatrix};
use crate::sequence::{KbonacciSequence, LucasSequence, Order, Sequence};

/// Recursive Hankel-block construction shared by the F and L families.
fn hankel_block<S: Sequence + ?Sized>(seq: &S, r: u32, j: i64) -> SquareMatrix {
    let k = seq.order().get();
    let shift = |a: usize, b: usize| j + k as i64 - a as i64 - b as i64 - 1;
    if r == 1 {
        return SquareMatrix::from_fn(k, |a, b| seq.term(shift(a, b)));
    }
    BlockGrid::from_fn(k, |a, b| hankel_block(seq, r - 1, shift(a, b)))
        .expect("sub-blocks share dimension k^(r-1)")
        .compose()
}

fn check_level(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidLevel(r));
    }
    Ok(())
}

/// Constructors for one order `k`, sharing a term cache.
#[derive(Debug, Clone)]
pub struct KbonacciMatrices {
    seq: KbonacciSequence,
}

impl KbonacciMatrices {
    pub fn new(k: Order) -> Self {
        KbonacciMatrices {
            seq: KbonacciSequence::new(k),
        }
    }

    pub fn with_sequence(seq: KbonacciSequence) -> Self {
        KbonacciMatrices { seq }
    }

    pub fn order(&self) -> Order {
        self.seq.order()
    }

    pub fn sequence(&self) -> &KbonacciSequence {
        &self.seq
    }

    /// Order-`k` matrix; negative `j` gives the backward matrix.
    pub fn base(&self, j: i64) -> SquareMatrix {
        hankel_block(&self.seq, 1, j)
    }

    /// Order-`k^r` matrix, `r >= 1`.
    pub fn higher(&self, r: u32, j: i64) -> Result<SquareMatrix> {
        check_level(r)?;
        Ok(hankel_block(&self.seq, r, j))
    }

    /// Block companion of order `k^r`.
    pub fn companion(&self, r: u32) -> Result<SquareMatrix> {
        build_q(self.order(), r)
    }

    /// `F[1] · Q^(j-1)`, defined for `j >= 1`.
    pub fn via_q_power(&self, r: u32, j: i64) -> Result<SquareMatrix> {
        if j < 1 {
            return Err(Error::IndexOutOfRange {
                index: j,
                reason: "the power representation starts at j = 1",
            });
        }
        let first = self.higher(r, 1)?;
        let q = self.companion(r)?;
        Ok(&first * &q.pow((j - 1) as u64))
    }
}

/// Lucas matrices of order `2^r`: `[[L[j+1], L[j]], [L[j], L[j-1]]]` at
/// `r = 1`, recursing with the same block offsets as the k = 2 family.
#[derive(Debug, Clone, Default)]
pub struct LucasMatrices {
    seq: LucasSequence,
}

impl LucasMatrices {
    pub fn new() -> Self {
        LucasMatrices {
            seq: LucasSequence::new(),
        }
    }

    pub fn sequence(&self) -> &LucasSequence {
        &self.seq
    }

    pub fn matrix(&self, r: u32, j: i64) -> Result<SquareMatrix> {
        check_level(r)?;
        Ok(hankel_block(&self.seq, r, j))
    }
}

/// Order-`k` matrix `F[j]^(k)`.
pub fn build_base(k: usize, j: i64) -> Result<SquareMatrix> {
    Ok(KbonacciMatrices::new(Order::new(k)?).base(j))
}

/// Order-`k^r` matrix `F[j]^(k^r)`.
pub fn build_higher(k: usize, r: u32, j: i64) -> Result<SquareMatrix> {
    KbonacciMatrices::new(Order::new(k)?).higher(r, j)
}

/// Order-`2^r` Lucas matrix `L[j]^(2^r)`.
pub fn build_lucas(r: u32, j: i64) -> Result<SquareMatrix> {
    LucasMatrices::new().matrix(r, j)
}

/// The block companion of order `k^r`: the scalar pattern
///
/// ```text
/// 1 1 0 .. 0
/// 1 0 1 .. 0
/// :       :
/// 1 0 0 .. 1
/// 1 0 0 .. 0
/// ```
///
/// with every scalar `c` replaced by `c · I` of order `k^(r-1)`.
pub fn build_q(k: Order, r: u32) -> Result<SquareMatrix> {
    check_level(r)?;
    let k = k.get();
    let scalar = SquareMatrix::from_fn(k, |a, b| {
        if b == 0 || b == a + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let inner = k.pow(r - 1);
    Ok(scalar.kron(&SquareMatrix::identity(inner)))
}

/// `F[1]^(k^r) · (Q^r)^(j-1)`, which equals `F[j]^(k^r)` for `j >= 1`.
pub fn fast_f(k: usize, r: u32, j: i64) -> Result<SquareMatrix> {
    KbonacciMatrices::new(Order::new(k)?).via_q_power(r, j)
}

/// `f[j, k]` for `j >= 0` via `O(log j)` products of order-`k` matrices.
pub fn fast_term(k: Order, j: i64) -> Result<BigInt> {
    if j < 0 {
        return Err(Error::IndexOutOfRange {
            index: j,
            reason: "the power path covers j >= 0",
        });
    }
    let kk = k.get();
    let seq = KbonacciSequence::new(k);
    let first = hankel_block(&seq, 1, 1);
    if j == 0 {
        // (λ, μ) = (2, k) of F[1] holds f[0]
        return Ok(first.get(1, kk - 1).clone());
    }
    let q = build_q(k, 1)?;
    // (λ, μ) = (1, k) of F[j] holds f[j]
    let m = &first * &q.pow((j - 1) as u64);
    Ok(m.get(0, kk - 1).clone())
}

/// Per-level one-based row and column indices of an entry of an order-`k^r`
/// matrix; level 1 is the outermost block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MultiIndex {
    /// Splits zero-based `(row, col)` into base-`k` digits, most significant
    /// first.
    pub fn from_position(k: Order, r: u32, row: usize, col: usize) -> Self {
        let k = k.get();
        let digits = |mut x: usize| {
            let mut out = vec![0; r as usize];
            for slot in out.iter_mut().rev() {
                *slot = x % k + 1;
                x /= k;
            }
            out
        };
        MultiIndex {
            rows: digits(row),
            cols: digits(col),
        }
    }

    /// Zero-based `(row, col)` back from the per-level indices.
    pub fn position(&self, k: Order) -> (usize, usize) {
        let fold = |v: &[usize]| v.iter().fold(0, |acc, &d| acc * k.get() + d - 1);
        (fold(&self.rows), fold(&self.cols))
    }

    /// `Σ_t (k - λ_t - μ_t + 1)`.
    pub fn offset(&self, k: Order) -> i64 {
        let k = k.get() as i64;
        self.rows
            .iter()
            .zip(&self.cols)
            .map(|(&l, &m)| k - l as i64 - m as i64 + 1)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// k-bonacci matrices.
    F,
    /// Lucas matrices, k = 2 only.
    L,
    /// Block companion.
    Q,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::F => "F",
            Family::L => "L",
            Family::Q => "Q",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "F" | "f" => Ok(Family::F),
            "L" | "l" => Ok(Family::L),
            "Q" | "q" => Ok(Family::Q),
            other => Err(format!(
                "unknown matrix family `{other}` (expected F, L or Q)"
            )),
        }
    }
}

/// Identifies one constructible matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSpec {
    pub family: Family,
    pub k: Order,
    pub r: u32,
    /// Ignored for [`Family::Q`].
    pub j: i64,
}

impl MatrixSpec {
    pub fn dim(&self) -> usize {
        self.k.get().pow(self.r)
    }

    pub fn build(&self) -> Result<SquareMatrix> {
        match self.family {
            Family::F => KbonacciMatrices::new(self.k).higher(self.r, self.j),
            Family::L => {
                if self.k != Order::FIBONACCI {
                    return Err(Error::LucasOrder(self.k.get()));
                }
                build_lucas(self.r, self.j)
            }
            Family::Q => build_q(self.k, self.r),
        }
    }
}
