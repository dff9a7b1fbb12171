//! k-bonacci and Lucas numbers at every integer index.
//!
//! The k-bonacci numbers are seeded with `k - 1` zeros followed by a one and
//! continue forward by summing the previous `k` terms. Running the same
//! recurrence in reverse, `f[j-k] = f[j] - (f[j-1] + ... + f[j-k+1])`, extends
//! the sequence to negative indices, so every index has exactly one value and
//! there is no seam at zero.
//!
//! [`KbonacciSequence`] and [`LucasSequence`] memoize a contiguous window of
//! terms behind a lock; [`term`] and [`iterate_term`] are the cache-free path
//! and only ever hold `k` values at a time.

use std::collections::VecDeque;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Recurrence order `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Order(usize);

impl Order {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidOrder(k));
        }
        Ok(Order(k))
    }

    /// The Fibonacci order.
    pub const FIBONACCI: Order = Order(2);

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<usize> for Order {
    type Error = Error;

    fn try_from(k: usize) -> Result<Self> {
        Order::new(k)
    }
}

/// Anything that yields an exact term for every integer index and obeys an
/// all-ones recurrence of a fixed order.
pub trait Sequence {
    fn order(&self) -> Order;
    fn term(&self, j: i64) -> BigInt;
}

/// Contiguous run of terms `values[i] = x[start + i]` of an all-ones
/// recurrence. Always holds at least `order` values.
#[derive(Debug, Clone)]
struct Window {
    order: usize,
    start: i64,
    values: VecDeque<BigInt>,
}

impl Window {
    fn new(seeds: Vec<BigInt>) -> Self {
        Window {
            order: seeds.len(),
            start: 0,
            values: seeds.into(),
        }
    }

    fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    fn get(&self, j: i64) -> Option<&BigInt> {
        if j < self.start || j >= self.end() {
            return None;
        }
        self.values.get((j - self.start) as usize)
    }

    fn extend_to(&mut self, j: i64) {
        let k = self.order;
        while j >= self.end() {
            let next: BigInt = self.values.iter().rev().take(k).sum();
            self.values.push_back(next);
        }
        while j < self.start {
            // x[s-1] = x[s+k-1] - (x[s] + ... + x[s+k-2])
            let tail: BigInt = self.values.iter().take(k - 1).sum();
            let prev = &self.values[k - 1] - tail;
            self.values.push_front(prev);
            self.start -= 1;
        }
    }
}

/// Memoizing, thread-safe store shared by the concrete sequences.
#[derive(Debug)]
struct RecurrenceCache {
    window: RwLock<Window>,
}

impl RecurrenceCache {
    fn new(seeds: Vec<BigInt>) -> Self {
        RecurrenceCache {
            window: RwLock::new(Window::new(seeds)),
        }
    }

    fn term(&self, j: i64) -> BigInt {
        {
            let window = self.window.read().unwrap_or_else(|e| e.into_inner());
            if let Some(v) = window.get(j) {
                return v.clone();
            }
        }
        let mut window = self.window.write().unwrap_or_else(|e| e.into_inner());
        window.extend_to(j);
        window
            .get(j)
            .cloned()
            .expect("window extended to cover index")
    }

    fn snapshot(&self) -> Window {
        self.window
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .clone()
    }
}

fn kbonacci_seeds(k: Order) -> Vec<BigInt> {
    let mut seeds = vec![BigInt::zero(); k.get()];
    seeds[k.get() - 1] = BigInt::one();
    seeds
}

/// The k-bonacci numbers `f[j, k]` for all integers `j`, memoized.
#[derive(Debug)]
pub struct KbonacciSequence {
    order: Order,
    cache: RecurrenceCache,
}

impl KbonacciSequence {
    pub fn new(k: Order) -> Self {
        KbonacciSequence {
            order: k,
            cache: RecurrenceCache::new(kbonacci_seeds(k)),
        }
    }

    /// Shorthand for `KbonacciSequence::new(Order::new(k)?)`.
    pub fn of_order(k: usize) -> Result<Self> {
        Ok(Self::new(Order::new(k)?))
    }

    pub fn fibonacci() -> Self {
        Self::new(Order::FIBONACCI)
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn term(&self, j: i64) -> BigInt {
        self.cache.term(j)
    }

    /// Terms `lo..=hi` in index order.
    pub fn range(&self, lo: i64, hi: i64) -> Result<Vec<BigInt>> {
        if lo > hi {
            return Err(Error::InvertedRange { lo, hi });
        }
        // one write to cover both ends, then plain reads
        self.term(lo);
        self.term(hi);
        Ok((lo..=hi).map(|j| self.term(j)).collect())
    }

    /// The backward block `n`: `(f[-(nk+1)], ..., f[-(nk+k)])`.
    pub fn backward_block(&self, n: u32) -> BackwardBlock {
        let k = self.order.get() as i64;
        let first = -(n as i64 * k + 1);
        let values = (0..k).map(|i| self.term(first - i)).collect();
        BackwardBlock {
            order: self.order,
            index: n,
            values,
        }
    }

    pub fn block_properties(&self, n: u32) -> BlockProperties {
        let block = self.backward_block(n);
        let forward = self.term(self.order.get() as i64 + n as i64);
        BlockProperties::evaluate(&block, &forward)
    }
}

impl Clone for KbonacciSequence {
    fn clone(&self) -> Self {
        KbonacciSequence {
            order: self.order,
            cache: RecurrenceCache {
                window: RwLock::new(self.cache.snapshot()),
            },
        }
    }
}

impl Sequence for KbonacciSequence {
    fn order(&self) -> Order {
        self.order
    }

    fn term(&self, j: i64) -> BigInt {
        KbonacciSequence::term(self, j)
    }
}

/// Lucas numbers `L[0] = 2, L[1] = 1`, extended to negative indices.
#[derive(Debug)]
pub struct LucasSequence {
    cache: RecurrenceCache,
}

impl LucasSequence {
    pub fn new() -> Self {
        LucasSequence {
            cache: RecurrenceCache::new(vec![BigInt::from(2), BigInt::one()]),
        }
    }

    pub fn term(&self, j: i64) -> BigInt {
        self.cache.term(j)
    }
}

impl Default for LucasSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Clone for LucasSequence {
    fn clone(&self) -> Self {
        LucasSequence {
            cache: RecurrenceCache {
                window: RwLock::new(self.cache.snapshot()),
            },
        }
    }
}

impl Sequence for LucasSequence {
    fn order(&self) -> Order {
        Order::FIBONACCI
    }

    fn term(&self, j: i64) -> BigInt {
        LucasSequence::term(self, j)
    }
}

/// `f[j, k]` without memoization. Holds `k` terms at a time, so it is the
/// path to use for very large `|j|`.
pub fn iterate_term(k: Order, j: i64) -> BigInt {
    let k = k.get();
    let mut window: VecDeque<BigInt> = kbonacci_seeds(Order(k)).into();
    // window covers [lo, lo + k)
    let mut lo: i64 = 0;
    while j >= lo + k as i64 {
        let next: BigInt = window.iter().sum();
        window.pop_front();
        window.push_back(next);
        lo += 1;
    }
    while j < lo {
        let tail: BigInt = window.iter().take(k - 1).sum();
        let prev = window.pop_back().expect("window holds k terms") - tail;
        window.push_front(prev);
        lo -= 1;
    }
    window
        .remove((j - lo) as usize)
        .expect("index inside window")
}

/// `f[j, k]`, checking the order.
pub fn term(k: usize, j: i64) -> Result<BigInt> {
    Ok(iterate_term(Order::new(k)?, j))
}

/// `f[j, k]` for `j_lo..=j_hi`.
pub fn term_range(k: usize, j_lo: i64, j_hi: i64) -> Result<Vec<BigInt>> {
    KbonacciSequence::of_order(k)?.range(j_lo, j_hi)
}

/// `L[j]`.
pub fn lucas_term(j: i64) -> BigInt {
    LucasSequence::new().term(j)
}

/// The two closed-form bands stated for the forward sequence:
///
/// * `2^(j-k)` for `k <= j <= 2k-1`
/// * `2^(j-k) - (2^(j-2k+1) - 1)` for `2k <= j <= 3k-2`
///
/// Returns `None` outside both bands. The second band only agrees with the
/// recurrence for `j <= 2k+1`; see `tests/sequence.rs`.
pub fn closed_form_band(k: Order, j: i64) -> Option<BigInt> {
    let k = k.get() as i64;
    let pow2 = |e: i64| BigInt::one() << (e as usize);
    if (k..=2 * k - 1).contains(&j) {
        Some(pow2(j - k))
    } else if (2 * k..=3 * k - 2).contains(&j) {
        Some(pow2(j - k) - (pow2(j - 2 * k + 1) - BigInt::one()))
    } else {
        None
    }
}

/// `k` consecutive backward terms starting at index `-(nk+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardBlock {
    pub order: Order,
    pub index: u32,
    pub values: Vec<BigInt>,
}

impl BackwardBlock {
    /// Index of `values[0]`.
    pub fn first_index(&self) -> i64 {
        -(self.index as i64 * self.order.get() as i64 + 1)
    }

    fn nonzero_prefix(&self) -> &[BigInt] {
        let len = self
            .values
            .iter()
            .rposition(|v| !v.is_zero())
            .map_or(0, |p| p + 1);
        &self.values[..len]
    }
}

/// Per-claim outcome of the structural observations on a backward block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockProperties {
    /// Entries up to the last nonzero are nonzero and alternate `+, -, +, ...`.
    pub alternating_signs: bool,
    pub zero_sum: bool,
    /// `f[k+n] == f[-(nk+1)]`.
    pub leader_matches_forward: bool,
    /// `f[-(nk+1)] == 2^n`.
    pub leader_is_power_of_two: bool,
    /// Last nonzero entry is `1` or `-1`.
    pub last_nonzero_unit: bool,
    /// Second-last nonzero entry has absolute value `2n + 1`.
    pub second_last_odd: bool,
    /// Every entry before the second-last nonzero is even.
    pub interior_even: bool,
    #[serde(serialize_with = "crate::serialize::opt_decimal")]
    pub last_nonzero: Option<BigInt>,
    #[serde(serialize_with = "crate::serialize::opt_decimal")]
    pub second_last_nonzero: Option<BigInt>,
}

impl BlockProperties {
    fn evaluate(block: &BackwardBlock, forward_leader: &BigInt) -> Self {
        let n = block.index;
        let prefix = block.nonzero_prefix();
        let alternating_signs = !prefix.is_empty()
            && prefix.iter().enumerate().all(|(i, v)| {
                if i % 2 == 0 {
                    v.is_positive()
                } else {
                    v.is_negative()
                }
            });
        let zero_sum = block.values.iter().sum::<BigInt>().is_zero();
        let leader = &block.values[0];
        let leader_matches_forward = leader == forward_leader;
        let leader_is_power_of_two = *leader == (BigInt::one() << n as usize);

        let nonzero: Vec<&BigInt> = block.values.iter().filter(|v| !v.is_zero()).collect();
        let last_nonzero = nonzero.last().map(|v| (*v).clone());
        let second_last_nonzero = nonzero.len().checked_sub(2).map(|i| nonzero[i].clone());
        let last_nonzero_unit = last_nonzero.as_ref().is_some_and(|v| v.abs().is_one());
        let second_last_odd = second_last_nonzero
            .as_ref()
            .is_some_and(|v| v.abs() == BigInt::from(2 * n as u64 + 1));
        let interior_even = match prefix.len().checked_sub(2) {
            Some(cut) => prefix[..cut].iter().all(|v| v.is_even()),
            None => true,
        };

        BlockProperties {
            alternating_signs,
            zero_sum,
            leader_matches_forward,
            leader_is_power_of_two,
            last_nonzero_unit,
            second_last_odd,
            interior_even,
            last_nonzero,
            second_last_nonzero,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.alternating_signs
            && self.zero_sum
            && self.leader_matches_forward
            && self.leader_is_power_of_two
            && self.last_nonzero_unit
            && self.second_last_odd
            && self.interior_even
    }
}

/// Backward block `n` of order `k`.
pub fn backward_block(k: usize, n: u32) -> Result<BackwardBlock> {
    Ok(KbonacciSequence::of_order(k)?.backward_block(n))
}

pub fn block_properties(k: usize, n: u32) -> Result<BlockProperties> {
    Ok(KbonacciSequence::of_order(k)?.block_properties(n))
}
