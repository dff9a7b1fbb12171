use kbonacci::sequence::{
    backward_block, block_properties, closed_form_band, iterate_term, term, term_range,
    KbonacciSequence, LucasSequence, Order,
};
use kbonacci::BigInt;
use proptest::prelude::*;

/// Independent oracle: fills an `i128` table over `[-span, span]` by running
/// the forward recurrence up and solving it for the earliest term going down.
struct Table {
    span: i64,
    values: Vec<i128>,
}

impl Table {
    fn new(k: usize, span: i64) -> Self {
        let size = (2 * span + 1) as usize;
        let mut values = vec![0i128; size];
        let at = |j: i64| (j + span) as usize;
        values[at(k as i64 - 1)] = 1;
        for j in k as i64..=span {
            values[at(j)] = (1..=k as i64).map(|i| values[at(j - i)]).sum();
        }
        for j in (-span..0).rev() {
            // f[j + k] = f[j] + f[j+1] + ... + f[j+k-1]
            let rest: i128 = (1..k as i64).map(|i| values[at(j + i)]).sum();
            values[at(j)] = values[at(j + k as i64)] - rest;
        }
        Table { span, values }
    }

    fn get(&self, j: i64) -> BigInt {
        BigInt::from(self.values[(j + self.span) as usize])
    }
}

fn order(k: usize) -> Order {
    Order::new(k).unwrap()
}

#[test]
fn matches_oracle_for_k_2_to_8() {
    for k in 2..=8 {
        let table = Table::new(k, 60);
        let seq = KbonacciSequence::new(order(k));
        for j in -60..=60 {
            assert_eq!(seq.term(j), table.get(j), "k={k} j={j}");
            assert_eq!(iterate_term(order(k), j), table.get(j), "k={k} j={j}");
        }
    }
}

#[test]
fn documented_values() {
    assert_eq!(term(2, 10).unwrap(), 55.into());
    assert_eq!(term(2, -1).unwrap(), 1.into());
    assert_eq!(term(2, -6).unwrap(), (-8).into());
    assert_eq!(term(3, 6).unwrap(), 7.into());
    assert_eq!(term(3, -5).unwrap(), (-3).into());
    let ints: Vec<i64> = vec![1, -1, 0, 0, 0, 2, -3, 1, 0, 0];
    let got = term_range(5, -10, -1).unwrap();
    let want: Vec<BigInt> = ints.iter().rev().map(|&v| v.into()).collect();
    assert_eq!(got, want);
    assert!(term(1, 0).is_err());
    assert!(term_range(2, 3, 1).is_err());
}

#[test]
fn lucas_seeds_and_negatives() {
    let l = LucasSequence::new();
    let want = [2, 1, 3, 4, 7, 11, 18, 29];
    for (j, w) in want.iter().enumerate() {
        assert_eq!(l.term(j as i64), (*w).into());
    }
    // L[-n] = (-1)^n L[n]
    for n in 0..30i64 {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(l.term(-n), l.term(n) * sign);
    }
}

#[test]
fn first_band_holds_for_every_k() {
    for k in 2..=8usize {
        for j in k as i64..=2 * k as i64 - 1 {
            assert_eq!(
                closed_form_band(order(k), j).unwrap(),
                term(k, j).unwrap(),
                "k={k} j={j}"
            );
        }
    }
}

#[test]
fn second_band_agrees_only_on_its_first_two_indices() {
    for k in 2..=8usize {
        let k_i = k as i64;
        for j in 2 * k_i..=(2 * k_i + 1).min(3 * k_i - 2) {
            assert_eq!(
                closed_form_band(order(k), j).unwrap(),
                term(k, j).unwrap(),
                "k={k} j={j}"
            );
        }
    }
    // from j = 2k + 2 on the formula overshoots
    assert_eq!(term(4, 10).unwrap(), 56.into());
    assert_eq!(closed_form_band(order(4), 10).unwrap(), 57.into());
    for k in 4..=8usize {
        let j = 2 * k as i64 + 2;
        assert_ne!(
            closed_form_band(order(k), j).unwrap(),
            term(k, j).unwrap(),
            "k={k}"
        );
    }
    assert_eq!(closed_form_band(order(3), 9), None);
}

#[test]
fn leader_identity_range() {
    for k in 2..=8usize {
        let seq = KbonacciSequence::new(order(k));
        for n in 0..k as u32 {
            let p = block_properties(k, n).unwrap();
            assert!(
                p.leader_matches_forward && p.leader_is_power_of_two,
                "k={k} n={n}"
            );
        }
        // the identity also survives n = k exactly when k is odd
        let at_k = seq.block_properties(k as u32);
        assert_eq!(at_k.leader_matches_forward, k % 2 == 1, "k={k}");
        assert!(!at_k.leader_is_power_of_two);
    }
    // k=3, n=3: both sides are 7, not 2^3
    let b = backward_block(3, 3).unwrap();
    assert_eq!(b.values[0], 7.into());
    assert_eq!(term(3, 6).unwrap(), 7.into());
    // first failure overall
    assert_eq!(term(2, 4).unwrap(), 3.into());
    assert_eq!(term(2, -5).unwrap(), 5.into());
}

#[test]
fn paper_blocks_for_k5() {
    let rows: [[i64; 5]; 4] = [
        [1, -1, 0, 0, 0],
        [2, -3, 1, 0, 0],
        [4, -8, 5, -1, 0],
        [8, -20, 18, -7, 1],
    ];
    for (n, row) in rows.iter().enumerate() {
        let b = backward_block(5, n as u32).unwrap();
        let want: Vec<BigInt> = row.iter().map(|&v| v.into()).collect();
        assert_eq!(b.values, want, "n={n}");
        assert_eq!(b.first_index(), -(5 * n as i64 + 1));
    }
}

proptest! {
    #[test]
    fn recurrence_holds_everywhere(k in 2usize..=8, j in -150i64..150) {
        let seq = KbonacciSequence::new(order(k));
        let window: BigInt = (0..k as i64).map(|i| seq.term(j + i)).sum();
        prop_assert_eq!(window, seq.term(j + k as i64));
    }

    #[test]
    fn cache_and_streaming_agree(k in 2usize..=6, js in prop::collection::vec(-120i64..120, 1..20)) {
        let seq = KbonacciSequence::new(order(k));
        for &j in &js {
            prop_assert_eq!(seq.term(j), iterate_term(order(k), j));
        }
    }

    #[test]
    fn range_is_termwise(k in 2usize..=6, lo in -50i64..50, len in 0i64..40) {
        let seq = KbonacciSequence::new(order(k));
        let got = seq.range(lo, lo + len).unwrap();
        let want: Vec<BigInt> = (lo..=lo + len).map(|j| iterate_term(order(k), j)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn block_properties_inside_domain(k in 3usize..=9, n_raw in 1u32..8) {
        let n = 1 + n_raw % (k as u32 - 2);
        let p = block_properties(k, n).unwrap();
        prop_assert!(p.alternating_signs);
        prop_assert!(p.zero_sum);
        prop_assert!(p.leader_is_power_of_two);
        prop_assert!(p.last_nonzero_unit);
        prop_assert!(p.second_last_odd);
        prop_assert!(p.interior_even);
        let sign = if n % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(p.last_nonzero.unwrap(), BigInt::from(sign));
    }

    #[test]
    fn blocks_sum_to_zero_before_the_wrap(k in 2usize..=9, n_raw in 0u32..9) {
        // the recurrence forces every full block n <= k-2 to sum to zero
        let n = n_raw % (k as u32 - 1);
        let b = backward_block(k, n).unwrap();
        let s: BigInt = b.values.iter().sum();
        prop_assert_eq!(s, BigInt::from(0));
    }
}
