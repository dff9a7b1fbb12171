use kbonacci::kbx::{
    build_base, build_higher, build_lucas, build_q, fast_f, fast_term, Family, MatrixSpec,
    MultiIndex,
};
use kbonacci::sequence::{lucas_term, term, Order};
use kbonacci::{BigInt, SquareMatrix};
use proptest::prelude::*;

/// `(k, r)` with `k^r <= 27`.
fn levels() -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for k in 2..=4usize {
        for r in 1..=3u32 {
            if k.pow(r) <= 27 {
                out.push((k, r));
            }
        }
    }
    out
}

/// Entry-by-entry construction: split the position into base-`k` digits and
/// add up `k + 1 - λ - μ` over the levels.
fn direct(k: usize, r: u32, j: i64, entry: impl Fn(i64) -> BigInt) -> SquareMatrix {
    let dim = k.pow(r);
    SquareMatrix::from_fn(dim, |row, col| {
        let (mut a, mut b, mut shift) = (row, col, 0i64);
        for _ in 0..r {
            let lambda = (a % k) as i64 + 1;
            let mu = (b % k) as i64 + 1;
            shift += k as i64 + 1 - lambda - mu;
            a /= k;
            b /= k;
        }
        entry(j + shift)
    })
}

#[test]
fn multi_index_formula_on_the_full_grid() {
    for (k, r) in levels() {
        for j in -6..=12 {
            let built = build_higher(k, r, j).unwrap();
            let want = direct(k, r, j, |i| term(k, i).unwrap());
            assert_eq!(built, want, "k={k} r={r} j={j}");
        }
    }
}

#[test]
fn multi_index_type_agrees_with_digits() {
    for (k, r) in levels() {
        let order = Order::new(k).unwrap();
        let m = build_higher(k, r, 3).unwrap();
        for row in 0..m.dim() {
            for col in 0..m.dim() {
                let idx = MultiIndex::from_position(order, r, row, col);
                assert_eq!(idx.position(order), (row, col));
                assert_eq!(m.get(row, col), &term(k, 3 + idx.offset(order)).unwrap());
            }
        }
    }
}

#[test]
fn shift_and_recurrence_laws() {
    for (k, r) in levels() {
        let q = build_q(Order::new(k).unwrap(), r).unwrap();
        for j in -6..=12 {
            let fj = build_higher(k, r, j).unwrap();
            assert_eq!(
                &fj * &q,
                build_higher(k, r, j + 1).unwrap(),
                "shift k={k} r={r} j={j}"
            );
            let window = (0..k as i64)
                .map(|n| build_higher(k, r, j + n).unwrap())
                .fold(SquareMatrix::zero(fj.dim()), |acc, m| &acc + &m);
            assert_eq!(
                window,
                build_higher(k, r, j + k as i64).unwrap(),
                "sum k={k} r={r} j={j}"
            );
        }
    }
}

#[test]
fn symmetry() {
    for (k, r) in levels() {
        for j in -6..=12 {
            assert!(
                build_higher(k, r, j).unwrap().is_symmetric(),
                "k={k} r={r} j={j}"
            );
        }
    }
    for r in 1..=4 {
        for j in -6..=12 {
            assert!(build_lucas(r, j).unwrap().is_symmetric(), "r={r} j={j}");
        }
    }
}

#[test]
fn lucas_matrices_follow_the_order_two_layout() {
    for r in 1..=4 {
        for j in -6..=12 {
            assert_eq!(
                build_lucas(r, j).unwrap(),
                direct(2, r, j, lucas_term),
                "r={r} j={j}"
            );
        }
    }
    assert_eq!(
        build_lucas(1, 2).unwrap(),
        SquareMatrix::from_i64([[4, 3], [3, 1]])
    );
}

#[test]
fn power_path_on_the_full_grid() {
    for (k, r) in levels() {
        for j in 1..=12 {
            assert_eq!(
                fast_f(k, r, j).unwrap(),
                build_higher(k, r, j).unwrap(),
                "k={k} r={r} j={j}"
            );
        }
    }
    assert!(fast_f(2, 1, 0).is_err());
    assert_eq!(
        fast_f(2, 1, 5).unwrap(),
        SquareMatrix::from_i64([[8, 5], [5, 3]])
    );
    assert_eq!(fast_f(3, 1, 4).unwrap(), build_base(3, 4).unwrap());
}

#[test]
fn companion_examples() {
    assert_eq!(
        build_q(Order::new(3).unwrap(), 1).unwrap(),
        SquareMatrix::from_i64([[1, 1, 0], [1, 0, 1], [1, 0, 0]])
    );
    assert_eq!(
        build_q(Order::FIBONACCI, 2).unwrap(),
        SquareMatrix::from_i64([[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    );
}

#[test]
fn matrix_spec_dispatch() {
    let spec = MatrixSpec {
        family: Family::L,
        k: Order::new(3).unwrap(),
        r: 1,
        j: 1,
    };
    assert!(spec.build().is_err());
    let spec = MatrixSpec {
        family: Family::Q,
        k: Order::new(3).unwrap(),
        r: 2,
        j: 99,
    };
    assert_eq!(spec.build().unwrap().dim(), 9);
    assert_eq!(spec.dim(), 9);
}

proptest! {
    #[test]
    fn fast_term_matches_iteration(k in 2usize..=7, j in 0i64..3000) {
        prop_assert_eq!(fast_term(Order::new(k).unwrap(), j).unwrap(), term(k, j).unwrap());
    }

    #[test]
    fn shift_law_far_out(k in 2usize..=4, j in -40i64..40) {
        let q = build_q(Order::new(k).unwrap(), 1).unwrap();
        let fj = build_base(k, j).unwrap();
        prop_assert_eq!(&fj * &q, build_base(k, j + 1).unwrap());
    }
}
