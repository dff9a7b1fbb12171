use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::{Case, CheckerId, Counterexample, SideValue, Status};
use crate::kbx::{KbonacciMatrices, LucasMatrices};
use crate::matrix::SquareMatrix;
use crate::sequence::Order;

/// Where the `F` and `L` values of one level come from.
trait Source {
    fn f(&self, j: i64) -> SquareMatrix;
    fn l(&self, j: i64) -> SquareMatrix;
}

/// Values from the recursive constructors (`r >= 1`) or the sequences
/// themselves as `1 x 1` matrices (`r = 0`).
struct Builders {
    r: u32,
    f: KbonacciMatrices,
    lucas: LucasMatrices,
    f_memo: RefCell<HashMap<i64, SquareMatrix>>,
    l_memo: RefCell<HashMap<i64, SquareMatrix>>,
}

impl Builders {
    fn new(k: Order, r: u32) -> Self {
        Builders {
            r,
            f: KbonacciMatrices::new(k),
            lucas: LucasMatrices::new(),
            f_memo: RefCell::default(),
            l_memo: RefCell::default(),
        }
    }
}

impl Source for Builders {
    fn f(&self, j: i64) -> SquareMatrix {
        self.f_memo
            .borrow_mut()
            .entry(j)
            .or_insert_with(|| {
                if self.r == 0 {
                    SquareMatrix::scalar(self.f.sequence().term(j))
                } else {
                    self.f.higher(self.r, j).expect("level checked")
                }
            })
            .clone()
    }

    fn l(&self, j: i64) -> SquareMatrix {
        self.l_memo
            .borrow_mut()
            .entry(j)
            .or_insert_with(|| {
                if self.r == 0 {
                    SquareMatrix::scalar(self.lucas.sequence().term(j))
                } else {
                    self.lucas.matrix(self.r, j).expect("level checked")
                }
            })
            .clone()
    }
}

/// Second oracle for the order-2 level: `F[j] = Q^j` and
/// `L[j] = Q^(j-1) + Q^(j+1)`, with negative powers through
/// `Q^-1 = [[0, 1], [1, -1]]`.
struct QPolynomial {
    q: SquareMatrix,
    q_inv: SquareMatrix,
}

impl QPolynomial {
    fn new() -> Self {
        QPolynomial {
            q: SquareMatrix::from_i64([[1, 1], [1, 0]]),
            q_inv: SquareMatrix::from_i64([[0, 1], [1, -1]]),
        }
    }

    fn power(&self, j: i64) -> SquareMatrix {
        if j >= 0 {
            self.q.pow(j as u64)
        } else {
            self.q_inv.pow(j.unsigned_abs())
        }
    }
}

impl Source for QPolynomial {
    fn f(&self, j: i64) -> SquareMatrix {
        self.power(j)
    }

    fn l(&self, j: i64) -> SquareMatrix {
        &self.power(j - 1) + &self.power(j + 1)
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn pow_of(base: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn sum(dim: usize, items: impl IntoIterator<Item = SquareMatrix>) -> SquareMatrix {
    items
        .into_iter()
        .fold(SquareMatrix::zero(dim), |acc, m| &acc + &m)
}

/// Collects cases for one checker at one level.
struct Recorder {
    checker: CheckerId,
    k: usize,
    r: u32,
    dim: usize,
    cases: Vec<Case>,
}

impl Recorder {
    fn new(checker: CheckerId, k: usize, r: u32) -> Self {
        Recorder {
            checker,
            k,
            r,
            dim: if r == 0 { 1 } else { k.pow(r) },
            cases: Vec::new(),
        }
    }

    fn params(&self, reading: &str, indices: &[(&str, i64)]) -> BTreeMap<String, String> {
        let mut params = BTreeMap::new();
        params.insert("k".to_string(), self.k.to_string());
        params.insert("r".to_string(), self.r.to_string());
        params.insert("reading".to_string(), reading.to_string());
        for (name, v) in indices {
            params.insert(name.to_string(), v.to_string());
        }
        params
    }

    fn id(&self, reading: &str, indices: &[(&str, i64)]) -> String {
        let mut id = format!("{}[{}] k={} r={}", self.checker, reading, self.k, self.r);
        for (name, v) in indices {
            id.push_str(&format!(" {name}={v}"));
        }
        id
    }

    fn base_case(&self, reading: &'static str, indices: &[(&str, i64)], status: Status) -> Case {
        Case {
            id: self.id(reading, indices),
            params: self.params(reading, indices),
            status,
            counterexample: None,
            expected: false,
            reason: None,
            checker: self.checker,
            reading,
            k: self.k,
            r: self.r,
            indices: indices.iter().map(|&(_, v)| v).collect(),
        }
    }

    /// Compares two independently evaluated sides. Equal sides get
    /// `when_equal`; anything but `holds` carries both sides.
    fn compare(
        &mut self,
        reading: &'static str,
        indices: &[(&str, i64)],
        lhs: SquareMatrix,
        rhs: SquareMatrix,
        when_equal: Status,
    ) {
        let status = if lhs == rhs {
            when_equal
        } else {
            Status::Fails
        };
        let mut case = self.base_case(reading, indices, status);
        if status != Status::Holds {
            case.counterexample = Some(Counterexample {
                params: case.params.clone(),
                lhs: Some(SideValue::of(&lhs, self.r)),
                rhs: Some(SideValue::of(&rhs, self.r)),
            });
        }
        self.cases.push(case);
    }

    fn holds(
        &mut self,
        reading: &'static str,
        indices: &[(&str, i64)],
        lhs: SquareMatrix,
        rhs: SquareMatrix,
    ) {
        self.compare(reading, indices, lhs, rhs, Status::Holds);
    }

    fn skip(&mut self, reading: &'static str, indices: &[(&str, i64)], reason: &str) {
        let mut case = self.base_case(reading, indices, Status::Skipped);
        case.counterexample = Some(Counterexample {
            params: case.params.clone(),
            lhs: None,
            rhs: None,
        });
        case.reason = Some(reason.to_string());
        self.cases.push(case);
    }

    fn zero(&self) -> SquareMatrix {
        SquareMatrix::zero(self.dim)
    }

    fn scalar_times_identity(&self, c: BigInt) -> SquareMatrix {
        SquareMatrix::identity(self.dim).scale(&c)
    }
}

/// Both evaluation sources for one `(k, r)` level.
pub(super) struct LevelContext {
    k: Order,
    r: u32,
    builders: Builders,
}

impl LevelContext {
    pub(super) fn new(k: Order, r: u32) -> Self {
        LevelContext {
            k,
            r,
            builders: Builders::new(k, r),
        }
    }

    pub(super) fn evaluate(&self, checker: CheckerId, bound: i64) -> Vec<Case> {
        let k = self.k.get();
        let r = self.r;
        if checker.fibonacci_only() && k != 2 {
            return Vec::new();
        }
        let mut rec = Recorder::new(checker, k, r);
        let src = &self.builders;
        match checker {
            CheckerId::SumFormula => sum_formula(&mut rec, src, bound),
            CheckerId::DoubleShift => double_shift(&mut rec, src, bound),
            CheckerId::Geometric => geometric(&mut rec, src, bound),
            CheckerId::StridedSum => strided_sum(&mut rec, src, bound),
            CheckerId::KStride => k_stride(&mut rec, src, bound),
            CheckerId::CongruenceSum => congruence_sum(&mut rec, src, bound),
            CheckerId::SquareConvolution => square_convolution(&mut rec, src, bound),
            CheckerId::PowerExpansion => power_expansion(&mut rec, src, bound),
            CheckerId::QPower => q_power(&mut rec, &self.builders.f, bound),
            _ => {
                fibonacci_lucas(&mut rec, src, Oracle::Builders, bound);
                if r == 1 {
                    fibonacci_lucas(&mut rec, &QPolynomial::new(), Oracle::QPolynomial, bound);
                }
            }
        }
        rec.cases
    }
}

/// Evaluates one checker at one level. `r = 0` is the scalar statement;
/// the Fibonacci/Lucas checkers return nothing unless `k = 2`.
pub fn evaluate(checker: CheckerId, k: usize, r: u32, bound: i64) -> Vec<Case> {
    match Order::new(k) {
        Ok(order) => LevelContext::new(order, r).evaluate(checker, bound),
        Err(_) => Vec::new(),
    }
}

// (k-1) Σ_{j<n} X[j] = X[n+k-1] - X[k-1] - Σ_{i=1}^{k-2} i X[n+k-2-i]
fn sum_formula(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    for n in 1..=bound {
        let idx = [("n", n)];
        let lhs = sum(rec.dim, (0..n).map(|j| src.f(j))).scale(&int(k - 1));
        let weighted = sum(
            rec.dim,
            (1..=k - 2).map(|i| src.f(n + k - 2 - i).scale(&int(i))),
        );
        let rhs = &(&src.f(n + k - 1) - &src.f(k - 1)) - &weighted;

        let modulus = int(k - 1);
        let residues = SquareMatrix::from_fn(rhs.dim(), |a, b| rhs.get(a, b) % &modulus);
        rec.holds("divisible", &idx, residues, rec.zero());

        if rec.r >= 1 {
            let constant = sum(
                rec.dim,
                (1..=k - 2).map(|i| src.f(k - 2 - i).scale(&int(i))),
            );
            rec.compare(
                "corrected",
                &idx,
                lhs.clone(),
                &rhs + &constant,
                Status::HoldsCorrected,
            );
        }
        rec.holds("stated", &idx, lhs, rhs);
    }
}

// X[j+k-1] = 2 X[j+k-2] - X[j-2], stated for j >= 2
fn double_shift(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    for j in -3..=bound {
        let reading = if j >= 2 { "stated" } else { "probe" };
        let lhs = src.f(j + k - 1);
        let rhs = &src.f(j + k - 2).scale(&int(2)) - &src.f(j - 2);
        rec.holds(reading, &[("j", j)], lhs, rhs);
    }
}

// Σ_{j=1}^n X[j-1] / 2^j = 1 - X[k+n] / 2^n, times 2^n
fn geometric(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    for n in 1..=bound {
        let idx = [("n", n)];
        let two_n = pow_of(2, n as u32);
        let lhs = sum(
            rec.dim,
            (1..=n).map(|j| src.f(j - 1).scale(&pow_of(2, (n - j) as u32))),
        );
        let tail = src.f(k + n);
        if rec.r == 0 {
            rec.holds("stated", &idx, lhs, &SquareMatrix::scalar(two_n) - &tail);
            continue;
        }
        let identity = rec.scalar_times_identity(two_n.clone());
        let ones = SquareMatrix::ones(rec.dim).scale(&two_n);
        let anchor = src.f(k).scale(&two_n);
        rec.holds("literal-identity", &idx, lhs.clone(), &identity - &tail);
        rec.holds("literal-ones", &idx, lhs.clone(), &ones - &tail);
        rec.compare(
            "corrected",
            &idx,
            lhs,
            &anchor - &tail,
            Status::HoldsCorrected,
        );
    }
}

// Σ_{n=0}^m X[kn+j+1] = Σ_{n=-mk}^{k-1} X[j-n]
fn strided_sum(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    for j in 0..=bound {
        for m in 0..=bound {
            let lhs = sum(rec.dim, (0..=m).map(|n| src.f(k * n + j + 1)));
            let rhs = sum(rec.dim, (-m * k..=k - 1).map(|n| src.f(j - n)));
            rec.holds("stated", &[("j", j), ("m", m)], lhs, rhs);
        }
    }
}

// Σ_{n=1}^m X[kn] = Σ_{n=k(1-m)}^{k-1} X[k-1-n]
fn k_stride(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    for m in 1..=bound {
        let lhs = sum(rec.dim, (1..=m).map(|n| src.f(k * n)));
        let rhs = sum(rec.dim, (k * (1 - m)..=k - 1).map(|n| src.f(k - 1 - n)));
        rec.holds("stated", &[("m", m)], lhs, rhs);
    }
}

// X[km] - X[0] = Σ_{n=k(1-m), n ≢ 0 (mod k-1)}^{k-1} X[k-1-n]
fn congruence_sum(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    for m in 1..=bound {
        let lhs = &src.f(k * m) - &src.f(0);
        let rhs = sum(
            rec.dim,
            (k * (1 - m)..=k - 1)
                .filter(|n| n.rem_euclid(k - 1) != 0)
                .map(|n| src.f(k - 1 - n)),
        );
        rec.holds("stated", &[("m", m)], lhs, rhs);
    }
}

// Σ_{j=0}^n X[j]^2 = X[n+1] X[n] - Σ_{j=2}^{k-1} Σ_{i=0}^n X[i] X[i-j]
fn square_convolution(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    let cross = |i: i64, j: i64| (i, i - j);
    for n in 0..=bound {
        let idx = [("n", n)];
        let pairs: Vec<(i64, i64)> = (2..=k - 1)
            .flat_map(|j| (0..=n).map(move |i| cross(i, j)))
            .collect();

        let lhs = sum(rec.dim, (0..=n).map(|j| &src.f(j) * &src.f(j)));
        let rhs = &(&src.f(n + 1) * &src.f(n))
            - &sum(rec.dim, pairs.iter().map(|&(a, b)| &src.f(a) * &src.f(b)));

        if rec.r >= 1 {
            let had = |a: i64, b: i64| src.f(a).checked_hadamard(&src.f(b)).expect("same level");
            let lhs_e = sum(rec.dim, (0..=n).map(|j| had(j, j)));
            let rhs_e = &(&had(n + 1, n) - &sum(rec.dim, pairs.iter().map(|&(a, b)| had(a, b))))
                - &had(0, -1);
            rec.compare("corrected", &idx, lhs_e, rhs_e, Status::HoldsCorrected);
        }
        rec.holds("stated", &idx, lhs, rhs);
    }
}

// X[j+n] = 2^n Σ_{i=1}^{k-n} X[j-i] + Σ_{i=0}^{n-1} (2^n - 2^i) X[j-k+n-1-i]
fn power_expansion(rec: &mut Recorder, src: &impl Source, bound: i64) {
    let k = rec.k as i64;
    for n in 0..=k {
        if n < 1 || n > k - 1 {
            rec.skip(
                "stated",
                &[("n", n)],
                "n must lie in [1, k-1] for the leading sum to be non-empty",
            );
            continue;
        }
        let two_n = pow_of(2, n as u32);
        for j in 0..=bound {
            let lhs = src.f(j + n);
            let lead = sum(rec.dim, (1..=k - n).map(|i| src.f(j - i))).scale(&two_n);
            let rest = sum(
                rec.dim,
                (0..n).map(|i| {
                    src.f(j - k + n - 1 - i)
                        .scale(&(&two_n - pow_of(2, i as u32)))
                }),
            );
            rec.holds("stated", &[("n", n), ("j", j)], lhs, &lead + &rest);
        }
    }
}

// F[j] = F[1] Q^(j-1)
fn q_power(rec: &mut Recorder, f: &KbonacciMatrices, bound: i64) {
    if rec.r == 0 {
        return;
    }
    for j in 1..=bound {
        let lhs = f.higher(rec.r, j).expect("level checked");
        let rhs = f.via_q_power(rec.r, j).expect("j >= 1");
        rec.holds("stated", &[("j", j)], lhs, rhs);
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Oracle {
    Builders,
    QPolynomial,
}

impl Oracle {
    fn reading(self, base: &'static str) -> &'static str {
        match (self, base) {
            (Oracle::Builders, b) => b,
            (Oracle::QPolynomial, "i") => "q-polynomial-i",
            (Oracle::QPolynomial, "ii") => "q-polynomial-ii",
            (Oracle::QPolynomial, _) => "q-polynomial",
        }
    }
}

/// Scale factor `5^e` for the parity-dependent targets.
fn five_pow(e: u32) -> BigInt {
    pow_of(5, e)
}

fn fibonacci_lucas(rec: &mut Recorder, src: &impl Source, oracle: Oracle, bound: i64) {
    let r = rec.r;
    let odd = r % 2 == 1;
    let sq = |j: i64| &src.f(j) * &src.f(j);
    match rec.checker {
        // L[s] + L[s+2] = 5 F[s+1];  F[s] + F[s+2] = L[s+1]
        CheckerId::LucasPair => {
            for s in 0..=bound {
                let idx = [("m_plus_n", s)];
                rec.holds(
                    oracle.reading("i"),
                    &idx,
                    &src.l(s) + &src.l(s + 2),
                    src.f(s + 1).scale(&int(5)),
                );
                rec.holds(
                    oracle.reading("ii"),
                    &idx,
                    &src.f(s) + &src.f(s + 2),
                    src.l(s + 1),
                );
            }
        }
        // F[m-1] F[n] + F[m] F[n+1] against F[m+n], 5^(r/2) F[m+n] or 5^((r-1)/2) L[m+n]
        CheckerId::AdditionFormula => {
            for m in 0..=bound {
                for n in 0..=bound {
                    let lhs = &(&src.f(m - 1) * &src.f(n)) + &(&src.f(m) * &src.f(n + 1));
                    let rhs = if odd {
                        src.l(m + n).scale(&five_pow((r - 1) / 2))
                    } else {
                        src.f(m + n).scale(&five_pow(r / 2))
                    };
                    rec.holds(oracle.reading("stated"), &[("m", m), ("n", n)], lhs, rhs);
                }
            }
        }
        // F[n] + L[n] = 2 F[n+1]
        CheckerId::FlDouble => {
            for n in 0..=bound {
                rec.holds(
                    oracle.reading("stated"),
                    &[("n", n)],
                    &src.f(n) + &src.l(n),
                    src.f(n + 1).scale(&int(2)),
                );
            }
        }
        // F[n+1]^2 + F[n]^2 against F[2n+1], 5^(r/2) F[2n+1] or 5^((r-1)/2) L[2n+1]
        CheckerId::SquareSum => {
            for n in 0..=bound {
                let lhs = &sq(n + 1) + &sq(n);
                let rhs = if odd {
                    src.l(2 * n + 1).scale(&five_pow((r - 1) / 2))
                } else {
                    src.f(2 * n + 1).scale(&five_pow(r / 2))
                };
                rec.holds(oracle.reading("stated"), &[("n", n)], lhs, rhs);
            }
        }
        // F[n+1]^2 - F[n]^2 against F[n+2] F[n-1], 5^(r/2) L[2n+1] or 5^((r-1)/2) F[2n+1]
        CheckerId::SquareDiff => {
            for n in 0..=bound {
                let idx = [("n", n)];
                let lhs = &sq(n + 1) - &sq(n);
                if r == 0 {
                    rec.holds("stated", &idx, lhs, &src.f(n + 2) * &src.f(n - 1));
                } else if odd {
                    let rhs = src.f(2 * n + 1).scale(&five_pow((r - 1) / 2));
                    rec.holds(oracle.reading("stated"), &idx, lhs, rhs);
                } else {
                    let target = src.l(2 * n + 1);
                    rec.compare(
                        "corrected",
                        &idx,
                        lhs.clone(),
                        target.scale(&five_pow((r - 2) / 2)),
                        Status::HoldsCorrected,
                    );
                    rec.holds("stated", &idx, lhs, target.scale(&five_pow(r / 2)));
                }
            }
        }
        // Σ_{i=1}^n F[i]^2 against F[n] F[n+1], 5^((r-1)/2)(F[2n+1] - F[1]) or 5^((r-2)/2)(L[2n+1] - L[1])
        CheckerId::SquareSeries => {
            for n in 1..=bound {
                let lhs = sum(rec.dim, (1..=n).map(sq));
                let rhs = if r == 0 {
                    &src.f(n) * &src.f(n + 1)
                } else if odd {
                    (&src.f(2 * n + 1) - &src.f(1)).scale(&five_pow((r - 1) / 2))
                } else {
                    (&src.l(2 * n + 1) - &src.l(1)).scale(&five_pow((r - 2) / 2))
                };
                rec.holds(oracle.reading("stated"), &[("n", n)], lhs, rhs);
            }
        }
        _ => unreachable!("not a Fibonacci/Lucas checker"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn statuses(cases: &[Case], reading: &str, indices: &[i64]) -> Vec<Status> {
        cases
            .iter()
            .filter(|c| c.reading == reading && c.indices == indices)
            .map(|c| c.status)
            .collect()
    }

    #[test]
    fn q_polynomial_matches_builders_at_order_two() {
        let q = QPolynomial::new();
        let b = Builders::new(Order::FIBONACCI, 1);
        for j in -8..=8 {
            assert_eq!(q.f(j), b.f(j), "F j={j}");
            assert_eq!(q.l(j), b.l(j), "L j={j}");
        }
    }

    #[test]
    fn sum_formula_examples() {
        let cases = evaluate(CheckerId::SumFormula, 3, 0, 4);
        assert_eq!(statuses(&cases, "stated", &[4]), vec![Status::Holds]);
        let cases = evaluate(CheckerId::SumFormula, 2, 0, 5);
        assert_eq!(statuses(&cases, "stated", &[5]), vec![Status::Holds]);
        let cases = evaluate(CheckerId::SumFormula, 2, 2, 3);
        assert_eq!(statuses(&cases, "stated", &[3]), vec![Status::Holds]);
    }

    #[test]
    fn geometric_literal_counterexample() {
        let cases = evaluate(CheckerId::Geometric, 2, 1, 2);
        let lit = cases
            .iter()
            .find(|c| c.reading == "literal-identity" && c.indices == [1])
            .unwrap();
        assert_eq!(lit.status, Status::Fails);
        let ce = lit.counterexample.as_ref().unwrap();
        let lhs = match ce.lhs.as_ref().unwrap() {
            SideValue::Matrix(m) => m.clone(),
            _ => panic!("matrix expected"),
        };
        let rhs = match ce.rhs.as_ref().unwrap() {
            SideValue::Matrix(m) => m.clone(),
            _ => panic!("matrix expected"),
        };
        assert_eq!(lhs.entries[0][1], "0");
        assert_eq!(rhs.entries[0][1], "-2");
        assert_eq!(
            statuses(&cases, "corrected", &[2]),
            vec![Status::HoldsCorrected]
        );
    }

    #[test]
    fn congruence_at_k2_fails_with_empty_sum() {
        let cases = evaluate(CheckerId::CongruenceSum, 2, 0, 1);
        assert_eq!(cases[0].status, Status::Fails);
        let ce = cases[0].counterexample.as_ref().unwrap();
        assert_eq!(ce.lhs, Some(SideValue::Scalar("1".into())));
        assert_eq!(ce.rhs, Some(SideValue::Scalar("0".into())));
    }

    #[test]
    fn power_expansion_skips_out_of_range() {
        let cases = evaluate(CheckerId::PowerExpansion, 3, 0, 5);
        let skipped: Vec<_> = cases
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .collect();
        assert_eq!(skipped.len(), 2);
        assert!(skipped.iter().all(|c| c.reason.is_some()));
        assert_eq!(statuses(&cases, "stated", &[2, 5]), vec![Status::Holds]);
        assert_eq!(statuses(&cases, "stated", &[1, 4]), vec![Status::Holds]);
    }

    #[test]
    fn fibonacci_checkers_need_k2() {
        assert!(evaluate(CheckerId::LucasPair, 3, 1, 4).is_empty());
        assert!(!evaluate(CheckerId::LucasPair, 2, 1, 4).is_empty());
    }

    #[test]
    fn q_power_has_no_scalar_form() {
        assert!(evaluate(CheckerId::QPower, 2, 0, 4).is_empty());
        assert!(evaluate(CheckerId::QPower, 3, 2, 4)
            .iter()
            .all(|c| c.status == Status::Holds));
    }
}
