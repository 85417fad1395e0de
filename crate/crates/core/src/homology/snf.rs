//! Smith normal form over the integers.
//!
//! The reduction runs on `i64` with checked arithmetic and restarts on
//! `BigInt` if any intermediate value overflows. Pivots are always the entry of
//! smallest absolute value, which keeps coefficient growth low.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

trait SnfScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    fn divides(&self, n: &Self) -> bool;
    /// `a - q * b`
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn add(a: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl SnfScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn quot(&self, d: &Self) -> Self {
        self.wrapping_div(*d)
    }
    fn divides(&self, n: &Self) -> bool {
        n.wrapping_rem(*self) == 0
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(q.checked_mul(*b)?)
    }
    fn add(a: &Self, b: &Self) -> Option<Self> {
        a.checked_add(*b)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, n: &Self) -> bool {
        n.is_multiple_of(self)
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn add(a: &Self, b: &Self) -> Option<Self> {
        Some(a + b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Result of [`smith_normal_form`]: `left * A * right = D` with `D` diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    /// `min(rows, cols)` entries `d1 | d2 | ...`, nonzero ones first.
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !Zero::is_zero(*d)).count()
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    left: Option<Vec<Vec<T>>>,
    right: Option<Vec<Vec<T>>>,
}

fn identity<T: SnfScalar>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

impl<T: SnfScalar> Work<T> {
    fn rows(&self) -> usize {
        self.a.len()
    }
    fn cols(&self) -> usize {
        self.a.first().map_or(0, |r| r.len())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.left {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.right {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, q: &T, k: usize) -> Option<()> {
        for mat in std::iter::once(&mut self.a).chain(self.left.as_mut()) {
            for c in 0..mat[i].len() {
                if !mat[k][c].is_zero() {
                    mat[i][c] = T::sub_mul(&mat[i][c], q, &mat[k][c])?;
                }
            }
        }
        Some(())
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, q: &T, k: usize) -> Option<()> {
        for mat in std::iter::once(&mut self.a).chain(self.right.as_mut()) {
            for row in mat.iter_mut() {
                if !row[k].is_zero() {
                    row[j] = T::sub_mul(&row[j], q, &row[k])?;
                }
            }
        }
        Some(())
    }

    /// row_i += row_k
    fn row_add(&mut self, i: usize, k: usize) -> Option<()> {
        for mat in std::iter::once(&mut self.a).chain(self.left.as_mut()) {
            for c in 0..mat[i].len() {
                mat[i][c] = T::add(&mat[i][c], &mat[k][c])?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for mat in std::iter::once(&mut self.a).chain(self.left.as_mut()) {
            for x in mat[i].iter_mut() {
                *x = x.neg()?;
            }
        }
        Some(())
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(&self.a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self, chain: bool) -> Option<()> {
        let n = self.rows().min(self.cols());
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows() {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].quot(&self.a[t][t]);
                        self.row_sub(i, &q, t)?;
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].quot(&self.a[t][t]);
                        self.col_sub(j, &q, t)?;
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if clean {
                    break;
                }
                // A nonzero remainder is smaller than the pivot: bring it in.
                let mut best = (t, t);
                for i in t + 1..self.rows() {
                    if !self.a[i][t].is_zero() && self.a[i][t].abs_lt(&self.a[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.a[t][j].is_zero() && self.a[t][j].abs_lt(&self.a[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
            }
            if chain {
                let pivot = self.a[t][t].clone();
                let offender = (t + 1..self.rows()).find(|&i| (t + 1..self.cols()).any(|j| !pivot.divides(&self.a[i][j])));
                if let Some(i) = offender {
                    self.row_add(t, i)?;
                    continue;
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Some(())
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows().min(self.cols())).map(|i| self.a[i][i].to_big()).collect()
    }
}

fn run_on<T: SnfScalar>(a: Vec<Vec<T>>, transforms: bool, chain: bool) -> Option<Work<T>> {
    let (r, c) = (a.len(), a.first().map_or(0, |row| row.len()));
    let mut w = Work {
        a,
        left: transforms.then(|| identity(r)),
        right: transforms.then(|| identity(c)),
    };
    w.run(chain)?;
    Some(w)
}

fn to_big_matrix<T: SnfScalar>(m: Vec<Vec<T>>) -> Vec<Vec<BigInt>> {
    m.into_iter().map(|r| r.into_iter().map(|x| x.to_big()).collect()).collect()
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Result<SnfResult> {
    let ncols = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::ShapeMismatch("ragged integer matrix".into()));
    }
    let small: Option<Vec<Vec<i64>>> =
        a.iter().map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect()).collect();
    if let Some(w) = small.and_then(|m| run_on(m, true, true)) {
        return Ok(SnfResult {
            diagonal: w.diagonal(),
            left: to_big_matrix(w.left.expect("transforms requested")),
            right: to_big_matrix(w.right.expect("transforms requested")),
        });
    }
    let w = run_on(a.to_vec(), true, true).expect("bigint arithmetic does not overflow");
    Ok(SnfResult {
        diagonal: w.diagonal(),
        left: w.left.expect("transforms requested"),
        right: w.right.expect("transforms requested"),
    })
}

/// Nonzero invariant factors of a dense `i64` matrix, without transforms.
/// With `chain == false` the diagonal is only rank-revealing (no divisibility
/// fix-up), which is enough for rank computations.
pub(crate) fn dense_invariant_factors(a: Vec<Vec<i64>>, chain: bool) -> Vec<BigInt> {
    let nonzero = |d: Vec<BigInt>| d.into_iter().filter(|x| !Zero::is_zero(x)).collect::<Vec<_>>();
    match run_on(a.clone(), false, chain) {
        Some(w) => nonzero(w.diagonal()),
        None => {
            let big: Vec<Vec<BigInt>> = a.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            nonzero(run_on(big, false, chain).expect("bigint arithmetic does not overflow").diagonal())
        }
    }
}
