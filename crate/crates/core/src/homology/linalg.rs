//! Exact linear algebra over a [`Field`]: echelon forms, rank, linear
//! solves, and a sparse column-reduction rank for large boundary matrices.

use crate::error::{Error, Result};
use crate::homology::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<E> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<E>>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn zeros(nrows: usize, ncols: usize, zero: E) -> Self {
        DenseMatrix { nrows, ncols, rows: vec![vec![zero; ncols]; nrows] }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch(format!("row of length {} in a {ncols}-column matrix", r.len())));
        }
        Ok(DenseMatrix { nrows: rows.len(), ncols, rows })
    }

    /// Builds a matrix whose columns are the given vectors of length `nrows`.
    pub fn from_columns(nrows: usize, cols: &[Vec<E>], zero: E) -> Self {
        let mut m = Self::zeros(nrows, cols.len(), zero);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.rows[i][j] = x.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.rows[i][j] = x;
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> Vec<E> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect()
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order. Pivots are chosen as the first nonzero entry, so the
/// result is independent of scheduling.
pub fn reduce_rows<F: Field>(f: &F, m: &mut DenseMatrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.ncols {
        if r == m.nrows {
            break;
        }
        let Some(p) = (r..m.nrows).find(|&i| !f.is_zero(&m.rows[i][c])) else {
            continue;
        };
        m.rows.swap(r, p);
        let inv = f.inv(&m.rows[r][c]);
        for x in m.rows[r].iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m.rows[r].clone();
        for i in 0..m.nrows {
            if i == r || f.is_zero(&m.rows[i][c]) {
                continue;
            }
            let factor = m.rows[i][c].clone();
            for (x, p) in m.rows[i].iter_mut().zip(&pivot_row).skip(c) {
                *x = f.sub(x, &f.mul(&factor, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_dense<F: Field>(f: &F, mut m: DenseMatrix<F::Elem>) -> usize {
    reduce_rows(f, &mut m).len()
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<E> {
    /// The solution with all free variables set to zero, if the system is consistent.
    pub solution: Option<Vec<E>>,
    /// A basis of `ker A`, one vector per free variable.
    pub kernel: Vec<Vec<E>>,
}

/// Solves `A x = b`. An inconsistent system yields `solution: None`.
pub fn solve_linear<F: Field>(f: &F, a: &DenseMatrix<F::Elem>, b: &[F::Elem]) -> Result<Solution<F::Elem>> {
    if b.len() != a.nrows {
        return Err(Error::ShapeMismatch(format!("{} right-hand entries for {} rows", b.len(), a.nrows)));
    }
    let n = a.ncols;
    let mut aug = DenseMatrix::zeros(a.nrows, n + 1, f.zero());
    for i in 0..a.nrows {
        aug.rows[i][..n].clone_from_slice(&a.rows[i]);
        aug.rows[i][n] = b[i].clone();
    }
    let pivots = reduce_rows(f, &mut aug);
    let consistent = pivots.last() != Some(&n);
    let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < n).collect();

    let solution = consistent.then(|| {
        let mut x = vec![f.zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.rows[r][n].clone();
        }
        x
    });

    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(&aug.rows[r][free]);
            }
            v
        })
        .collect();
    Ok(Solution { solution, kernel })
}

/// Rank of a sparse matrix given by columns of `(row, value)` pairs with
/// strictly increasing rows, by column reduction on the lowest nonzero row.
pub fn rank_sparse<F: Field>(f: &F, nrows: usize, columns: Vec<Vec<(usize, F::Elem)>>) -> usize {
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; nrows];
    let mut reduced: Vec<Vec<(usize, F::Elem)>> = Vec::with_capacity(columns.len());
    let mut rank = 0;
    for mut col in columns {
        col.retain(|(_, x)| !f.is_zero(x));
        while let Some((low, val)) = col.last().cloned() {
            match pivot_of_row[low] {
                None => break,
                Some(k) => {
                    let pivot = &reduced[k];
                    let factor = f.mul(&val, &f.inv(&pivot.last().expect("pivot column is nonempty").1));
                    col = axpy(f, &col, &factor, pivot);
                }
            }
        }
        if let Some((low, _)) = col.last() {
            pivot_of_row[*low] = Some(reduced.len());
            rank += 1;
        }
        reduced.push(col);
    }
    rank
}

/// `x - factor * y` on sorted sparse vectors.
fn axpy<F: Field>(f: &F, x: &[(usize, F::Elem)], factor: &F::Elem, y: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, f.neg(&f.mul(factor, &y[j].1))));
            j += 1;
        } else {
            let v = f.sub(&x[i].1, &f.mul(factor, &y[j].1));
            if !f.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(f: &Rationals, rows: &[&[i64]], ncols: usize) -> DenseMatrix<num_rational::BigRational> {
        DenseMatrix::from_rows(ncols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn zero_system() {
        let f = Rationals;
        let a = q(&f, &[&[0, 0, 0], &[0, 0, 0]], 3);
        let s = solve_linear(&f, &a, &[f.zero(), f.zero()]).unwrap();
        assert_eq!(s.solution, Some(vec![f.zero(); 3]));
        assert_eq!(s.kernel.len(), 3);
    }

    #[test]
    fn identity_system() {
        let f = Rationals;
        let a = q(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        let b: Vec<_> = [4, -2, 7].iter().map(|&x| f.from_i64(x)).collect();
        let s = solve_linear(&f, &a, &b).unwrap();
        assert_eq!(s.solution, Some(b));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn inconsistent_is_not_an_error() {
        let f = Rationals;
        let a = q(&f, &[&[1, 1], &[2, 2]], 2);
        let s = solve_linear(&f, &a, &[f.from_i64(1), f.from_i64(3)]).unwrap();
        assert!(s.solution.is_none());
        assert_eq!(s.kernel.len(), 1);
        assert!(solve_linear(&f, &a, &[f.one()]).is_err());
    }

    #[test]
    fn random_rank3_system_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            // 5x7 matrix of rank 3: product of random 5x3 and 3x7 factors
            let left: Vec<Vec<u64>> = (0..5).map(|_| (0..3).map(|_| rng.gen_range(0..5)).collect()).collect();
            let right: Vec<Vec<u64>> = (0..3).map(|_| (0..7).map(|_| rng.gen_range(0..5)).collect()).collect();
            let rows: Vec<Vec<u64>> = (0..5)
                .map(|i| (0..7).map(|j| (0..3).fold(0, |acc, k| f.add(&acc, &f.mul(&left[i][k], &right[k][j])))).collect())
                .collect();
            let a = DenseMatrix::from_rows(7, rows).unwrap();
            let x0: Vec<u64> = (0..7).map(|_| rng.gen_range(0..5)).collect();
            let b = a.apply(&f, &x0);
            let s = solve_linear(&f, &a, &b).unwrap();
            let x = s.solution.expect("consistent by construction");
            assert_eq!(a.apply(&f, &x), b);
            let rank = rank_dense(&f, a.clone());
            assert!(rank <= 3);
            assert_eq!(s.kernel.len(), 7 - rank);
            for k in &s.kernel {
                assert!(a.apply(&f, k).iter().all(|v| *v == 0));
            }
        }
    }

    #[test]
    fn sparse_and_dense_ranks_agree() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (nr, nc) = (rng.gen_range(1..12), rng.gen_range(1..12));
            let rows: Vec<Vec<u64>> =
                (0..nr).map(|_| (0..nc).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..3) } else { 0 }).collect()).collect();
            let dense = DenseMatrix::from_rows(nc, rows.clone()).unwrap();
            let cols: Vec<Vec<(usize, u64)>> =
                (0..nc).map(|j| (0..nr).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect()).collect();
            assert_eq!(rank_dense(&f, dense), rank_sparse(&f, nr, cols));
        }
    }
}
