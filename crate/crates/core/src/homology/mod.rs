//! Reduced simplicial (co)homology over `Q`, `F_p` and `Z`.
//!
//! Simplices are oriented by ascending vertex labels and the `i`-th face of a
//! simplex carries the sign `(-1)^i`. The chain complex is augmented, so
//! `H̃_{-1}({∅})` has rank one and `H̃_{-1}(K) = 0` for every other `K`.

pub mod field;
pub mod linalg;
pub mod snf;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::{sign, VertexSet};
use field::{Field, PrimeField};

/// Coefficient ring for (co)homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Rationals,
    PrimeField(u64),
    Integers,
}

impl Coefficients {
    pub fn prime_field(p: u64) -> Result<Self> {
        PrimeField::new(p).map(|_| Coefficients::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Coefficients::Integers)
    }

    pub fn label(&self) -> String {
        match self {
            Coefficients::Rationals => "Q".into(),
            Coefficients::PrimeField(p) => format!("F_{p}"),
            Coefficients::Integers => "Z".into(),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `q`, `z`, `fp:<p>`, `f<p>` and `F_<p>` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "q" | "rationals" => return Ok(Coefficients::Rationals),
            "z" | "integers" => return Ok(Coefficients::Integers),
            _ => {}
        }
        let digits = lower
            .strip_prefix("fp:")
            .or_else(|| lower.strip_prefix("f_"))
            .or_else(|| lower.strip_prefix('f'))
            .ok_or_else(|| Error::Parse(format!("unknown coefficient spec `{s}` (use q, z or fp:<p>)")))?;
        let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("bad prime in `{s}`")))?;
        Coefficients::prime_field(p)
    }
}

/// A finitely generated abelian group (or vector space): free rank plus
/// torsion as prime powers in ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum.
    pub fn add(&mut self, other: &HomologyGroup) {
        self.rank += other.rank;
        self.torsion.extend_from_slice(&other.torsion);
        self.torsion.sort_unstable();
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Splits an invariant factor into its prime-power parts.
pub(crate) fn prime_power_parts(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            let mut q = 1;
            while d.is_multiple_of(p) {
                d /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Sparse integer matrix stored by columns of `(row, value)` with strictly
/// increasing rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct IntMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        IntMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                d[i][j] = x;
            }
        }
        d
    }

    fn size(&self) -> usize {
        self.nrows * self.ncols
    }
}

/// Matrices with at most this many entries are reduced densely.
pub(crate) const DENSE_LIMIT: usize = 48 * 48;

/// How [`matrix_invariants`] reduces a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) enum Strategy {
    Auto,
    Dense,
    Sparse,
}

/// Rank over the coefficient ring together with the torsion of the cokernel
/// (empty over fields).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct MatrixInvariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

pub(crate) fn matrix_invariants(m: &IntMatrix, coeff: Coefficients) -> MatrixInvariants {
    matrix_invariants_with(m, coeff, Strategy::Auto)
}

pub(crate) fn matrix_invariants_with(m: &IntMatrix, coeff: Coefficients, strategy: Strategy) -> MatrixInvariants {
    if m.nrows == 0 || m.ncols == 0 {
        return MatrixInvariants::default();
    }
    let sparse = match strategy {
        Strategy::Auto => m.size() > DENSE_LIMIT,
        Strategy::Dense => false,
        Strategy::Sparse => true,
    };
    match coeff {
        Coefficients::PrimeField(p) => {
            let f = PrimeField::new(p).expect("validated prime");
            let rank = if sparse {
                let cols = m.cols.iter().map(|c| c.iter().map(|&(i, x)| (i, f.from_i64(x))).collect()).collect();
                linalg::rank_sparse(&f, m.nrows, cols)
            } else {
                let rows = m.to_dense().into_iter().map(|r| r.into_iter().map(|x| f.from_i64(x)).collect()).collect();
                linalg::rank_dense(&f, linalg::DenseMatrix::from_rows(m.ncols, rows).expect("rectangular"))
            };
            MatrixInvariants { rank, torsion: Vec::new() }
        }
        Coefficients::Rationals | Coefficients::Integers => {
            let chain = coeff == Coefficients::Integers;
            let factors = if sparse { sparse_invariant_factors(m, chain) } else { snf::dense_invariant_factors(m.to_dense(), chain) };
            let torsion = if chain {
                let mut t: Vec<u64> = factors
                    .iter()
                    .filter(|d| !d.is_one())
                    .flat_map(|d| prime_power_parts(d.to_u64().expect("torsion coefficient fits in u64")))
                    .collect();
                t.sort_unstable();
                t
            } else {
                Vec::new()
            };
            MatrixInvariants { rank: factors.len(), torsion }
        }
    }
}

/// Eliminates `±1` pivots sparsely, then finishes densely. Falls back to the
/// dense reduction if an entry would overflow.
fn sparse_invariant_factors(m: &IntMatrix, chain: bool) -> Vec<BigInt> {
    match eliminate_unit_pivots(m) {
        Some((units, rest)) => {
            let mut f = vec![BigInt::one(); units];
            f.extend(snf::dense_invariant_factors(rest, chain));
            f
        }
        None => snf::dense_invariant_factors(m.to_dense(), chain),
    }
}

fn eliminate_unit_pivots(m: &IntMatrix) -> Option<(usize, Vec<Vec<i64>>)> {
    let mut cols: Vec<BTreeMap<usize, i64>> = m.cols.iter().map(|c| c.iter().copied().collect()).collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.nrows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            row_cols[i].insert(j);
        }
    }
    let mut alive_col = vec![true; m.ncols];
    let mut alive_row = vec![true; m.nrows];
    let mut units = 0;
    loop {
        // Sparsest column holding a unit; within it the sparsest unit row.
        let pick = (0..m.ncols)
            .filter(|&j| alive_col[j])
            .filter_map(|j| {
                cols[j]
                    .iter()
                    .filter(|(_, x)| x.abs() == 1)
                    .map(|(&i, _)| (cols[j].len() * m.ncols + row_cols[i].len(), i, j))
                    .min()
            })
            .min();
        let Some((_, r, j)) = pick else { break };
        let pivot = cols[j][&r];
        let others: Vec<usize> = row_cols[r].iter().copied().filter(|&k| k != j).collect();
        let pivot_col: Vec<(usize, i64)> = cols[j].iter().map(|(&i, &x)| (i, x)).collect();
        for k in others {
            let factor = cols[k][&r].checked_mul(pivot)?;
            for &(i, x) in &pivot_col {
                let entry = cols[k].entry(i).or_insert(0);
                *entry = entry.checked_sub(factor.checked_mul(x)?)?;
                if *entry == 0 {
                    cols[k].remove(&i);
                    row_cols[i].remove(&k);
                } else {
                    row_cols[i].insert(k);
                }
            }
        }
        for &(i, _) in &pivot_col {
            row_cols[i].remove(&j);
        }
        alive_col[j] = false;
        alive_row[r] = false;
        cols[j].clear();
        units += 1;
    }
    let rows: Vec<usize> = (0..m.nrows).filter(|&i| alive_row[i]).collect();
    let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let keep: Vec<usize> = (0..m.ncols).filter(|&j| alive_col[j] && !cols[j].is_empty()).collect();
    let mut dense = vec![vec![0i64; keep.len()]; rows.len()];
    for (c, &j) in keep.iter().enumerate() {
        for (&i, &x) in &cols[j] {
            dense[row_pos[&i]][c] = x;
        }
    }
    Some((units, dense))
}

/// Faces of a complex grouped by size, with lookup tables.
#[derive(Clone)]
pub(crate) struct FaceLayers {
    pub layers: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl FaceLayers {
    /// `faces` must be downward closed and contain `∅`.
    pub fn new(faces: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut layers: Vec<Vec<VertexSet>> = Vec::new();
        for f in faces {
            let s = f.len();
            if layers.len() <= s {
                layers.resize(s + 1, Vec::new());
            }
            layers[s].push(f);
        }
        for l in &mut layers {
            l.sort();
        }
        let index = layers.iter().map(|l| l.iter().enumerate().map(|(i, f)| (*f, i)).collect()).collect();
        FaceLayers { layers, index }
    }

    pub fn count(&self, size: usize) -> usize {
        self.layers.get(size).map_or(0, |l| l.len())
    }

    pub fn position(&self, face: VertexSet) -> Option<usize> {
        self.index.get(face.len()).and_then(|m| m.get(&face).copied())
    }

    /// Largest face size.
    pub fn top(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    /// Simplicial boundary from faces of size `s` to faces of size `s - 1`.
    pub fn boundary(&self, s: usize) -> IntMatrix {
        let mut m = IntMatrix::new(self.count(s - 1), self.count(s));
        for (j, sigma) in self.layers[s].iter().enumerate() {
            let mut col: Vec<(usize, i64)> = sigma
                .iter()
                .enumerate()
                .map(|(pos, v)| (self.position(sigma.without(v)).expect("faces are downward closed"), sign(pos)))
                .collect();
            col.sort_unstable();
            m.cols[j] = col;
        }
        m
    }
}

/// Reduced homology and cohomology of one complex, indexed by `degree + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGroups {
    pub homology: Vec<HomologyGroup>,
    pub cohomology: Vec<HomologyGroup>,
}

impl ReducedGroups {
    /// `H̃^p`, zero outside the computed range.
    pub fn cohomology_in(&self, p: isize) -> HomologyGroup {
        usize::try_from(p + 1).ok().and_then(|i| self.cohomology.get(i)).cloned().unwrap_or_default()
    }

    pub fn homology_in(&self, p: isize) -> HomologyGroup {
        usize::try_from(p + 1).ok().and_then(|i| self.homology.get(i)).cloned().unwrap_or_default()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology.iter().all(HomologyGroup::is_zero)
    }
}

pub(crate) fn reduced_groups_of_faces(layers: &FaceLayers, coeff: Coefficients) -> ReducedGroups {
    let top = layers.top();
    // inv[s] describes ∂_s for s in 1..=top; inv[0] and inv[top+1] are zero maps.
    let mut inv = vec![MatrixInvariants::default(); top + 2];
    for (s, slot) in inv.iter_mut().enumerate().take(top + 1).skip(1) {
        *slot = matrix_invariants(&layers.boundary(s), coeff);
    }
    let mut homology = Vec::with_capacity(top + 1);
    let mut cohomology = Vec::with_capacity(top + 1);
    for s in 0..=top {
        let rank = layers.count(s) - inv[s].rank - inv[s + 1].rank;
        homology.push(HomologyGroup { rank, torsion: inv[s + 1].torsion.clone() });
        cohomology.push(HomologyGroup { rank, torsion: inv[s].torsion.clone() });
    }
    ReducedGroups { homology, cohomology }
}

/// Both reduced homology and cohomology of `k`, degrees `-1..=dim`.
pub fn reduced_groups(k: &SimplicialComplex, coeff: Coefficients) -> ReducedGroups {
    reduced_groups_of_faces(&FaceLayers::new(k.faces()), coeff)
}

fn by_degree(groups: Vec<HomologyGroup>) -> BTreeMap<isize, HomologyGroup> {
    groups.into_iter().enumerate().map(|(i, g)| (i as isize - 1, g)).collect()
}

/// `H̃_i(K)` for `-1 <= i <= dim K`.
pub fn reduced_homology(k: &SimplicialComplex, coeff: Coefficients) -> BTreeMap<isize, HomologyGroup> {
    by_degree(reduced_groups(k, coeff).homology)
}

/// `H̃^i(K)` for `-1 <= i <= dim K`.
pub fn reduced_cohomology(k: &SimplicialComplex, coeff: Coefficients) -> BTreeMap<isize, HomologyGroup> {
    by_degree(reduced_groups(k, coeff).cohomology)
}

/// Basis of reduced cohomology over a field with coordinate extraction.
///
/// Cochains are vectors over the faces of one size, in the order of
/// [`FaceLayers`].
pub(crate) struct CohomologyBasis<E> {
    /// Representative cocycles of a basis of `H^k`.
    pub cocycles: Vec<Vec<E>>,
    /// Spanning set of the coboundaries in degree `k`.
    pub coboundaries: Vec<Vec<E>>,
    /// `d: C^k -> C^{k+1}` as columns, to test cocycles.
    pub next: Vec<Vec<E>>,
    pub dim: usize,
}

impl<E: Clone + PartialEq + std::fmt::Debug> CohomologyBasis<E> {
    /// Computes a basis from the differentials around degree `k`:
    /// `prev: C^{k-1} -> C^k` and `next: C^k -> C^{k+1}`, each given by the
    /// images of basis vectors (columns).
    pub fn new<F: Field<Elem = E>>(f: &F, dim: usize, prev: Vec<Vec<E>>, next: Vec<Vec<E>>) -> Self {
        // Kernel of `next`: solve with the transpose layout (rows = target coords).
        let target_dim = next.first().map_or(0, |c| c.len());
        let next_mat = linalg::DenseMatrix::from_columns(target_dim, &next, f.zero());
        let kernel = if dim == 0 {
            Vec::new()
        } else if target_dim == 0 {
            (0..dim).map(|i| unit(f, dim, i)).collect()
        } else {
            linalg::solve_linear(f, &next_mat, &vec![f.zero(); target_dim]).expect("shapes agree").kernel
        };
        let boundaries: Vec<Vec<E>> = prev;
        // Greedy complement of the coboundaries inside the kernel.
        let mut span: Vec<Vec<E>> = Vec::new();
        let mut rank = 0;
        for b in &boundaries {
            span.push(b.clone());
            let r = linalg::rank_dense(f, linalg::DenseMatrix::from_columns(dim, &span, f.zero()));
            if r == rank {
                span.pop();
            } else {
                rank = r;
            }
        }
        let mut cocycles = Vec::new();
        for z in kernel {
            span.push(z.clone());
            let r = linalg::rank_dense(f, linalg::DenseMatrix::from_columns(dim, &span, f.zero()));
            if r == rank {
                span.pop();
            } else {
                rank = r;
                cocycles.push(z);
            }
        }
        CohomologyBasis { cocycles, coboundaries: boundaries, next, dim }
    }

    pub fn is_cocycle<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> bool {
        let mut acc: Vec<E> = vec![f.zero(); self.next.first().map_or(0, |c| c.len())];
        for (coef, col) in x.iter().zip(&self.next) {
            if f.is_zero(coef) {
                continue;
            }
            for (a, c) in acc.iter_mut().zip(col) {
                *a = f.add(a, &f.mul(coef, c));
            }
        }
        acc.iter().all(|a| f.is_zero(a))
    }

    /// Coordinates of the class of cocycle `x` in the basis, or `None` when
    /// `x` is not a cocycle.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> Option<Vec<E>> {
        if !self.is_cocycle(f, x) {
            return None;
        }
        let mut cols = self.cocycles.clone();
        cols.extend(self.coboundaries.iter().cloned());
        let a = linalg::DenseMatrix::from_columns(self.dim, &cols, f.zero());
        let sol = linalg::solve_linear(f, &a, x).expect("shapes agree");
        let s = sol.solution.expect("every cocycle is a combination of the basis and coboundaries");
        Some(s[..self.cocycles.len()].to_vec())
    }

    /// Whether `x` is a coboundary (assumes `x` is a cocycle).
    pub fn is_coboundary<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> bool {
        self.coordinates(f, x).is_some_and(|c| c.iter().all(|v| f.is_zero(v)))
    }
}

fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}
