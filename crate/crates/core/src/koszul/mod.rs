//! The finite bigraded differential algebra
//! `R*(K) = Λ[u_1..u_m] ⊗ k[K] / (v_i² = u_i v_i = 0)` with `d u_i = v_i`,
//! `d v_i = 0`.
//!
//! Its additive basis is the monomials `u_ω v_σ` with `σ ∈ K`, `ω ∩ σ = ∅`,
//! of bidegree `(-|ω|, 2|ω| + 2|σ|)`. Exterior parts are kept sorted; the
//! differential and product signs come from positions in those sorted lists.

mod betti;
mod element;

pub use betti::{betti_table_koszul, betti_table_koszul_with, full_complex_betti, BettiTable};
pub use element::{KoszulElement, KoszulMonomial, TermRecord};
pub(crate) use element::{rational_from_json, rational_to_json};

use std::collections::HashSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::field::Field;
use crate::homology::linalg::{self, DenseMatrix};
use crate::homology::{self, CohomologyBasis, Coefficients, FaceLayers, HomologyGroup, IntMatrix};
use crate::vertex_set::{sign, VertexSet};

/// `R*(K)` for a fixed complex.
#[derive(Clone, Debug)]
pub struct KoszulAlgebra {
    complex: SimplicialComplex,
    faces: HashSet<VertexSet>,
}

impl KoszulAlgebra {
    pub fn new(complex: &SimplicialComplex) -> Self {
        KoszulAlgebra { complex: complex.clone(), faces: complex.faces().into_iter().collect() }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn is_face(&self, sigma: VertexSet) -> bool {
        self.faces.contains(&sigma)
    }

    pub fn is_admissible(&self, mono: KoszulMonomial) -> bool {
        mono.exterior.is_disjoint(mono.polynomial)
            && mono.exterior.is_subset(self.complex.vertex_set())
            && self.is_face(mono.polynomial)
    }

    /// `u_exterior v_polynomial`, validated.
    pub fn monomial(&self, exterior: VertexSet, polynomial: VertexSet) -> Result<KoszulMonomial> {
        let mono = KoszulMonomial { exterior, polynomial };
        self.complex.check_range(exterior.union(polynomial))?;
        if self.is_admissible(mono) {
            Ok(mono)
        } else {
            Err(Error::InvalidParameter(format!("{mono} is zero in R*(K)")))
        }
    }

    /// `d(u_ω v_σ) = Σ_{i ∈ ω} (-1)^{#{j ∈ ω : j < i}} u_{ω∖i} v_{σ∪i}`,
    /// dropping terms with `σ ∪ i ∉ K`.
    pub fn differential<F: Field>(&self, f: &F, x: &KoszulElement<F::Elem>) -> KoszulElement<F::Elem> {
        let mut out = KoszulElement::zero();
        for (mono, c) in x.terms() {
            for i in mono.exterior.iter() {
                let poly = mono.polynomial.with(i);
                if !self.is_face(poly) {
                    continue;
                }
                let target = KoszulMonomial { exterior: mono.exterior.without(i), polynomial: poly };
                out.add_term(f, target, f.scale_sign(c, sign(mono.exterior.rank_of(i))));
            }
        }
        out
    }

    /// Product of two basis monomials: sign and result, or `None` when it vanishes.
    pub fn multiply_monomials(&self, a: KoszulMonomial, b: KoszulMonomial) -> Option<(i64, KoszulMonomial)> {
        if !a.exterior.is_disjoint(b.exterior) || !a.polynomial.is_disjoint(b.polynomial) {
            return None;
        }
        let exterior = a.exterior.union(b.exterior);
        let polynomial = a.polynomial.union(b.polynomial);
        if !exterior.is_disjoint(polynomial) || !self.is_face(polynomial) {
            return None;
        }
        Some((sign(a.exterior.inversions(b.exterior)), KoszulMonomial { exterior, polynomial }))
    }

    /// Bilinear product in `R*(K)`; no cocycle requirement.
    pub fn multiply<F: Field>(
        &self,
        f: &F,
        x: &KoszulElement<F::Elem>,
        y: &KoszulElement<F::Elem>,
    ) -> KoszulElement<F::Elem> {
        let mut out = KoszulElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                if let Some((s, mono)) = self.multiply_monomials(*a, *b) {
                    out.add_term(f, mono, f.scale_sign(&f.mul(ca, cb), s));
                }
            }
        }
        out
    }

    /// Product of cocycles, representing the cup product in cohomology.
    pub fn cup_product<F: Field>(
        &self,
        f: &F,
        x: &KoszulElement<F::Elem>,
        y: &KoszulElement<F::Elem>,
    ) -> Result<KoszulElement<F::Elem>> {
        if !self.differential(f, x).is_zero() || !self.differential(f, y).is_zero() {
            return Err(Error::NotACocycle);
        }
        Ok(self.multiply(f, x, y))
    }

    /// The direct summand spanned by `u_{ω∖σ} v_σ`, `σ ⊆ ω`.
    pub fn block(&self, omega: VertexSet) -> MultidegreeComplex {
        let faces: Vec<VertexSet> = if (1usize << omega.len()) <= self.faces.len() {
            omega.subsets().filter(|s| self.faces.contains(s)).collect()
        } else {
            self.faces.iter().copied().filter(|s| s.is_subset(omega)).collect()
        };
        MultidegreeComplex { omega, layers: FaceLayers::new(faces) }
    }

    /// Whether a homogeneous cocycle is a coboundary.
    pub fn is_coboundary<F: Field>(&self, f: &F, x: &KoszulElement<F::Elem>) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let (omega, s) = x.block_position()?;
        let block = self.block(omega);
        let basis = block.cohomology_basis(f, s);
        let v = block.to_vector(f, x, s)?;
        if !basis.is_cocycle(f, &v) {
            return Err(Error::NotACocycle);
        }
        Ok(basis.is_coboundary(f, &v))
    }

    /// Some `e` with `d e = y`, taking free variables zero; `None` if `y` is
    /// not a coboundary. `y` must be homogeneous.
    pub fn solve_coboundary<F: Field>(
        &self,
        f: &F,
        y: &KoszulElement<F::Elem>,
    ) -> Result<Option<KoszulElement<F::Elem>>> {
        Ok(self.coboundary_solutions(f, y)?.map(|(e, _)| e))
    }

    /// Like [`KoszulAlgebra::solve_coboundary`], also returning a basis of the
    /// cocycles in the solution's degree (the freedom in the choice).
    pub fn coboundary_solutions<F: Field>(
        &self,
        f: &F,
        y: &KoszulElement<F::Elem>,
    ) -> Result<Option<(KoszulElement<F::Elem>, Vec<KoszulElement<F::Elem>>)>> {
        if y.is_zero() {
            return Ok(Some((KoszulElement::zero(), Vec::new())));
        }
        let (omega, s) = y.block_position()?;
        let block = self.block(omega);
        if s == 0 {
            return Ok(None);
        }
        let target = block.to_vector(f, y, s)?;
        let d = block.differential_dense(f, s - 1);
        let sol = linalg::solve_linear(f, &d, &target)?;
        Ok(sol.solution.map(|x| {
            let e = block.from_vector(f, s - 1, &x);
            let kernel = sol.kernel.iter().map(|k| block.from_vector(f, s - 1, k)).collect();
            (e, kernel)
        }))
    }
}

/// The multidegree-`ω` summand of `R*(K)`; its cohomology is `H^{*,2ω}(Z_K)`.
///
/// Layer `s` holds the monomials `u_{ω∖σ} v_σ` with `|σ| = s`, sitting in
/// Koszul degree `s - |ω|`.
#[derive(Clone)]
pub struct MultidegreeComplex {
    omega: VertexSet,
    layers: FaceLayers,
}

impl MultidegreeComplex {
    pub fn omega(&self) -> VertexSet {
        self.omega
    }

    /// Faces `σ ⊆ ω` of size `s`, in lexicographic order.
    pub fn layer(&self, s: usize) -> &[VertexSet] {
        self.layers.layers.get(s).map_or(&[], |l| l.as_slice())
    }

    pub fn top(&self) -> usize {
        self.layers.top()
    }

    pub fn monomial(&self, sigma: VertexSet) -> KoszulMonomial {
        KoszulMonomial { exterior: self.omega.difference(sigma), polynomial: sigma }
    }

    pub(crate) fn position(&self, sigma: VertexSet) -> Option<usize> {
        self.layers.position(sigma)
    }

    /// `d` from layer `s` to layer `s + 1`.
    pub(crate) fn differential_matrix(&self, s: usize) -> IntMatrix {
        let mut m = IntMatrix::new(self.layers.count(s + 1), self.layers.count(s));
        for (j, sigma) in self.layer(s).iter().enumerate() {
            let ext = self.omega.difference(*sigma);
            let mut col: Vec<(usize, i64)> = ext
                .iter()
                .filter_map(|i| self.position(sigma.with(i)).map(|row| (row, sign(ext.rank_of(i)))))
                .collect();
            col.sort_unstable();
            m.cols[j] = col;
        }
        m
    }

    pub(crate) fn differential_dense<F: Field>(&self, f: &F, s: usize) -> DenseMatrix<F::Elem> {
        let m = self.differential_matrix(s);
        let mut d = DenseMatrix::zeros(m.nrows, m.ncols, f.zero());
        for (j, col) in m.cols.iter().enumerate() {
            for &(i, x) in col {
                d.set(i, j, f.from_i64(x));
            }
        }
        d
    }

    fn columns<F: Field>(&self, f: &F, s: usize) -> Vec<Vec<F::Elem>> {
        let d = self.differential_dense(f, s);
        (0..d.ncols()).map(|j| (0..d.nrows()).map(|i| d.get(i, j).clone()).collect()).collect()
    }

    /// `H^{s-|ω|, 2ω}` for every layer `s`, indexed by `s`.
    pub fn cohomology(&self, coeff: Coefficients) -> Vec<HomologyGroup> {
        let top = self.top();
        let invariants: Vec<_> =
            (0..top).map(|s| homology::matrix_invariants(&self.differential_matrix(s), coeff)).collect();
        (0..=top)
            .map(|s| {
                let out = invariants.get(s).map_or(0, |i| i.rank);
                let (inc, torsion) = if s == 0 {
                    (0, Vec::new())
                } else {
                    (invariants[s - 1].rank, invariants[s - 1].torsion.clone())
                };
                HomologyGroup { rank: self.layers.count(s) - out - inc, torsion }
            })
            .collect()
    }

    pub(crate) fn cohomology_basis<F: Field>(&self, f: &F, s: usize) -> CohomologyBasis<F::Elem> {
        let prev = if s == 0 { Vec::new() } else { self.columns(f, s - 1) };
        let next = self.columns(f, s);
        CohomologyBasis::new(f, self.layers.count(s), prev, next)
    }

    /// Coordinates of `x` in layer `s`; errors if `x` has terms elsewhere.
    pub fn to_vector<F: Field>(&self, f: &F, x: &KoszulElement<F::Elem>, s: usize) -> Result<Vec<F::Elem>> {
        let mut v = vec![f.zero(); self.layers.count(s)];
        for (mono, c) in x.terms() {
            if mono.multidegree() != self.omega || mono.polynomial.len() != s {
                return Err(Error::NotHomogeneous("term outside the multidegree block"));
            }
            let pos = self.position(mono.polynomial).ok_or_else(|| {
                Error::InvalidParameter(format!("{mono} is not a basis monomial of R*(K)"))
            })?;
            v[pos] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector<F: Field>(&self, f: &F, s: usize, v: &[F::Elem]) -> KoszulElement<F::Elem> {
        let mut out = KoszulElement::zero();
        for (sigma, c) in self.layer(s).iter().zip(v) {
            out.add_term(f, self.monomial(*sigma), c.clone());
        }
        out
    }

    /// Representative cocycles of a basis of the layer-`s` cohomology.
    pub fn basis_representatives<F: Field>(&self, f: &F, s: usize) -> Vec<KoszulElement<F::Elem>> {
        self.cohomology_basis(f, s).cocycles.iter().map(|z| self.from_vector(f, s, z)).collect()
    }

    /// Coordinates of a cocycle's class in the basis of
    /// [`MultidegreeComplex::basis_representatives`].
    pub fn class_coordinates<F: Field>(
        &self,
        f: &F,
        x: &KoszulElement<F::Elem>,
        s: usize,
    ) -> Result<Vec<F::Elem>> {
        let v = self.to_vector(f, x, s)?;
        self.cohomology_basis(f, s).coordinates(f, &v).ok_or(Error::NotACocycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::homology::field::{PrimeField, Rationals};

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_labels(v.iter().copied())
    }

    fn mono(u: &[usize], v: &[usize]) -> KoszulMonomial {
        KoszulMonomial { exterior: vs(u), polynomial: vs(v) }
    }

    #[test]
    fn du_is_v() {
        let f = Rationals;
        let alg = KoszulAlgebra::new(&generators::points(2).unwrap());
        let du1 = alg.differential(&f, &KoszulElement::monomial(&f, mono(&[1], &[]), f.one()));
        assert_eq!(du1, KoszulElement::monomial(&f, mono(&[], &[1]), f.one()));
    }

    #[test]
    fn d_of_u1u2_on_two_points() {
        let f = Rationals;
        let alg = KoszulAlgebra::new(&generators::points(2).unwrap());
        let x = KoszulElement::monomial(&f, mono(&[1, 2], &[]), f.one());
        let dx = alg.differential(&f, &x);
        // d(u1u2) = v1u2 - u1v2 = u2v1 - u1v2
        let mut expected = KoszulElement::monomial(&f, mono(&[2], &[1]), f.one());
        expected.add_term(&f, mono(&[1], &[2]), f.from_i64(-1));
        assert_eq!(dx, expected);
        assert!(alg.differential(&f, &dx).is_zero());
    }

    #[test]
    fn dv_is_zero() {
        let f = Rationals;
        let alg = KoszulAlgebra::new(&generators::boundary_simplex(4).unwrap());
        let x = KoszulElement::monomial(&f, mono(&[], &[1, 2, 3]), f.one());
        assert!(alg.differential(&f, &x).is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_basis() {
        let f = PrimeField::new(3).unwrap();
        for k in [generators::mgon(5).unwrap(), generators::cut_cube_dual(), generators::rp2()] {
            let alg = KoszulAlgebra::new(&k);
            for omega in k.vertex_set().subsets() {
                let block = alg.block(omega);
                for s in 0..=block.top() {
                    for sigma in block.layer(s) {
                        let x = KoszulElement::monomial(&f, block.monomial(*sigma), f.one());
                        assert!(alg.differential(&f, &alg.differential(&f, &x)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn square_block_for_opposite_vertices() {
        let k = generators::mgon(4).unwrap();
        let alg = KoszulAlgebra::new(&k);
        let block = alg.block(vs(&[1, 3]));
        // u1u3, u3v1, u1v3 ; v1v3 is in the ideal
        assert_eq!(block.layer(0), &[VertexSet::EMPTY]);
        assert_eq!(block.layer(1), &[vs(&[1]), vs(&[3])]);
        assert!(block.layer(2).is_empty());
        let h = block.cohomology(Coefficients::Rationals);
        assert_eq!(h[1].rank, 1);
        assert_eq!(h[0].rank, 0);
        let full = alg.block(k.vertex_set()).cohomology(Coefficients::Rationals);
        assert_eq!(full[2].rank, 1); // H^{-2,8}
    }

    #[test]
    fn unit_block() {
        let alg = KoszulAlgebra::new(&generators::mgon(4).unwrap());
        let h = alg.block(VertexSet::EMPTY).cohomology(Coefficients::Integers);
        assert_eq!(h, vec![HomologyGroup::free(1)]);
    }

    #[test]
    fn unit_is_identity_for_product() {
        let f = Rationals;
        let alg = KoszulAlgebra::new(&generators::mgon(5).unwrap());
        let one = KoszulElement::monomial(&f, mono(&[], &[]), f.one());
        let mut x = KoszulElement::monomial(&f, mono(&[1], &[3]), f.one());
        x.add_term(&f, mono(&[3], &[1]), f.from_i64(-1));
        assert_eq!(alg.cup_product(&f, &one, &x).unwrap(), x);
        assert_eq!(alg.cup_product(&f, &x, &one).unwrap(), x);
    }

    #[test]
    fn cup_product_rejects_non_cocycles() {
        let f = Rationals;
        let alg = KoszulAlgebra::new(&generators::mgon(5).unwrap());
        let u1 = KoszulElement::monomial(&f, mono(&[1], &[]), f.one());
        assert!(matches!(alg.cup_product(&f, &u1, &u1), Err(Error::NotACocycle)));
    }

    #[test]
    fn leibniz_rule() {
        use rand::{Rng, SeedableRng};
        let f = PrimeField::new(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for k in [generators::mgon(6).unwrap(), generators::cut_cube_dual()] {
            let alg = KoszulAlgebra::new(&k);
            let basis: Vec<KoszulMonomial> = k
                .vertex_set()
                .subsets()
                .flat_map(|omega| {
                    let b = alg.block(omega);
                    (0..=b.top()).flat_map(|s| b.layer(s).to_vec()).map(|sigma| b.monomial(sigma)).collect::<Vec<_>>()
                })
                .collect();
            for _ in 0..300 {
                let mut x = KoszulElement::zero();
                let mut y = KoszulElement::zero();
                let deg_x = rng.gen_range(0..5);
                let deg_y = rng.gen_range(0..5);
                for _ in 0..3 {
                    let a = basis[rng.gen_range(0..basis.len())];
                    if a.exterior.len() % 2 == deg_x % 2 {
                        x.add_term(&f, a, rng.gen_range(1..5));
                    }
                    let b = basis[rng.gen_range(0..basis.len())];
                    if b.exterior.len() % 2 == deg_y % 2 {
                        y.add_term(&f, b, rng.gen_range(1..5));
                    }
                }
                let lhs = alg.differential(&f, &alg.multiply(&f, &x, &y));
                let mut rhs = alg.multiply(&f, &alg.differential(&f, &x), &y);
                let second = alg.multiply(&f, &x, &alg.differential(&f, &y));
                let second = if deg_x % 2 == 1 { second.scale(&f, &f.from_i64(-1)) } else { second };
                rhs = rhs.add(&f, &second);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn solve_coboundary_finds_preimage() {
        let f = Rationals;
        let alg = KoszulAlgebra::new(&generators::points(2).unwrap());
        let mut y = KoszulElement::monomial(&f, mono(&[2], &[1]), f.one());
        y.add_term(&f, mono(&[1], &[2]), f.from_i64(-1));
        let e = alg.solve_coboundary(&f, &y).unwrap().unwrap();
        assert_eq!(alg.differential(&f, &e), y);
        let nonexact = KoszulElement::monomial(&f, mono(&[2], &[1]), f.one());
        assert!(alg.solve_coboundary(&f, &nonexact).unwrap().is_none());
    }
}
