//! The face ring `k[K] = k[v_1..v_m] / I_K`, maps induced by simplicial maps,
//! linear systems of parameters, and Reisner's Cohen–Macaulay criterion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::homology::{self, Coefficients};
use crate::parallel::{self, Exec};
use crate::vertex_set::VertexSet;

/// `k[K]` with `deg v_i = 2`; the ideal is generated by the minimal non-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRing {
    complex: SimplicialComplex,
    ideal_generators: Vec<VertexSet>,
}

impl FaceRing {
    pub fn new(complex: &SimplicialComplex) -> Self {
        FaceRing { complex: complex.clone(), ideal_generators: complex.minimal_nonfaces() }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn ideal_generators(&self) -> &[VertexSet] {
        &self.ideal_generators
    }

    /// Whether `v^a` lies in `I_K`, i.e. its support is not a face.
    pub fn monomial_in_ideal(&self, exponents: &[u32]) -> Result<bool> {
        if exponents.len() != self.complex.m() {
            return Err(Error::ShapeMismatch(format!(
                "exponent vector of length {} for {} variables",
                exponents.len(),
                self.complex.m()
            )));
        }
        Ok(!self.complex.contains(support(exponents)))
    }

    /// Drops every term lying in `I_K`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        Polynomial {
            nvars: p.nvars,
            terms: p.terms.iter().filter(|(e, _)| self.complex.contains(support(e))).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }
}

fn support(exponents: &[u32]) -> VertexSet {
    exponents.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, _)| i + 1).collect()
}

/// Integer polynomial in `nvars` variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(vec![0; nvars], BigInt::one());
        p
    }

    /// The variable `v_i`, 1-based.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    /// `Σ_{i ∈ s} v_i`.
    pub fn linear_sum(nvars: usize, s: VertexSet) -> Self {
        s.iter().fold(Self::zero(nvars), |acc, i| acc.add(&Self::variable(nvars, i)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("v{}", i + 1) } else { format!("v{}^{a}", i + 1) })
                .collect();
            let neg = c.is_negative();
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let mag = c.abs();
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{mag}{mono}")?,
            }
        }
        Ok(())
    }
}

/// `φ*: k[K2] → k[K1]` for a simplicial map `φ: K1 → K2`, given by
/// `w_j ↦ Σ_{i ∈ φ^{-1}(j)} v_i`.
#[derive(Clone, Debug)]
pub struct InducedHom {
    map: SimplicialMap,
    source_ring: FaceRing,
    target_ring: FaceRing,
    images: Vec<Polynomial>,
}

/// Outcome of [`InducedHom::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealCheck {
    Pass,
    /// `φ*(w_generator)` has a term whose support is a face of `K1`.
    Fail { generator: VertexSet, term: Vec<u32> },
}

pub fn induced_hom(map: &SimplicialMap) -> InducedHom {
    let m1 = map.source().m();
    let images = (1..=map.target().m()).map(|j| Polynomial::linear_sum(m1, map.preimage(j))).collect();
    InducedHom {
        map: map.clone(),
        source_ring: FaceRing::new(map.source()),
        target_ring: FaceRing::new(map.target()),
        images,
    }
}

impl InducedHom {
    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    /// `φ*(w_j)`, 1-based.
    pub fn image(&self, j: usize) -> &Polynomial {
        &self.images[j - 1]
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `φ*(p)` for a polynomial in the `w`'s, reduced modulo `I_{K1}`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars != self.images.len() {
            return Err(Error::ShapeMismatch(format!("polynomial in {} variables, expected {}", p.nvars, self.images.len())));
        }
        let m1 = self.map.source().m();
        let mut out = Polynomial::zero(m1);
        for (e, c) in &p.terms {
            let mut term = Polynomial::zero(m1);
            term.terms.insert(vec![0; m1], c.clone());
            for (j, &a) in e.iter().enumerate() {
                for _ in 0..a {
                    term = self.source_ring.reduce(&term.mul(&self.images[j]));
                }
            }
            out = out.add(&term);
        }
        Ok(self.source_ring.reduce(&out))
    }

    /// Verifies `φ*(I_{K2}) ⊆ I_{K1}` by expanding every generator of `I_{K2}`
    /// and testing each term.
    pub fn check(&self) -> IdealCheck {
        let m1 = self.map.source().m();
        for &tau in self.target_ring.ideal_generators() {
            let product = tau.iter().fold(Polynomial::one(m1), |acc, j| acc.mul(&self.images[j - 1]));
            for (e, _) in product.terms() {
                if self.source_ring.complex.contains(support(e)) {
                    return IdealCheck::Fail { generator: tau, term: e.to_vec() };
                }
            }
        }
        IdealCheck::Pass
    }
}

/// An `n × m` integer matrix `Λ` whose rows define `t_i = Σ_j λ_ij v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharMatrix {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl CharMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let c = CharMatrix { n: rows.len(), rows };
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: CharMatrix = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn validate(&self) -> Result<()> {
        if self.rows.len() != self.n {
            return Err(Error::ShapeMismatch(format!("n = {} but {} rows", self.n, self.rows.len())));
        }
        let m = self.ncols();
        if self.rows.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        if self.n > m {
            return Err(Error::ShapeMismatch(format!("n = {} exceeds m = {m}", self.n)));
        }
        Ok(())
    }

    /// Determinant of the `n × n` minor on the columns of `sigma`.
    pub fn minor_det(&self, sigma: VertexSet) -> BigInt {
        let cols: Vec<usize> = sigma.iter().collect();
        let a: Vec<Vec<BigInt>> = self.rows.iter().map(|r| cols.iter().map(|&c| BigInt::from(r[c - 1])).collect()).collect();
        bareiss_det(a)
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_floor(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Verdict of an lsop check; `Fail` names the first facet (in lexicographic
/// order) whose minor is not invertible, with its integer determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LsopVerdict {
    Pass,
    Fail { facet: VertexSet, det: BigInt },
}

impl LsopVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, LsopVerdict::Pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            LsopVerdict::Pass => json!({"verdict": "pass", "witness": null}),
            LsopVerdict::Fail { facet, det } => json!({
                "verdict": "fail",
                "witness": {"facet": facet.to_vec(), "det": det.to_string()},
            }),
        }
    }
}

fn lsop_shape(k: &SimplicialComplex, lambda: &CharMatrix) -> Result<()> {
    lambda.validate()?;
    if lambda.ncols() != k.m() {
        return Err(Error::ShapeMismatch(format!(
            "{} columns for {} vertices",
            lambda.ncols(),
            k.m()
        )));
    }
    let n = (k.dim() + 1) as usize;
    if lambda.n != n || !k.is_pure() {
        return Err(Error::ShapeMismatch(format!(
            "needs a pure complex with facets of size n = {}",
            lambda.n
        )));
    }
    Ok(())
}

fn lsop_check_by(k: &SimplicialComplex, lambda: &CharMatrix, ok: impl Fn(&BigInt) -> bool) -> Result<LsopVerdict> {
    lsop_shape(k, lambda)?;
    for &facet in k.facets() {
        let det = lambda.minor_det(facet);
        if !ok(&det) {
            return Ok(LsopVerdict::Fail { facet, det });
        }
    }
    Ok(LsopVerdict::Pass)
}

/// Passes iff `det Λ_σ = ±1` for every facet `σ`.
pub fn lsop_check_integer(k: &SimplicialComplex, lambda: &CharMatrix) -> Result<LsopVerdict> {
    lsop_check_by(k, lambda, |d| d.abs().is_one())
}

/// Passes iff every facet minor is invertible over the field.
pub fn lsop_check_field(k: &SimplicialComplex, lambda: &CharMatrix, coeff: Coefficients) -> Result<LsopVerdict> {
    match coeff {
        Coefficients::Rationals => lsop_check_by(k, lambda, |d| !d.is_zero()),
        Coefficients::PrimeField(p) => {
            Coefficients::prime_field(p)?;
            let p = BigInt::from(p);
            lsop_check_by(k, lambda, |d| !d.mod_floor(&p).is_zero())
        }
        Coefficients::Integers => Err(Error::FieldRequired),
    }
}

/// Verdict of Reisner's test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmVerdict {
    CohenMacaulay,
    /// `H̃_degree(link_K face) ≠ 0` with `degree < dim link_K face`.
    Fail { face: VertexSet, degree: isize },
}

impl CmVerdict {
    pub fn is_cohen_macaulay(&self) -> bool {
        matches!(self, CmVerdict::CohenMacaulay)
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CmVerdict::CohenMacaulay => json!({"verdict": "cohen_macaulay", "witness": null}),
            CmVerdict::Fail { face, degree } => json!({
                "verdict": "fail",
                "witness": {"face": face.to_vec(), "degree": degree},
            }),
        }
    }
}

pub fn reisner_cm_test(k: &SimplicialComplex, coeff: Coefficients) -> Result<CmVerdict> {
    reisner_cm_test_with(k, coeff, Exec::default())
}

/// `K` is Cohen–Macaulay over a field iff `H̃_i(link σ) = 0` for all faces
/// `σ` (including `∅`) and `i < dim link σ`. Faces are scanned by size, then
/// lexicographically, and the first violation is reported.
pub fn reisner_cm_test_with(k: &SimplicialComplex, coeff: Coefficients, exec: Exec) -> Result<CmVerdict> {
    if !coeff.is_field() {
        return Err(Error::FieldRequired);
    }
    let faces = k.faces();
    let violations = |sigma: &VertexSet| -> Option<isize> {
        let link = k.link(*sigma).expect("faces of K have links");
        let groups = homology::reduced_groups(&link, coeff);
        (-1..link.dim()).find(|&i| !groups.homology_in(i).is_zero())
    };
    let first = parallel::position_first(exec, &faces, |s| violations(s).is_some());
    Ok(match first {
        None => CmVerdict::CohenMacaulay,
        Some(p) => CmVerdict::Fail { face: faces[p], degree: violations(&faces[p]).expect("found above") },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_labels(v.iter().copied())
    }

    #[test]
    fn ideal_membership() {
        let r = FaceRing::new(&generators::mgon(4).unwrap());
        assert_eq!(r.ideal_generators(), &[vs(&[1, 3]), vs(&[2, 4])]);
        assert!(r.monomial_in_ideal(&[1, 0, 1, 0]).unwrap());
        assert!(!r.monomial_in_ideal(&[0, 0, 0, 0]).unwrap());
        assert!(!r.monomial_in_ideal(&[0, 5, 0, 0]).unwrap());
        assert!(r.monomial_in_ideal(&[1, 0]).is_err());
        let ghost = FaceRing::new(&SimplicialComplex::empty(2));
        assert!(ghost.monomial_in_ideal(&[0, 1]).unwrap());
    }

    #[test]
    fn identity_hom() {
        let k = generators::cut_cube_dual();
        let h = induced_hom(&SimplicialMap::identity(&k));
        for j in 1..=8 {
            assert_eq!(h.image(j), &Polynomial::variable(8, j));
        }
        assert_eq!(h.check(), IdealCheck::Pass);
    }

    #[test]
    fn folding_the_square() {
        let square = generators::mgon(4).unwrap();
        let edge = generators::simplex(2).unwrap();
        let phi = SimplicialMap::new(square, edge, vec![1, 2, 1, 2]).unwrap();
        let h = induced_hom(&phi);
        assert_eq!(h.image(1).to_string(), "v1 + v3");
        assert_eq!(h.image(2).to_string(), "v2 + v4");
        assert_eq!(h.check(), IdealCheck::Pass);
        // (v1+v3)(v2+v4) = v1v2 + v1v4 + v2v3 + v3v4 in k[square]
        let w1w2 = Polynomial::variable(2, 1).mul(&Polynomial::variable(2, 2));
        assert_eq!(h.apply(&w1w2).unwrap().terms().count(), 4);
        let w1sq = Polynomial::variable(2, 1).mul(&Polynomial::variable(2, 1));
        assert_eq!(h.apply(&w1sq).unwrap().to_string(), "v1^2 + v3^2");
    }

    #[test]
    fn non_simplicial_map_rejected() {
        let edge = generators::simplex(2).unwrap();
        let points = generators::points(2).unwrap();
        assert!(matches!(SimplicialMap::new(edge, points, vec![1, 2]), Err(Error::NotSimplicial { .. })));
    }

    fn triangle_lambda() -> CharMatrix {
        CharMatrix::new(vec![vec![1, 0, -1], vec![0, 1, -1]]).unwrap()
    }

    #[test]
    fn lsop_examples() {
        let k = generators::boundary_simplex(3).unwrap();
        assert!(lsop_check_integer(&k, &triangle_lambda()).unwrap().passed());
        for c in [Coefficients::Rationals, Coefficients::PrimeField(2), Coefficients::PrimeField(3)] {
            assert!(lsop_check_field(&k, &triangle_lambda(), c).unwrap().passed());
        }
        let bad = CharMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let expected = LsopVerdict::Fail { facet: vs(&[1, 3]), det: BigInt::zero() };
        assert_eq!(lsop_check_integer(&k, &bad).unwrap(), expected);
        assert_eq!(lsop_check_field(&k, &bad, Coefficients::Rationals).unwrap(), expected);
        assert_eq!(
            lsop_check_integer(&k, &bad).unwrap().to_json(),
            json!({"verdict": "fail", "witness": {"facet": [1, 3], "det": "0"}})
        );
    }

    #[test]
    fn lsop_det_two() {
        let k = generators::simplex(2).unwrap();
        let lambda = CharMatrix::new(vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert!(!lsop_check_integer(&k, &lambda).unwrap().passed());
        assert!(!lsop_check_field(&k, &lambda, Coefficients::PrimeField(2)).unwrap().passed());
        assert!(lsop_check_field(&k, &lambda, Coefficients::Rationals).unwrap().passed());
        assert!(lsop_check_field(&k, &lambda, Coefficients::PrimeField(3)).unwrap().passed());
        let id = CharMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let s = generators::simplex(3).unwrap();
        assert!(lsop_check_integer(&s, &id).unwrap().passed());
        assert!(lsop_check_field(&s, &id, Coefficients::PrimeField(2)).unwrap().passed());
    }

    #[test]
    fn lsop_shape_errors() {
        let nonpure = SimplicialComplex::from_facets(3, &[&[1, 2], &[3]]).unwrap();
        let e = lsop_check_integer(&nonpure, &triangle_lambda()).unwrap_err();
        assert!(e.to_string().contains("matrix shape mismatch"));
        let wide = CharMatrix::new(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert!(lsop_check_integer(&generators::boundary_simplex(3).unwrap(), &wide).is_err());
        assert!(CharMatrix::from_json(r#"{"n": 2, "rows": [[1, 0]]}"#).is_err());
        assert_eq!(CharMatrix::from_json(&triangle_lambda().to_json()).unwrap(), triangle_lambda());
        assert!(matches!(
            lsop_check_field(&generators::boundary_simplex(3).unwrap(), &triangle_lambda(), Coefficients::Integers),
            Err(Error::FieldRequired)
        ));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = vec![vec![2, -1, 0, 3], vec![1, 4, 2, -2], vec![0, 5, -3, 1], vec![7, 0, 1, 1]];
        fn cofactor(a: &[Vec<i64>]) -> i64 {
            if a.len() == 1 {
                return a[0][0];
            }
            (0..a.len())
                .map(|c| {
                    let minor: Vec<Vec<i64>> =
                        a[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect()).collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * a[0][c] * cofactor(&minor)
                })
                .sum()
        }
        let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(bareiss_det(big), BigInt::from(cofactor(&a)));
    }

    #[test]
    fn reisner_examples() {
        for k in [
            generators::boundary_simplex(3).unwrap(),
            generators::mgon(6).unwrap(),
            generators::cross_polytope(3).unwrap(),
            generators::cut_cube_dual(),
        ] {
            assert!(reisner_cm_test(&k, Coefficients::Rationals).unwrap().is_cohen_macaulay());
        }
        let two_edges = SimplicialComplex::from_facets(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(
            reisner_cm_test(&two_edges, Coefficients::Rationals).unwrap(),
            CmVerdict::Fail { face: VertexSet::EMPTY, degree: 0 }
        );
        let rp2 = generators::rp2();
        assert!(reisner_cm_test(&rp2, Coefficients::Rationals).unwrap().is_cohen_macaulay());
        assert_eq!(
            reisner_cm_test(&rp2, Coefficients::PrimeField(2)).unwrap(),
            CmVerdict::Fail { face: VertexSet::EMPTY, degree: 1 }
        );
        assert_eq!(
            reisner_cm_test_with(&rp2, Coefficients::PrimeField(2), Exec::Sequential).unwrap().to_json(),
            json!({"verdict": "fail", "witness": {"face": [], "degree": 1}})
        );
    }

    fn arb_map() -> impl Strategy<Value = (SimplicialComplex, Vec<usize>, usize, u64)> {
        (1usize..=6, 1usize..=5, any::<u64>()).prop_flat_map(|(m1, m2, seed)| {
            (
                Just(crate::corpus::random_complex(m1, (2, 3), seed).unwrap()),
                proptest::collection::vec(1..=m2, m1),
                Just(m2),
                Just(seed),
            )
        })
    }

    /// Image of `k` under the vertex map, plus some random extra faces.
    fn target_for(k: &SimplicialComplex, map: &[usize], m2: usize, seed: u64) -> SimplicialComplex {
        let mut gens: Vec<VertexSet> = k.facets().iter().map(|f| f.iter().map(|v| map[v - 1]).collect()).collect();
        gens.extend(crate::corpus::random_complex(m2, (1, 2), seed ^ 0x5eed).unwrap().facets().iter().copied());
        SimplicialComplex::new(m2, gens).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn induced_hom_respects_ideals((k1, map, m2, seed) in arb_map()) {
            let k2 = target_for(&k1, &map, m2, seed);
            let phi = SimplicialMap::new(k1, k2, map).unwrap();
            prop_assert_eq!(induced_hom(&phi).check(), IdealCheck::Pass);
        }

        #[test]
        fn functoriality((k1, map, m2, seed) in arb_map(), second in proptest::collection::vec(1usize..=4, 5)) {
            let k2 = target_for(&k1, &map, m2, seed);
            let map2: Vec<usize> = (0..m2).map(|i| second[i]).collect();
            let k3 = target_for(&k2, &map2, 4, seed.rotate_left(7));
            let phi = SimplicialMap::new(k1, k2.clone(), map).unwrap();
            let psi = SimplicialMap::new(k2, k3, map2).unwrap();
            let comp = induced_hom(&phi.then(&psi).unwrap());
            let (hphi, hpsi) = (induced_hom(&phi), induced_hom(&psi));
            for x in 1..=4 {
                let lhs = comp.apply(&Polynomial::variable(4, x)).unwrap();
                let rhs = hphi.apply(hpsi.image(x)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn integer_pass_implies_field_pass(
            m in 2usize..=6,
            seed in any::<u64>(),
            entries in proptest::collection::vec(-1i64..=1, 36),
        ) {
            let k = crate::corpus::random_complex(m, (2, 3), seed).unwrap();
            let n = (k.dim() + 1) as usize;
            prop_assume!(k.is_pure() && n >= 1);
            let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * m..(i + 1) * m].to_vec()).collect();
            let lambda = CharMatrix::new(rows).unwrap();
            if lsop_check_integer(&k, &lambda).unwrap().passed() {
                for c in [Coefficients::Rationals, Coefficients::PrimeField(2), Coefficients::PrimeField(3), Coefficients::PrimeField(5)] {
                    prop_assert!(lsop_check_field(&k, &lambda, c).unwrap().passed());
                }
            }
        }
    }
}
