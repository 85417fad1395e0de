//! Triple Massey products in `R*(K)` and the family of complexes with a
//! non-trivial one, built by two stellar subdivisions of a join of spheres.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, MasseyObstruction, Result};
use crate::generators;
use crate::hochster::{self, ClassSpace};
use crate::homology::field::{Field, Rationals};
use crate::homology::linalg::{self, DenseMatrix};
use crate::homology::Coefficients;
use crate::koszul::{KoszulAlgebra, KoszulElement, TermRecord};
use crate::vertex_set::{sign, VertexSet};

/// How to pick the cochains `e`, `f` among all solutions of `de = a1 a2`,
/// `df = a2 a3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SolutionChoice {
    /// The echelon solution with all free variables zero.
    #[default]
    First,
    /// The echelon solution plus a pseudo-random integer combination of the
    /// solution space's cocycles, determined by the seed.
    Perturbed(u64),
}

/// Three cocycles of `R*(K)` with field coefficients.
#[derive(Clone, Debug)]
pub struct MasseyProblem<E> {
    pub complex: SimplicialComplex,
    pub a1: KoszulElement<E>,
    pub a2: KoszulElement<E>,
    pub a3: KoszulElement<E>,
}

/// A representative of `⟨α1, α2, α3⟩` with its indeterminacy.
#[derive(Clone, Debug, PartialEq)]
pub struct MasseyResult<E> {
    /// `w = (-1)^{deg a1 + 1} a1 f + e a3`.
    pub representative: KoszulElement<E>,
    pub e: KoszulElement<E>,
    pub f: KoszulElement<E>,
    /// Classes `α1·h`, `h'·α3` spanning the indeterminacy in the
    /// representative's multidegree, reduced to a linearly independent set.
    pub indeterminacy_basis: Vec<KoszulElement<E>>,
    /// Whether the product contains zero.
    pub trivial: bool,
    /// Multidegree `ω1 ∪ ω2 ∪ ω3` and layer (number of `v`s) of `w`.
    pub block: VertexSet,
    pub layer: usize,
    /// Coordinates of `[w]` in the block's cohomology basis.
    pub class: Vec<E>,
    /// Coordinates of the indeterminacy generators in the same basis.
    pub indeterminacy: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> MasseyResult<E> {
    /// Whether two results for the same inputs define the same coset.
    pub fn same_coset<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        if (self.block, self.layer) != (other.block, other.layer) {
            return false;
        }
        let diff: Vec<E> = self.class.iter().zip(&other.class).map(|(a, b)| f.sub(a, b)).collect();
        in_span(f, &self.indeterminacy, &diff)
    }

    pub fn report<F: Field<Elem = E>>(&self, f: &F) -> MasseyReport {
        MasseyReport {
            representative: self.representative.display(f),
            representative_terms: self.representative.to_records(f),
            e: self.e.display(f),
            f: self.f.display(f),
            indeterminacy: self.indeterminacy_basis.iter().map(|x| x.display(f)).collect(),
            trivial: self.trivial,
        }
    }
}

/// Field-independent summary of a [`MasseyResult`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MasseyReport {
    pub representative: String,
    pub representative_terms: Vec<TermRecord>,
    pub e: String,
    pub f: String,
    pub indeterminacy: Vec<String>,
    pub trivial: bool,
}

fn in_span<F: Field>(f: &F, span: &[Vec<F::Elem>], x: &[F::Elem]) -> bool {
    if x.iter().all(|c| f.is_zero(c)) {
        return true;
    }
    if span.is_empty() {
        return false;
    }
    let a = DenseMatrix::from_columns(x.len(), span, f.zero());
    linalg::solve_linear(f, &a, x).expect("shapes agree").solution.is_some()
}

/// Parity-relevant total degree of a homogeneous element.
fn total_degree<E: Clone + PartialEq + std::fmt::Debug>(x: &KoszulElement<E>) -> Result<usize> {
    x.total_degree().ok_or(Error::NotHomogeneous("mixed total degrees"))
}

pub fn triple_massey<F: Field>(f: &F, problem: &MasseyProblem<F::Elem>) -> Result<MasseyResult<F::Elem>> {
    triple_massey_with(f, problem, SolutionChoice::First)
}

/// Solves `de = a1 a2`, `df = a2 a3`, forms the representative and decides
/// whether its class lies in the indeterminacy `α1·H + H·α3`.
pub fn triple_massey_with<F: Field>(
    f: &F,
    problem: &MasseyProblem<F::Elem>,
    choice: SolutionChoice,
) -> Result<MasseyResult<F::Elem>> {
    let alg = KoszulAlgebra::new(&problem.complex);
    let (a1, a2, a3) = (&problem.a1, &problem.a2, &problem.a3);
    check_inputs(f, &alg, [a1, a2, a3])?;
    let e = solve(f, &alg, &alg.multiply(f, a1, a2), choice, 0, MasseyObstruction::FirstPair)?;
    let ff = solve(f, &alg, &alg.multiply(f, a2, a3), choice, 1, MasseyObstruction::SecondPair)?;
    finish(f, &alg, problem, e, ff)
}

/// Like [`triple_massey`] with caller-supplied `e` and `f`, which are
/// verified to satisfy `de = a1 a2` and `df = a2 a3`.
pub fn triple_massey_given<F: Field>(
    f: &F,
    problem: &MasseyProblem<F::Elem>,
    e: KoszulElement<F::Elem>,
    ff: KoszulElement<F::Elem>,
) -> Result<MasseyResult<F::Elem>> {
    let alg = KoszulAlgebra::new(&problem.complex);
    let (a1, a2, a3) = (&problem.a1, &problem.a2, &problem.a3);
    check_inputs(f, &alg, [a1, a2, a3])?;
    if alg.differential(f, &e) != alg.multiply(f, a1, a2) {
        return Err(Error::InvalidParameter("d e differs from a1*a2".into()));
    }
    if alg.differential(f, &ff) != alg.multiply(f, a2, a3) {
        return Err(Error::InvalidParameter("d f differs from a2*a3".into()));
    }
    finish(f, &alg, problem, e, ff)
}

fn check_inputs<F: Field>(f: &F, alg: &KoszulAlgebra, inputs: [&KoszulElement<F::Elem>; 3]) -> Result<()> {
    for a in inputs {
        for (mono, _) in a.terms() {
            if !alg.is_admissible(*mono) {
                return Err(Error::InvalidParameter(format!("{mono} is zero in R*(K)")));
            }
        }
        if !a.is_zero() {
            a.block_position()?;
        }
        if !alg.differential(f, a).is_zero() {
            return Err(Error::NotACocycle);
        }
    }
    Ok(())
}

fn solve<F: Field>(
    f: &F,
    alg: &KoszulAlgebra,
    target: &KoszulElement<F::Elem>,
    choice: SolutionChoice,
    salt: u64,
    obstruction: MasseyObstruction,
) -> Result<KoszulElement<F::Elem>> {
    let (x, kernel) = alg.coboundary_solutions(f, target)?.ok_or(Error::UndefinedMassey(obstruction))?;
    Ok(match choice {
        SolutionChoice::First => x,
        SolutionChoice::Perturbed(seed) => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            kernel.iter().fold(x, |acc, z| acc.add(f, &z.scale(f, &f.from_i64(rng.gen_range(-3..=3)))))
        }
    })
}

fn finish<F: Field>(
    f: &F,
    alg: &KoszulAlgebra,
    problem: &MasseyProblem<F::Elem>,
    e: KoszulElement<F::Elem>,
    ff: KoszulElement<F::Elem>,
) -> Result<MasseyResult<F::Elem>> {
    let (a1, a2, a3) = (&problem.a1, &problem.a2, &problem.a3);
    let zero_result = |e, ff| MasseyResult {
        representative: KoszulElement::zero(),
        e,
        f: ff,
        indeterminacy_basis: Vec::new(),
        trivial: true,
        block: VertexSet::EMPTY,
        layer: 0,
        class: Vec::new(),
        indeterminacy: Vec::new(),
    };
    if a1.is_zero() || a2.is_zero() || a3.is_zero() {
        return Ok(zero_result(e, ff));
    }
    let (d1, d2, d3) = (total_degree(a1)?, total_degree(a2)?, total_degree(a3)?);
    let (w1, w2, w3) = (a1.multidegree().expect("checked"), a2.multidegree().expect("checked"), a3.multidegree().expect("checked"));
    let first = alg.multiply(f, a1, &ff).scale(f, &f.from_i64(sign(d1 + 1)));
    let w = first.add(f, &alg.multiply(f, &e, a3));
    assert!(alg.differential(f, &w).is_zero(), "Massey representative must be a cocycle");

    let block_omega = w1.union(w2).union(w3);
    let disjoint = w1.is_disjoint(w2) && w2.is_disjoint(w3) && w1.is_disjoint(w3);
    let total = d1 + d2 + d3 - 1;
    let layer = match total.checked_sub(block_omega.len()) {
        Some(s) if disjoint => s,
        _ => {
            // w lives in a multidegree that cannot carry a class; it is zero
            debug_assert!(w.is_zero());
            return Ok(zero_result(e, ff));
        }
    };
    let block = alg.block(block_omega);
    let basis_size = block.basis_representatives(f, layer).len();
    let class = if w.is_zero() { vec![f.zero(); basis_size] } else { block.class_coordinates(f, &w, layer)? };

    // generators α1·h with h in block W∖ω1, and h'·α3 with h' in block W∖ω3
    let mut generators = Vec::new();
    for (outer, outer_degree, left) in [(w1, d2 + d3 - 1, true), (w3, d1 + d2 - 1, false)] {
        let rest = block_omega.difference(outer);
        let Some(s) = outer_degree.checked_sub(rest.len()) else { continue };
        for h in alg.block(rest).basis_representatives(f, s) {
            let g = if left { alg.multiply(f, a1, &h) } else { alg.multiply(f, &h, a3) };
            generators.push(g);
        }
    }
    let mut indeterminacy_basis = Vec::new();
    let mut indeterminacy: Vec<Vec<F::Elem>> = Vec::new();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        let c = block.class_coordinates(f, &g, layer)?;
        if !in_span(f, &indeterminacy, &c) {
            indeterminacy.push(c);
            indeterminacy_basis.push(g);
        }
    }
    let trivial = in_span(f, &indeterminacy, &class);
    Ok(MasseyResult {
        representative: w,
        e,
        f: ff,
        indeterminacy_basis,
        trivial,
        block: block_omega,
        layer,
        class,
        indeterminacy,
    })
}

/// Reads a Koszul element either as JSON term records (`[{"omega":..}]`) or
/// as text such as `v1u2 - u3v4`.
pub fn parse_element<F: Field>(f: &F, text: &str) -> Result<KoszulElement<F::Elem>> {
    let t = text.trim();
    if t.starts_with('[') {
        let records: Vec<TermRecord> = serde_json::from_str(t)?;
        KoszulElement::from_records(f, &records)
    } else {
        KoszulElement::parse(f, t)
    }
}

/// [`triple_massey`] on parsed inputs over a field given by `coeff`.
pub fn triple_massey_report(k: &SimplicialComplex, coeff: Coefficients, a: [&str; 3]) -> Result<MasseyReport> {
    with_field!(coeff, |f| {
        let problem = MasseyProblem {
            complex: k.clone(),
            a1: parse_element(f, a[0])?,
            a2: parse_element(f, a[1])?,
            a3: parse_element(f, a[2])?,
        };
        Ok(triple_massey(f, &problem)?.report(f))
    })
}

/// Output of [`demo_p3`].
#[derive(Clone, Debug)]
pub struct DemoP3 {
    pub complex: SimplicialComplex,
    /// With the solutions `e = 0`, `f = v5u3u4u6`.
    pub with_given_solution: MasseyResult<num_rational::BigRational>,
    /// With the solver's own choice of `e`, `f`.
    pub with_solver: MasseyResult<num_rational::BigRational>,
}

/// The cut-cube example: `⟨[v1u2], [v3u4], [v5u6]⟩` on `cut_cube_dual()`.
pub fn demo_p3() -> Result<DemoP3> {
    let f = Rationals;
    let complex = generators::cut_cube_dual();
    let problem = MasseyProblem {
        complex: complex.clone(),
        a1: KoszulElement::parse(&f, "v1u2")?,
        a2: KoszulElement::parse(&f, "v3u4")?,
        a3: KoszulElement::parse(&f, "v5u6")?,
    };
    let with_given_solution =
        triple_massey_given(&f, &problem, KoszulElement::zero(), KoszulElement::parse(&f, "v5u3u4u6")?)?;
    let with_solver = triple_massey(&f, &problem)?;
    Ok(DemoP3 { complex, with_given_solution, with_solver })
}

/// A complex `ζ_{σ1∪σ2'}(ζ_{σ2''∪σ3}(K1 * K2 * K3))` with the vertex sets of
/// the three join factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NtmasComplex {
    pub complex: SimplicialComplex,
    pub parts: [VertexSet; 3],
}

/// Facet choices for [`build_ntmas_complex`], in each factor's own labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NtmasFacets {
    pub sigma1: VertexSet,
    pub sigma2_first: VertexSet,
    pub sigma2_second: VertexSet,
    pub sigma3: VertexSet,
}

/// Joins the three complexes, then subdivides at `σ2'' ∪ σ3` (new vertex
/// `m + 1`) and at `σ1 ∪ σ2'` (new vertex `m + 2`).
pub fn build_ntmas_complex(k: [&SimplicialComplex; 3], facets: NtmasFacets) -> Result<NtmasComplex> {
    for (c, s) in [
        (k[0], facets.sigma1),
        (k[1], facets.sigma2_first),
        (k[1], facets.sigma2_second),
        (k[2], facets.sigma3),
    ] {
        if !c.facets().contains(&s) {
            return Err(Error::NotAFacet(s));
        }
    }
    if !facets.sigma2_first.is_disjoint(facets.sigma2_second) {
        return Err(Error::InvalidParameter("the two facets of K2 must be disjoint".into()));
    }
    let j12 = k[0].join(k[1])?;
    let j = j12.complex.join(k[2])?;
    let (m1, m2) = (k[0].m(), k[1].m());
    let parts = [
        VertexSet::full(m1),
        VertexSet::full(m2).shifted(m1),
        VertexSet::full(k[2].m()).shifted(m1 + m2),
    ];
    let inner = facets.sigma2_second.shifted(m1).union(facets.sigma3.shifted(m1 + m2));
    let outer = facets.sigma1.union(facets.sigma2_first.shifted(m1));
    let complex = j.complex.stellar_subdivision(inner)?.stellar_subdivision(outer)?;
    Ok(NtmasComplex { complex, parts })
}

/// `α_i = γ(β_i)` for generators `β_i` of `H̃^{n_i-1}(K̃_{V_i})`, where
/// `n_i - 1` is the dimension of the factor.
pub fn ntmas_classes<F: Field>(f: &F, ntmas: &NtmasComplex) -> Result<[KoszulElement<F::Elem>; 3]> {
    let k = &ntmas.complex;
    let mut out = Vec::with_capacity(3);
    for &part in &ntmas.parts {
        let sub = k.restriction(part);
        let degree = sub.dim();
        let space = ClassSpace::new(k, f, part, degree)?;
        if space.rank() != 1 {
            return Err(Error::InvalidParameter(format!(
                "H̃^{degree} of the full subcomplex on {part} has rank {}, expected 1",
                space.rank()
            )));
        }
        let beta = space.representatives(f).remove(0);
        out.push(hochster::gamma_iso(k, f, &beta)?);
    }
    let alg = KoszulAlgebra::new(k);
    for (x, y, which) in [(0, 1, MasseyObstruction::FirstPair), (1, 2, MasseyObstruction::SecondPair)] {
        if !alg.is_coboundary(f, &alg.multiply(f, &out[x], &out[y]))? {
            return Err(Error::UndefinedMassey(which));
        }
    }
    let a3 = out.pop().expect("three classes");
    let a2 = out.pop().expect("three classes");
    let a1 = out.pop().expect("three classes");
    Ok([a1, a2, a3])
}

/// One member of the family over `K_i ∈ {∂Δ¹, ∂Δ²}`.
#[derive(Clone, Debug)]
pub struct NtmasInstance {
    pub factors: [SimplicialComplex; 3],
    pub facets: NtmasFacets,
}

/// Every valid choice with `K_i ∈ {∂Δ¹, ∂Δ²}`. Only `∂Δ¹` has two disjoint
/// facets, so `K2 = ∂Δ¹` throughout.
pub fn ntmas_instances() -> Vec<NtmasInstance> {
    let spheres = [generators::boundary_simplex(2).expect("valid"), generators::boundary_simplex(3).expect("valid")];
    let mut out = Vec::new();
    for k1 in &spheres {
        for k2 in &spheres {
            for k3 in &spheres {
                for &sigma1 in k1.facets() {
                    for &s2a in k2.facets() {
                        for &s2b in k2.facets() {
                            if !s2a.is_disjoint(s2b) {
                                continue;
                            }
                            for &sigma3 in k3.facets() {
                                out.push(NtmasInstance {
                                    factors: [k1.clone(), k2.clone(), k3.clone()],
                                    facets: NtmasFacets { sigma1, sigma2_first: s2a, sigma2_second: s2b, sigma3 },
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

impl NtmasInstance {
    pub fn build(&self) -> Result<NtmasComplex> {
        build_ntmas_complex([&self.factors[0], &self.factors[1], &self.factors[2]], self.facets)
    }

    /// Builds the complex and computes the Massey product of its classes over `Q`.
    pub fn massey(&self) -> Result<MasseyResult<num_rational::BigRational>> {
        let f = Rationals;
        let ntmas = self.build()?;
        let [a1, a2, a3] = ntmas_classes(&f, &ntmas)?;
        triple_massey(&f, &MasseyProblem { complex: ntmas.complex, a1, a2, a3 })
    }
}
