//! Homology of the coordinate subspace arrangement complement `U(K)`,
//! combinatorial Alexander duality, and the toral rank inequality.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hochster::{self, FaceIndex};
use crate::homology::{self, Coefficients, FaceLayers, HomologyGroup};
use crate::parallel::{self, Exec};
use crate::vertex_set::VertexSet;

/// One summand of `H̃_degree(U(K))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    /// `τ ∉ K` for the subcomplex route, `σ ∈ K̂` for the dual route.
    pub set: Vec<usize>,
    /// Degree of the (co)homology group of `K_τ` or `link σ` used.
    pub source_degree: isize,
    /// Degree in `U(K)`.
    pub degree: usize,
    pub group: HomologyGroup,
}

/// `H̃_*(U(K))` with the contributing summands listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementReport {
    pub route: &'static str,
    pub field: String,
    pub homology: BTreeMap<usize, HomologyGroup>,
    pub pieces: Vec<Piece>,
}

impl ArrangementReport {
    fn assemble(route: &'static str, coeff: Coefficients, pieces: Vec<Piece>) -> Self {
        let mut homology: BTreeMap<usize, HomologyGroup> = BTreeMap::new();
        for p in &pieces {
            homology.entry(p.degree).or_default().add(&p.group);
        }
        ArrangementReport { route, field: coeff.label(), homology, pieces }
    }

    pub fn ranks(&self) -> BTreeMap<usize, usize> {
        self.homology.iter().filter(|(_, g)| g.rank > 0).map(|(&d, g)| (d, g.rank)).collect()
    }

    /// Same groups in every degree, regardless of how they were itemized.
    pub fn same_homology(&self, other: &ArrangementReport) -> bool {
        self.homology == other.homology
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

pub fn uk_homology_via_subcomplexes(k: &SimplicialComplex, coeff: Coefficients) -> ArrangementReport {
    uk_homology_via_subcomplexes_with(k, coeff, Exec::default())
}

/// `H̃_p(U(K)) = ⊕_{τ ∉ K} H̃_{p-|τ|-1}(K_τ)`.
pub fn uk_homology_via_subcomplexes_with(k: &SimplicialComplex, coeff: Coefficients, exec: Exec) -> ArrangementReport {
    let index = FaceIndex::new(k);
    let nonfaces: Vec<VertexSet> = VertexSet::full(k.m()).subsets().filter(|t| !k.contains(*t)).collect();
    let per = parallel::map(exec, &nonfaces, |&tau| {
        let faces = index.within(tau);
        if index.is_cone(tau, &faces) {
            return Vec::new();
        }
        let groups = homology::reduced_groups_of_faces(&FaceLayers::new(faces), coeff);
        groups
            .homology
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(s, g)| Piece { set: tau.to_vec(), source_degree: s as isize - 1, degree: s + tau.len(), group: g.clone() })
            .collect()
    });
    ArrangementReport::assemble("subcomplex", coeff, per.into_iter().flatten().collect())
}

pub fn uk_homology_via_dual_links(k: &SimplicialComplex, coeff: Coefficients) -> Result<ArrangementReport> {
    uk_homology_via_dual_links_with(k, coeff, Exec::default())
}

/// `H̃_i(U(K)) = ⊕_{σ ∈ K̂} H̃^{2m-2|σ|-i-2}(link_{K̂} σ)`.
pub fn uk_homology_via_dual_links_with(
    k: &SimplicialComplex,
    coeff: Coefficients,
    exec: Exec,
) -> Result<ArrangementReport> {
    let dual = k.dual()?;
    let m = k.m();
    let faces = dual.faces();
    let per = parallel::map(exec, &faces, |&sigma| {
        let link = dual.link(sigma).expect("faces have links");
        let groups = homology::reduced_groups(&link, coeff);
        groups
            .cohomology
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(s, g)| {
                // cohomology degree q = s - 1, so i = 2m - 2|σ| - q - 2
                let degree = 2 * m - 2 * sigma.len() - s - 1;
                Piece { set: sigma.to_vec(), source_degree: s as isize - 1, degree, group: g.clone() }
            })
            .collect::<Vec<_>>()
    });
    Ok(ArrangementReport::assemble("dual", coeff, per.into_iter().flatten().collect()))
}

/// Outcome of [`alexander_duality_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AlexanderVerdict {
    Pass { checked: usize },
    /// `H̃_degree(K_τ)` differs from `H̃^{|τ|-3-degree}(link_{K̂}([m]∖τ))`.
    Fail { tau: Vec<usize>, degree: isize, homology: HomologyGroup, cohomology: HomologyGroup },
}

impl AlexanderVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, AlexanderVerdict::Pass { .. })
    }
}

pub fn alexander_duality_check(k: &SimplicialComplex, coeff: Coefficients) -> Result<AlexanderVerdict> {
    alexander_duality_check_with(k, coeff, Exec::default())
}

/// Checks `H̃_j(K_τ) ≅ H̃^{|τ|-3-j}(link_{K̂} τ̂)` for every non-face `τ` and
/// every `j`, reporting the first mismatch (non-faces in subset order).
pub fn alexander_duality_check_with(
    k: &SimplicialComplex,
    coeff: Coefficients,
    exec: Exec,
) -> Result<AlexanderVerdict> {
    let dual = k.dual()?;
    let full = VertexSet::full(k.m());
    let nonfaces: Vec<VertexSet> = full.subsets().filter(|t| !k.contains(*t)).collect();
    let mismatch = |tau: &VertexSet| -> Option<(isize, HomologyGroup, HomologyGroup)> {
        let left = homology::reduced_groups(&k.restriction(*tau), coeff);
        let link = dual.link(full.difference(*tau)).expect("complements of non-faces are dual faces");
        let right = homology::reduced_groups(&link, coeff);
        let t = tau.len() as isize;
        (-1..=t).find_map(|j| {
            let (h, c) = (left.homology_in(j), right.cohomology_in(t - 3 - j));
            (h != c).then_some((j, h, c))
        })
    };
    let first = parallel::position_first(exec, &nonfaces, |t| mismatch(t).is_some());
    Ok(match first {
        None => AlexanderVerdict::Pass { checked: nonfaces.len() },
        Some(p) => {
            let (degree, homology, cohomology) = mismatch(&nonfaces[p]).expect("found above");
            AlexanderVerdict::Fail { tau: nonfaces[p].to_vec(), degree, homology, cohomology }
        }
    })
}

/// The toral rank inequality `dim ⊕_ω H̃*(K_ω; Q) ≥ 2^{m-n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToralRankReport {
    pub m: usize,
    /// `dim K + 1`.
    pub n: usize,
    /// For non-pure `K` the inequality is evaluated with `n = dim K + 1`.
    pub pure: bool,
    pub lhs: u64,
    pub rhs: u64,
    pub margin: i64,
    pub holds: bool,
}

/// Evaluates both sides; a violation is reported, never treated as a proof
/// of anything.
pub fn toral_rank_check(k: &SimplicialComplex) -> ToralRankReport {
    toral_rank_check_with(k, Exec::default())
}

pub fn toral_rank_check_with(k: &SimplicialComplex, exec: Exec) -> ToralRankReport {
    let table = hochster::betti_table_hochster_with(k, Coefficients::Rationals, exec);
    let m = k.m();
    let n = (k.dim() + 1) as usize;
    let lhs = table.total_dimension() as u64;
    let rhs = 1u64 << (m - n);
    ToralRankReport { m, n, pure: k.is_pure(), lhs, rhs, margin: lhs as i64 - rhs as i64, holds: lhs >= rhs }
}

/// Rejects the full simplex, whose dual has no faces at all.
pub fn require_proper(k: &SimplicialComplex) -> Result<()> {
    if k.contains(VertexSet::full(k.m())) {
        Err(Error::FullSimplex)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::koszul::betti_table_koszul;
    use proptest::prelude::*;

    fn ranks(r: &ArrangementReport) -> Vec<(usize, usize)> {
        r.ranks().into_iter().collect()
    }

    #[test]
    fn four_points() {
        let k = generators::points(4).unwrap();
        let a = uk_homology_via_subcomplexes(&k, Coefficients::Rationals);
        assert_eq!(ranks(&a), vec![(3, 6), (4, 8), (5, 3)]);
        let b = uk_homology_via_dual_links(&k, Coefficients::Rationals).unwrap();
        assert!(a.same_homology(&b));
    }

    #[test]
    fn sphere_complement() {
        for m in 2..=5 {
            let k = generators::boundary_simplex(m).unwrap();
            for coeff in [Coefficients::Rationals, Coefficients::Integers] {
                let a = uk_homology_via_subcomplexes(&k, coeff);
                assert_eq!(ranks(&a), vec![(2 * m - 1, 1)]);
                let b = uk_homology_via_dual_links(&k, coeff).unwrap();
                assert!(a.same_homology(&b));
                // the dual is {∅}, contributing through σ = ∅ only
                assert_eq!(b.pieces.len(), 1);
                assert!(b.pieces[0].set.is_empty() && b.pieces[0].source_degree == -1);
            }
        }
    }

    #[test]
    fn full_simplex() {
        let k = generators::simplex(4).unwrap();
        assert!(uk_homology_via_subcomplexes(&k, Coefficients::Rationals).homology.is_empty());
        assert!(matches!(uk_homology_via_dual_links(&k, Coefficients::Rationals), Err(Error::FullSimplex)));
        assert!(alexander_duality_check(&k, Coefficients::Rationals).is_err());
    }

    #[test]
    fn matches_moment_angle_betti_numbers() {
        for k in [generators::mgon(4).unwrap(), generators::mgon(5).unwrap(), generators::cut_cube_dual(), generators::rp2()] {
            let u = uk_homology_via_subcomplexes(&k, Coefficients::Rationals);
            let mut b = betti_table_koszul(&k, Coefficients::Rationals).total_betti();
            b.remove(&0);
            assert_eq!(u.ranks(), b);
        }
    }

    #[test]
    fn alexander_examples() {
        let k = generators::boundary_simplex(3).unwrap();
        assert!(alexander_duality_check(&k, Coefficients::Rationals).unwrap().passed());
        for k in [generators::rp2(), generators::cut_cube_dual(), generators::points(4).unwrap()] {
            assert!(alexander_duality_check(&k, Coefficients::Integers).unwrap().passed());
            // σ = [m]: H̃_j(K) ≅ H̃^{m-3-j}(K̂)
            let m = k.m() as isize;
            let h = homology::reduced_homology(&k, Coefficients::Integers);
            let c = homology::reduced_groups(&k.dual().unwrap(), Coefficients::Integers);
            for (&j, g) in &h {
                assert_eq!(*g, c.cohomology_in(m - 3 - j), "j = {j}");
            }
        }
    }

    #[test]
    fn toral_rank_examples() {
        for m in 5..=10 {
            let r = toral_rank_check(&generators::mgon(m).unwrap());
            assert_eq!(r.lhs, ((m as u64 - 4) << (m - 2)) + 4);
            assert_eq!(r.rhs, 1 << (m - 2));
            assert!(r.holds && r.margin >= 0);
        }
        let s = toral_rank_check(&generators::simplex(4).unwrap());
        assert_eq!((s.lhs, s.rhs, s.margin), (1, 1, 0));
        let b = toral_rank_check(&generators::boundary_simplex(5).unwrap());
        assert_eq!((b.lhs, b.rhs, b.margin), (2, 2, 0));
        let nonpure = SimplicialComplex::from_facets(3, &[&[1, 2], &[3]]).unwrap();
        assert!(!toral_rank_check(&nonpure).pure);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn routes_agree(m in 1usize..=6, seed in any::<u64>(), dense in 1u32..=3) {
            let k = crate::corpus::random_complex(m, (dense, 4), seed).unwrap();
            prop_assume!(require_proper(&k).is_ok());
            for coeff in [Coefficients::Rationals, Coefficients::PrimeField(2), Coefficients::Integers] {
                let a = uk_homology_via_subcomplexes(&k, coeff);
                let b = uk_homology_via_dual_links(&k, coeff).unwrap();
                prop_assert!(a.same_homology(&b), "{:?} {:?}", a.homology, b.homology);
                prop_assert!(alexander_duality_check(&k, coeff).unwrap().passed());
            }
        }
    }
}
