//! Abstract simplicial complexes on `[m]` and the combinatorial
//! constructions on them.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simplicial complex on the vertex set `[m] = {1, .., m}`, stored by its
/// facets.
///
/// The empty face is always present, so the smallest complex is `{∅}`.
/// Vertices `i` with `{i}` not a face ("ghost vertices") are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating family of faces; non-maximal
    /// members are dropped and the rest sorted lexicographically.
    pub fn new<I>(m: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices { m, max: MAX_VERTICES });
        }
        let full = VertexSet::full(m);
        let mut gens: Vec<VertexSet> = Vec::new();
        for g in generators {
            if !g.is_subset(full) {
                return Err(Error::VertexOutOfRange { vertex: g.max_label(), m });
            }
            gens.push(g);
        }
        Ok(Self::from_generators_unchecked(m, gens))
    }

    /// Same as [`SimplicialComplex::new`] with facets given as label lists.
    pub fn from_facets(m: usize, facets: &[&[usize]]) -> Result<Self> {
        let mut sets = Vec::with_capacity(facets.len());
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            sets.push(VertexSet::from_labels(f.iter().copied()));
        }
        Self::new(m, sets)
    }

    pub(crate) fn from_generators_unchecked(m: usize, gens: Vec<VertexSet>) -> Self {
        SimplicialComplex { m, facets: maximal_elements(gens) }
    }

    /// The complex `{∅}` on `m` ghost vertices.
    pub fn empty(m: usize) -> Self {
        SimplicialComplex { m, facets: vec![VertexSet::EMPTY] }
    }

    /// Reconstructs the complex whose minimal non-faces are `nonfaces`.
    pub fn from_minimal_nonfaces(m: usize, nonfaces: &[VertexSet]) -> Result<Self> {
        let full = VertexSet::full(m);
        if let Some(bad) = nonfaces.iter().find(|n| !n.is_subset(full)) {
            return Err(Error::VertexOutOfRange { vertex: bad.max_label(), m });
        }
        // Maximal sets avoiding every non-face: branch on deleting a vertex
        // from the first non-face still contained.
        let mut found = HashSet::new();
        let mut seen = HashSet::new();
        let mut stack = vec![full];
        while let Some(s) = stack.pop() {
            if !seen.insert(s) {
                continue;
            }
            match nonfaces.iter().find(|n| n.is_subset(s)) {
                None => {
                    found.insert(s);
                }
                Some(n) => stack.extend(n.iter().map(|v| s.without(v))),
            }
        }
        Ok(Self::from_generators_unchecked(m, found.into_iter().collect()))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    /// `max facet size - 1`; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let n = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == n)
    }

    /// Whether every vertex of `[m]` is a face.
    pub fn has_ghost_vertices(&self) -> bool {
        self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f)) != self.vertex_set()
    }

    /// Is `sigma` contained in some facet. Errors when a label exceeds `m`.
    pub fn is_face(&self, sigma: VertexSet) -> Result<bool> {
        self.check_range(sigma)?;
        Ok(self.contains(sigma))
    }

    /// Infallible membership test; out-of-range sets are never faces.
    pub fn contains(&self, sigma: VertexSet) -> bool {
        self.facets.iter().any(|f| sigma.is_subset(*f))
    }

    pub(crate) fn check_range(&self, sigma: VertexSet) -> Result<()> {
        if sigma.is_subset(self.vertex_set()) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: sigma.max_label(), m: self.m })
        }
    }

    /// All faces, including `∅`, ordered by size and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut all: HashSet<VertexSet> = HashSet::new();
        for f in &self.facets {
            if all.contains(f) {
                continue;
            }
            all.extend(f.subsets());
        }
        let mut faces: Vec<VertexSet> = all.into_iter().collect();
        faces.sort_by(VertexSet::cmp_size_lex);
        faces
    }

    /// Number of faces of each size `0..=dim+1` (so entry 0 counts `∅`).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; (self.dim() + 2) as usize];
        for f in self.faces() {
            counts[f.len()] += 1;
        }
        counts
    }

    /// The full subcomplex on `omega`, re-indexed to `1..=|omega|`.
    pub fn full_subcomplex(&self, omega: VertexSet) -> Result<FullSubcomplex> {
        self.check_range(omega)?;
        let labels = omega.to_vec();
        let relabel = |s: VertexSet| -> VertexSet {
            s.iter().map(|v| omega.rank_of(v) + 1).collect()
        };
        let gens = self.facets.iter().map(|f| relabel(f.intersection(omega))).collect();
        Ok(FullSubcomplex {
            complex: Self::from_generators_unchecked(labels.len(), gens),
            labels,
        })
    }

    /// `K_omega` kept on the original vertex set `[m]`.
    pub fn restriction(&self, omega: VertexSet) -> Self {
        let gens = self.facets.iter().map(|f| f.intersection(omega)).collect();
        Self::from_generators_unchecked(self.m, gens)
    }

    /// `{tau : sigma ∪ tau ∈ K, sigma ∩ tau = ∅}` on `[m]`.
    pub fn link(&self, sigma: VertexSet) -> Result<Self> {
        self.require_face(sigma)?;
        let gens = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.difference(sigma))
            .collect();
        Ok(Self::from_generators_unchecked(self.m, gens))
    }

    /// `{tau : sigma ∪ tau ∈ K}` on `[m]`.
    pub fn star(&self, sigma: VertexSet) -> Result<Self> {
        self.require_face(sigma)?;
        let gens = self.facets.iter().filter(|f| sigma.is_subset(**f)).copied().collect();
        Ok(Self::from_generators_unchecked(self.m, gens))
    }

    fn require_face(&self, sigma: VertexSet) -> Result<()> {
        if self.is_face(sigma)? {
            Ok(())
        } else {
            Err(Error::NotAFace(sigma))
        }
    }

    /// The join `self * other` on `[m1 + m2]`; `other`'s labels are shifted by `m1`.
    pub fn join(&self, other: &Self) -> Result<Join> {
        let m = self.m + other.m;
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices { m, max: MAX_VERTICES });
        }
        let offset = self.m;
        let gens = self
            .facets
            .iter()
            .flat_map(|a| other.facets.iter().map(move |b| a.union(b.shifted(offset))))
            .collect();
        Ok(Join { complex: Self::from_generators_unchecked(m, gens), offset })
    }

    /// The cone `Δ⁰ * K`, with apex `m + 1`.
    pub fn cone(&self) -> Result<Self> {
        let apex = self.m + 1;
        if apex > MAX_VERTICES {
            return Err(Error::TooManyVertices { m: apex, max: MAX_VERTICES });
        }
        let gens = self.facets.iter().map(|f| f.with(apex)).collect();
        Ok(Self::from_generators_unchecked(apex, gens))
    }

    /// Replaces the star of `sigma` by the cone over its boundary; the new
    /// vertex is labeled `m + 1`.
    pub fn stellar_subdivision(&self, sigma: VertexSet) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::EmptyFace);
        }
        self.require_face(sigma)?;
        let apex = self.m + 1;
        if apex > MAX_VERTICES {
            return Err(Error::TooManyVertices { m: apex, max: MAX_VERTICES });
        }
        let mut gens = Vec::with_capacity(self.facets.len() + sigma.len());
        for &f in &self.facets {
            if sigma.is_subset(f) {
                gens.extend(sigma.iter().map(|v| f.without(v).with(apex)));
            } else {
                gens.push(f);
            }
        }
        Ok(Self::from_generators_unchecked(apex, gens))
    }

    /// Inclusion-minimal non-faces, in lexicographic order.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let faces = self.faces();
        let face_set: HashSet<VertexSet> = faces.iter().copied().collect();
        let mut out = BTreeSet::new();
        for sigma in faces {
            for v in self.vertex_set().difference(sigma).iter() {
                let tau = sigma.with(v);
                if face_set.contains(&tau) {
                    continue;
                }
                if tau.iter().all(|w| face_set.contains(&tau.without(w))) {
                    out.insert(tau);
                }
            }
        }
        out.into_iter().collect()
    }

    /// `{omega ⊆ [m] : [m] \ omega ∉ K}`. Undefined for the full simplex.
    pub fn dual(&self) -> Result<Self> {
        let full = self.vertex_set();
        if self.contains(full) {
            return Err(Error::FullSimplex);
        }
        let gens = self.minimal_nonfaces().into_iter().map(|n| full.difference(n)).collect();
        Ok(Self::from_generators_unchecked(self.m, gens))
    }

    /// A vertex bijection `p` (1-based, `p[i-1]` is the image of `i`) carrying
    /// `self` onto `other`, if one exists.
    pub fn find_isomorphism(&self, other: &Self) -> Option<Vec<usize>> {
        if self.m != other.m || self.facets.len() != other.facets.len() || self.f_vector() != other.f_vector() {
            return None;
        }
        let m = self.m;
        let profile = |k: &Self, v: usize| -> Vec<usize> {
            let mut p: Vec<usize> = k.facets.iter().filter(|f| f.contains(v)).map(|f| f.len()).collect();
            p.sort_unstable();
            p
        };
        let mine: Vec<_> = (1..=m).map(|v| profile(self, v)).collect();
        let theirs: Vec<_> = (1..=m).map(|v| profile(other, v)).collect();
        let target: HashSet<VertexSet> = other.facets.iter().copied().collect();
        let mut assignment = vec![0usize; m];
        let mut used = vec![false; m + 1];
        let found = self.extend_isomorphism(1, &mine, &theirs, &target, &mut assignment, &mut used);
        found.then_some(assignment)
    }

    fn extend_isomorphism(
        &self,
        v: usize,
        mine: &[Vec<usize>],
        theirs: &[Vec<usize>],
        target: &HashSet<VertexSet>,
        assignment: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let m = self.m;
        if v > m {
            let map = |s: VertexSet| -> VertexSet { s.iter().map(|x| assignment[x - 1]).collect() };
            return self.facets.iter().all(|f| target.contains(&map(*f)));
        }
        for w in 1..=m {
            if used[w] || mine[v - 1] != theirs[w - 1] {
                continue;
            }
            assignment[v - 1] = w;
            // Partial check: facets fully inside the assigned prefix must map to facets.
            let assigned = VertexSet::full(v);
            let ok = self.facets.iter().filter(|f| f.is_subset(assigned)).all(|f| {
                let img: VertexSet = f.iter().map(|x| assignment[x - 1]).collect();
                target.contains(&img)
            });
            if ok {
                used[w] = true;
                if self.extend_isomorphism(v + 1, mine, theirs, target, assignment, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }

    /// Canonical JSON: `{"m":<int>,"facets":[[..],..]}` with facets sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("complex serialization cannot fail")
    }

    pub fn to_record(&self) -> ComplexRecord {
        ComplexRecord { m: self.m, facets: self.facets.iter().map(|f| f.to_vec()).collect() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: ComplexRecord = serde_json::from_str(text)?;
        rec.into_complex()
    }
}

/// Serialized form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexRecord {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        let refs: Vec<&[usize]> = self.facets.iter().map(|f| f.as_slice()).collect();
        SimplicialComplex::from_facets(self.m, &refs)
    }
}

/// Result of [`SimplicialComplex::full_subcomplex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSubcomplex {
    pub complex: SimplicialComplex,
    /// `labels[k]` is the original label of vertex `k + 1`.
    pub labels: Vec<usize>,
}

/// Result of [`SimplicialComplex::join`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join {
    pub complex: SimplicialComplex,
    /// Vertex `j` of the second factor is vertex `j + offset` of the join.
    pub offset: usize,
}

fn maximal_elements(mut gens: Vec<VertexSet>) -> Vec<VertexSet> {
    gens.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut out: Vec<VertexSet> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|f| g.is_subset(*f)) {
            out.push(g);
        }
    }
    if out.is_empty() {
        out.push(VertexSet::EMPTY);
    }
    out.sort();
    out
}

/// A vertex map `[m1] → [m2]` sending faces of `source` to faces of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    /// `vertex_map[i - 1]` is the image of vertex `i`.
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.m() {
            return Err(Error::ShapeMismatch(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.m()
            )));
        }
        if let Some(&bad) = vertex_map.iter().find(|&&j| j == 0 || j > target.m()) {
            return Err(Error::VertexOutOfRange { vertex: bad, m: target.m() });
        }
        let map = SimplicialMap { source, target, vertex_map };
        for &f in map.source.facets() {
            let image = map.image(f);
            if !map.target.contains(image) {
                return Err(Error::NotSimplicial { face: f, image });
            }
        }
        Ok(map)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        SimplicialMap { source: k.clone(), target: k.clone(), vertex_map: (1..=k.m()).collect() }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertex_map[v - 1]
    }

    pub fn image(&self, sigma: VertexSet) -> VertexSet {
        sigma.iter().map(|v| self.apply(v)).collect()
    }

    /// Vertices of the source mapping to `j`.
    pub fn preimage(&self, j: usize) -> VertexSet {
        (1..=self.source.m()).filter(|&i| self.apply(i) == j).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != next.source {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        let vertex_map = self.vertex_map.iter().map(|&j| next.apply(j)).collect();
        SimplicialMap::new(self.source.clone(), next.target.clone(), vertex_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_labels(v.iter().copied())
    }

    #[test]
    fn face_queries_on_triangle_boundary() {
        let k = generators::boundary_simplex(3).unwrap();
        assert!(k.is_face(vs(&[1, 2])).unwrap());
        assert!(!k.is_face(vs(&[1, 2, 3])).unwrap());
        assert!(k.is_face(VertexSet::EMPTY).unwrap());
        assert!(matches!(k.is_face(vs(&[4])), Err(Error::VertexOutOfRange { vertex: 4, m: 3 })));
    }

    #[test]
    fn full_subcomplex_of_square() {
        let k = generators::mgon(4).unwrap();
        let sub = k.full_subcomplex(vs(&[1, 3])).unwrap();
        assert_eq!(sub.labels, vec![1, 3]);
        assert_eq!(sub.complex, SimplicialComplex::from_facets(2, &[&[1], &[2]]).unwrap());
        let empty = k.full_subcomplex(VertexSet::EMPTY).unwrap();
        assert_eq!(empty.complex, SimplicialComplex::empty(0));
        assert_eq!(k.full_subcomplex(k.vertex_set()).unwrap().complex, k);
    }

    #[test]
    fn links_and_stars() {
        let k = generators::boundary_simplex(3).unwrap();
        assert_eq!(k.link(VertexSet::EMPTY).unwrap(), k);
        let lk = k.link(vs(&[1])).unwrap();
        assert_eq!(lk.facets(), &[vs(&[2]), vs(&[3])]);
        assert_eq!(lk.m(), 3);
        assert!(matches!(k.link(vs(&[1, 2, 3])), Err(Error::NotAFace(_))));
        let st = k.star(vs(&[1])).unwrap();
        assert_eq!(st.facets(), &[vs(&[1, 2]), vs(&[1, 3])]);
    }

    #[test]
    fn join_of_three_zero_spheres_is_octahedron() {
        let s0 = generators::boundary_simplex(2).unwrap();
        let k = s0.join(&s0).unwrap().complex.join(&s0).unwrap().complex;
        assert_eq!(k.m(), 6);
        assert_eq!(k.facets().len(), 8);
        assert!(k.facets().iter().all(|f| f.len() == 3));
        assert_eq!(k, generators::cross_polytope(3).unwrap());
    }

    #[test]
    fn join_with_empty_complex_is_identity() {
        let k = generators::mgon(5).unwrap();
        let j = k.join(&SimplicialComplex::empty(0)).unwrap();
        assert_eq!(j.complex, k);
        assert_eq!(j.offset, 5);
    }

    #[test]
    fn stellar_subdivision_of_facet() {
        let k = generators::boundary_simplex(4).unwrap();
        let sigma = vs(&[1, 2, 3]);
        let z = k.stellar_subdivision(sigma).unwrap();
        assert_eq!(z.m(), 5);
        assert_eq!(z.facets().len(), k.facets().len() - 1 + 3);
        assert!(matches!(k.stellar_subdivision(VertexSet::EMPTY), Err(Error::EmptyFace)));
        assert!(matches!(k.stellar_subdivision(vs(&[1, 2, 3, 4])), Err(Error::NotAFace(_))));
    }

    #[test]
    fn octahedron_with_two_edge_subdivisions_is_cut_cube_dual() {
        let oct = generators::cross_polytope(3).unwrap();
        // edges {1,3} and {4,5}: disjoint, and {1,3,4,5} contains the non-edge {3,4}
        let k = oct.stellar_subdivision(vs(&[1, 3])).unwrap().stellar_subdivision(vs(&[4, 5])).unwrap();
        assert_eq!(k.m(), 8);
        assert!(k.find_isomorphism(&generators::cut_cube_dual()).is_some());
    }

    #[test]
    fn minimal_nonfaces_examples() {
        assert_eq!(generators::mgon(4).unwrap().minimal_nonfaces(), vec![vs(&[1, 3]), vs(&[2, 4])]);
        assert!(generators::simplex(4).unwrap().minimal_nonfaces().is_empty());
        // 2-dimensional complex on five vertices from the face ring introduction
        let k = SimplicialComplex::from_facets(5, &[&[1, 2, 4], &[2, 3, 5], &[1, 3], &[4, 5]]).unwrap();
        assert_eq!(k.minimal_nonfaces(), vec![vs(&[1, 2, 3]), vs(&[1, 5]), vs(&[2, 4, 5]), vs(&[3, 4])]);
    }

    #[test]
    fn ghost_vertex_is_minimal_nonface() {
        let k = SimplicialComplex::from_facets(3, &[&[1, 2]]).unwrap();
        assert!(k.has_ghost_vertices());
        assert_eq!(k.minimal_nonfaces(), vec![vs(&[3])]);
    }

    #[test]
    fn dual_complex_examples() {
        let sphere = generators::boundary_simplex(5).unwrap();
        assert_eq!(sphere.dual().unwrap(), SimplicialComplex::empty(5));
        let pts = generators::points(5).unwrap();
        let d = pts.dual().unwrap();
        assert_eq!(d.facets().len(), 10);
        assert!(d.facets().iter().all(|f| f.len() == 3));
        assert!(matches!(generators::simplex(3).unwrap().dual(), Err(Error::FullSimplex)));
    }

    #[test]
    fn json_is_canonical() {
        let k = SimplicialComplex::from_facets(4, &[&[3, 4], &[1, 2], &[2, 3], &[1, 4], &[1]]).unwrap();
        let text = k.to_json();
        assert_eq!(text, r#"{"m":4,"facets":[[1,2],[1,4],[2,3],[3,4]]}"#);
        assert_eq!(SimplicialComplex::from_json(&text).unwrap().to_json(), text);
        assert_eq!(SimplicialComplex::empty(2).to_json(), r#"{"m":2,"facets":[[]]}"#);
        assert!(SimplicialComplex::from_json(r#"{"m":2,"facets":[[1,3]]}"#).is_err());
    }

    #[test]
    fn simplicial_map_validation() {
        let square = generators::mgon(4).unwrap();
        let edge = generators::simplex(2).unwrap();
        let fold = SimplicialMap::new(square.clone(), edge.clone(), vec![1, 2, 1, 2]).unwrap();
        assert_eq!(fold.preimage(1), vs(&[1, 3]));
        // sending the edge {1,2} of the square onto a non-edge of the square
        let err = SimplicialMap::new(square.clone(), square.clone(), vec![1, 3, 3, 4]);
        assert!(matches!(err, Err(Error::NotSimplicial { .. })));
    }
}
