//! Named complexes.
//!
//! None of the generators produce ghost vertices (apart from
//! `boundary_simplex(1)`, whose single vertex is not a face of `∂Δ⁰ = {∅}`).

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

fn check(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::InvalidParameter(format!("{name} requires a parameter >= {min}, got {value}")));
    }
    if value > MAX_VERTICES {
        return Err(Error::TooManyVertices { m: value, max: MAX_VERTICES });
    }
    Ok(())
}

/// The full simplex `Δ^{m-1}`.
pub fn simplex(m: usize) -> Result<SimplicialComplex> {
    check("simplex", m, 1)?;
    SimplicialComplex::new(m, [VertexSet::full(m)])
}

/// `∂Δ^{m-1}`, a triangulated `(m-2)`-sphere.
pub fn boundary_simplex(m: usize) -> Result<SimplicialComplex> {
    check("boundary_simplex", m, 1)?;
    let full = VertexSet::full(m);
    SimplicialComplex::new(m, (1..=m).map(|v| full.without(v)))
}

/// Boundary of the `m`-gon: edges `{i, i+1}` and `{1, m}`.
pub fn mgon(m: usize) -> Result<SimplicialComplex> {
    check("mgon", m, 3)?;
    SimplicialComplex::new(m, (1..=m).map(|i| VertexSet::from_labels([i, i % m + 1])))
}

/// Boundary of the `n`-dimensional cross-polytope on `2n` vertices; the
/// non-edges are `{2k-1, 2k}`.
pub fn cross_polytope(n: usize) -> Result<SimplicialComplex> {
    check("cross_polytope", 2 * n, 2)?;
    let facets = (0..1u64 << n).map(|choice| {
        (0..n).map(|k| if choice >> k & 1 == 0 { 2 * k + 1 } else { 2 * k + 2 }).collect::<VertexSet>()
    });
    SimplicialComplex::new(2 * n, facets)
}

/// `m` disjoint points.
pub fn points(m: usize) -> Result<SimplicialComplex> {
    check("points", m, 1)?;
    SimplicialComplex::new(m, (1..=m).map(VertexSet::singleton))
}

/// The 8-vertex 2-sphere dual to the cube with two non-adjacent edges cut
/// off.
///
/// Labels: cube facets `v1..v6` are `1..6`, the two new facets `w1, w2` are
/// `7, 8`. Its minimal non-faces are exactly
/// `v1v2, v3v4, v5v6, w1w2, v1v3, v4v5, w1v3, w1v6, w2v2, w2v4`.
pub fn cut_cube_dual() -> SimplicialComplex {
    const FACETS: [[usize; 3]; 12] = [
        [1, 4, 6],
        [1, 4, 7],
        [1, 5, 7],
        [1, 5, 8],
        [1, 6, 8],
        [2, 3, 5],
        [2, 3, 6],
        [2, 4, 6],
        [2, 4, 7],
        [2, 5, 7],
        [3, 5, 8],
        [3, 6, 8],
    ];
    SimplicialComplex::new(8, FACETS.iter().map(|f| f.iter().copied().collect()))
        .expect("hard-coded facets are in range")
}

/// Minimal 6-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex {
    const FACETS: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    SimplicialComplex::new(6, FACETS.iter().map(|f| f.iter().copied().collect()))
        .expect("hard-coded facets are in range")
}

/// Parses `name` or `name:param` into a complex, e.g. `mgon:5`,
/// `boundary_simplex:4`, `cut_cube_dual`, or `random:<m>:<p>/<q>:<seed>`.
pub fn from_spec(spec: &str) -> Result<SimplicialComplex> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let name = name.trim().replace('-', "_");
    let number = || -> Result<usize> {
        let p = param.ok_or_else(|| Error::InvalidParameter(format!("generator `{name}` needs a parameter")))?;
        p.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad generator parameter `{p}`")))
    };
    let no_param = || -> Result<()> {
        match param {
            None => Ok(()),
            Some(p) => Err(Error::InvalidParameter(format!("generator `{name}` takes no parameter, got `{p}`"))),
        }
    };
    match name.as_str() {
        "simplex" => simplex(number()?),
        "boundary_simplex" | "sphere" => boundary_simplex(number()?),
        "mgon" | "polygon" => mgon(number()?),
        "cross_polytope" | "octahedral" => cross_polytope(number()?),
        "points" => points(number()?),
        "cut_cube_dual" | "p3" => no_param().map(|_| cut_cube_dual()),
        "rp2" => no_param().map(|_| rp2()),
        "random" => random(param.unwrap_or_default()),
        "empty" => Ok(SimplicialComplex::empty(param.map(|_| number()).transpose()?.unwrap_or(0))),
        _ => Err(Error::InvalidParameter(format!("unknown generator `{name}`"))),
    }
}

fn random(param: &str) -> Result<SimplicialComplex> {
    let bad = || Error::InvalidParameter(format!("random complexes are `random:<m>:<p>/<q>:<seed>`, got `random:{param}`"));
    let parts: Vec<&str> = param.split(':').collect();
    let [m, density, seed] = parts.as_slice() else { return Err(bad()) };
    let (p, q) = density.split_once('/').ok_or_else(bad)?;
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let (p, q) = (u32::try_from(num(p)?).map_err(|_| bad())?, u32::try_from(num(q)?).map_err(|_| bad())?);
    crate::corpus::random_complex(num(m)? as usize, (p, q), num(seed)?)
}
