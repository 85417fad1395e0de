use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::homology::{self, Coefficients, FaceLayers, HomologyGroup, IntMatrix};
use crate::parallel::{self, Exec};
use crate::vertex_set::{sign, VertexSet};

use super::KoszulAlgebra;

/// Bigraded Betti numbers `β^{-i,2j}` with their multigraded refinement.
///
/// Cells are keyed by `(i, j)` with `i, j >= 0`, standing for bidegree
/// `(-i, 2j)`. Only nonzero cells are stored. Over `Z` a cell carries the
/// torsion of the corresponding cohomology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub coefficients: Coefficients,
    pub entries: BTreeMap<(usize, usize), HomologyGroup>,
    pub multigraded: BTreeMap<(usize, VertexSet), HomologyGroup>,
}

impl BettiTable {
    pub fn new(coefficients: Coefficients) -> Self {
        BettiTable { coefficients, entries: BTreeMap::new(), multigraded: BTreeMap::new() }
    }

    /// Adds `group` in bidegree `(-i, 2|ω|)` coming from multidegree `ω`.
    pub fn insert(&mut self, i: usize, omega: VertexSet, group: &HomologyGroup) {
        if group.is_zero() {
            return;
        }
        self.entries.entry((i, omega.len())).or_default().add(group);
        self.multigraded.entry((i, omega)).or_default().add(group);
    }

    /// The cell `(-i, 2j)`.
    pub fn get(&self, i: usize, j: usize) -> HomologyGroup {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).map_or(0, |g| g.rank)
    }

    /// Cells ordered by `i`, then `j`, as `((-i, 2j), group)`.
    pub fn cells(&self) -> impl Iterator<Item = ((isize, usize), &HomologyGroup)> {
        self.entries.iter().map(|(&(i, j), g)| ((-(i as isize), 2 * j), g))
    }

    /// Ranks as `(-i, 2j) -> rank`, dropping torsion-only cells.
    pub fn ranks(&self) -> BTreeMap<(isize, usize), usize> {
        self.cells().filter(|(_, g)| g.rank > 0).map(|(k, g)| (k, g.rank)).collect()
    }

    /// Total Betti numbers `b^k = Σ_{2j-i=k} β^{-i,2j}`.
    pub fn total_betti(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (&(i, j), g) in &self.entries {
            if g.rank > 0 {
                *out.entry(2 * j - i).or_insert(0) += g.rank;
            }
        }
        out
    }

    /// `Σ_k b^k`, the total dimension of `H*(Z_K)`.
    pub fn total_dimension(&self) -> usize {
        self.entries.values().map(|g| g.rank).sum()
    }

    pub fn to_json(&self, with_multigraded: bool) -> serde_json::Value {
        let record = BettiRecord {
            field: self.coefficients.label(),
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), g)| CellRecord { i, j2: 2 * j, rank: g.rank, torsion: g.torsion.clone() })
                .collect(),
            multigraded: with_multigraded.then(|| {
                self.multigraded
                    .iter()
                    .map(|(&(i, omega), g)| MultiCellRecord {
                        i,
                        omega: omega.to_vec(),
                        rank: g.rank,
                        torsion: g.torsion.clone(),
                    })
                    .collect()
            }),
        };
        serde_json::to_value(record).expect("plain data serializes")
    }

    /// Reads the format of [`BettiTable::to_json`]. Without a multigraded
    /// section the refinement is left empty.
    pub fn from_json(value: &serde_json::Value) -> crate::Result<Self> {
        let record: BettiRecord = serde_json::from_value(value.clone())?;
        let coefficients = record.field.replace("F_", "fp:").parse()?;
        let mut table = BettiTable::new(coefficients);
        for c in record.entries {
            if c.j2 % 2 == 1 {
                return Err(crate::Error::Parse(format!("odd internal degree {}", c.j2)));
            }
            let g = HomologyGroup { rank: c.rank, torsion: c.torsion };
            if !g.is_zero() {
                table.entries.insert((c.i, c.j2 / 2), g);
            }
        }
        for c in record.multigraded.unwrap_or_default() {
            let g = HomologyGroup { rank: c.rank, torsion: c.torsion };
            if !g.is_zero() {
                table.multigraded.insert((c.i, VertexSet::from_labels(c.omega)), g);
            }
        }
        Ok(table)
    }

    /// Equality of the bigraded cells only.
    pub fn same_entries(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }
}

impl fmt::Display for BettiTable {
    /// `(0,0):1, (-1,4):2`; torsion is appended as `+Z/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((a, b), g) in self.cells() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "({a},{b}):{}", g.rank)?;
            for t in &g.torsion {
                write!(f, "+Z/{t}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BettiRecord {
    field: String,
    entries: Vec<CellRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    multigraded: Option<Vec<MultiCellRecord>>,
}

#[derive(Serialize, Deserialize)]
struct CellRecord {
    i: usize,
    j2: usize,
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct MultiCellRecord {
    i: usize,
    omega: Vec<usize>,
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

pub fn betti_table_koszul(k: &SimplicialComplex, coeff: Coefficients) -> BettiTable {
    betti_table_koszul_with(k, coeff, Exec::default())
}

/// Betti table from the cohomology of the `2^m` multidegree blocks of `R*(K)`.
pub fn betti_table_koszul_with(k: &SimplicialComplex, coeff: Coefficients, exec: Exec) -> BettiTable {
    let alg = KoszulAlgebra::new(k);
    let omegas: Vec<VertexSet> = VertexSet::full(k.m()).subsets().collect();
    let groups = parallel::map(exec, &omegas, |&omega| alg.block(omega).cohomology(coeff));
    let mut table = BettiTable::new(coeff);
    for (omega, per_layer) in omegas.iter().zip(&groups) {
        for (s, g) in per_layer.iter().enumerate() {
            table.insert(omega.len() - s, *omega, g);
        }
    }
    table
}

/// Betti table from `R*(K)` assembled per internal degree `2j`, without
/// splitting into multidegrees. Exponential in `m`; meant as a test oracle.
pub fn full_complex_betti(k: &SimplicialComplex, coeff: Coefficients) -> BettiTable {
    let m = k.m();
    let faces = FaceLayers::new(k.faces());
    let mut table = BettiTable::new(coeff);
    for j in 0..=m {
        // layer s: all u_ω v_σ with |σ| = s, |ω| = j - s
        let layers: Vec<Vec<(VertexSet, VertexSet)>> = (0..=j.min(faces.top()))
            .map(|s| {
                let mut layer = Vec::new();
                for &sigma in faces.layers.get(s).map_or(&[][..], |l| l.as_slice()) {
                    let rest = VertexSet::full(m).difference(sigma);
                    for omega in rest.subsets().filter(|w| w.len() == j - s) {
                        layer.push((omega, sigma));
                    }
                }
                layer.sort();
                layer
            })
            .collect();
        let index: Vec<std::collections::HashMap<(VertexSet, VertexSet), usize>> =
            layers.iter().map(|l| l.iter().enumerate().map(|(p, x)| (*x, p)).collect()).collect();
        let matrices: Vec<IntMatrix> = (0..layers.len().saturating_sub(1))
            .map(|s| {
                let mut mat = IntMatrix::new(layers[s + 1].len(), layers[s].len());
                for (col, &(omega, sigma)) in layers[s].iter().enumerate() {
                    let mut entries: Vec<(usize, i64)> = omega
                        .iter()
                        .filter_map(|i| {
                            let target = (omega.without(i), sigma.with(i));
                            index[s + 1].get(&target).map(|&row| (row, sign(omega.rank_of(i))))
                        })
                        .collect();
                    entries.sort_unstable();
                    mat.cols[col] = entries;
                }
                mat
            })
            .collect();
        let inv: Vec<_> = matrices.iter().map(|mat| homology::matrix_invariants(mat, coeff)).collect();
        for s in 0..layers.len() {
            let out = inv.get(s).map_or(0, |x| x.rank);
            let (inc, torsion) = if s == 0 { (0, Vec::new()) } else { (inv[s - 1].rank, inv[s - 1].torsion.clone()) };
            let g = HomologyGroup { rank: layers[s].len() - out - inc, torsion };
            if !g.is_zero() {
                table.entries.entry((j - s, j)).or_default().add(&g);
            }
        }
    }
    table
}
