//! Named and randomized complexes, golden data, and batch suites.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangements;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::facering::{self, CharMatrix};
use crate::generators;
use crate::hochster;
use crate::homology::field::Rationals;
use crate::homology::{self, Coefficients};
use crate::koszul::{self, KoszulAlgebra, KoszulElement, KoszulMonomial};
use crate::massey;
use crate::parallel::{self, Exec};
use crate::vertex_set::VertexSet;

/// The stored corpus; regenerating a complex from its entry is deterministic.
const CORPUS_V1: &str = include_str!("../corpus/v1/corpus.json");

/// Largest vertex count for exhaustive multidegree enumeration.
pub const MAX_EXHAUSTIVE_M: usize = 16;

/// Deterministic pseudo-random complex on `[m]`.
///
/// Every subset `s ⊆ [m]` becomes a candidate facet with probability
/// `density^|s|` (drawn as `|s|` independent Bernoulli trials), and the result
/// is the downward closure. `density = 1` yields the full simplex and
/// `density = 0` yields `{∅}` on `m` ghost vertices.
pub fn random_complex(m: usize, density: (u32, u32), seed: u64) -> Result<SimplicialComplex> {
    if !(1..=MAX_EXHAUSTIVE_M).contains(&m) {
        return Err(Error::InvalidParameter(format!("random complexes need 1 <= m <= {MAX_EXHAUSTIVE_M}, got {m}")));
    }
    let (num, den) = density;
    if den == 0 || num > den {
        return Err(Error::InvalidParameter(format!("density {num}/{den} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = VertexSet::full(m).subsets().filter(|s| {
        // consume the same number of draws regardless of outcome
        (0..s.len()).fold(true, |keep, _| rng.gen_ratio(num, den) && keep)
    });
    let gens: Vec<VertexSet> = candidates.collect();
    Ok(SimplicialComplex::from_generators_unchecked(m, gens))
}


/// `count` seed-pinned random complexes with `1 <= m <= max_m` and densities
/// `1/4`, `1/2`, `3/4` in rotation.
pub fn random_family(count: usize, max_m: usize, seed: u64) -> Result<Vec<SimplicialComplex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|n| {
            let m = rng.gen_range(1..=max_m);
            random_complex(m, (1 + (n % 3) as u32, 4), rng.gen())
        })
        .collect()
}

/// Where a stored value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Quoted from the literature.
    Published,
    /// Computed here and cross-checked by an independent route.
    Derived,
}

/// One stored expectation about a corpus complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenCheck {
    #[serde(flatten)]
    pub expect: Expectation,
    pub provenance: Provenance,
    pub source: String,
}

/// Maps keyed by degree use string keys, as in the stored JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    /// Betti table in display form.
    Betti { field: String, table: String },
    TotalBetti { field: String, values: BTreeMap<String, usize> },
    TotalDimension { field: String, value: usize },
    ReducedHomology { field: String, groups: BTreeMap<String, String> },
    MinimalNonfaces { sets: Vec<Vec<usize>> },
    Cm { field: String, verdict: Value },
    /// `field = "z"` selects the integer check.
    Lsop { matrix: Vec<Vec<i64>>, field: String, verdict: Value },
    UkRanks { field: String, ranks: BTreeMap<String, usize> },
    Golod { field: String, vanishes: bool },
    ToralRank { lhs: u64, rhs: u64 },
    Massey { field: String, a: [String; 3], representative: String, trivial: bool },
}

impl Expectation {
    fn kind(&self) -> &'static str {
        match self {
            Expectation::Betti { .. } => "betti",
            Expectation::TotalBetti { .. } => "total_betti",
            Expectation::TotalDimension { .. } => "total_dimension",
            Expectation::ReducedHomology { .. } => "reduced_homology",
            Expectation::MinimalNonfaces { .. } => "minimal_nonfaces",
            Expectation::Cm { .. } => "cm",
            Expectation::Lsop { .. } => "lsop",
            Expectation::UkRanks { .. } => "uk_ranks",
            Expectation::Golod { .. } => "golod",
            Expectation::ToralRank { .. } => "toral_rank",
            Expectation::Massey { .. } => "massey",
        }
    }

    /// The observed value when it differs from the stored one.
    fn evaluate(&self, k: &SimplicialComplex) -> Result<Option<Value>> {
        let differ = |ok: bool, seen: Value| if ok { None } else { Some(seen) };
        Ok(match self {
            Expectation::Betti { field, table } => {
                let seen = koszul::betti_table_koszul(k, field.parse()?).to_string();
                differ(&seen == table, json!(seen))
            }
            Expectation::TotalBetti { field, values } => {
                let seen = keyed(koszul::betti_table_koszul(k, field.parse()?).total_betti());
                differ(&seen == values, json!(seen))
            }
            Expectation::TotalDimension { field, value } => {
                let seen = hochster::betti_table_hochster(k, field.parse()?).total_dimension();
                differ(seen == *value, json!(seen))
            }
            Expectation::ReducedHomology { field, groups } => {
                let seen: BTreeMap<String, String> = homology::reduced_homology(k, field.parse()?)
                    .into_iter()
                    .filter(|(_, g)| !g.is_zero())
                    .map(|(d, g)| (d.to_string(), g.to_string()))
                    .collect();
                differ(&seen == groups, json!(seen))
            }
            Expectation::MinimalNonfaces { sets } => {
                let mut seen: Vec<Vec<usize>> = k.minimal_nonfaces().into_iter().map(VertexSet::to_vec).collect();
                let mut want = sets.clone();
                seen.sort();
                want.sort();
                differ(seen == want, json!(seen))
            }
            Expectation::Cm { field, verdict } => {
                let seen = facering::reisner_cm_test(k, field.parse()?)?.to_json();
                differ(&seen == verdict, seen)
            }
            Expectation::Lsop { matrix, field, verdict } => {
                let lambda = CharMatrix::new(matrix.clone())?;
                let coeff: Coefficients = field.parse()?;
                let seen = match coeff {
                    Coefficients::Integers => facering::lsop_check_integer(k, &lambda)?,
                    _ => facering::lsop_check_field(k, &lambda, coeff)?,
                }
                .to_json();
                differ(&seen == verdict, seen)
            }
            Expectation::UkRanks { field, ranks } => {
                let seen = keyed(arrangements::uk_homology_via_subcomplexes(k, field.parse()?).ranks());
                differ(&seen == ranks, json!(seen))
            }
            Expectation::Golod { field, vanishes } => {
                let seen = hochster::golod_product_screen(k, field.parse()?)?;
                differ(seen.vanishes() == *vanishes, serde_json::to_value(&seen)?)
            }
            Expectation::ToralRank { lhs, rhs } => {
                let seen = arrangements::toral_rank_check(k);
                differ(seen.lhs == *lhs && seen.rhs == *rhs, serde_json::to_value(&seen)?)
            }
            Expectation::Massey { field, a, representative, trivial } => {
                let seen = massey::triple_massey_report(k, field.parse()?, [&a[0], &a[1], &a[2]])?;
                let ok = &seen.representative == representative && seen.trivial == *trivial;
                differ(ok, serde_json::to_value(&seen)?)
            }
        })
    }
}

fn keyed(map: BTreeMap<usize, usize>) -> BTreeMap<String, usize> {
    map.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Deserialize)]
struct CorpusFile {
    version: u32,
    entries: Vec<EntryRecord>,
}

#[derive(Deserialize)]
struct EntryRecord {
    name: String,
    #[serde(default)]
    gen: Option<String>,
    #[serde(default)]
    m: Option<usize>,
    #[serde(default)]
    facets: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    minimal_nonfaces: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    sphere: bool,
    #[serde(default)]
    checks: Vec<GoldenCheck>,
}

impl EntryRecord {
    fn complex(&self) -> Result<SimplicialComplex> {
        let sets = |v: &[Vec<usize>]| v.iter().map(|s| VertexSet::from_labels(s.iter().copied())).collect::<Vec<_>>();
        let m = || self.m.ok_or_else(|| Error::Parse(format!("corpus entry `{}` needs `m`", self.name)));
        match (&self.gen, &self.facets, &self.minimal_nonfaces) {
            (Some(spec), None, None) => generators::from_spec(spec),
            (None, Some(f), None) => SimplicialComplex::new(m()?, sets(f)),
            (None, None, Some(n)) => SimplicialComplex::from_minimal_nonfaces(m()?, &sets(n)),
            _ => Err(Error::Parse(format!("corpus entry `{}` needs exactly one of gen, facets, minimal_nonfaces", self.name))),
        }
    }
}

/// A named complex with its stored expectations.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
    /// Triangulates a sphere, so `Z_K` is a closed manifold.
    pub sphere: bool,
    pub checks: Vec<GoldenCheck>,
}

/// Version of the stored corpus format.
pub const CORPUS_VERSION: u32 = 1;

/// The named corpus, in stored order.
pub fn named_corpus() -> Result<Vec<CorpusEntry>> {
    let file: CorpusFile = serde_json::from_str(CORPUS_V1)?;
    if file.version != CORPUS_VERSION {
        return Err(Error::Parse(format!("corpus version {} is not {CORPUS_VERSION}", file.version)));
    }
    file.entries
        .into_iter()
        .map(|e| {
            let complex = e.complex()?;
            Ok(CorpusEntry { name: e.name, complex, sphere: e.sphere, checks: e.checks })
        })
        .collect()
}

/// Whether `u1v2⋯vm` represents a generator of the unique positive-degree
/// class of `∂Δ^{m-1}`, compared against a Hochster basis class through `γ`.
pub fn sphere_class_check(m: usize) -> Result<bool> {
    let k = generators::boundary_simplex(m)?;
    let f = Rationals;
    let full = VertexSet::full(m);
    let mono = KoszulMonomial::new(VertexSet::singleton(1), full.without(1));
    let x = KoszulElement::monomial(&f, mono, num_rational::BigRational::from_integer(1.into()));
    let alg = KoszulAlgebra::new(&k);
    if !alg.differential(&f, &x).is_zero() || alg.is_coboundary(&f, &x)? {
        return Ok(false);
    }
    let basis = hochster::class_basis(&k, &f, full, m as isize - 2)?;
    let [beta] = basis.as_slice() else { return Ok(false) };
    let y = hochster::gamma_iso(&k, &f, beta)?;
    Ok(alg.is_coboundary(&f, &y.sub(&f, &x))? || alg.is_coboundary(&f, &y.add(&f, &x))?)
}

/// Poincaré duality of total Betti numbers, `b^k = b^{m+n-k}` with
/// `n = dim K + 1`, over `Q`. Returns the first failing `k`.
pub fn poincare_duality_failure(k: &SimplicialComplex) -> Option<usize> {
    let b = koszul::betti_table_koszul(k, Coefficients::Rationals).total_betti();
    let top = k.m() + (k.dim() + 1) as usize;
    (0..=top).find(|d| b.get(d).copied().unwrap_or(0) != b.get(&(top - d)).copied().unwrap_or(0))
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CaseResult {
    fn new(name: &str, check: &str, field: Option<Coefficients>, witness: Option<Value>) -> Self {
        CaseResult {
            name: name.to_string(),
            check: check.to_string(),
            field: field.map(|c| c.label()),
            passed: witness.is_none(),
            witness,
        }
    }

    fn from_result(name: &str, check: &str, field: Option<Coefficients>, r: Result<Option<Value>>) -> Self {
        let witness = r.unwrap_or_else(|e| Some(json!({"error": e.to_string()})));
        Self::new(name, check, field, witness)
    }
}

/// Machine-readable outcome of [`run_suite`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub version: u32,
    pub suite: String,
    pub fields: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] =
    &["hochster-vs-koszul", "paper-goldens", "goldens", "poincare-duality", "alexander", "reisner", "toral-rank"];

/// Default coefficients of a suite when none are given.
pub fn default_fields(suite: &str) -> Vec<Coefficients> {
    use Coefficients::*;
    match suite {
        "hochster-vs-koszul" | "alexander" => vec![Rationals, PrimeField(2), PrimeField(3), Integers],
        "reisner" => vec![Rationals, PrimeField(2)],
        _ => vec![Rationals],
    }
}

pub fn run_suite(name: &str, fields: &[Coefficients]) -> Result<SuiteReport> {
    run_suite_with(name, fields, Exec::default())
}

/// Runs a named battery over the corpus. Entries run in parallel; cases are
/// reported in corpus order. An empty `fields` selects [`default_fields`].
/// Suites that only make sense over one ring (goldens, Poincaré duality,
/// toral rank) ignore `fields`.
pub fn run_suite_with(name: &str, fields: &[Coefficients], exec: Exec) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::InvalidParameter(format!("unknown suite `{name}` (known: {})", SUITES.join(", "))));
    }
    let fields = if fields.is_empty() { default_fields(name) } else { fields.to_vec() };
    let corpus = named_corpus()?;
    let per_entry = |e: &CorpusEntry| -> Vec<CaseResult> {
        let k = &e.complex;
        let proper = arrangements::require_proper(k).is_ok();
        match name {
            "hochster-vs-koszul" => fields
                .iter()
                .map(|&c| {
                    let (h, q) = (hochster::betti_table_hochster_with(k, c, Exec::Sequential), koszul::betti_table_koszul_with(k, c, Exec::Sequential));
                    let w = (!h.same_entries(&q)).then(|| json!({"hochster": h.to_string(), "koszul": q.to_string()}));
                    CaseResult::new(&e.name, "tables_equal", Some(c), w)
                })
                .collect(),
            "paper-goldens" | "goldens" => e
                .checks
                .iter()
                .filter(|g| name == "goldens" || g.provenance == Provenance::Published)
                .map(|g| CaseResult::from_result(&e.name, g.expect.kind(), None, g.expect.evaluate(k)))
                .collect(),
            "poincare-duality" if e.sphere => {
                let w = poincare_duality_failure(k).map(|d| json!({"degree": d}));
                vec![CaseResult::new(&e.name, "poincare_duality", Some(Coefficients::Rationals), w)]
            }
            "alexander" if proper => fields
                .iter()
                .flat_map(|&c| {
                    let dual = arrangements::alexander_duality_check_with(k, c, Exec::Sequential)
                        .map(|v| (!v.passed()).then(|| serde_json::to_value(&v).expect("plain data")));
                    let routes = arrangements::uk_homology_via_dual_links_with(k, c, Exec::Sequential).map(|b| {
                        let a = arrangements::uk_homology_via_subcomplexes_with(k, c, Exec::Sequential);
                        (!a.same_homology(&b)).then(|| json!({"subcomplex": a.homology, "dual": b.homology}))
                    });
                    [
                        CaseResult::from_result(&e.name, "alexander_duality", Some(c), dual),
                        CaseResult::from_result(&e.name, "uk_routes_agree", Some(c), routes),
                    ]
                })
                .collect(),
            "reisner" if e.sphere => fields
                .iter()
                .map(|&c| {
                    let r = facering::reisner_cm_test_with(k, c, Exec::Sequential)
                        .map(|v| (!v.is_cohen_macaulay()).then(|| v.to_json()));
                    CaseResult::from_result(&e.name, "sphere_is_cohen_macaulay", Some(c), r)
                })
                .collect(),
            "toral-rank" => {
                let r = arrangements::toral_rank_check_with(k, Exec::Sequential);
                let w = (!r.holds).then(|| serde_json::to_value(&r).expect("plain data"));
                vec![CaseResult::new(&e.name, "toral_rank", Some(Coefficients::Rationals), w)]
            }
            _ => Vec::new(),
        }
    };
    let mut cases: Vec<CaseResult> = parallel::map(exec, &corpus, per_entry).into_iter().flatten().collect();
    cases.extend(extra_cases(name, exec)?);
    let failed = cases.iter().filter(|c| !c.passed).count();
    Ok(SuiteReport {
        version: CORPUS_VERSION,
        suite: name.to_string(),
        fields: fields.iter().map(Coefficients::label).collect(),
        passed: cases.len() - failed,
        failed,
        cases,
    })
}

/// Cases not tied to a stored complex.
fn extra_cases(name: &str, exec: Exec) -> Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    match name {
        "paper-goldens" | "goldens" => {
            for m in 2..=6 {
                let r = sphere_class_check(m).map(|ok| (!ok).then(|| json!("not the class of u1v2⋯vm")));
                out.push(CaseResult::from_result(&format!("sphere-{}", m - 1), "class_u1v2..vm", None, r));
            }
            let demo = massey::demo_p3().map(|d| {
                let f = Rationals;
                let given = d.with_given_solution.report(&f);
                let ok = given.representative == "v1v5 u2u3u4u6"
                    && !given.trivial
                    && d.with_solver.same_coset(&f, &d.with_given_solution);
                (!ok).then(|| serde_json::to_value(&given).expect("plain data"))
            });
            out.push(CaseResult::from_result("cut-cube-dual", "massey_demo", None, demo));
            let instances = massey::ntmas_instances();
            let results = parallel::map(exec, &instances, |inst| {
                inst.massey().map(|r| (r.trivial).then(|| json!({"facets": format!("{:?}", inst.facets)})))
            });
            for (n, r) in results.into_iter().enumerate() {
                out.push(CaseResult::from_result(&format!("ntmas-{n}"), "massey_nontrivial", None, r));
            }
        }
        "poincare-duality" => {
            let instances = massey::ntmas_instances();
            let results = parallel::map(exec, &instances, |inst| {
                inst.build().map(|c| poincare_duality_failure(&c.complex).map(|d| json!({"degree": d})))
            });
            for (n, r) in results.into_iter().enumerate() {
                let field = Some(Coefficients::Rationals);
                out.push(CaseResult::from_result(&format!("ntmas-{n}"), "poincare_duality", field, r));
            }
        }
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn deterministic() {
        let a = random_complex(7, (1, 2), 42).unwrap().to_json();
        let b = random_complex(7, (1, 2), 42).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn corpus_loads() {
        let corpus = named_corpus().unwrap();
        assert!(corpus.len() > 25);
        let mut names: Vec<&str> = corpus.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), corpus.len());
        assert!(corpus.iter().all(|e| e.checks.iter().all(|c| !c.source.is_empty())));
    }

    #[test]
    fn random_family_is_pinned() {
        let a = random_family(20, 8, 7).unwrap();
        let b = random_family(20, 8, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|k| (1..=8).contains(&k.m())));
    }

    #[test]
    fn sphere_classes() {
        for m in 2..=5 {
            assert!(sphere_class_check(m).unwrap());
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &[]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn cheap_suites_pass() {
        for name in ["hochster-vs-koszul", "reisner", "toral-rank", "alexander"] {
            let r = run_suite(name, &[Coefficients::Rationals]).unwrap();
            assert!(r.all_passed(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(r.passed > 0);
        }
    }

    #[test]
    fn density_extremes() {
        assert_eq!(random_complex(5, (1, 1), 3).unwrap(), generators::simplex(5).unwrap());
        assert_eq!(random_complex(5, (0, 1), 3).unwrap(), SimplicialComplex::empty(5));
        assert!(random_complex(0, (1, 2), 0).is_err());
        assert!(random_complex(17, (1, 2), 0).is_err());
        assert!(random_complex(3, (3, 2), 0).is_err());
    }
}
