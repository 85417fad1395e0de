use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::field::Field;
use crate::vertex_set::{sign, VertexSet};

/// The basis monomial `u_exterior v_polynomial`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KoszulMonomial {
    pub exterior: VertexSet,
    pub polynomial: VertexSet,
}

impl KoszulMonomial {
    pub fn new(exterior: VertexSet, polynomial: VertexSet) -> Self {
        KoszulMonomial { exterior, polynomial }
    }

    pub fn unit() -> Self {
        KoszulMonomial { exterior: VertexSet::EMPTY, polynomial: VertexSet::EMPTY }
    }

    /// `(i, j)` for bidegree `(-i, 2j)`.
    pub fn bidegree(&self) -> (usize, usize) {
        let i = self.exterior.len();
        (i, i + self.polynomial.len())
    }

    pub fn multidegree(&self) -> VertexSet {
        self.exterior.union(self.polynomial)
    }

    /// `-i + 2j`.
    pub fn total_degree(&self) -> usize {
        self.exterior.len() + 2 * self.polynomial.len()
    }
}

impl fmt::Display for KoszulMonomial {
    /// `v1v5 u2u3`, `u1`, `v2`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: String = self.polynomial.iter().map(|i| format!("v{i}")).collect();
        let u: String = self.exterior.iter().map(|i| format!("u{i}")).collect();
        match (v.is_empty(), u.is_empty()) {
            (true, true) => f.write_str("1"),
            (false, true) => f.write_str(&v),
            (true, false) => f.write_str(&u),
            (false, false) => write!(f, "{v} {u}"),
        }
    }
}

/// Finite linear combination of basis monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement<E> {
    terms: BTreeMap<KoszulMonomial, E>,
}

impl<E> Default for KoszulElement<E> {
    fn default() -> Self {
        KoszulElement { terms: BTreeMap::new() }
    }
}

impl<E: Clone + PartialEq + fmt::Debug> KoszulElement<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, mono: KoszulMonomial, coeff: E) -> Self {
        let mut x = Self::zero();
        x.add_term(f, mono, coeff);
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KoszulMonomial, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &KoszulMonomial) -> Option<&E> {
        self.terms.get(mono)
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, mono: KoszulMonomial, coeff: E) {
        if f.is_zero(&coeff) {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c = f.add(c, &coeff);
                if f.is_zero(c) {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(f, *m, c.clone());
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.scale(f, &f.from_i64(-1)))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let mut out = Self::zero();
        for (m, x) in self.terms() {
            out.add_term(f, *m, f.mul(x, c));
        }
        out
    }

    /// Common multidegree of all terms, if any.
    pub fn multidegree(&self) -> Option<VertexSet> {
        let mut it = self.terms.keys().map(|m| m.multidegree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Common total degree of all terms, if any.
    pub fn total_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.total_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Multidegree and layer (number of `v`s) of a nonzero homogeneous element.
    pub fn block_position(&self) -> Result<(VertexSet, usize)> {
        let omega = self.multidegree().ok_or(Error::NotHomogeneous("mixed multidegrees"))?;
        let mut sizes = self.terms.keys().map(|m| m.polynomial.len());
        let s = sizes.next().ok_or(Error::NotHomogeneous("zero element has no degree"))?;
        if sizes.any(|t| t != s) {
            return Err(Error::NotHomogeneous("mixed bidegrees"));
        }
        Ok((omega, s))
    }

    pub fn map_coefficients<G: Field>(&self, g: &G, conv: impl Fn(&E) -> G::Elem) -> KoszulElement<G::Elem> {
        let mut out = KoszulElement::zero();
        for (m, c) in self.terms() {
            out.add_term(g, *m, conv(c));
        }
        out
    }

    /// Serializable form; coefficients become integers or `"p/q"` strings.
    pub fn to_records<F: Field<Elem = E>>(&self, f: &F) -> Vec<TermRecord> {
        self.terms()
            .map(|(m, c)| TermRecord {
                omega: m.exterior.to_vec(),
                sigma: m.polynomial.to_vec(),
                coeff: rational_to_json(&f.to_rational(c)),
            })
            .collect()
    }

    pub fn from_records<F: Field<Elem = E>>(f: &F, records: &[TermRecord]) -> Result<Self> {
        let mut out = Self::zero();
        for r in records {
            let exterior = labels(&r.omega)?;
            let polynomial = labels(&r.sigma)?;
            if !exterior.is_disjoint(polynomial) {
                return Err(Error::Parse(format!("u and v indices overlap in {:?}/{:?}", r.omega, r.sigma)));
            }
            let q = rational_from_json(&r.coeff)?;
            out.add_term(f, KoszulMonomial { exterior, polynomial }, f.from_rational(&q)?);
        }
        Ok(out)
    }

    pub fn display<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let q = f.to_rational(c);
            let (neg, mag) = if q < BigRational::zero() && f.characteristic() == 0 { (true, -q) } else { (false, q) };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&m.to_string());
        }
        out
    }

    /// Parses expressions such as `v1u2 - 2 u3v4 + 1/2 v5`.
    ///
    /// Factors within a term are multiplied in the order written, so
    /// `u3u2` is `-u2u3`. Repeated indices make the term zero.
    pub fn parse<F: Field<Elem = E>>(f: &F, text: &str) -> Result<Self> {
        let mut out = Self::zero();
        let cleaned = text.replace('*', " ");
        let mut chars = cleaned.chars().peekable();
        let mut pending_sign = 1i64;
        let mut saw_term = false;
        loop {
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
            match chars.peek() {
                None => break,
                Some('+') => {
                    chars.next();
                    continue;
                }
                Some('-') => {
                    chars.next();
                    pending_sign = -pending_sign;
                    continue;
                }
                _ => {}
            }
            // coefficient
            let mut coeff_text = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit() || *c == '/') {
                coeff_text.push(chars.next().expect("peeked"));
            }
            let coeff = if coeff_text.is_empty() {
                BigRational::one()
            } else {
                parse_rational(&coeff_text)?
            };
            // factors
            let mut exterior = VertexSet::EMPTY;
            let mut polynomial = VertexSet::EMPTY;
            let mut factor_sign = 1i64;
            let mut zero = false;
            let mut any_factor = false;
            loop {
                while chars.peek().is_some_and(|c| *c == ' ' || *c == '\t') {
                    chars.next();
                }
                let Some(&kind) = chars.peek() else { break };
                if kind != 'u' && kind != 'v' {
                    break;
                }
                chars.next();
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(chars.next().expect("peeked"));
                }
                let idx: usize = digits.parse().map_err(|_| Error::Parse(format!("missing index after `{kind}`")))?;
                if idx == 0 || idx > crate::vertex_set::MAX_VERTICES {
                    return Err(Error::Parse(format!("index {idx} out of range")));
                }
                any_factor = true;
                if kind == 'u' {
                    if exterior.contains(idx) {
                        zero = true;
                    }
                    // move u_idx past the u's already written with larger index
                    factor_sign *= sign(exterior.len() - exterior.rank_of(idx + 1));
                    exterior = exterior.with(idx);
                } else {
                    if polynomial.contains(idx) {
                        zero = true;
                    }
                    polynomial = polynomial.with(idx);
                }
            }
            if coeff_text.is_empty() && !any_factor {
                let rest: String = chars.collect();
                return Err(Error::Parse(format!("unexpected input `{rest}`")));
            }
            saw_term = true;
            if !zero && exterior.is_disjoint(polynomial) {
                let c = coeff * BigInt::from(pending_sign * factor_sign);
                out.add_term(f, KoszulMonomial { exterior, polynomial }, f.from_rational(&c)?);
            }
            pending_sign = 1;
        }
        if !saw_term {
            return Err(Error::Parse("empty expression".into()));
        }
        Ok(out)
    }
}

impl<E> KoszulElement<E> {
    pub fn monomials(&self) -> impl Iterator<Item = &KoszulMonomial> {
        self.terms.keys()
    }
}

/// One serialized term `coeff · u_omega v_sigma`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub omega: Vec<usize>,
    pub sigma: Vec<usize>,
    pub coeff: serde_json::Value,
}

fn labels(v: &[usize]) -> Result<VertexSet> {
    if let Some(bad) = v.iter().find(|&&x| x == 0 || x > crate::vertex_set::MAX_VERTICES) {
        return Err(Error::Parse(format!("index {bad} out of range")));
    }
    Ok(VertexSet::from_labels(v.iter().copied()))
}

pub(crate) fn rational_to_json(q: &BigRational) -> serde_json::Value {
    if q.is_integer() {
        match i64::try_from(q.numer()) {
            Ok(n) => serde_json::Value::from(n),
            Err(_) => serde_json::Value::from(q.numer().to_string()),
        }
    } else {
        serde_json::Value::from(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub(crate) fn rational_from_json(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer"))),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
