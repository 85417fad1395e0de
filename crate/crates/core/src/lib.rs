//! Exact computation of the bigraded Tor-algebra of Stanley–Reisner face
//! rings, i.e. the cohomology ring of moment-angle complexes `Z_K`.
//!
//! Two independent routes produce bigraded Betti tables: the finite
//! differential algebra `R*(K)` in [`koszul`], and reduced cohomology of full
//! subcomplexes in [`hochster`]. Around them sit cup and triple Massey
//! products, Cohen–Macaulay and lsop certificates, Alexander duality, and the
//! homology of coordinate subspace arrangement complements.

/// Runs `$body` with `$f` bound to the field named by a [`Coefficients`]
/// value; integer coefficients return [`Error::FieldRequired`].
macro_rules! with_field {
    ($coeff:expr, |$f:ident| $body:expr) => {
        match $coeff {
            $crate::homology::Coefficients::Rationals => {
                let $f = &$crate::homology::field::Rationals;
                $body
            }
            $crate::homology::Coefficients::PrimeField(p) => {
                let $f = &$crate::homology::field::PrimeField::new(p)?;
                $body
            }
            $crate::homology::Coefficients::Integers => return Err($crate::Error::FieldRequired),
        }
    };
}

pub mod arrangements;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod facering;
pub mod generators;
pub mod hochster;
pub mod homology;
pub mod koszul;
pub mod massey;
pub mod parallel;
pub mod vertex_set;

pub use complex::{SimplicialComplex, SimplicialMap};
pub use error::{Error, Result};
pub use homology::{Coefficients, HomologyGroup};
pub use parallel::Exec;
pub use vertex_set::VertexSet;
