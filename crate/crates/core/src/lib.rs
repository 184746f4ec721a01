//! Exact relative Lie algebra cohomology over the rationals.
//!
//! The crate computes `H^n(g, h, E)` through the inhomogeneous complex
//! `Hom_h(∧^n g/h, E)`, and checks the surrounding machinery (standard and
//! twisted resolutions, the coinduced module, contracting homotopies) on
//! finite windows of a truncated enveloping algebra.

pub mod cochain;
pub mod complexes;
pub mod enveloping;
pub mod io;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod rep;
pub mod random;
pub mod report;
pub mod resolution;
pub mod suite;

pub use cochain::{CohomologyReport, CohomologyResult, RelativeComplex};
pub use complexes::{ContractingHomotopy, FiniteComplex};
pub use error::*;
pub use lie::{LieAlgebra, QuotientData, ReductivityCertificate, Subalgebra};
pub use linalg::{Rational, RationalMatrix, RationalVector, Subspace};
pub use rep::GModule;
pub use report::{Failure, ValidationReport};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    pub mod algebras {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    pub mod cohomology {}
    #[doc = include_str!("../../../book/src/enveloping.md")]
    pub mod enveloping {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    pub mod resolutions {}
    #[doc = include_str!("../../../book/src/homotopy.md")]
    pub mod homotopy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
