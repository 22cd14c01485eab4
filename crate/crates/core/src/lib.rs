//! Rees cones of monomial ideals, matroids and discrete polymatroids.
//!
//! The crate computes exact facet representations of Rees cones, classifies
//! them as ideal or quasi-ideal, computes Hilbert bases of the associated
//! affine semigroups and decides normality with a checkable certificate.
//! Every computation is exact; there is no floating point anywhere.

pub mod cli;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod exactlat;
pub mod json;
pub mod matroid;
pub mod polymatroid;
pub mod reescone;
pub mod semigroup;

pub use error::{Error, Result};
pub use exactlat::{IntMat, IntVec};
pub use matroid::{Matroid, MonomialIdeal};
pub use polymatroid::PolymatroidBases;
pub use reescone::{Classification, ConeClassification, FacetSystem, ReesCone};
pub use semigroup::{HilbertBasisResult, NormalityCertificate, Verdict};
