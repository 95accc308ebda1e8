//! Exact symbolic verification of Hom-type splitting algebras
//! (dendriform, diassociative, quadri-dendriform, six-dendriform and
//! friends) given by polynomial-valued structure constants.

#![allow(clippy::needless_range_loop)]
pub mod axioms;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod io;
pub mod linalg;
pub mod model;
pub mod morphisms;
pub mod operators;
pub mod polyring;
pub mod report;
pub mod sample;

pub use error::{Error, Result};
pub use model::{
    bundle_specialize, validate_bundle, ActionBundle, AlgebraBundle, BilinearOp, Bindings, Kind, LinearMap,
    RepresentationBundle, Vector,
};
pub use polyring::{parse, Polynomial, Rational};
pub use report::{Report, ReportEntry, Status};
