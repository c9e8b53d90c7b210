//! Exact singularity orders, blowup resolutions and null-cobordism
//! certificates for toric orbifolds described by characteristic pairs.
//!
//! A characteristic pair is a simple polytope together with an integer
//! vector on each facet. Everything is computed over arbitrary-precision
//! integers and rationals.

pub mod charpair;
pub mod cli;
pub mod cobordism;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod polytope;
pub mod resolution;

pub use charpair::{HyperCharPair, LocusEntry, RCharPair, SingularLocus};
pub use cobordism::{cobound, cobound_with, CobordismCertificate, EmbeddedPolytope};
pub use error::{Error, Result};
pub use lattice::{IntMatrix, IntVector, RationalVector};
pub use polytope::{Face, SimplePolytope, ValidationReport};
pub use resolution::{resolve, ResolutionConfig, ResolutionTrace};
