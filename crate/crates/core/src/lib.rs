//! Volumes of hyperbolic tetrahedra through octahedral decompositions, and
//! numerical certificates that the Regge symmetries are scissors congruences.
//!
//! Modules, bottom up:
//!
//! * [`special`]: the Lobachevsky function and its quadrature oracle;
//! * [`tetra`]: dihedral-angle data, Gram matrices, classification,
//!   ideal/prism volumes and relabeling symmetries;
//! * [`leibon`]: the octahedron angle system, its holonomy quadratic, and the
//!   volume formulas built on it;
//! * [`scissors`]: Regge transforms, the 16-piece decomposition of 2T and the
//!   scissors-congruence verifier;
//! * [`oracle`]: formula-free ground truth (Klein-model realization and
//!   quadrature, Schläfli check);
//! * [`sample`]: seeded generation of random finite tetrahedra.

pub mod error;
pub mod leibon;
pub mod oracle;
pub mod sample;
pub mod scissors;
pub mod special;
pub mod tetra;

pub use error::{Error, Result};
