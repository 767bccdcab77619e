//! Exact combinatorics and calibrated representations for orientifold
//! Temperley-Lieb (symplectic blob) algebras.

pub mod calibrated;
pub mod llt;
pub mod params;
pub mod paths;
pub mod poly;
pub mod tableaux;

pub use params::{ConfigError, NumericAssignment, OrbitId, ParamConfig, Residue, SpecialPoint};
pub use poly::LaurentPoly;
pub use tableaux::{Shape, StandardTableau, TableauError};
pub use paths::{PathEmbedding, PathError, Tile};
pub use calibrated::{CalibratedError, CalibratedModule, NumericSeed, RelationReport};
pub use llt::{DecompositionMatrix, Factorization, GradedMatrix, LltError};
