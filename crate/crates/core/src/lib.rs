//! Exact arithmetic and geometry over Q(ε), ε² = ε − 1, for testing the
//! geproci property of finite point sets in P³ and classifying half grids.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod proj;
pub mod classify;
pub mod config;
pub mod verify;

pub use field::{FieldElement, FieldError, Rational};
pub use matrix::{ExactMatrix, MatrixError};
pub use poly::{Form, Poly, PolyError};
pub use config::{ConfigError, Configuration, LineGroup};
pub use proj::{LinePoint, PlanePoint, ProjError, ProjLine, ProjPoint, Quadric};
