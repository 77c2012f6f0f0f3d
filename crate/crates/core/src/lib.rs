//! Exact workbench for finitely presented graded algebras.

pub mod catalog;
pub mod commutative;
pub mod error;
pub mod exactnum;
pub mod gradedsearch;
pub mod groups16;
pub mod linalg;
pub mod ncgroebner;
pub mod presentations;
pub mod projgeometry;
pub mod quadraticdual;

pub use error::{Error, Result};
pub use exactnum::{Cyclo8, FieldKind, FieldValue, Rational};
pub use linalg::Matrix;
pub use presentations::{NCPoly, Presentation, Word};
