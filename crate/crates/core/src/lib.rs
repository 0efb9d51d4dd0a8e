//! Slice functions on real associative *-algebras and numerical Cauchy
//! formulas over circularized domains.

pub mod algebra;
pub mod cauchy;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod jump;
pub mod parallel;
pub mod parse;
pub mod quadrature;
pub mod slice;

pub use algebra::{AlgebraSpec, ConeDecomposition, Element, DEFAULT_TOL};
pub use error::{Error, Result};
pub use geometry::{Circularized, Gis, PlanarDomain};
pub use slice::{SlicePolynomial, StemFunction};
