//! Exact arithmetic: rationals, univariate and bivariate polynomials,
//! cyclotomic fields and linear algebra.

pub mod bipoly;
pub mod cyclotomic;
pub mod field;
pub mod linalg;
pub mod ntheory;
pub mod numeric;
pub mod poly;

pub use bipoly::BiPoly;
pub use cyclotomic::{cyclotomic_poly, CyclotomicNumber};
pub use field::{Field, Rational, Ring};
pub use linalg::{nullspace, poly_det};
pub use numeric::{compare_abs_to_one, AbsClass, PrecisionBudget};
pub use poly::UniPoly;
