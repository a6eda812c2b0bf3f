//! Exact arithmetic in Q(ζ_n) and polynomial rings over it.

mod cyclotomic;
mod poly;
mod roots;

pub use cyclotomic::{field_arith, CycField, CycNumber, FieldOp, Rational};
pub use poly::{poly_arith, standard_vars, Monomial, MultiPoly, PolyOp};
pub use roots::{homogeneous_binary_roots, is_rational_square, sqrt_in_field, ProjPoint, RootSet};
