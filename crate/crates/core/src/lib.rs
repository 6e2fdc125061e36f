//! Exact arithmetic over ℚ and 𝔽₂(u), valuations at places, finite-precision
//! completions and real root counting, assembled into certificates showing
//! that the quadratic family `X² + X − γ(y,t)²` splits at every place of a
//! finite set `S` while staying irreducible over the base field.

pub mod algebra;
pub mod error;
pub mod padic;
pub mod places;
pub mod real;
pub mod theorem;

pub use algebra::{
    f2u::F2u,
    fp::{Fp, F2},
    poly::Poly,
    ratfunc::RatFunc,
    rational::Rational,
    Field, Sqrt, Valuation,
};
pub use error::{Error, Result};

pub use places::{FieldTag, GlobalField, Place, PlaceSet};
