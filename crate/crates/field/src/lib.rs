//! Exact arithmetic in the field Q(v, t, a1, ..., a8), where q = v^2.
//!
//! Values are [`RatFunc`]s kept in a canonical reduced form, so structural equality
//! is field equality. [`Character`]s are finite integer combinations of Laurent
//! monomials, and [`Character::lambda`] sends `sum n_m m` to `prod (1 - m)^(n_m)`.

mod character;
mod error;
pub mod gcd;
mod monomial;
mod parse;
pub mod poly;
mod ratfunc;

pub use character::Character;
pub use error::FieldError;
pub use monomial::Monomial;
pub use parse::parse;
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Number of variables: v, t and eight framing parameters.
pub const NVARS: usize = 10;
pub const VAR_V: usize = 0;
pub const VAR_T: usize = 1;
/// Largest supported framing parameter index.
pub const MAX_PARAMS: usize = NVARS - 2;

/// Variable slot of the framing parameter a_i (1-based).
pub fn var_a(i: usize) -> usize {
    assert!((1..=MAX_PARAMS).contains(&i), "parameter index a{i} out of range");
    i + 1
}
