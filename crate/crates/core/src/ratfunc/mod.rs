//! Exact Laurent polynomials and rational functions with denominators
//! kept as products of binomials `(1 - m)`.

mod format;
mod monomial;
mod parse;
mod poly;
mod rational;
mod series;
mod var;

/// Coefficient ring of every polynomial.
pub type Coeff = num_rational::BigRational;

pub use format::{poly_json, poly_latex, poly_text, ratfunc_json, ratfunc_latex, ratfunc_latex_brackets, ratfunc_text};
pub use monomial::Monomial;
pub use parse::{parse_monomial, parse_poly, parse_ratfunc};
pub use poly::LaurentPoly;
pub use rational::{rf_add, rf_equal, rf_invert_vars, rf_mul, rf_sum, RatFunc};
pub use series::{is_zero_series, rf_series, TruncatedSeries};
pub use var::Var;

/// Integer constant as a coefficient.
pub fn coeff(c: i64) -> Coeff {
    Coeff::from_integer(c.into())
}
