//! Exact truncated power series, Lefschetz polynomials and rational forms.

mod dense;
mod lpoly;
mod multi;
mod rational;

pub use dense::{fmt_poly, Dense};
pub use lpoly::{lpoly_eval_at_one, LPoly, LSeries};
pub use multi::{is_unit, ps_add, ps_inv, ps_mul, ps_pow, QSeries, VARIABLE_NAMES};
pub use rational::{
    clear_denominator, clear_denominator_dense, full_denominator, RationalForm, DEFAULT_GUARD,
};
