//! The value field: Puiseux polynomials in the units `a` (the size of the
//! positive integers) and `b` (the size of the unit real interval), extended
//! by exponential terms. Comparison is eventual comparison along the levels.

mod eval;
mod order;
mod puiseux;
mod standard;
mod text;
mod value;

pub use eval::{evaluate_at_level, evaluate_integer, MAX_EVAL_BITS};
pub use order::{beta_floor, certified_level, compare, dominant_term, dominates, sign_puiseux, sign_value, Comparison, Sign};
pub use puiseux::{Exponent, Puiseux};
pub use standard::{classify, classify_value, divide, st, st_puiseux_ratio, st_quotient, Class, Division, Quotient, StandardPart};
pub use text::{format_puiseux, format_value, parse_value, write_value, Symbols};
pub use value::{ExpTerm, Value};
