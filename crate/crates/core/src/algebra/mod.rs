//! Exact polynomial arithmetic over `Z` in the variables `x_i`, `a_i`, `q_i`.

pub mod format;
pub mod matrix;
pub mod poly;

pub use format::{format_json, format_text, parse_json, parse_text, ParseError};
pub use matrix::SymbolicMatrix;
pub use poly::{
    complete_homogeneous, elementary_symmetric, full_flag_q_degree, fundamental_weight, variables, x_leading_cmp,
    Family, GradedDegree, Monomial, Polynomial, Variable,
};
