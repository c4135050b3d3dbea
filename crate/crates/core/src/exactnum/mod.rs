//! Exact rational arithmetic, univariate polynomials and real root
//! isolation.

pub mod decimal;
pub mod expint;
pub mod field;
pub mod poly;
pub mod roots;

pub use decimal::{precision_digits, to_decimal};
pub use expint::{exp_poly_integral, exp_poly_integral_between, exp_poly_integral_scaled};
pub use field::{int, rat, rational_to_f64, Field};
pub use poly::{deflate, linear_factor, Polynomial, RationalPolynomial, RealPolynomial};
pub use roots::{count_roots, square_free_decomposition, sturm_isolate, IsolatedRoot};
