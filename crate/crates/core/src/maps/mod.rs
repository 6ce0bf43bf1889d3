//! Exact symbolic engine for rational maps of the plane.
//!
//! Coefficients live in `Q[t]`: every family in scope is polynomial in the
//! parameter, and divisions only happen through content extraction followed
//! by clearing denominators. Gcds run as fraction-free pseudo-remainder
//! sequences; divisibility is decided exactly.

mod families;
mod hpoly;
mod parse;
mod point;
mod qpoly;
mod triple;
mod zpoly;

pub use families::{
    cubic_example_pair, kappa_family, kappa_infnear_family, kappa_tilde_family, pair_degeneration,
    quartic_collinear_family, sigma2_sigma1_family, sigma_one, sigma_two_family,
    standard_quadratic,
};
pub use hpoly::HPoly;
pub use parse::{parse_poly, render_poly, split_triple};
pub use point::ProjPoint;
pub use qpoly::{QPoly, Var};
pub use triple::{
    compose, find_linear_contracted, invert3, is_contracted, is_inverse_pair, jacobian,
    multiplicity_at, primitive_part, substitute_t, verify_jacobian_factorization, MapTriple,
};
