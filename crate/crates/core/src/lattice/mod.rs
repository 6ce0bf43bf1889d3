//! Homaloidal-type arithmetic on the lattice `Z e_0 + Z e_1 + ...`.
//!
//! A type `(d; m_1, ..., m_r)` corresponds to the vector
//! `d*e_0 - m_1*e_1 - ... - m_r*e_r` of the lattice, equipped with the
//! quadratic form `diag(1, -1, ..., -1)`. The module provides the Noether
//! checks, the reflection `sigma_0`, Hudson's properness test with full
//! word/matrix bookkeeping, dual types and characteristic matrices.
//!
//! Sign convention, stated once: [`LatticeVector`] and [`HomaloidalType`]
//! store the degree `d` and the multiplicities `m_i` directly (all
//! non-negated), while [`IntegerMatrix`] always acts on raw basis
//! coordinates `(v_0, v_1, ...)` in which the same type reads
//! `(d, -m_1, ..., -m_r)`. Conversions happen inside
//! [`IntegerMatrix::apply`]; matrices therefore match the classical
//! characteristic-matrix entries literally.

mod hudson;
mod matrix;
mod vector;

pub use hudson::{
    characteristic_matrix, dual_type, hudson_reduce, hudson_test, is_proper, HudsonOutcome,
    WeylStep, WeylWord,
};
pub use matrix::IntegerMatrix;
pub use vector::{noether_check, parse_type_literal, HomaloidalType, LatticeVector};
