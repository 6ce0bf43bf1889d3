//! Exact computations with homaloidal types of plane Cremona
//! transformations: Hudson's properness test, duals and characteristic
//! matrices, exhaustive enumeration per degree, degeneration and closure
//! criteria, the Bertini/Halphen obstruction family, and an exact symbolic
//! engine for rational maps of the plane over `Q[t]`.

pub mod degeneration;
pub mod enumeration;
pub mod error;
pub mod halphen;
pub mod lattice;
pub mod maps;

pub use error::{Error, Result};
pub use lattice::{HomaloidalType, IntegerMatrix, LatticeVector, WeylWord};
pub use maps::{HPoly, MapTriple, ProjPoint};
