//! Homogeneous polynomials in `x, y, z` over `Q[t]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::maps::parse::{parse_poly, render_poly};
use crate::maps::qpoly::QPoly;

/// A homogeneous polynomial in `x, y, z` with `Q[t]` coefficients. The
/// degree is carried explicitly so that zero polynomials (which arise as
/// components of degenerate triples) keep their formal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPoly {
    degree: u16,
    poly: QPoly,
}

impl HPoly {
    /// Wraps a nonzero homogeneous polynomial, reading off its degree.
    pub fn new(poly: QPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::Precondition(
                "zero polynomial needs an explicit degree".into(),
            ));
        }
        match poly.homogeneous_xyz_degree() {
            Some(d) => Ok(HPoly { degree: d, poly }),
            None => Err(Error::Parse(
                "polynomial is not homogeneous in x, y, z".into(),
            )),
        }
    }

    /// Wraps a polynomial with a declared degree; the polynomial must be
    /// zero or homogeneous of exactly that degree.
    pub fn with_degree(poly: QPoly, degree: u16) -> Result<Self> {
        if !poly.is_zero() && poly.homogeneous_xyz_degree() != Some(degree) {
            return Err(Error::Precondition(format!(
                "polynomial is not homogeneous of degree {degree}"
            )));
        }
        Ok(HPoly { degree, poly })
    }

    pub fn zero(degree: u16) -> Self {
        HPoly {
            degree,
            poly: QPoly::zero(),
        }
    }

    pub fn one() -> Self {
        HPoly {
            degree: 0,
            poly: QPoly::one(),
        }
    }

    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, other: &HPoly) -> HPoly {
        HPoly {
            degree: self.degree + other.degree,
            poly: self.poly.mul(&other.poly),
        }
    }

    pub fn pow(&self, n: u16) -> HPoly {
        HPoly {
            degree: self.degree * n,
            poly: self.poly.pow(n),
        }
    }

    /// Canonical representative modulo rational scalars.
    pub fn canonical(&self) -> HPoly {
        HPoly {
            degree: self.degree,
            poly: self.poly.canonical_scaled(),
        }
    }

    /// Equality up to a nonzero rational scalar.
    pub fn scalar_equal(&self, other: &HPoly) -> bool {
        self.poly.canonical_scaled() == other.poly.canonical_scaled()
    }
}

impl FromStr for HPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HPoly::new(parse_poly(s)?)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_poly(&self.poly))
    }
}
