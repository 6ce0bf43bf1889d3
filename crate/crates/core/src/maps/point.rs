//! Points of the projective plane with exact rational or `t`-polynomial
//! coordinates.

use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use num::Zero;

use crate::error::{Error, Result};
use crate::maps::parse::{parse_poly, render_poly, split_triple};
use crate::maps::qpoly::QPoly;

/// A projective point `[q_0 : q_1 : q_2]`. Coordinates are polynomials in
/// `t` alone (constants included); equality respects scaling.
#[derive(Debug, Clone)]
pub struct ProjPoint {
    coords: [QPoly; 3],
}

impl ProjPoint {
    pub fn new(coords: [QPoly; 3]) -> Result<Self> {
        if coords.iter().any(|c| c.depends_on_xyz()) {
            return Err(Error::Parse(
                "point coordinates must not involve x, y, z".into(),
            ));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Parse("point coordinates must not all vanish".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_rationals(coords: [BigRational; 3]) -> Result<Self> {
        ProjPoint::new(coords.map(QPoly::constant))
    }

    pub fn from_ints(coords: [i64; 3]) -> Result<Self> {
        ProjPoint::new(coords.map(QPoly::from_int))
    }

    pub fn coords(&self) -> &[QPoly; 3] {
        &self.coords
    }

    /// Constant coordinates, if the point does not move with `t`.
    pub fn constant_coords(&self) -> Option<[BigRational; 3]> {
        let a = self.coords[0].as_constant()?;
        let b = self.coords[1].as_constant()?;
        let c = self.coords[2].as_constant()?;
        Some([a, b, c])
    }

    /// Scaling-invariant equality via vanishing cross products.
    pub fn same_point(&self, other: &ProjPoint) -> bool {
        for i in 0..3 {
            for j in i + 1..3 {
                let lhs = self.coords[i].mul(&other.coords[j]);
                let rhs = self.coords[j].mul(&other.coords[i]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical representative: coordinates jointly integer-primitive with
    /// the first nonzero coordinate's canonical sign positive.
    pub fn canonical(&self) -> ProjPoint {
        let mut content = BigRational::zero();
        for c in &self.coords {
            content = gcd_rational(&content, &c.rational_content());
        }
        let mut coords = self.coords.clone().map(|c| c.scale(&content.recip()));
        let flip = coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.canonical_sign() < 0)
            .unwrap_or(false);
        if flip {
            coords = coords.map(|c| c.neg());
        }
        ProjPoint { coords }
    }
}

fn gcd_rational(a: &BigRational, b: &BigRational) -> BigRational {
    use num::Integer;
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

impl FromStr for ProjPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = split_triple(s)?;
        let coords = [
            parse_poly(parts[0])?,
            parse_poly(parts[1])?,
            parse_poly(parts[2])?,
        ];
        ProjPoint::new(coords)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{}:{}]",
            render_poly(&self.coords[0]),
            render_poly(&self.coords[1]),
            render_poly(&self.coords[2])
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_compare() {
        let p: ProjPoint = "[1:0:0]".parse().unwrap();
        let q: ProjPoint = "[2:0:0]".parse().unwrap();
        assert!(p.same_point(&q));
        let r: ProjPoint = "[2:2:1]".parse().unwrap();
        assert!(!p.same_point(&r));
        assert!("[0:0:0]".parse::<ProjPoint>().is_err());
        assert!("[x:0:1]".parse::<ProjPoint>().is_err());
    }

    #[test]
    fn moving_points_are_allowed() {
        let p: ProjPoint = "[1:1:t]".parse().unwrap();
        assert!(p.constant_coords().is_none());
        let q: ProjPoint = "[1:1:-1]".parse().unwrap();
        assert!(q.constant_coords().is_some());
        assert!(!p.same_point(&q));
    }

    #[test]
    fn canonical_point() {
        let p: ProjPoint = "[-2:-2:-1]".parse().unwrap();
        assert_eq!(p.canonical().to_string(), "[2:2:1]");
        let q: ProjPoint = "[1/2:0:1/4]".parse().unwrap();
        assert_eq!(q.canonical().to_string(), "[2:0:1]");
    }
}
