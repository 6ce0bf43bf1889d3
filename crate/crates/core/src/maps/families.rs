//! Constructors for the explicit parametric families of birational maps:
//! the quadratic degenerations, the quartic family through five points with
//! three collinear, the cubic inverse pair, and the degeneration attached
//! to a pair of base-points.

use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::maps::point::ProjPoint;
use crate::maps::qpoly::{QPoly, Var};
use crate::maps::triple::{compose, invert3, multiplicity_at, primitive_part, MapTriple};

fn literal(s: &str) -> MapTriple {
    s.parse().expect("built-in literal parses")
}

fn literal_reduced(s: &str) -> MapTriple {
    let raw = literal(s);
    let (reduced, factor) = primitive_part(&raw);
    debug_assert_eq!(factor.degree(), 0, "built-in map {s} has a common factor");
    reduced
}

/// The standard quadratic involution `[yz : xz : xy]`.
pub fn standard_quadratic() -> MapTriple {
    literal_reduced("[y*z : x*z : x*y]")
}

/// Quadratic family through `[1:0:0]`, `[0:1:0]`, `[1:1:t]`; the value at
/// `t = 0` is the linear map `[x : y : -z]`.
pub fn kappa_family() -> MapTriple {
    literal_reduced("[(t*y - z)*x : (t*x - z)*y : (t*x - z)*(t*y - z)]")
}

/// Quadratic family whose second base-point is infinitely near the first
/// (tangent direction `z = 0`); the value at `t = 0` is `[-x : y : z]`.
pub fn kappa_infnear_family() -> MapTriple {
    literal_reduced("[-x*z + t*y^2 : y*z : z^2]")
}

/// Quadratic involutions with base-points `[1:-1:0]`, `[1:1:0]`, `[1:0:t]`;
/// the value at `t = 0` is `[-x : -y : z]`.
pub fn kappa_tilde_family() -> MapTriple {
    literal_reduced("[t*(x^2 - y^2) - x*z : -y*z : (t*(x + y) - z)*(t*(x - y) - z)]")
}

/// The quadratic involution with base-points `[0:0:1]`, `[0:1:0]`,
/// `[1:1:1]`.
pub fn sigma_one() -> MapTriple {
    literal_reduced("[(x - y)*(x - z) : y*(z - x) : z*(y - x)]")
}

/// Quadratic involutions with base-points `[1:0:0]`, `[0:1:0]`, `[t:0:1]`;
/// the value at `t = 0` is the standard quadratic involution.
pub fn sigma_two_family() -> MapTriple {
    literal_reduced("[y*(t*x + z*(1 - t^2)) : z*(x - z*t) : y*(x - z*t)]")
}

/// The cubic family `sigma_two(t) . sigma_one`, reduced: generic members
/// are cubic with an infinitely near base-point, and the value at `t = 0`
/// degenerates onto a quadratic map with a linear common factor.
pub fn sigma2_sigma1_family() -> MapTriple {
    let raw = compose(&sigma_two_family(), &sigma_one());
    let (family, _linear) = primitive_part(&raw);
    family
}

/// The cubic inverse pair: `g . f` is the identity and the Jacobian of `f`
/// splits into the lines contracted to the base-points of the inverse.
pub fn cubic_example_pair() -> (MapTriple, MapTriple) {
    let f = literal_reduced("[(x + y - z)*y*(3*y - z) : (2*y - z)*x*(3*y - z) : (2*y - z)*x*y]");
    let g = literal_reduced("[(y - 2*z)*y*z : (x*y - x*z - y*z)*z : (x*y - x*z - y*z)*(3*z - y)]");
    (f, g)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Quartic family fixing the five points `[0:0:1]`, `[1:1:1]`, `[1:1:a]`,
/// `[0:1:0]`, `[1:0:0]` (the first three collinear): for general `t` the
/// map has degree 4 with multiplicity 1 at the collinear triple and 2 at
/// the last two points (plus an infinitely near double point). Requires
/// `a` outside `{0, 1}`: `a = 0` degenerates the collinear triple and
/// `a = 1` collapses the third point onto the second.
pub fn quartic_collinear_family(a: &BigRational) -> Result<MapTriple> {
    if a.is_zero() || a.is_one() {
        return Err(Error::Domain(
            "the quartic family needs a outside {0, 1}".into(),
        ));
    }
    let t = QPoly::var(Var::T);
    let x = QPoly::var(Var::X);
    let y = QPoly::var(Var::Y);
    let z = QPoly::var(Var::Z);
    let aq = QPoly::constant(a.clone());

    // rho(t) = [x(yt + z) : yz : -z(yt + z)], rho(0) reduced = [x : y : -z].
    let rho_t = literal("[x*(y*t + z) : y*z : -z*(y*t + z)]");
    let flip_z = MapTriple::linear(&[
        [rat(1), rat(0), rat(0)],
        [rat(0), rat(1), rat(0)],
        [rat(0), rat(0), rat(-1)],
    ])?;

    // tau(t) = [(a+t)y + z : (a-1)y : ax - (a+t)y], linear for every t.
    let tau_t = MapTriple::new([
        crate::maps::hpoly::HPoly::with_degree(aq.add(&t).mul(&y).add(&z), 1)?,
        crate::maps::hpoly::HPoly::with_degree(aq.sub(&QPoly::one()).mul(&y), 1)?,
        crate::maps::hpoly::HPoly::with_degree(aq.mul(&x).sub(&aq.add(&t).mul(&y)), 1)?,
    ])?;

    // tau(0) as a rational matrix, inverted exactly.
    let tau0 = [
        [BigRational::zero(), a.clone(), BigRational::one()],
        [
            BigRational::zero(),
            a - BigRational::one(),
            BigRational::zero(),
        ],
        [a.clone(), -a.clone(), BigRational::zero()],
    ];
    let tau0_inv = invert3(&tau0).ok_or_else(|| Error::Domain("tau(0) is singular".into()))?;
    let tau0_inv = MapTriple::linear(&tau0_inv)?;

    // nu(t) = rho(0) tau(0)^-1 kappa(0) kappa(t) tau(t) rho(t).
    let inner = compose(&tau_t, &rho_t);
    let inner = compose(&kappa_family(), &inner);
    let inner = compose(&flip_z, &inner);
    let inner = compose(&tau0_inv, &inner);
    let raw = compose(&flip_z, &inner);
    let (family, _) = primitive_part(&raw);
    Ok(family)
}

/// Degeneration attached to two base-points `p_1, p_2` of a reduced map of
/// degree `d` with multiplicities `m_1 + m_2 = d - k < d`: a family with
/// value the original map at `t = 0` and generic degree `d + k`.
pub fn pair_degeneration(gamma: &MapTriple, p1: &ProjPoint, p2: &ProjPoint) -> Result<MapTriple> {
    if !gamma.is_reduced() {
        return Err(Error::Precondition(
            "degeneration needs a reduced map".into(),
        ));
    }
    let c1 = p1
        .constant_coords()
        .ok_or_else(|| Error::Precondition("base-points must be constant".into()))?;
    let c2 = p2
        .constant_coords()
        .ok_or_else(|| Error::Precondition("base-points must be constant".into()))?;
    if p1.same_point(p2) {
        return Err(Error::Precondition("base-points must be distinct".into()));
    }
    let d = i64::from(gamma.degree());
    let m1 = i64::from(multiplicity_at(gamma, p1)?);
    let m2 = i64::from(multiplicity_at(gamma, p2)?);
    if m1 + m2 >= d {
        return Err(Error::Precondition(format!(
            "need m1 + m2 < d, got {m1} + {m2} against degree {d}"
        )));
    }
    // Columns p1, p2, w with w completing a basis.
    let candidates = [[0i64, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 1]];
    let mut chosen = None;
    for w in candidates {
        let wr: [BigRational; 3] = [rat(w[0]), rat(w[1]), rat(w[2])];
        let m = [
            [c1[0].clone(), c2[0].clone(), wr[0].clone()],
            [c1[1].clone(), c2[1].clone(), wr[1].clone()],
            [c1[2].clone(), c2[2].clone(), wr[2].clone()],
        ];
        if let Some(inv) = invert3(&m) {
            chosen = Some((m, inv));
            break;
        }
    }
    let (a, a_inv) = chosen.expect("two distinct points extend to a basis");
    let a_map = MapTriple::linear(&a)?;
    let a_inv_map = MapTriple::linear(&a_inv)?;
    // nu(t)^-1 = kappa(0) kappa(t) conjugated by A.
    let flip_z = MapTriple::linear(&[
        [rat(1), rat(0), rat(0)],
        [rat(0), rat(1), rat(0)],
        [rat(0), rat(0), rat(-1)],
    ])?;
    let nu_inv = compose(&flip_z, &kappa_family());
    let conj = compose(&a_map, &compose(&nu_inv, &a_inv_map));
    let raw = compose(gamma, &conj);
    let (family, _) = primitive_part(&raw);
    Ok(family)
}
