//! Rational maps of the plane as triples of equal-degree homogeneous
//! polynomials, with composition, reduction, Jacobians, contraction and
//! multiplicity checks.

use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::maps::hpoly::HPoly;
use crate::maps::parse::{parse_poly, split_triple};
use crate::maps::point::ProjPoint;
use crate::maps::qpoly::{QPoly, Var};

/// Three equal-degree homogeneous polynomials, not all zero, representing
/// `[f_0 : f_1 : f_2]`. The `reduced` flag records that the gcd of the
/// components is a unit; it is bookkeeping and not part of equality.
#[derive(Debug, Clone)]
pub struct MapTriple {
    comps: [HPoly; 3],
    reduced: bool,
}

impl PartialEq for MapTriple {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps
    }
}

impl Eq for MapTriple {}

impl MapTriple {
    pub fn new(comps: [HPoly; 3]) -> Result<Self> {
        let d = comps[0].degree();
        if comps.iter().any(|c| c.degree() != d) {
            return Err(Error::Precondition(
                "components must share one degree".into(),
            ));
        }
        if comps.iter().all(|c| c.is_zero()) {
            return Err(Error::Precondition("components must not all vanish".into()));
        }
        Ok(MapTriple {
            comps,
            reduced: false,
        })
    }

    pub(crate) fn new_reduced(comps: [HPoly; 3]) -> Result<Self> {
        let mut m = MapTriple::new(comps)?;
        m.reduced = true;
        Ok(m)
    }

    /// The identity `[x : y : z]`.
    pub fn identity() -> Self {
        MapTriple {
            comps: [
                HPoly::new(QPoly::var(Var::X)).expect("linear"),
                HPoly::new(QPoly::var(Var::Y)).expect("linear"),
                HPoly::new(QPoly::var(Var::Z)).expect("linear"),
            ],
            reduced: true,
        }
    }

    /// Linear map from a rational matrix, rows acting on `(x, y, z)`.
    pub fn linear(m: &[[BigRational; 3]; 3]) -> Result<Self> {
        let vars = [QPoly::var(Var::X), QPoly::var(Var::Y), QPoly::var(Var::Z)];
        let mut comps = Vec::with_capacity(3);
        for row in m {
            let mut p = QPoly::zero();
            for (c, v) in row.iter().zip(vars.iter()) {
                p = p.add(&v.scale(c));
            }
            comps.push(HPoly::with_degree(p, 1)?);
        }
        MapTriple::new_reduced([comps[0].clone(), comps[1].clone(), comps[2].clone()])
    }

    pub fn degree(&self) -> u16 {
        self.comps[0].degree()
    }

    pub fn components(&self) -> &[HPoly; 3] {
        &self.comps
    }

    /// Whether the triple is known to have unit gcd.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Canonical representative modulo a joint rational scalar.
    pub fn canonical(&self) -> MapTriple {
        let mut content = BigRational::zero();
        for c in &self.comps {
            let rc = c.poly().rational_content();
            content = gcd_rational(&content, &rc);
        }
        let scale = content.recip();
        let mut polys = self.comps.clone().map(|c| {
            HPoly::with_degree(c.poly().scale(&scale), c.degree()).expect("scaling is degree-safe")
        });
        let flip = polys
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.poly().canonical_sign() < 0)
            .unwrap_or(false);
        if flip {
            polys = polys.map(|c| {
                HPoly::with_degree(c.poly().neg(), c.degree()).expect("negation is degree-safe")
            });
        }
        MapTriple {
            comps: polys,
            reduced: self.reduced,
        }
    }

    /// Evaluates the map at a point (coordinates may involve `t`).
    pub fn eval_at(&self, p: &ProjPoint) -> [QPoly; 3] {
        let [a, b, c] = p.coords();
        [
            self.comps[0].poly().substitute_xyz(a, b, c),
            self.comps[1].poly().substitute_xyz(a, b, c),
            self.comps[2].poly().substitute_xyz(a, b, c),
        ]
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

impl FromStr for MapTriple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = split_triple(s)?;
        let polys = [
            parse_poly(parts[0])?,
            parse_poly(parts[1])?,
            parse_poly(parts[2])?,
        ];
        let mut degree = None;
        for p in &polys {
            if !p.is_zero() {
                let d = p
                    .homogeneous_xyz_degree()
                    .ok_or_else(|| Error::Parse("components must be homogeneous".into()))?;
                match degree {
                    None => degree = Some(d),
                    Some(e) if e != d => {
                        return Err(Error::Parse("components must share one degree".into()))
                    }
                    _ => {}
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse("all components are zero".into()))?;
        let comps = [
            HPoly::with_degree(polys[0].clone(), degree)?,
            HPoly::with_degree(polys[1].clone(), degree)?,
            HPoly::with_degree(polys[2].clone(), degree)?,
        ];
        MapTriple::new(comps)
    }
}

impl fmt::Display for MapTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.comps[0], self.comps[1], self.comps[2]
        )
    }
}

/// Unreduced substitution `f(g)`; the formal degree multiplies.
pub fn compose(f: &MapTriple, g: &MapTriple) -> MapTriple {
    let [g0, g1, g2] = g.components();
    let degree = f.degree().checked_mul(g.degree()).expect("degree overflow");
    let comps = f.components().clone().map(|c| {
        let sub = c.poly().substitute_xyz(g0.poly(), g1.poly(), g2.poly());
        HPoly::with_degree(sub, degree).expect("substitution preserves homogeneity")
    });
    MapTriple {
        comps,
        reduced: false,
    }
}

/// Splits off the common factor: returns `(reduced, h)` with
/// `f = h * reduced` componentwise and `reduced` carrying a unit gcd.
///
/// The gcd is computed over `Q[t][x,y,z]`; a content purely in `t` is not a
/// curve and stays with the components.
pub fn primitive_part(f: &MapTriple) -> (MapTriple, HPoly) {
    let g01 = f.comps[0].poly().gcd(f.comps[1].poly());
    let g = g01.gcd(f.comps[2].poly());
    let tc = g.t_content();
    let h = g
        .div_exact(&tc)
        .expect("content divides")
        .canonical_scaled();
    let hdeg = h
        .homogeneous_xyz_degree()
        .expect("gcd of homogeneous is homogeneous");
    let comps = f.comps.clone().map(|c| {
        let q = c.poly().div_exact(&h).expect("gcd divides");
        HPoly::with_degree(q, c.degree() - hdeg).expect("division drops the degree by deg h")
    });
    let reduced = MapTriple {
        comps,
        reduced: true,
    };
    let factor = HPoly::with_degree(h, hdeg).expect("homogeneous");
    (reduced, factor)
}

/// Determinant of the matrix of partial derivatives, canonicalized by
/// clearing the rational content and fixing the sign of the graded-lex
/// leading coefficient at `t = 0` (or of its leading `t`-coefficient when
/// zero there). Degree `3(d-1)` whenever nonzero.
pub fn jacobian(f: &MapTriple) -> HPoly {
    let d = [Var::X, Var::Y, Var::Z];
    let rows: Vec<[QPoly; 3]> = f
        .components()
        .iter()
        .map(|c| {
            [
                c.poly().derivative(d[0]),
                c.poly().derivative(d[1]),
                c.poly().derivative(d[2]),
            ]
        })
        .collect();
    let m00 = rows[1][1]
        .mul(&rows[2][2])
        .sub(&rows[1][2].mul(&rows[2][1]));
    let m01 = rows[1][0]
        .mul(&rows[2][2])
        .sub(&rows[1][2].mul(&rows[2][0]));
    let m02 = rows[1][0]
        .mul(&rows[2][1])
        .sub(&rows[1][1].mul(&rows[2][0]));
    let det = rows[0][0]
        .mul(&m00)
        .sub(&rows[0][1].mul(&m01))
        .add(&rows[0][2].mul(&m02));
    let degree = 3 * (f.degree().max(1) - 1);
    HPoly::with_degree(det.canonical_scaled(), degree).expect("Jacobian is homogeneous")
}

/// Whether `f` contracts the curve `h = 0` onto `q`: every cross product
/// `q_i f_j - q_j f_i` is a multiple of `h`.
pub fn is_contracted(f: &MapTriple, h: &HPoly, q: &ProjPoint) -> bool {
    let qs = q.coords();
    let fs = f.components();
    for i in 0..3 {
        for j in i + 1..3 {
            let cross = qs[i].mul(fs[j].poly()).sub(&qs[j].mul(fs[i].poly()));
            if !cross.divisible_by(h.poly()) {
                return false;
            }
        }
    }
    true
}

/// Multiplicity of the (generic member of the) map at a constant point:
/// the minimum over the components of the vanishing order at `p`. For a
/// generic linear combination the lowest-order parts cannot cancel, so
/// this is the base-point multiplicity; `0` means `p` is not a base-point.
pub fn multiplicity_at(f: &MapTriple, p: &ProjPoint) -> Result<u32> {
    if !f.is_reduced() {
        return Err(Error::Precondition(
            "multiplicity needs a reduced map".into(),
        ));
    }
    let coords = p
        .constant_coords()
        .ok_or_else(|| Error::Precondition("multiplicity needs a constant point".into()))?;
    let pivot = coords
        .iter()
        .position(|c| !c.is_zero())
        .expect("projective point has a nonzero coordinate");
    // Columns: the two standard basis vectors other than the pivot, then p.
    let mut cols: Vec<[BigRational; 3]> = Vec::new();
    for i in 0..3 {
        if i != pivot {
            let mut e = [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ];
            e[i] = BigRational::one();
            cols.push(e);
        }
    }
    cols.push(coords);
    let lin: Vec<QPoly> = (0..3)
        .map(|i| {
            QPoly::var(Var::X)
                .scale(&cols[0][i])
                .add(&QPoly::var(Var::Y).scale(&cols[1][i]))
                .add(&QPoly::var(Var::Z).scale(&cols[2][i]))
        })
        .collect();
    let mut best: Option<u16> = None;
    for c in f.components() {
        if c.is_zero() {
            continue;
        }
        let moved = c.poly().substitute_xyz(&lin[0], &lin[1], &lin[2]);
        let ord = moved.order_in_xy().expect("nonzero");
        best = Some(best.map_or(ord, |b| b.min(ord)));
    }
    Ok(u32::from(best.expect("not all components vanish")))
}

/// Squarefree part in characteristic zero: `p` divided by its gcd with the
/// three coordinate partials.
fn squarefree_part(p: &QPoly) -> QPoly {
    if p.is_zero() {
        return QPoly::zero();
    }
    let mut g = p.clone();
    for v in [Var::X, Var::Y, Var::Z] {
        g = g.gcd(&p.derivative(v));
    }
    p.div_exact(&g).expect("gcd divides")
}

/// Checks a full contraction pattern: the factors multiply to the Jacobian
/// up to scalar and each one is contracted onto its paired point. A factor
/// may carry its multiplicity inside the Jacobian (such as a square), so
/// contraction is tested on its squarefree part — the statement is about
/// the curve. The map is expected to be reduced and birational; this is
/// caller-asserted.
pub fn verify_jacobian_factorization(f: &MapTriple, factors: &[(HPoly, ProjPoint)]) -> bool {
    let mut product = HPoly::one();
    for (h, _) in factors {
        product = product.mul(h);
    }
    if !product.scalar_equal(&jacobian(f)) {
        return false;
    }
    factors.iter().all(|(h, q)| {
        let curve = squarefree_part(h.poly());
        match HPoly::new(curve) {
            Ok(curve) => curve.degree() == 0 || is_contracted(f, &curve, q),
            Err(_) => false,
        }
    })
}

/// Whether `g . f` is the identity: the composition must equal
/// `[x*h : y*h : z*h]` for a single polynomial `h`, tested through the
/// cross-equations `c_i x_j = c_j x_i`.
pub fn is_inverse_pair(f: &MapTriple, g: &MapTriple) -> bool {
    let c = compose(g, f);
    if c.components().iter().all(|p| p.is_zero()) {
        return false;
    }
    let vars = [QPoly::var(Var::X), QPoly::var(Var::Y), QPoly::var(Var::Z)];
    for i in 0..3 {
        for j in i + 1..3 {
            let lhs = c.components()[i].poly().mul(&vars[j]);
            let rhs = c.components()[j].poly().mul(&vars[i]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Coefficient-wise evaluation of the family parameter. The formal degree
/// is preserved; components may acquire common factors, so the result is
/// never marked reduced.
pub fn substitute_t(f: &MapTriple, t0: &BigRational) -> Result<MapTriple> {
    let comps = f.comps.clone().map(|c| {
        let p = c.poly().eval_t(t0);
        HPoly::with_degree(p, c.degree()).expect("evaluation preserves homogeneity")
    });
    if comps.iter().all(|c| c.is_zero()) {
        return Err(Error::Domain(format!(
            "the family vanishes identically at t = {t0}"
        )));
    }
    Ok(MapTriple {
        comps,
        reduced: false,
    })
}

/// Searches the box `|a|, |b|, |c| <= bound` for linear polynomials
/// `a x + b y + c z` contracted by `f`, returning them with their target
/// points. Candidate-driven: only divisors of the Jacobian are tested.
pub fn find_linear_contracted(f: &MapTriple, bound: i64) -> Result<Vec<(HPoly, ProjPoint)>> {
    if bound < 1 {
        return Err(Error::Precondition("search bound must be positive".into()));
    }
    let jac = jacobian(f);
    if jac.is_zero() {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    for a in 0..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if !is_canonical_direction(a, b, c) {
                    continue;
                }
                let h_poly = QPoly::var(Var::X)
                    .scale(&BigRational::from_integer(a.into()))
                    .add(&QPoly::var(Var::Y).scale(&BigRational::from_integer(b.into())))
                    .add(&QPoly::var(Var::Z).scale(&BigRational::from_integer(c.into())));
                if !jac.poly().divisible_by(&h_poly) {
                    continue;
                }
                let h = HPoly::with_degree(h_poly, 1).expect("linear");
                if let Some(q) = contraction_target(f, [a, b, c]) {
                    if is_contracted(f, &h, &q) {
                        found.push((h.canonical(), q.canonical()));
                    }
                }
            }
        }
    }
    Ok(found)
}

fn is_canonical_direction(a: i64, b: i64, c: i64) -> bool {
    if (a, b, c) == (0, 0, 0) {
        return false;
    }
    let first = [a, b, c].into_iter().find(|&v| v != 0).unwrap();
    if first < 0 {
        return false;
    }
    let g = gcd3(a.unsigned_abs(), b.unsigned_abs(), c.unsigned_abs());
    g == 1
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    use num::Integer;
    a.gcd(&b).gcd(&c)
}

/// Image of a general point of the line `ax + by + cz = 0` under `f`, if a
/// non-base-point sample exists in a short deterministic scan.
fn contraction_target(f: &MapTriple, n: [i64; 3]) -> Option<ProjPoint> {
    let cross = |u: [i64; 3], v: [i64; 3]| {
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ]
    };
    let mut spans = Vec::new();
    for k in 0..3 {
        let mut e = [0i64; 3];
        e[k] = 1;
        let p = cross(n, e);
        if p != [0, 0, 0] {
            spans.push(p);
        }
    }
    let (p1, p2) = (spans[0], spans[1]);
    for s in 0..=(3 * i64::from(f.degree()) + 2) {
        let point = [p1[0] + s * p2[0], p1[1] + s * p2[1], p1[2] + s * p2[2]];
        if point == [0, 0, 0] {
            continue;
        }
        let proj = ProjPoint::from_ints(point).ok()?;
        let image = f.eval_at(&proj);
        if image.iter().any(|c| !c.is_zero()) {
            return ProjPoint::new(image).ok();
        }
    }
    None
}

/// Exact inverse of a rational 3x3 matrix via the adjugate.
pub fn invert3(m: &[[BigRational; 3]; 3]) -> Option<[[BigRational; 3]; 3]> {
    let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    if det.is_zero() {
        return None;
    }
    let cof = |r1: usize, c1: usize, r2: usize, c2: usize| {
        &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]
    };
    let adj = [
        [cof(1, 1, 2, 2), -cof(0, 1, 2, 2), cof(0, 1, 1, 2)],
        [-cof(1, 0, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 1, 2)],
        [cof(1, 0, 2, 1), -cof(0, 0, 2, 1), cof(0, 0, 1, 1)],
    ];
    Some(adj.map(|row| row.map(|v| &v / &det)))
}
