//! Sparse polynomials in `x, y, z` and the parameter `t` with exact
//! rational coefficients. Homogeneity always refers to the grading in
//! `x, y, z` only; `t` is a parameter.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::maps::zpoly::{zgcd, Expo, ZPoly};

/// The four variables; the numeric value is the exponent slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    T = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    terms: BTreeMap<Expo, BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; 4], c);
        }
        QPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        QPoly::constant(BigRational::from(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0u16; 4];
        e[v as usize] = 1;
        QPoly::monomial(e, BigRational::one())
    }

    pub fn monomial(e: Expo, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&[0; 4]).cloned();
        }
        None
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&Expo, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, e: Expo, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (v, exp) in e.iter_mut().zip(eb.iter()) {
                    *v = v.checked_add(*exp).expect("exponent overflow");
                }
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u16) -> QPoly {
        let mut out = QPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, v: Var) -> QPoly {
        let v = v as usize;
        let mut out = QPoly::zero();
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut de = *e;
                de[v] -= 1;
                out.insert(de, c * BigRational::from(BigInt::from(e[v])));
            }
        }
        out
    }

    /// Total degree in `x, y, z` of the largest term, `None` for zero.
    pub fn xyz_degree(&self) -> Option<u16> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    pub fn t_degree(&self) -> Option<u16> {
        self.terms.keys().map(|e| e[3]).max()
    }

    /// Common `x,y,z`-degree of all terms, if homogeneous. Zero counts as
    /// homogeneous of any degree.
    pub fn homogeneous_xyz_degree(&self) -> Option<u16> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d = e[0] + e[1] + e[2];
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        deg.or(Some(0))
    }

    pub fn depends_on_xyz(&self) -> bool {
        self.terms.keys().any(|e| e[0] + e[1] + e[2] > 0)
    }

    pub fn depends_on_t(&self) -> bool {
        self.terms.keys().any(|e| e[3] > 0)
    }

    /// Smallest `x`-plus-`y` exponent over all terms: the vanishing order
    /// at `[0:0:1]` for a homogeneous polynomial (generic in `t`).
    pub fn order_in_xy(&self) -> Option<u16> {
        self.terms.keys().map(|e| e[0] + e[1]).min()
    }

    /// Coefficient-wise evaluation at `t = t0`.
    pub fn eval_t(&self, t0: &BigRational) -> QPoly {
        let mut out = QPoly::zero();
        for (e, c) in &self.terms {
            let mut base = *e;
            let k = base[3];
            base[3] = 0;
            let mut scaled = c.clone();
            for _ in 0..k {
                scaled *= t0;
            }
            out.insert(base, scaled);
        }
        out
    }

    /// Substitutes polynomials for `x, y, z`; `t` is untouched.
    pub fn substitute_xyz(&self, gx: &QPoly, gy: &QPoly, gz: &QPoly) -> QPoly {
        let mut powers: [Vec<QPoly>; 3] =
            [vec![QPoly::one()], vec![QPoly::one()], vec![QPoly::one()]];
        let bases = [gx, gy, gz];
        let mut out = QPoly::zero();
        for (e, c) in &self.terms {
            let mut term = QPoly::monomial([0, 0, 0, e[3]], c.clone());
            for v in 0..3 {
                let k = e[v] as usize;
                while powers[v].len() <= k {
                    let next = powers[v].last().unwrap().mul(bases[v]);
                    powers[v].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[v][k]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Clears denominators: returns the integer polynomial `self * scale`
    /// together with `scale` (a positive integer).
    pub(crate) fn to_zpoly(&self) -> (ZPoly, BigInt) {
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut z = ZPoly::zero();
        for (e, c) in &self.terms {
            let n = c.numer() * (&lcm / c.denom());
            z = z.add(&ZPoly::constant(n).mul_term(e, &BigInt::one()));
        }
        (z, lcm)
    }

    pub(crate) fn from_zpoly(z: &ZPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (e, c) in &z.terms {
            out.insert(*e, BigRational::from(c.clone()));
        }
        out
    }

    /// Rational content: the positive rational `c` with `self / c` integer
    /// and primitive. Zero for the zero polynomial.
    pub fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (z, scale) = self.to_zpoly();
        let g = z.int_content();
        BigRational::new(g, scale)
    }

    /// The leading term under graded lex in `x > y > z` (total `x,y,z`
    /// degree first, then lex), with ties broken towards lower `t` power.
    fn graded_lex_leading(&self) -> Option<(&Expo, &BigRational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let da = a[0] + a[1] + a[2];
            let db = b[0] + b[1] + b[2];
            da.cmp(&db)
                .then_with(|| a[..3].cmp(&b[..3]))
                .then_with(|| b[3].cmp(&a[3]))
        })
    }

    /// Sign of the leading coefficient evaluated at `t = 0`, falling back
    /// to the highest `t`-power coefficient when it vanishes there.
    pub(crate) fn canonical_sign(&self) -> i32 {
        let lead = match self.graded_lex_leading() {
            None => return 0,
            Some((e, _)) => [e[0], e[1], e[2]],
        };
        let group: Vec<(&Expo, &BigRational)> = self
            .terms
            .iter()
            .filter(|(e, _)| [e[0], e[1], e[2]] == lead)
            .collect();
        let at_zero = group.iter().find(|(e, _)| e[3] == 0);
        let pick = at_zero.or_else(|| group.iter().max_by_key(|(e, _)| e[3]));
        match pick {
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }

    /// Canonical representative modulo nonzero rational scalars: integer
    /// primitive, with the graded-lex-leading coefficient positive at
    /// `t = 0` (or its leading `t`-coefficient positive when zero there).
    pub fn canonical_scaled(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let content = self.rational_content();
        let mut out = self.scale(&content.recip());
        if out.canonical_sign() < 0 {
            out = out.neg();
        }
        out
    }

    /// Exact division over the rationals, if possible.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        if divisor.is_zero() {
            return if self.is_zero() {
                Some(QPoly::zero())
            } else {
                None
            };
        }
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let (zn, sn) = self.to_zpoly();
        let (zd, sd) = divisor.to_zpoly();
        let cn = zn.int_content();
        let cd = zd.int_content();
        let pn = zn
            .try_div_exact(&ZPoly::constant(cn.clone()))
            .expect("content divides");
        let pd = zd
            .try_div_exact(&ZPoly::constant(cd.clone()))
            .expect("content divides");
        let q = pn.try_div_exact(&pd)?;
        // self = (cn/sn) pn, divisor = (cd/sd) pd.
        let scale = BigRational::new(cn * sd, cd * sn);
        Some(QPoly::from_zpoly(&q).scale(&scale))
    }

    /// Whether `divisor` divides `self` over the rationals.
    pub fn divisible_by(&self, divisor: &QPoly) -> bool {
        self.div_exact(divisor).is_some()
    }

    /// Gcd up to scalar, returned integer-primitive and sign-normalized.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (za, _) = self.to_zpoly();
        let (zb, _) = other.to_zpoly();
        QPoly::from_zpoly(&zgcd(&za, &zb)).canonical_scaled()
    }

    /// Content with respect to the `x,y,z` part: the gcd of the
    /// `t`-coefficient polynomials of the `x,y,z` monomials.
    pub fn t_content(&self) -> QPoly {
        let mut groups: BTreeMap<[u16; 3], QPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            groups
                .entry([e[0], e[1], e[2]])
                .or_insert_with(QPoly::zero)
                .insert([0, 0, 0, e[3]], c.clone());
        }
        let mut g = QPoly::zero();
        for part in groups.values() {
            g = g.gcd(part);
        }
        g
    }
}
