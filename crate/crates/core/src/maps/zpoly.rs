//! Integer multivariate polynomials in `x, y, z, t` with gcd, content and
//! exact division. This is the engine room behind the rational layer: gcds
//! run as primitive pseudo-remainder sequences in the main variable with
//! recursive contents, so no fractions ever appear.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Exponent vector `[x, y, z, t]`. The derived array ordering is the lex
/// order with x heaviest, which is multiplication-compatible.
pub(crate) type Expo = [u16; 4];

pub(crate) const NVARS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ZPoly {
    pub(crate) terms: BTreeMap<Expo, BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; 4], c);
        }
        ZPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(dead_code)]
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    fn insert(&mut self, e: Expo, c: BigInt) {
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

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
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

    pub fn mul_term(&self, e: &Expo, c: &BigInt) -> ZPoly {
        let mut out = ZPoly::zero();
        for (ea, ca) in &self.terms {
            let mut exp = *ea;
            for (v, inc) in exp.iter_mut().zip(e.iter()) {
                *v = v.checked_add(*inc).expect("exponent overflow");
            }
            out.insert(exp, ca * c);
        }
        out
    }

    pub fn deg_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn occurs(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    /// Smallest variable index occurring in either polynomial (x first).
    fn main_var(a: &ZPoly, b: &ZPoly) -> Option<usize> {
        (0..NVARS).find(|&v| a.occurs(v) || b.occurs(v))
    }

    /// Coefficients as polynomials free of `v`, indexed by the power of `v`.
    fn coeffs_in(&self, v: usize) -> Vec<ZPoly> {
        let d = self.deg_in(v) as usize;
        let mut out = vec![ZPoly::zero(); d + 1];
        for (e, c) in &self.terms {
            let mut base = *e;
            let k = base[v] as usize;
            base[v] = 0;
            out[k].insert(base, c.clone());
        }
        out
    }

    fn leading_in(&self, v: usize) -> ZPoly {
        let d = self.deg_in(v);
        let mut out = ZPoly::zero();
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut base = *e;
                base[v] = 0;
                out.insert(base, c.clone());
            }
        }
        out
    }

    fn leading_term(&self) -> Option<(&Expo, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Quotient if `other` divides `self` exactly over the integers.
    pub fn try_div_exact(&self, other: &ZPoly) -> Option<ZPoly> {
        if other.is_zero() {
            return if self.is_zero() {
                Some(ZPoly::zero())
            } else {
                None
            };
        }
        let (le, lc) = other.leading_term().expect("nonzero");
        let le = *le;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = ZPoly::zero();
        while let Some((re, rc)) = rem.leading_term() {
            let mut qe = [0u16; 4];
            for i in 0..NVARS {
                if re[i] < le[i] {
                    return None;
                }
                qe[i] = re[i] - le[i];
            }
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            quot.insert(qe, qc.clone());
            rem = rem.sub(&other.mul_term(&qe, &qc));
        }
        Some(quot)
    }

    /// Integer content (gcd of coefficients, non-negative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Sign-normalized copy: lex-leading coefficient positive.
    pub fn normalized(&self) -> ZPoly {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => {
                let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
                ZPoly { terms }
            }
            _ => self.clone(),
        }
    }

    /// Content (w.r.t. `v`) and primitive part: `self = content * pp` with
    /// the content free of `v` and the pp primitive in `v`.
    fn content_pp_in(&self, v: usize) -> (ZPoly, ZPoly) {
        let coeffs = self.coeffs_in(v);
        let mut content = ZPoly::zero();
        for c in &coeffs {
            content = zgcd(&content, c);
        }
        let pp = self.try_div_exact(&content).expect("content divides");
        (content, pp)
    }

    /// Fraction-free remainder of `self` by `other` in the variable `v`:
    /// an associate of the pseudo-remainder.
    fn pseudo_rem(&self, other: &ZPoly, v: usize) -> ZPoly {
        let db = other.deg_in(v);
        let lb = other.leading_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.deg_in(v) >= db {
            let dr = r.deg_in(v);
            let lr = r.leading_in(v);
            let mut shift = [0u16; 4];
            shift[v] = dr - db;
            // r <- lb*r - lr*v^(dr-db)*other kills the leading v-term.
            r = r
                .mul(&lb)
                .sub(&other.mul(&lr.mul_term(&shift, &BigInt::one())));
        }
        r
    }
}

/// Gcd over the integers, primitive PRS in the main variable with
/// recursive contents. The result is sign-normalized.
pub(crate) fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let v = match ZPoly::main_var(a, b) {
        None => {
            let ca = a.terms.values().next().expect("nonzero constant");
            let cb = b.terms.values().next().expect("nonzero constant");
            return ZPoly::constant(ca.gcd(cb));
        }
        Some(v) => v,
    };
    if !a.occurs(v) {
        // a is free of v, hence divides only the content of b.
        let (cb, _) = b.content_pp_in(v);
        return zgcd(a, &cb);
    }
    if !b.occurs(v) {
        let (ca, _) = a.content_pp_in(v);
        return zgcd(&ca, b);
    }
    let (ca, pa) = a.content_pp_in(v);
    let (cb, pb) = b.content_pp_in(v);
    let c = zgcd(&ca, &cb);
    let (mut f, mut g) = if pa.deg_in(v) >= pb.deg_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    // Trial division first: the gcd of structured inputs is very often the
    // smaller primitive part itself, and division is much cheaper than a
    // remainder sequence.
    if f.try_div_exact(&g).is_some() {
        return c.mul(&g).normalized();
    }
    loop {
        let r = f.pseudo_rem(&g, v);
        if r.is_zero() {
            return c.mul(&g).normalized();
        }
        if r.deg_in(v) == 0 {
            // Nonzero remainder free of v: the primitive parts are coprime.
            return c.normalized();
        }
        let (_, rp) = r.content_pp_in(v);
        f = g;
        g = rp;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: usize) -> ZPoly {
        let mut e = [0u16; 4];
        e[v] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        ZPoly { terms }
    }

    fn int(n: i64) -> ZPoly {
        ZPoly::constant(BigInt::from(n))
    }

    #[test]
    fn arithmetic_and_division() {
        let x = var(0);
        let y = var(1);
        let p = x.add(&y); // x + y
        let q = x.sub(&y); // x - y
        let prod = p.mul(&q); // x^2 - y^2
        assert_eq!(prod.try_div_exact(&p).unwrap(), q);
        assert_eq!(prod.try_div_exact(&q).unwrap(), p);
        assert!(prod.try_div_exact(&x.add(&int(1))).is_none());
    }

    #[test]
    fn gcd_univariate() {
        let x = var(0);
        let a = x.add(&int(1)).mul(&x.add(&int(2))); // (x+1)(x+2)
        let b = x.add(&int(1)).mul(&x.sub(&int(3))); // (x+1)(x-3)
        assert_eq!(zgcd(&a, &b), x.add(&int(1)));
    }

    #[test]
    fn gcd_multivariate_with_content() {
        let x = var(0);
        let y = var(1);
        let z = var(2);
        // gcd(x^2*y*z, x*y^2*z, x*y*z^2) = x*y*z
        let xyz = x.mul(&y).mul(&z);
        let a = xyz.mul(&x);
        let b = xyz.mul(&y);
        let c = xyz.mul(&z);
        assert_eq!(zgcd(&zgcd(&a, &b), &c), xyz);
    }

    #[test]
    fn gcd_with_parameter() {
        let x = var(0);
        let t = var(3);
        // gcd((t*x - 1) * (x + t), (t*x - 1) * x) = t*x - 1
        let f = t.mul(&x).sub(&int(1));
        let a = f.mul(&x.add(&t));
        let b = f.mul(&x);
        assert_eq!(zgcd(&a, &b), f);
    }

    #[test]
    fn gcd_sign_and_constants() {
        let x = var(0);
        let a = int(-6).mul(&x);
        let b = int(4).mul(&x);
        assert_eq!(zgcd(&a, &b), int(2).mul(&x));
        assert_eq!(zgcd(&int(12), &int(-8)), int(4));
        assert_eq!(zgcd(&ZPoly::zero(), &a), int(6).mul(&x));
    }
}
