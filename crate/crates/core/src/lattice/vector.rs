//! Lattice vectors, homaloidal types and their literal grammar.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn checked_noether_sums(degree: i64, mults: &[i64]) -> Result<(i128, i128)> {
    let mut sum: i128 = 0;
    let mut sq: i128 = 0;
    for &m in mults {
        let m = m as i128;
        sum = sum.checked_add(m).ok_or(Error::Overflow)?;
        sq = sq
            .checked_add(m.checked_mul(m).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
    }
    let d = degree as i128;
    let lin = d
        .checked_sub(1)
        .and_then(|x| x.checked_mul(3))
        .ok_or(Error::Overflow)?;
    let quad = d
        .checked_mul(d)
        .and_then(|x| x.checked_sub(1))
        .ok_or(Error::Overflow)?;
    Ok((lin - sum, quad - sq))
}

/// True iff `sum(m_i) = 3(d-1)` and `sum(m_i^2) = d^2 - 1`.
///
/// Accepts arbitrary integers, including negative multiplicities; overflow
/// is a hard error, never wrapped.
pub fn noether_check(degree: i64, mults: &[i64]) -> Result<bool> {
    let (lin, quad) = checked_noether_sums(degree, mults)?;
    Ok(lin == 0 && quad == 0)
}

/// Finite-support integer vector over the basis `{e_i}`.
///
/// Index 0 holds the degree coefficient; indices `i >= 1` hold the
/// multiplicities `m_i` directly (see the module docs for the sign
/// convention). Negative multiplicities are representable here — they arise
/// as Hudson witnesses — but not in [`HomaloidalType`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coeffs: Vec<i64>,
}

impl LatticeVector {
    /// Builds a vector from a degree and a multiplicity list; trailing zero
    /// multiplicities are trimmed.
    pub fn new(degree: i64, mults: Vec<i64>) -> Self {
        let mut coeffs = Vec::with_capacity(mults.len() + 1);
        coeffs.push(degree);
        coeffs.extend(mults);
        let mut v = LatticeVector { coeffs };
        v.trim();
        v
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0 {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs[0]
    }

    /// Multiplicities `m_1, ..., m_r` (no trailing zeros).
    pub fn mults(&self) -> &[i64] {
        &self.coeffs[1..]
    }

    /// Number of stored coordinates including index 0.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Raw basis coordinates `(d, -m_1, ..., -m_r)` padded to length `n`.
    pub fn raw_coords(&self, n: usize) -> Result<Vec<i64>> {
        let n = n.max(self.coeffs.len());
        let mut out = vec![0i64; n];
        out[0] = self.coeffs[0];
        for (i, &m) in self.coeffs[1..].iter().enumerate() {
            out[i + 1] = m.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(out)
    }

    /// Rebuilds a vector from raw basis coordinates (negating indices >= 1).
    pub fn from_raw_coords(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Parse("empty coordinate vector".into()));
        }
        let mut mults = Vec::with_capacity(raw.len() - 1);
        for &c in &raw[1..] {
            mults.push(c.checked_neg().ok_or(Error::Overflow)?);
        }
        Ok(LatticeVector::new(raw[0], mults))
    }

    /// Self-intersection `v.v = d^2 - sum(m_i^2)` under `diag(1,-1,...)`.
    pub fn self_intersection(&self) -> Result<i128> {
        let d = self.coeffs[0] as i128;
        let mut acc = d.checked_mul(d).ok_or(Error::Overflow)?;
        for &m in self.mults() {
            let m = m as i128;
            acc = acc
                .checked_sub(m.checked_mul(m).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Pairing with the canonical vector: `-3d + sum(m_i)`.
    pub fn canonical_pairing(&self) -> Result<i128> {
        let mut acc = (self.coeffs[0] as i128)
            .checked_mul(-3)
            .ok_or(Error::Overflow)?;
        for &m in self.mults() {
            acc = acc.checked_add(m as i128).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// True iff the vector satisfies both Noether equalities.
    pub fn is_homaloidal(&self) -> Result<bool> {
        noether_check(self.degree(), self.mults())
    }

    /// Image under the reflection by `e_0 - e_1 - e_2 - e_3`:
    /// `(d; m_1, m_2, m_3, rest) -> (d - e; m_1 - e, m_2 - e, m_3 - e, rest)`
    /// with `e = m_1 + m_2 + m_3 - d`. Pads with zeros if the support is
    /// shorter than four.
    pub fn apply_sigma0(&self) -> Result<LatticeVector> {
        let mut c = self.coeffs.clone();
        c.resize(c.len().max(4), 0);
        let eps = c[1]
            .checked_add(c[2])
            .and_then(|s| s.checked_add(c[3]))
            .and_then(|s| s.checked_sub(c[0]))
            .ok_or(Error::Overflow)?;
        for value in c.iter_mut().take(4) {
            *value = value.checked_sub(eps).ok_or(Error::Overflow)?;
        }
        Ok(LatticeVector::new(c[0], c[1..].to_vec()))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.degree())?;
        let mut first = true;
        for &m in self.mults() {
            write!(f, "{}{}", if first { "; " } else { "," }, m)?;
            first = false;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct TypeJson {
    degree: i64,
    mults: Vec<i64>,
}

/// A homaloidal type: a degree `d >= 1` together with the canonically
/// sorted multiset of positive multiplicities, subject to the Noether
/// equalities `sum(m_i) = 3(d-1)` and `sum(m_i^2) = d^2 - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TypeJson", into = "TypeJson")]
pub struct HomaloidalType {
    degree: i64,
    mults: Vec<i64>,
}

impl HomaloidalType {
    /// Validates and canonicalizes: zeros removed, sorted descending,
    /// `d >= 1`, all multiplicities positive, Noether equalities enforced.
    pub fn new(degree: i64, mults: Vec<i64>) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidDegree(degree));
        }
        let mut ms: Vec<i64> = Vec::with_capacity(mults.len());
        for m in mults {
            if m < 0 {
                return Err(Error::NegativeMultiplicity(m));
            }
            if m > 0 {
                ms.push(m);
            }
        }
        ms.sort_unstable_by(|a, b| b.cmp(a));
        if !noether_check(degree, &ms)? {
            return Err(Error::NotHomaloidal(format!(
                "({degree}; {ms:?}) fails the Noether equalities"
            )));
        }
        Ok(HomaloidalType { degree, mults: ms })
    }

    /// Conversion from a lattice vector; fails on negative entries or a
    /// Noether violation.
    pub fn from_vector(v: &LatticeVector) -> Result<Self> {
        HomaloidalType::new(v.degree(), v.mults().to_vec())
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Multiplicities sorted descending, zeros removed.
    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn to_vector(&self) -> LatticeVector {
        LatticeVector::new(self.degree, self.mults.clone())
    }
}

impl TryFrom<TypeJson> for HomaloidalType {
    type Error = Error;
    fn try_from(raw: TypeJson) -> Result<Self> {
        HomaloidalType::new(raw.degree, raw.mults)
    }
}

impl From<HomaloidalType> for TypeJson {
    fn from(t: HomaloidalType) -> TypeJson {
        TypeJson {
            degree: t.degree,
            mults: t.mults,
        }
    }
}

/// Parses the literal grammar `d;m1[^e1],m2[^e2],...` without validating
/// the Noether equalities, so that improper raw data (negative entries
/// included) can still be inspected. Whitespace is ignored.
pub fn parse_type_literal(s: &str) -> Result<(i64, Vec<i64>)> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, tail) = compact
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("missing ';' in type literal {s:?}")))?;
    let degree: i64 = head
        .parse()
        .map_err(|_| Error::Parse(format!("bad degree {head:?}")))?;
    let mut mults = Vec::new();
    if !tail.is_empty() {
        for piece in tail.split(',') {
            let (base, count) = match piece.split_once('^') {
                Some((b, e)) => {
                    let e: usize = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {piece:?}")))?;
                    if e == 0 {
                        return Err(Error::Parse(format!("zero exponent in {piece:?}")));
                    }
                    (b, e)
                }
                None => (piece, 1),
            };
            let m: i64 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {base:?}")))?;
            mults.extend(std::iter::repeat_n(m, count));
        }
    }
    Ok((degree, mults))
}

impl FromStr for HomaloidalType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (d, mults) = parse_type_literal(s)?;
        HomaloidalType::new(d, mults)
    }
}

impl fmt::Display for HomaloidalType {
    /// Human form with runs compressed: `8;4^3,2^3,1^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.degree)?;
        let mut i = 0;
        let mut first = true;
        while i < self.mults.len() {
            let m = self.mults[i];
            let mut j = i + 1;
            while j < self.mults.len() && self.mults[j] == m {
                j += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            if j - i > 1 {
                write!(f, "{}^{}", m, j - i)?;
            } else {
                write!(f, "{m}")?;
            }
            first = false;
            i = j;
        }
        Ok(())
    }
}
