//! Degeneration criteria for the components of the degree-`d` locus.
//!
//! Three rules attach guaranteed degeneration offsets to a proper type:
//! a pair (or a single point) of multiplicities with `m_i + m_j = d - k`
//! gives offset `k`; five points with `sum = 2d - k` give offset `2k`
//! (general position); five points, three of them collinear, with
//! `m_1 + m_2 + m_3 + 2 m_4 + 2 m_5 = 3d - k` give offset `k` for special
//! members only. Offset 1 is exact at component level: the component lies
//! in the closure of the next degree iff some pair sums to `d - 1`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::enumeration::{enumerate_proper, ENUMERATION_HORIZON};
use crate::error::{Error, Result};
use crate::lattice::{hudson_test, HomaloidalType, HudsonOutcome};

fn require_proper(t: &HomaloidalType) -> Result<()> {
    match hudson_test(t)? {
        HudsonOutcome::Proper(_) => Ok(()),
        HudsonOutcome::Improper(witness) => Err(Error::Improper(witness)),
    }
}

fn check_horizon(d: i64) -> Result<()> {
    if d > ENUMERATION_HORIZON {
        return Err(Error::Horizon {
            requested: d,
            max: ENUMERATION_HORIZON,
        });
    }
    Ok(())
}

/// Offsets `k >= 1` from the pair rule: `{d - m_i - m_j : i != j}` together
/// with the singletons `{d - m_i}` (a second point of multiplicity zero is
/// allowed), intersected with the positive integers. Sums equal to `d`
/// contribute nothing, and larger sums cannot occur on proper types.
pub fn pair_offsets(t: &HomaloidalType) -> Result<BTreeSet<i64>> {
    require_proper(t)?;
    let d = t.degree();
    let ms = t.mults();
    let mut out = BTreeSet::new();
    for (i, &a) in ms.iter().enumerate() {
        let k = d - a;
        if k >= 1 {
            out.insert(k);
        }
        for &b in &ms[i + 1..] {
            let k = d - a - b;
            if k >= 1 {
                out.insert(k);
            }
        }
    }
    Ok(out)
}

/// Even offsets `2k` from the quintic rule: some five distinct entries sum
/// to `2d - k` with `k >= 1`. Empty when `r < 5`.
pub fn quintic_offsets(t: &HomaloidalType) -> Result<BTreeSet<i64>> {
    require_proper(t)?;
    let d = t.degree();
    let ms = t.mults();
    let mut out = BTreeSet::new();
    if ms.len() < 5 {
        return Ok(out);
    }
    let mut sums = BTreeSet::new();
    five_subset_sums(ms, 0, 0, 0, &mut sums);
    for s in sums {
        let k = 2 * d - s;
        if k >= 1 {
            out.insert(2 * k);
        }
    }
    Ok(out)
}

fn five_subset_sums(ms: &[i64], from: usize, chosen: usize, acc: i64, out: &mut BTreeSet<i64>) {
    if chosen == 5 {
        out.insert(acc);
        return;
    }
    if ms.len() - from < 5 - chosen {
        return;
    }
    let mut i = from;
    while i < ms.len() {
        five_subset_sums(ms, i + 1, chosen + 1, acc + ms[i], out);
        // Equal entries give equal sums; skip duplicates at this level.
        let v = ms[i];
        while i < ms.len() && ms[i] == v {
            i += 1;
        }
    }
}

/// Offsets `k >= 1` from the collinear rule: some ordered choice of five
/// distinct entries satisfies `m_1 + m_2 + m_3 + 2 m_4 + 2 m_5 = 3d - k`.
///
/// The rule needs three collinear base-points, which a general member of
/// the component does not have; membership here only means that *some*
/// special-position maps of the type degenerate. Never read it
/// component-wide.
pub fn collinear_offsets(t: &HomaloidalType) -> Result<BTreeSet<i64>> {
    require_proper(t)?;
    let d = t.degree();
    let ms = t.mults();
    let mut out = BTreeSet::new();
    if ms.len() < 5 {
        return Ok(out);
    }
    let mut weighted = BTreeSet::new();
    let mut subset = Vec::new();
    five_subsets(ms, 0, &mut subset, &mut weighted);
    for s in weighted {
        let k = 3 * d - s;
        if k >= 1 {
            out.insert(k);
        }
    }
    Ok(out)
}

fn five_subsets(ms: &[i64], from: usize, subset: &mut Vec<i64>, out: &mut BTreeSet<i64>) {
    if subset.len() == 5 {
        let total: i64 = subset.iter().sum();
        for a in 0..5 {
            for b in a + 1..5 {
                out.insert(total + subset[a] + subset[b]);
            }
        }
        return;
    }
    if ms.len() - from < 5 - subset.len() {
        return;
    }
    let mut i = from;
    while i < ms.len() {
        subset.push(ms[i]);
        five_subsets(ms, i + 1, subset, out);
        subset.pop();
        let v = ms[i];
        while i < ms.len() && ms[i] == v {
            i += 1;
        }
    }
}

/// Exact component-level criterion: the component lies in the closure of
/// the degree-`(d+1)` locus iff `1` is a pair offset.
pub fn in_closure_plus_one(t: &HomaloidalType) -> Result<bool> {
    if t.degree() < 2 {
        return Err(Error::Precondition(
            "the +1 criterion needs degree >= 2".into(),
        ));
    }
    Ok(pair_offsets(t)?.contains(&1))
}

/// Whether every proper type of degree `d` satisfies the +1 criterion,
/// together with the failing types.
pub fn degree_plus_one_holds(d: i64) -> Result<(bool, Vec<HomaloidalType>)> {
    if d < 2 {
        return Err(Error::Precondition(
            "the +1 criterion needs degree >= 2".into(),
        ));
    }
    check_horizon(d)?;
    let mut failing = Vec::new();
    for t in enumerate_proper(d)? {
        if !in_closure_plus_one(&t)? {
            failing.push(t);
        }
    }
    Ok((failing.is_empty(), failing))
}

/// Direct offsets of a single type: pair and quintic rules combined.
fn direct_offsets(t: &HomaloidalType) -> Result<BTreeSet<i64>> {
    let mut out = pair_offsets(t)?;
    out.extend(quintic_offsets(t)?);
    Ok(out)
}

struct ReachCtx {
    class_memo: HashMap<(i64, i64), bool>,
    offsets_memo: HashMap<HomaloidalType, BTreeSet<i64>>,
}

impl ReachCtx {
    fn new() -> Self {
        ReachCtx {
            class_memo: HashMap::new(),
            offsets_memo: HashMap::new(),
        }
    }

    fn offsets(&mut self, t: &HomaloidalType) -> Result<BTreeSet<i64>> {
        if let Some(o) = self.offsets_memo.get(t) {
            return Ok(o.clone());
        }
        let o = direct_offsets(t)?;
        self.offsets_memo.insert(t.clone(), o.clone());
        Ok(o)
    }

    /// Whether the type's component provably lies in the closure of the
    /// degree-`b` locus: some direct offset `j` lands on `b` or on a degree
    /// whose whole class reaches `b`.
    fn type_reaches(&mut self, t: &HomaloidalType, b: i64) -> Result<bool> {
        let d = t.degree();
        for &j in &self.offsets(t)? {
            let mid = d + j;
            if mid == b || (mid < b && self.class_reaches(mid, b)?) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether the full degree-`a` locus provably lies in the closure of
    /// the degree-`b` locus. Only inclusions derivable from the offset
    /// rules are used; no speculative chaining.
    fn class_reaches(&mut self, a: i64, b: i64) -> Result<bool> {
        if a == b {
            return Ok(true);
        }
        if a > b {
            return Ok(false);
        }
        if let Some(&r) = self.class_memo.get(&(a, b)) {
            return Ok(r);
        }
        check_horizon(b)?;
        // Guard against recursion before the answer is known; a cycle
        // cannot certify an inclusion.
        self.class_memo.insert((a, b), false);
        let result = if a == 1 {
            // Linear maps degenerate from quadratic ones (two base-points
            // of multiplicity zero), so degree 1 reaches 2 unconditionally.
            b == 2 || self.class_reaches(2, b)?
        } else {
            let mut all = true;
            for t in enumerate_proper(a)? {
                if !self.type_reaches(&t, b)? {
                    all = false;
                    break;
                }
            }
            all
        };
        self.class_memo.insert((a, b), result);
        Ok(result)
    }
}

/// Whether the whole degree-`a` locus provably degenerates into the closure
/// of the degree-`b` locus, by the offset rules and their chaining.
pub fn class_reaches(a: i64, b: i64) -> Result<bool> {
    if a < 1 || b < a {
        return Err(Error::Precondition(format!(
            "need 1 <= a <= b, got {a}, {b}"
        )));
    }
    ReachCtx::new().class_reaches(a, b)
}

/// Degrees in `(d, d + horizon]` provably reachable from the type's
/// component: seeded by its own pair and quintic offsets and closed under
/// class-wide chaining (the `+1` rule is the special case where every type
/// of the intermediate degree has pair offset 1).
pub fn reachable_degrees(t: &HomaloidalType, horizon: i64) -> Result<BTreeSet<i64>> {
    if horizon < 0 {
        return Err(Error::Precondition("horizon must be non-negative".into()));
    }
    require_proper(t)?;
    check_horizon(t.degree() + horizon)?;
    let mut ctx = ReachCtx::new();
    let mut out = BTreeSet::new();
    for b in t.degree() + 1..=t.degree() + horizon {
        if ctx.type_reaches(t, b)? {
            out.insert(b);
        }
    }
    Ok(out)
}

/// Checks the pair-sum bound for the degree class of the type: with
/// `best = max{m_i + m_j < d}` (a zero second entry allowed),
/// `best = d - 1` for `d` in `{1,...,7,9,11}`, `best` in `[d-2, d-1]` for
/// `d = 8`, in `[d-3, d-1]` for `d = 10`, and `2d/3 < best < d` for
/// `d >= 12` (exact integer comparison `3*best > 2d`).
pub fn best_pair_bound_check(t: &HomaloidalType) -> Result<bool> {
    require_proper(t)?;
    let d = t.degree();
    // Max pair sum below d equals d minus the smallest pair offset.
    let best = match pair_offsets(t)?.first() {
        Some(&k) => d - k,
        None => 0, // only the identity type: two free points of multiplicity 0
    };
    Ok(match d {
        1..=7 | 9 | 11 => best == d - 1,
        8 => best >= d - 2 && best < d,
        10 => best >= d - 3 && best < d,
        _ => 3 * best > 2 * d && best < d,
    })
}

/// Everything the rules say about one type, JSON-ready.
#[derive(Debug, Clone, Serialize)]
pub struct DegenerationReport {
    #[serde(rename = "type")]
    pub r#type: HomaloidalType,
    pub pair_offsets: BTreeSet<i64>,
    pub quintic_offsets: BTreeSet<i64>,
    /// Offsets valid only for special-position members (three collinear
    /// base-points); never a component-wide statement.
    pub collinear_offsets: BTreeSet<i64>,
    pub plus_one: bool,
    /// `min(pair_offsets + quintic_offsets)`; `None` only for the identity
    /// type, which has no base-points to drive the rules.
    pub min_general_offset: Option<i64>,
    pub reachable: BTreeSet<i64>,
}

/// Runs all rules on one proper type with the given chaining horizon.
pub fn analyze(t: &HomaloidalType, horizon: i64) -> Result<DegenerationReport> {
    let pair = pair_offsets(t)?;
    let quintic = quintic_offsets(t)?;
    let collinear = collinear_offsets(t)?;
    let plus_one = t.degree() >= 2 && pair.contains(&1);
    let min_general_offset = pair.iter().chain(quintic.iter()).min().copied();
    let reachable = reachable_degrees(t, horizon)?;
    Ok(DegenerationReport {
        r#type: t.clone(),
        pair_offsets: pair,
        quintic_offsets: quintic,
        collinear_offsets: collinear,
        plus_one,
        min_general_offset,
        reachable,
    })
}

/// Per-degree row of the closure battery.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureRow {
    pub degree: i64,
    pub plus_one_holds: bool,
    pub failing: Vec<HomaloidalType>,
    /// Whether every smaller degree provably reaches this one, i.e. the
    /// closure of this degree contains all lower-degree maps.
    pub closure_equality: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureBattery {
    pub rows: Vec<ClosureRow>,
    pub chain_8_to_10: bool,
    pub chain_10_to_12: bool,
}

/// Closure battery over degrees `2..=max_degree`: the +1 status of every
/// degree, the closure-equality pattern, and the two long chains.
pub fn closure_battery(max_degree: i64) -> Result<ClosureBattery> {
    if max_degree < 2 {
        return Err(Error::Precondition("battery needs max degree >= 2".into()));
    }
    check_horizon(max_degree)?;
    let mut ctx = ReachCtx::new();
    let mut rows = Vec::new();
    for d in 2..=max_degree {
        let (plus_one_holds, failing) = degree_plus_one_holds(d)?;
        let mut closure_equality = true;
        for a in 1..d {
            if !ctx.class_reaches(a, d)? {
                closure_equality = false;
                break;
            }
        }
        rows.push(ClosureRow {
            degree: d,
            plus_one_holds,
            failing,
            closure_equality,
        });
    }
    let chain_8_to_10 = ctx.class_reaches(8, 10)?;
    let chain_10_to_12 = ctx.class_reaches(10, 12)?;
    Ok(ClosureBattery {
        rows,
        chain_8_to_10,
        chain_10_to_12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{family_3m, family_de_jonquieres};

    fn ty(s: &str) -> HomaloidalType {
        s.parse().unwrap()
    }

    fn set(ks: &[i64]) -> BTreeSet<i64> {
        ks.iter().copied().collect()
    }

    #[test]
    fn pair_offset_examples() {
        assert_eq!(pair_offsets(&ty("10;5^3,2^6")).unwrap(), set(&[3, 5, 6, 8]));
        assert!(pair_offsets(&family_de_jonquieres(7).unwrap())
            .unwrap()
            .contains(&1));
        assert_eq!(pair_offsets(&ty("8;3^7")).unwrap(), set(&[2, 5]));
        assert_eq!(pair_offsets(&ty("1;")).unwrap(), set(&[]));
    }

    #[test]
    fn pair_offsets_brute_force_oracle() {
        // Independent route: scan all index pairs and singles directly.
        for s in [
            "10;5^3,2^6",
            "8;4^3,2^3,1^3",
            "11;6,5^3,1^9",
            "37;18,12^7,6",
        ] {
            let t = ty(s);
            let d = t.degree();
            let ms = t.mults();
            let mut expect = BTreeSet::new();
            for i in 0..ms.len() {
                for j in 0..ms.len() {
                    if i != j && d - ms[i] - ms[j] >= 1 {
                        expect.insert(d - ms[i] - ms[j]);
                    }
                }
                if d - ms[i] >= 1 {
                    expect.insert(d - ms[i]);
                }
            }
            assert_eq!(pair_offsets(&t).unwrap(), expect, "{s}");
        }
    }

    #[test]
    fn quintic_offset_examples() {
        assert!(quintic_offsets(&ty("10;5^3,2^6")).unwrap().contains(&2));
        assert_eq!(quintic_offsets(&ty("2;1^3")).unwrap(), set(&[]));
        let q = quintic_offsets(&ty("37;18,12^7,6")).unwrap();
        assert_eq!(q.first().copied(), Some(16));
    }

    #[test]
    fn quintic_offsets_brute_force_oracle() {
        // Exhaustive index 5-subset scan, duplicates and all.
        for s in ["10;5^3,2^6", "37;18,12^7,6", "8;3^7"] {
            let t = ty(s);
            let ms = t.mults();
            let d = t.degree();
            let n = ms.len();
            let mut expect = BTreeSet::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for e in c + 1..n {
                            for f in e + 1..n {
                                let k = 2 * d - (ms[a] + ms[b] + ms[c] + ms[e] + ms[f]);
                                if k >= 1 {
                                    expect.insert(2 * k);
                                }
                            }
                        }
                    }
                }
            }
            assert_eq!(quintic_offsets(&t).unwrap(), expect, "{s}");
        }
    }

    #[test]
    fn collinear_offset_examples() {
        // (1,2,4,4,4): 1+2+4+2*4+2*4 = 23 = 3*8-1.
        assert!(collinear_offsets(&ty("8;4^3,2^3,1^3"))
            .unwrap()
            .contains(&1));
        // (2,2,5,5,5): 2+2+5+2*5+2*5 = 29 = 3*10-1.
        assert!(collinear_offsets(&ty("10;5^3,2^6")).unwrap().contains(&1));
        assert_eq!(collinear_offsets(&ty("2;1^3")).unwrap(), set(&[]));
    }

    #[test]
    fn improper_input_is_rejected() {
        let improper = ty("5;3^2,1^6");
        assert!(matches!(pair_offsets(&improper), Err(Error::Improper(_))));
        assert!(matches!(
            quintic_offsets(&improper),
            Err(Error::Improper(_))
        ));
        assert!(matches!(
            in_closure_plus_one(&improper),
            Err(Error::Improper(_))
        ));
    }

    #[test]
    fn plus_one_examples() {
        assert!(!in_closure_plus_one(&ty("8;3^7")).unwrap());
        assert!(!in_closure_plus_one(&ty("8;4^3,2^3,1^3")).unwrap());
        assert!(in_closure_plus_one(&ty("5;2^6")).unwrap());
        assert!(in_closure_plus_one(&family_de_jonquieres(9).unwrap()).unwrap());
    }

    #[test]
    fn plus_one_per_degree() {
        for d in 2..=12 {
            let (holds, failing) = degree_plus_one_holds(d).unwrap();
            let expect = matches!(d, 2..=7 | 9 | 11);
            assert_eq!(holds, expect, "degree {d}");
            match d {
                8 => assert_eq!(failing, vec![ty("8;4^3,2^3,1^3"), ty("8;3^7")]),
                10 => assert_eq!(failing.len(), 7),
                _ => {}
            }
        }
    }

    #[test]
    fn plus_one_fails_from_13_to_16() {
        for d in 13..=16 {
            let (holds, failing) = degree_plus_one_holds(d).unwrap();
            assert!(!holds, "degree {d}");
            assert!(!failing.is_empty());
        }
        // The 3m-family witnesses for degrees 14, 15, 16.
        let [_, _, c4] = family_3m(4).unwrap();
        assert!(!in_closure_plus_one(&c4).unwrap());
        let [a5, b5, _] = family_3m(5).unwrap();
        assert!(!in_closure_plus_one(&a5).unwrap());
        assert!(!in_closure_plus_one(&b5).unwrap());
    }

    #[test]
    fn degree_13_family_witness_has_a_pair_but_another_type_fails() {
        // (13;7,6^2,4,3^3,1^4) contains 6+6 = 12 = d-1, so it does satisfy
        // the +1 criterion; the enumerated witness is (13;10,3^7,1^5).
        let [_, b4, _] = family_3m(4).unwrap();
        assert_eq!(b4, ty("13;7,6^2,4,3^3,1^4"));
        assert!(in_closure_plus_one(&b4).unwrap());
        let (_, failing) = degree_plus_one_holds(13).unwrap();
        assert!(failing.contains(&ty("13;10,3^7,1^5")));
    }

    #[test]
    fn horizon_is_enforced() {
        assert!(matches!(
            degree_plus_one_holds(17),
            Err(Error::Horizon { .. })
        ));
        assert!(matches!(
            reachable_degrees(&ty("10;5^3,2^6"), 10),
            Err(Error::Horizon { .. })
        ));
    }

    #[test]
    fn reachable_examples() {
        assert_eq!(reachable_degrees(&ty("8;3^7"), 4).unwrap(), set(&[10, 12]));
        assert_eq!(reachable_degrees(&ty("5;2^6"), 1).unwrap(), set(&[6]));
        assert_eq!(
            reachable_degrees(&family_de_jonquieres(9).unwrap(), 1).unwrap(),
            set(&[10])
        );
    }

    #[test]
    fn class_chains() {
        assert!(class_reaches(8, 10).unwrap());
        assert!(class_reaches(10, 12).unwrap());
        assert!(!class_reaches(8, 9).unwrap());
        assert!(!class_reaches(10, 11).unwrap());
        assert!(class_reaches(1, 2).unwrap());
        for d in 2..=7 {
            assert!(class_reaches(d, d + 1).unwrap(), "degree {d}");
        }
    }

    #[test]
    fn closure_equality_pattern() {
        let battery = closure_battery(13).unwrap();
        assert!(battery.chain_8_to_10);
        assert!(battery.chain_10_to_12);
        for row in &battery.rows {
            let expect = row.degree <= 8 || row.degree == 10 || row.degree == 12;
            assert_eq!(row.closure_equality, expect, "degree {}", row.degree);
        }
    }

    #[test]
    fn best_pair_examples() {
        assert!(best_pair_bound_check(&ty("8;3^7")).unwrap());
        assert!(best_pair_bound_check(&ty("9;5,4,3^4,1^3")).unwrap());
        assert!(best_pair_bound_check(&ty("37;18,12^7,6")).unwrap());
    }

    #[test]
    fn best_pair_holds_on_every_enumerated_type() {
        for d in 1..=ENUMERATION_HORIZON {
            for t in enumerate_proper(d).unwrap() {
                assert!(best_pair_bound_check(&t).unwrap(), "{t}");
            }
        }
    }

    #[test]
    fn min_general_offset_bound() {
        for d in 2..=12 {
            let cap = 1.max(d / 3);
            for t in enumerate_proper(d).unwrap() {
                let report = analyze(&t, 0).unwrap();
                let min = report.min_general_offset.expect("offsets exist for d >= 2");
                assert!(min <= cap, "{t}: {min} > {cap}");
            }
        }
    }

    #[test]
    fn identity_type_has_no_offsets() {
        let one = ty("1;");
        let report = analyze(&one, 0).unwrap();
        assert!(report.pair_offsets.is_empty());
        assert!(report.quintic_offsets.is_empty());
        assert_eq!(report.min_general_offset, None);
        assert!(!report.plus_one);
        assert!(best_pair_bound_check(&one).unwrap());
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["min_general_offset"].is_null());
    }

    #[test]
    fn report_schema_fields() {
        let report = analyze(&ty("10;5^3,2^6"), 2).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "type",
            "pair_offsets",
            "quintic_offsets",
            "collinear_offsets",
            "plus_one",
            "min_general_offset",
            "reachable",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["min_general_offset"], 2);
        assert_eq!(json["plus_one"], false);
    }
}
