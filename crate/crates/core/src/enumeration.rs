//! Exhaustive enumeration of homaloidal types of a given degree, and the
//! named infinite families.
//!
//! The search is a backtracking walk over descending multiplicity prefixes
//! with running-sum and square-sum pruning: with all remaining entries in
//! `[1, c]`, a completion with sum `s` and square-sum `q` exists only if
//! `s <= q <= c*s`. The quadratic constraint keeps the tree tiny for the
//! supported degrees.

use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{is_proper, HomaloidalType};

/// Largest degree the enumeration-backed operations accept.
pub const ENUMERATION_HORIZON: i64 = 16;

fn search(
    prefix: &mut Vec<i64>,
    max: i64,
    sum: i64,
    square: i64,
    out: &mut Vec<HomaloidalType>,
    d: i64,
) {
    if sum == 0 {
        if square == 0 {
            out.push(
                HomaloidalType::new(d, prefix.clone()).expect("search emits Noether solutions"),
            );
        }
        return;
    }
    let mut v = max.min(sum);
    while v * v > square {
        v -= 1;
    }
    while v >= 1 {
        let s = sum - v;
        let q = square - v * v;
        if q >= s && q <= v * s {
            prefix.push(v);
            search(prefix, v, s, q, out, d);
            prefix.pop();
        }
        v -= 1;
    }
}

/// All multisets `m_1 >= ... >= m_r >= 1` with `sum(m_i) = 3(d-1)` and
/// `sum(m_i^2) = d^2 - 1`, in lexicographically descending order.
///
/// The top-level branches run in parallel; the merge preserves the branch
/// order, so the output is identical for any thread count.
pub fn enumerate_noether(d: i64) -> Result<Vec<HomaloidalType>> {
    if d < 1 {
        return Err(Error::InvalidDegree(d));
    }
    let sum = 3 * (d - 1);
    let square = d * d - 1;
    if sum == 0 {
        return Ok(vec![HomaloidalType::new(1, vec![])?]);
    }
    // m_1 <= d - 1 is automatic from m_1^2 <= d^2 - 1.
    let top: Vec<i64> = (1..=d - 1).rev().collect();
    let branches: Vec<Vec<HomaloidalType>> = top
        .par_iter()
        .map(|&v| {
            let mut out = Vec::new();
            let s = sum - v;
            let q = square - v * v;
            if s >= 0 && q >= s && q <= v * s {
                let mut prefix = vec![v];
                search(&mut prefix, v, s, q, &mut out, d);
            }
            out
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

/// The Hudson-proper subset of [`enumerate_noether`], same order.
pub fn enumerate_proper(d: i64) -> Result<Vec<HomaloidalType>> {
    Ok(enumerate_noether(d)?
        .into_iter()
        .filter(is_proper)
        .collect())
}

/// The de Jonquieres type `(d; d-1, 1^(2d-2))`, defined for `d >= 2`.
pub fn family_de_jonquieres(d: i64) -> Result<HomaloidalType> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "de Jonquieres family needs d >= 2, got {d}"
        )));
    }
    let mut mults = vec![d - 1];
    mults.extend(std::iter::repeat_n(1, (2 * d - 2) as usize));
    HomaloidalType::new(d, mults)
}

/// The type `(d; d-2, 2^(d-2), 1^3)`, defined for `d >= 4`.
pub fn family_sub2(d: i64) -> Result<HomaloidalType> {
    if d < 4 {
        return Err(Error::Domain(format!(
            "(d; d-2, 2^(d-2), 1^3) needs d >= 4, got {d}"
        )));
    }
    let mut mults = vec![d - 2];
    mults.extend(std::iter::repeat_n(2, (d - 2) as usize));
    mults.extend([1, 1, 1]);
    HomaloidalType::new(d, mults)
}

/// The three types of degrees `3m`, `3m+1`, `3m+2`:
/// `(3m; 3m-6, 6^(m-3), 4^3, 3^2, 2, 1)`,
/// `(3m+1; 3m-5, 6^(m-2), 4, 3^3, 1^4)`,
/// `(3m+2; 3m-4, 6^(m-2), 4^2, 3^2, 2^2, 1)`, for `m >= 3`.
pub fn family_3m(m: i64) -> Result<[HomaloidalType; 3]> {
    if m < 3 {
        return Err(Error::Domain(format!(
            "the 3m families need m >= 3, got {m}"
        )));
    }
    let rep = |v: i64, k: i64| std::iter::repeat_n(v, k as usize);

    let mut a = vec![3 * m - 6];
    a.extend(rep(6, m - 3));
    a.extend([4, 4, 4, 3, 3, 2, 1]);

    let mut b = vec![3 * m - 5];
    b.extend(rep(6, m - 2));
    b.extend([4, 3, 3, 3, 1, 1, 1, 1]);

    let mut c = vec![3 * m - 4];
    c.extend(rep(6, m - 2));
    c.extend([4, 4, 3, 3, 2, 2, 1]);

    Ok([
        HomaloidalType::new(3 * m, a)?,
        HomaloidalType::new(3 * m + 1, b)?,
        HomaloidalType::new(3 * m + 2, c)?,
    ])
}

fn cache_file(dir: &Path, proper: bool, d: i64) -> std::path::PathBuf {
    dir.join(format!(
        "{}-{d}.json",
        if proper { "proper" } else { "noether" }
    ))
}

fn load_cache(path: &Path, proper: bool, d: i64) -> Option<Vec<HomaloidalType>> {
    let text = fs::read_to_string(path).ok()?;
    let types: Vec<HomaloidalType> = serde_json::from_str(&text).ok()?;
    // The cache is advisory: deserialization already re-validated canonical
    // form and the Noether equalities; recheck degree and properness and
    // recompute on any mismatch.
    if types
        .iter()
        .all(|t| t.degree() == d && (!proper || is_proper(t)))
    {
        Some(types)
    } else {
        None
    }
}

fn enumerate_cached(d: i64, dir: &Path, proper: bool) -> Result<Vec<HomaloidalType>> {
    let path = cache_file(dir, proper, d);
    if let Some(types) = load_cache(&path, proper, d) {
        return Ok(types);
    }
    let types = if proper {
        enumerate_proper(d)?
    } else {
        enumerate_noether(d)?
    };
    if fs::create_dir_all(dir).is_ok() {
        if let Ok(json) = serde_json::to_string(&types) {
            let _ = fs::write(&path, json);
        }
    }
    Ok(types)
}

/// [`enumerate_noether`] memoized to `noether-<d>.json` under `dir`.
pub fn enumerate_noether_cached(d: i64, dir: &Path) -> Result<Vec<HomaloidalType>> {
    enumerate_cached(d, dir, false)
}

/// [`enumerate_proper`] memoized to `proper-<d>.json` under `dir`.
pub fn enumerate_proper_cached(d: i64, dir: &Path) -> Result<Vec<HomaloidalType>> {
    enumerate_cached(d, dir, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> HomaloidalType {
        s.parse().unwrap()
    }

    #[test]
    fn degree_two_is_unique() {
        assert_eq!(enumerate_noether(2).unwrap(), vec![ty("2;1^3")]);
        assert_eq!(enumerate_proper(2).unwrap(), vec![ty("2;1^3")]);
    }

    #[test]
    fn degree_one_is_the_identity_type() {
        assert_eq!(enumerate_proper(1).unwrap(), vec![ty("1;")]);
    }

    #[test]
    fn degree_five_solutions() {
        let noether = enumerate_noether(5).unwrap();
        assert_eq!(
            noether,
            vec![
                ty("5;4,1^8"),
                ty("5;3^2,1^6"),
                ty("5;3,2^3,1^3"),
                ty("5;2^6")
            ]
        );
        assert_eq!(
            enumerate_proper(5).unwrap(),
            vec![ty("5;4,1^8"), ty("5;3,2^3,1^3"), ty("5;2^6")]
        );
    }

    #[test]
    fn proper_counts_match_small_degrees() {
        let expected = [1usize, 1, 2, 3, 4, 5, 9, 10, 17, 19];
        for (i, &n) in expected.iter().enumerate() {
            let d = i as i64 + 2;
            assert_eq!(enumerate_proper(d).unwrap().len(), n, "degree {d}");
        }
    }

    #[test]
    fn degree_ten_contains_both_families() {
        let proper = enumerate_proper(10).unwrap();
        assert!(proper.contains(&ty("10;9,1^18")));
        assert!(proper.contains(&ty("10;8,2^8,1^3")));
        assert_eq!(proper.len(), 17);
    }

    #[test]
    fn family_values() {
        assert_eq!(family_de_jonquieres(4).unwrap(), ty("4;3,1^6"));
        assert_eq!(family_sub2(8).unwrap(), ty("8;6,2^6,1^3"));
        let [a, b, c] = family_3m(3).unwrap();
        assert_eq!(a, ty("9;4^3,3^3,2,1"));
        assert_eq!(b, ty("10;6,4^2,3^3,1^4"));
        assert_eq!(c, ty("11;6,5,4^2,3^2,2^2,1"));
        let [_, b, _] = family_3m(4).unwrap();
        assert_eq!(b, ty("13;7,6^2,4,3^3,1^4"));
        let [a, _, _] = family_3m(4).unwrap();
        assert_eq!(a, ty("12;6^2,4^3,3^2,2,1"));
    }

    #[test]
    fn family_domain_errors() {
        assert!(family_de_jonquieres(1).is_err());
        assert!(family_sub2(3).is_err());
        assert!(family_3m(2).is_err());
    }

    #[test]
    fn families_are_proper_and_enumerated() {
        for d in 2..=12 {
            let proper = enumerate_proper(d).unwrap();
            assert!(proper.contains(&family_de_jonquieres(d).unwrap()));
            if d >= 4 {
                assert!(proper.contains(&family_sub2(d).unwrap()));
            }
        }
        for m in 3..=5 {
            for t in family_3m(m).unwrap() {
                assert!(is_proper(&t), "{t}");
            }
        }
    }

    #[test]
    fn proper_is_the_hudson_filter_of_noether() {
        for d in 2..=9 {
            let noether = enumerate_noether(d).unwrap();
            let proper = enumerate_proper(d).unwrap();
            for t in &proper {
                assert!(noether.contains(t));
            }
            for t in &noether {
                assert_eq!(proper.contains(t), is_proper(t), "{t}");
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_noether(11).unwrap();
        let b = enumerate_noether(11).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort_by(|x, y| y.mults().cmp(x.mults()));
        assert_eq!(a, sorted, "lexicographically descending order");
    }

    #[test]
    fn cache_round_trip_and_repair() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = enumerate_proper_cached(8, dir.path()).unwrap();
        assert_eq!(fresh, enumerate_proper(8).unwrap());
        let path = dir.path().join("proper-8.json");
        assert!(path.exists());
        let cached = enumerate_proper_cached(8, dir.path()).unwrap();
        assert_eq!(cached, fresh);
        // Corrupt the file; the cache is advisory and must recompute.
        std::fs::write(&path, "[{\"degree\":8,\"mults\":[4]}]").unwrap();
        let repaired = enumerate_proper_cached(8, dir.path()).unwrap();
        assert_eq!(repaired, fresh);
        // A valid file with the wrong degree is also rejected.
        std::fs::write(&path, "[{\"degree\":2,\"mults\":[1,1,1]}]").unwrap();
        let repaired = enumerate_proper_cached(8, dir.path()).unwrap();
        assert_eq!(repaired, fresh);
    }
}
