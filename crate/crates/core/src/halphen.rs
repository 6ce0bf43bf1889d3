//! The Bertini-involution matrix, powers of `nu*B`, the self-dual family
//! `(36a^2+1; 12a^2+6a, (12a^2)^7, 12a^2-6a)`, and the combinatorial part
//! of the obstruction that keeps these types out of the closures of the
//! next `a` degrees.

// Index loops mirror the (i, j) entry formulas.
#![allow(clippy::needless_range_loop)]

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{hudson_reduce, HomaloidalType, HudsonOutcome, IntegerMatrix, LatticeVector};

/// The fixed 10x10 involution acting like a Bertini involution on eight
/// points: first row `(17, 0, 6, ..., 6)`, inner block `-3` on the diagonal
/// and `-2` off it.
pub fn bertini_matrix() -> IntegerMatrix {
    let mut rows = vec![vec![0i64; 10]; 10];
    rows[0][0] = 17;
    rows[1][1] = 1;
    for j in 2..10 {
        rows[0][j] = 6;
    }
    for i in 2..10 {
        rows[i][0] = -6;
        for j in 2..10 {
            rows[i][j] = if i == j { -3 } else { -2 };
        }
    }
    IntegerMatrix::from_rows(rows).expect("square by construction")
}

fn nu_matrix() -> IntegerMatrix {
    let mut perm: Vec<usize> = (0..10).collect();
    perm.swap(1, 2);
    IntegerMatrix::permutation(&perm).expect("valid permutation")
}

/// `(nu B)^(2a)` by repeated exact multiplication, where `nu` swaps
/// `e_1` and `e_2`. Negative `a` uses the inverse `B nu`.
pub fn nu_b_power(a: i64) -> Result<IntegerMatrix> {
    let step = if a >= 0 {
        nu_matrix().mul(&bertini_matrix())?
    } else {
        bertini_matrix().mul(&nu_matrix())?
    };
    let square = step.mul(&step)?;
    let mut acc = IntegerMatrix::identity(10);
    for _ in 0..a.unsigned_abs() {
        acc = acc.mul(&square)?;
    }
    Ok(acc)
}

/// The closed form of `(nu B)^(2a)`: a rank-structured block in `a` plus
/// the identity.
pub fn nu_b_closed_form(a: i64) -> Result<IntegerMatrix> {
    let sq = a.checked_mul(a).ok_or(Error::Overflow)?;
    let q4 = 4i64.checked_mul(sq).ok_or(Error::Overflow)?;
    let q12 = 12i64.checked_mul(sq).ok_or(Error::Overflow)?;
    let a2 = 2 * a;
    let a4 = 4 * a;
    let a6 = 6i64.checked_mul(a).ok_or(Error::Overflow)?;
    let mut rows = vec![vec![0i64; 10]; 10];
    rows[0][0] = 3 * q12;
    rows[0][1] = q12 - a6;
    rows[0][2] = q12 + a6;
    rows[1][0] = -q12 - a6;
    rows[1][1] = -q4;
    rows[1][2] = -q4 - a4;
    rows[2][0] = -q12 + a6;
    rows[2][1] = -q4 + a4;
    rows[2][2] = -q4;
    for j in 3..10 {
        rows[0][j] = q12;
        rows[1][j] = -q4 - a2;
        rows[2][j] = -q4 + a2;
    }
    for i in 3..10 {
        rows[i][0] = -q12;
        rows[i][1] = -q4 + a2;
        rows[i][2] = -q4 - a2;
        for j in 3..10 {
            rows[i][j] = -q4;
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = row[i].checked_add(1).ok_or(Error::Overflow)?;
    }
    IntegerMatrix::from_rows(rows)
}

/// The self-dual type `(36a^2+1; 12a^2+6a, (12a^2)^7, 12a^2-6a)`, `a >= 1`.
pub fn lambda_a(a: i64) -> Result<HomaloidalType> {
    if a < 1 {
        return Err(Error::Domain(format!("lambda_a needs a >= 1, got {a}")));
    }
    let sq = a.checked_mul(a).ok_or(Error::Overflow)?;
    let q12 = 12i64.checked_mul(sq).ok_or(Error::Overflow)?;
    let a6 = 6 * a;
    let d = 36i64
        .checked_mul(sq)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow)?;
    let mut mults = vec![q12.checked_add(a6).ok_or(Error::Overflow)?];
    mults.extend(std::iter::repeat_n(q12, 7));
    mults.push(q12.checked_sub(a6).ok_or(Error::Overflow)?);
    HomaloidalType::new(d, mults)
}

/// Establishes membership of the Bertini matrix in the group `W`: runs the
/// word reduction on its column-0 type and checks that the residual is a
/// permutation of the indices `>= 1`.
pub fn verify_bertini_in_weyl_group() -> Result<bool> {
    let b = bertini_matrix();
    let v = b.image_of_e0()?;
    // Keep the zero entry at index 1 in the support so the word matrix
    // covers all ten indices.
    let padded = LatticeVector::new(v.degree(), {
        let mut m = v.mults().to_vec();
        m.resize(9, 0);
        m
    });
    match hudson_reduce(&padded)? {
        HudsonOutcome::Improper(_) => Ok(false),
        HudsonOutcome::Proper(word) => {
            let h = word.matrix()?.embed(10);
            Ok(h.mul(&b)?.is_index_permutation())
        }
    }
}

/// One solution of the degeneration bookkeeping equations.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionSolution {
    /// Increments on the nine existing multiplicities, entries in `[0, k]`;
    /// the middle block (positions 2..=8) is canonically descending.
    pub eps: [i64; 9],
    /// Extra multiplicities in `[1, k]`, descending.
    pub extras: Vec<i64>,
    /// The full candidate type `(d+k; n_i + eps_i, extras...)`.
    pub candidate: HomaloidalType,
    /// Hudson-properness of the candidate.
    pub proper: bool,
}

/// What the combinatorial search concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionVerdict {
    /// No Hudson-proper candidate exists at all: the obstruction is purely
    /// combinatorial.
    NoCandidates,
    /// Every solution keeps `r = 9`, and the surviving proper candidates
    /// are exactly the ones excluded by the cited irreducibility argument,
    /// which this tool reports rather than decides.
    R9OnlyGeometricExclusion,
    /// Some solution introduces extra base-points; the combinatorial
    /// argument alone does not close the obstruction.
    UnobstructedCandidates,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub a: i64,
    pub k: i64,
    /// Degree `36a^2 + 1` of the family member.
    pub degree: i64,
    /// The nine base multiplicities, descending.
    pub base: [i64; 9],
    pub solutions: Vec<ObstructionSolution>,
    /// True iff every solution has an empty extras multiset.
    pub all_r9: bool,
    /// Hudson-proper candidates among the `r = 9` solutions.
    pub proper_candidates: Vec<HomaloidalType>,
    pub verdict: ObstructionVerdict,
}

fn extras_matching(sum: i64, max_part: i64, square_target: i128, out: &mut Vec<Vec<i64>>) {
    fn rec(sum: i64, max_part: i64, sq: i128, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if sum == 0 {
            if sq == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut v = max_part.min(sum);
        while v >= 1 {
            let v2 = (v as i128) * (v as i128);
            // With all parts in [1, v], squares lie in [remaining, v*remaining].
            let rest = (sum - v) as i128;
            if sq >= v2 + rest && sq <= v2 + (v as i128) * rest {
                cur.push(v);
                rec(sum - v, v, sq - v2, cur, out);
                cur.pop();
            }
            v -= 1;
        }
    }
    let mut cur = Vec::new();
    rec(sum, max_part, square_target, &mut cur, out);
}

struct SearchCtx {
    base: [i64; 9],
    k: i64,
    target: i128,
}

#[allow(clippy::too_many_arguments)]
fn search_mids(
    mid: &mut [i64; 7],
    idx: usize,
    max: i64,
    sum: i64,
    big: i128,
    ctx: &SearchCtx,
    emit: &mut dyn FnMut([i64; 9], Vec<i64>) -> Result<()>,
    e1: i64,
    e9: i64,
) -> Result<()> {
    if sum > 3 * ctx.k || big > ctx.target {
        return Ok(());
    }
    if idx == 7 {
        let extras_sum = 3 * ctx.k - sum;
        let extras_square = ctx.target - big;
        let mut extras_sets = Vec::new();
        if extras_sum == 0 {
            if extras_square == 0 {
                extras_sets.push(Vec::new());
            }
        } else {
            extras_matching(extras_sum, ctx.k, extras_square, &mut extras_sets);
        }
        if !extras_sets.is_empty() {
            let mut eps = [0i64; 9];
            eps[0] = e1;
            eps[8] = e9;
            eps[1..8].copy_from_slice(mid);
            for extras in extras_sets {
                emit(eps, extras)?;
            }
        }
        return Ok(());
    }
    let n = ctx.base[1] as i128;
    for v in (0..=max).rev() {
        mid[idx] = v;
        let vi = v as i128;
        search_mids(
            mid,
            idx + 1,
            v,
            sum + v,
            big + 2 * n * vi + vi * vi,
            ctx,
            emit,
            e1,
            e9,
        )?;
    }
    mid[idx] = 0;
    Ok(())
}

/// Exhaustive search for the multiplicity bookkeeping of a degeneration of
/// the degree-`d` family member into degree `d + k`: increments
/// `eps_1..eps_9` in `[0, k]` and extras in `[1, k]` subject to
/// `sum(eps) + sum(extras) = 3k` and
/// `sum(2 n_i eps_i + eps_i^2) + sum(extras^2) = 2dk + k^2`.
///
/// For `1 <= k <= a` every solution has `r = 9` (no extras); any surviving
/// Hudson-proper candidates are reported, not decided, since the final
/// exclusion is the cited irreducibility argument. Callable with `k > a`
/// for exploration.
pub fn obstruction_candidates(a: i64, k: i64) -> Result<ObstructionReport> {
    if a < 1 || k < 1 {
        return Err(Error::Domain(format!(
            "need a >= 1 and k >= 1, got a={a}, k={k}"
        )));
    }
    if k > a.max(24) {
        // The full 1 <= k <= a regime stays available; exploration beyond
        // it is capped where the eps/extras boxes stop being tractable.
        return Err(Error::Domain(format!(
            "search guard: k={k} too large for a={a}"
        )));
    }
    let t = lambda_a(a)?;
    let d = t.degree();
    let base: [i64; 9] = t.mults().try_into().expect("nine multiplicities");
    let target: i128 = (2 * d * k + k * k) as i128;

    let eps_heads: Vec<(i64, i64)> = (0..=k)
        .flat_map(|e1| (0..=k).map(move |e9| (e1, e9)))
        .collect();

    let mut solutions: Vec<ObstructionSolution> = eps_heads
        .par_iter()
        .map(|&(e1, e9)| -> Result<Vec<ObstructionSolution>> {
            let mut found = Vec::new();
            let term = |n: i64, e: i64| {
                let (n, e) = (n as i128, e as i128);
                2 * n * e + e * e
            };
            let head_sum = e1 + e9;
            let head_big = term(base[0], e1) + term(base[8], e9);
            let mut mid = [0i64; 7];
            // Middle block (positions 2..=8 share one base value), built as
            // a descending tuple; the weighted sum grows monotonically, so
            // overshooting either equation prunes the whole branch.
            search_mids(
                &mut mid,
                0,
                k,
                head_sum,
                head_big,
                &SearchCtx { base, k, target },
                &mut |eps, extras| {
                    let mut mults: Vec<i64> =
                        base.iter().zip(eps.iter()).map(|(n, e)| n + e).collect();
                    mults.extend(extras.iter().copied());
                    let candidate = HomaloidalType::new(d + k, mults)?;
                    let proper = crate::lattice::is_proper(&candidate);
                    found.push(ObstructionSolution {
                        eps,
                        extras,
                        candidate,
                        proper,
                    });
                    Ok(())
                },
                e1,
                e9,
            )?;
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    solutions.sort_by(|x, y| (x.eps, &x.extras).cmp(&(y.eps, &y.extras)));

    let all_r9 = solutions.iter().all(|s| s.extras.is_empty());
    let proper_candidates: Vec<HomaloidalType> = solutions
        .iter()
        .filter(|s| s.extras.is_empty() && s.proper)
        .map(|s| s.candidate.clone())
        .collect();
    let verdict = if !all_r9 {
        ObstructionVerdict::UnobstructedCandidates
    } else if proper_candidates.is_empty() {
        ObstructionVerdict::NoCandidates
    } else {
        ObstructionVerdict::R9OnlyGeometricExclusion
    };
    Ok(ObstructionReport {
        a,
        k,
        degree: d,
        base,
        solutions,
        all_r9,
        proper_candidates,
        verdict,
    })
}
