//! Hudson's properness test with Weyl-word bookkeeping.
//!
//! The test repeatedly sorts the multiplicities and applies the reflection
//! `sigma_0`, ending at `e_0` (proper) or at a vector with a negative entry
//! (improper). Each step is an element of the group `W` generated by
//! `sigma_0` and the permutations of `e_i` fixing `e_0`, so a successful run
//! produces a word `h` with `h(v_T) = e_0`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lattice::{HomaloidalType, IntegerMatrix, LatticeVector};

/// One generator of the group `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylStep {
    /// The reflection by `e_0 - e_1 - e_2 - e_3`.
    Sigma0,
    /// A permutation of the indices `>= 1`, stored as the full image table
    /// (`perm[i]` is where `e_i` goes; `perm[0] == 0`).
    Perm(Vec<usize>),
}

/// A word in the generators of `W` together with its accumulated matrix
/// over a fixed support. The matrix is computed lazily and cached.
#[derive(Debug)]
pub struct WeylWord {
    dim: usize,
    steps: Vec<WeylStep>,
    matrix: OnceLock<IntegerMatrix>,
}

impl Clone for WeylWord {
    fn clone(&self) -> Self {
        WeylWord {
            dim: self.dim,
            steps: self.steps.clone(),
            matrix: OnceLock::new(),
        }
    }
}

impl WeylWord {
    pub fn empty(dim: usize) -> Self {
        WeylWord {
            dim,
            steps: Vec::new(),
            matrix: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &[WeylStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of `sigma_0` steps in the word.
    pub fn reflection_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, WeylStep::Sigma0))
            .count()
    }

    fn push(&mut self, step: WeylStep) {
        debug_assert!(self.matrix.get().is_none());
        self.steps.push(step);
    }

    /// Accumulated matrix: the product of the step matrices, later steps
    /// multiplied on the left.
    pub fn matrix(&self) -> Result<&IntegerMatrix> {
        if let Some(m) = self.matrix.get() {
            return Ok(m);
        }
        let mut acc = IntegerMatrix::identity(self.dim);
        for step in &self.steps {
            let g = match step {
                WeylStep::Sigma0 => IntegerMatrix::sigma0(self.dim)?,
                WeylStep::Perm(p) => IntegerMatrix::permutation(p)?,
            };
            acc = g.mul(&acc)?;
        }
        let _ = self.matrix.set(acc);
        Ok(self.matrix.get().expect("just set"))
    }

    /// Matrix of the inverse word, using `J`-orthogonality.
    pub fn inverse_matrix(&self) -> Result<IntegerMatrix> {
        Ok(self.matrix()?.orthogonal_inverse())
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.matrix()?.apply(v)
    }
}

/// Outcome of the reduction: a word sending the input to `e_0`, or the
/// first intermediate vector with a negative entry (or non-positive degree).
#[derive(Debug, Clone)]
pub enum HudsonOutcome {
    Proper(WeylWord),
    Improper(LatticeVector),
}

impl HudsonOutcome {
    pub fn is_proper(&self) -> bool {
        matches!(self, HudsonOutcome::Proper(_))
    }
}

fn sort_permutation(w: &[i64]) -> Option<Vec<usize>> {
    let n = w.len();
    // Stable descending order of indices 1..n by value.
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by(|&a, &b| w[b].cmp(&w[a]).then(a.cmp(&b)));
    if order.iter().enumerate().all(|(k, &i)| i == k + 1) {
        return None;
    }
    // order[k] = source index for target slot k+1, so perm[source] = target.
    let mut perm = vec![0usize; n];
    for (k, &src) in order.iter().enumerate() {
        perm[src] = k + 1;
    }
    Some(perm)
}

/// Runs the reduction on a raw lattice vector, keeping zero entries in the
/// support (needed when the word matrix must cover a fixed index range).
/// The vector must satisfy the Noether equalities.
pub fn hudson_reduce(v: &LatticeVector) -> Result<HudsonOutcome> {
    if !v.is_homaloidal()? {
        return Err(Error::NotHomaloidal(format!(
            "{v} fails the Noether equalities"
        )));
    }
    let dim = v.support_len().max(4);
    let mut w = v.raw_coords(dim)?;
    for entry in w.iter_mut().skip(1) {
        *entry = entry.checked_neg().ok_or(Error::Overflow)?;
    }
    // w now holds (d, m_1, ..., m_r) directly.
    let mut word = WeylWord::empty(dim);
    loop {
        if w[1..].iter().any(|&m| m < 0) || w[0] < 1 {
            return Ok(HudsonOutcome::Improper(LatticeVector::new(
                w[0],
                w[1..].to_vec(),
            )));
        }
        if w[0] == 1 && w[1..].iter().all(|&m| m == 0) {
            return Ok(HudsonOutcome::Proper(word));
        }
        if let Some(perm) = sort_permutation(&w) {
            let mut sorted = vec![0i64; dim];
            sorted[0] = w[0];
            for (i, &p) in perm.iter().enumerate().skip(1) {
                sorted[p] = w[i];
            }
            w = sorted;
            word.push(WeylStep::Perm(perm));
        }
        let eps = w[1]
            .checked_add(w[2])
            .and_then(|s| s.checked_add(w[3]))
            .and_then(|s| s.checked_sub(w[0]))
            .ok_or(Error::Overflow)?;
        // Noether forces m_1 + m_2 + m_3 >= d + 1 on sorted non-negative
        // data of degree >= 2, so every step strictly drops the degree.
        assert!(eps >= 1, "reduction stalled on {w:?}");
        for entry in w.iter_mut().take(4) {
            *entry = entry.checked_sub(eps).ok_or(Error::Overflow)?;
        }
        word.push(WeylStep::Sigma0);
    }
}

/// Hudson's test: `Proper(word)` iff the type lies in the orbit `W(e_0)`,
/// with `word` satisfying `word(v_T) = e_0`; otherwise the witness vector.
pub fn hudson_test(t: &HomaloidalType) -> Result<HudsonOutcome> {
    hudson_reduce(&t.to_vector())
}

/// Convenience wrapper for plain properness checks.
pub fn is_proper(t: &HomaloidalType) -> bool {
    matches!(hudson_test(t), Ok(HudsonOutcome::Proper(_)))
}

fn proper_word(t: &HomaloidalType) -> Result<WeylWord> {
    match hudson_test(t)? {
        HudsonOutcome::Proper(word) => Ok(word),
        HudsonOutcome::Improper(witness) => Err(Error::Improper(witness)),
    }
}

/// Homaloidal type of the inverse map, computed as the multiset of `h(e_0)`
/// for the Hudson word `h`.
///
/// Any two words sending `v_T` to `e_0` differ by an element of `W` fixing
/// `e_0`; such an element preserves the form and the canonical pairing and
/// therefore permutes the `e_i`, so the multiset below does not depend on
/// the word our algorithm happens to produce.
pub fn dual_type(t: &HomaloidalType) -> Result<HomaloidalType> {
    let word = proper_word(t)?;
    let image = word.matrix()?.image_of_e0()?;
    HomaloidalType::from_vector(&image)
}

/// Characteristic matrix: the element `g = h^{-1}` of `W` with
/// `g(e_0) = v_T`, over the support `{e_0, ..., e_r}` (padded to dimension
/// four for degenerate supports). Column 0 carries the raw coordinates
/// `(d, -m_1, ..., -m_r)`.
pub fn characteristic_matrix(t: &HomaloidalType) -> Result<IntegerMatrix> {
    let word = proper_word(t)?;
    word.inverse_matrix()
}
