//! Orthogonal decompositions `α = e_1 + … + e_s` of non-zero-divisors.
//!
//! Parts of a decomposition of a non-zero-divisor are pairwise distinct and
//! satisfy `e·e ≠ 0`: if `e_i = e_j` for `i ≠ j`, or `e_i² = 0`, then
//! `α·e_i = e_i² = 0`. The search therefore ranges over sets of such
//! elements, which also bounds the length by `|S| - 1`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::semiring::{Elem, FiniteSemiring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub alpha: Elem,
    /// Ascending element indices.
    pub parts: Vec<Elem>,
}

impl Decomposition {
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn render(&self, s: &FiniteSemiring) -> String {
        let parts: Vec<&str> = self.parts.iter().map(|&e| s.name_of(e)).collect();
        format!(
            "alpha={} parts={} length={}",
            s.name_of(self.alpha),
            parts.join("+"),
            self.length()
        )
    }

    /// Checks the defining properties against `s`.
    pub fn is_valid(&self, s: &FiniteSemiring) -> bool {
        let sum = self.parts.iter().fold(s.zero(), |acc, &e| s.add(acc, e));
        sum == self.alpha
            && self.parts.iter().all(|&e| !s.is_zero(e))
            && self.parts.windows(2).all(|w| w[0] < w[1])
            && self.parts.iter().enumerate().all(|(i, &e)| {
                self.parts[i + 1..]
                    .iter()
                    .all(|&f| s.is_zero(s.mul(e, f)) && s.is_zero(s.mul(f, e)))
            })
    }
}

/// Visits every nonempty pairwise-orthogonal set of candidate parts, in
/// lexicographic order of the ascending part sequence, with its sum.
fn for_each_orthogonal_set(s: &FiniteSemiring, mut visit: impl FnMut(&[Elem], Elem)) {
    let candidates: Vec<Elem> = s
        .elements()
        .filter(|&e| !s.is_zero(e) && !s.is_zero(s.mul(e, e)))
        .collect();
    let mut chosen = Vec::new();
    dfs(s, &candidates, 0, s.zero(), &mut chosen, &mut visit);
}

fn dfs(
    s: &FiniteSemiring,
    candidates: &[Elem],
    from: usize,
    sum: Elem,
    chosen: &mut Vec<Elem>,
    visit: &mut impl FnMut(&[Elem], Elem),
) {
    for i in from..candidates.len() {
        let e = candidates[i];
        if chosen.iter().all(|&f| s.is_zero(s.mul(e, f))) {
            let next = s.add(sum, e);
            chosen.push(e);
            visit(chosen, next);
            dfs(s, candidates, i + 1, next, chosen, visit);
            chosen.pop();
        }
    }
}

/// Exact `ℓ(α)`.
pub fn decomposition_length(s: &FiniteSemiring, alpha: Elem) -> Result<usize> {
    if alpha >= s.size() {
        return Err(Error::OutOfRange {
            index: alpha,
            bound: s.size(),
        });
    }
    if s.is_zero(alpha) || s.is_zero_divisor(alpha) {
        return Err(Error::NotDecomposable(s.name_of(alpha).to_string()));
    }
    let mut best = 0;
    for_each_orthogonal_set(s, |parts, sum| {
        if sum == alpha {
            best = best.max(parts.len());
        }
    });
    debug_assert!(best >= 1, "alpha = alpha is always a decomposition");
    Ok(best)
}

/// Every decomposition of maximal length, over every non-zero-divisor that
/// attains it. Sorted by `alpha`, then by part sequence.
pub fn max_length_decompositions(s: &FiniteSemiring) -> Vec<Decomposition> {
    let zd = s.zero_divisor_set();
    let mut best = 0;
    let mut found: Vec<Decomposition> = Vec::new();
    for_each_orthogonal_set(s, |parts, sum| {
        if zd.contains(sum) || parts.len() < best {
            return;
        }
        if parts.len() > best {
            best = parts.len();
            found.clear();
        }
        found.push(Decomposition {
            alpha: sum,
            parts: parts.to_vec(),
        });
    });
    found.sort_by(|a, b| (a.alpha, &a.parts).cmp(&(b.alpha, &b.parts)));
    found
}

/// The maximal-length decomposition with least `alpha`, then
/// lexicographically least parts.
pub fn max_length_decomposition(s: &FiniteSemiring) -> Result<Decomposition> {
    max_length_decompositions(s)
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotDecomposable(format!("every element of {}", s.name())))
}

/// No non-zero-divisor has length ≥ 2.
///
/// Merging all but one part shows that length ≥ 2 is witnessed by a
/// two-part decomposition, so checking orthogonal pairs suffices.
pub fn is_indecomposable(s: &FiniteSemiring) -> bool {
    let zd: FixedBitSet = s.zero_divisor_set();
    let nonzero: Vec<Elem> = s.elements().filter(|&e| !s.is_zero(e)).collect();
    !nonzero.iter().enumerate().any(|(i, &e)| {
        nonzero[i + 1..]
            .iter()
            .any(|&f| s.is_zero(s.mul(e, f)) && !zd.contains(s.add(e, f)))
    })
}
