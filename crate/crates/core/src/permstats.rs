//! Permutation statistics: inversions, descents, hooks, the hook
//! factorization, and the `lec` statistic, together with Eulerian
//! polynomials.
//!
//! A *hook* is a list `[t_1, t_2, ..., t_h]` with `h ≥ 2`, `t_1 > t_2`,
//! and `t_2 < t_3 < ... < t_h`.  Every list of distinct numbers factors
//! uniquely as an increasing prefix followed by a sequence of hooks
//! (reading concatenation), and `lec` is the total number of inversions of
//! the hook factors.  Summed over a symmetric group, `q^lec` recovers the
//! Eulerian polynomial divided by `q` — the identity the admissible-forest
//! bijection categorifies, and one of the cross-checks in the test suite.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::qpoly::QPoly;

/// A list of distinct positive integers (not necessarily `1..=n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NumberList(Vec<u32>);

impl NumberList {
    /// Validates distinctness and positivity; the empty list is allowed.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.first().is_some_and(|&v| v == 0) {
            return Err(Error::InvalidList("values must be positive".into()));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidList(format!("repeated value in {values:?}")));
        }
        Ok(NumberList(values))
    }

    /// Parse a comma-separated list such as `"3,1,2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::InvalidList("empty list".into()));
        }
        let values = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidList(format!("invalid entry {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        NumberList::new(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether this is a permutation of `1..=n`.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.0.len() != n {
            return false;
        }
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.iter().copied().eq(1..=n as u32)
    }

    /// Inversion pairs as 1-based positions: `(i, j)` with `i < j` and
    /// `l_i > l_j`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn inversion_count(&self) -> usize {
        self.inversions().len()
    }

    /// Number of positions `i` with `l_i > l_{i+1}`.
    pub fn descent_count(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Hooks have length ≥ 2, start with their unique descent, and increase
    /// afterwards.
    pub fn is_hook(&self) -> bool {
        self.0.len() >= 2
            && self.0[0] > self.0[1]
            && self.0[1..].windows(2).all(|w| w[0] < w[1])
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(self.0.iter().map(|&v| v.into()).collect())
    }
}

/// The unique factorization of a list into an increasing prefix and hooks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookFactorization {
    /// Increasing (possibly empty) prefix.
    pub prefix: NumberList,
    /// Hook factors in reading order; concatenating `prefix` with them
    /// restores the input.
    pub hooks: Vec<NumberList>,
}

/// Factor a list of distinct numbers as `prefix · η_1 · η_2 · ... · η_k`
/// with the prefix increasing and every `η_i` a hook.
///
/// Strips from the right: the suffix starting at the rightmost descent is
/// always a hook (nothing descends after it), and peeling it off leaves a
/// shorter instance of the same problem.  The factorization is unique, so
/// the strategy does not matter for the result — only that each stripped
/// factor is a hook and the remainder ends increasing.
pub fn hook_factorization(list: &NumberList) -> HookFactorization {
    let mut rest = list.values().to_vec();
    let mut hooks_rev: Vec<NumberList> = Vec::new();
    loop {
        let last_descent = (1..rest.len()).rev().find(|&i| rest[i - 1] > rest[i]);
        match last_descent {
            Some(i) => {
                let hook = rest.split_off(i - 1);
                debug_assert!(NumberList(hook.clone()).is_hook());
                hooks_rev.push(NumberList(hook));
            }
            None => {
                hooks_rev.reverse();
                return HookFactorization {
                    prefix: NumberList(rest),
                    hooks: hooks_rev,
                };
            }
        }
    }
}

/// The hook on the value set `values` (taken as a set) with exactly `i`
/// inversions: `[j_{i+1}, j_1, ..., j_i, j_{i+2}, ..., j_s]` where
/// `j_1 < j_2 < ... < j_s` are the sorted values.
///
/// Requires `s ≥ 2` and `1 ≤ i ≤ s - 1`.
pub fn hook_with_inversions(values: &[u32], i: usize) -> Result<NumberList> {
    let sorted = NumberList::new(values.to_vec())?;
    let mut j = sorted.0;
    j.sort_unstable();
    let s = j.len();
    if s < 2 {
        return Err(Error::InvalidList(format!(
            "a hook needs at least 2 values, got {s}"
        )));
    }
    if i < 1 || i > s - 1 {
        return Err(Error::InvalidList(format!(
            "inversion count {i} out of range 1..={}",
            s - 1
        )));
    }
    let mut out = Vec::with_capacity(s);
    out.push(j[i]);
    out.extend_from_slice(&j[..i]);
    out.extend_from_slice(&j[i + 1..]);
    let hook = NumberList(out);
    debug_assert!(hook.is_hook() && hook.inversion_count() == i);
    Ok(hook)
}

/// `lec`: the total number of inversions of the hook factors.
pub fn lec(list: &NumberList) -> usize {
    hook_factorization(list)
        .hooks
        .iter()
        .map(NumberList::inversion_count)
        .sum()
}

/// The Eulerian polynomial `A_ℓ(q) = Σ_k A(ℓ, k) q^k`, where `A(ℓ, k)`
/// counts permutations of `ℓ` with `k - 1` descents; `A_0 = 1`.
///
/// Computed by the standard recurrence
/// `A(ℓ, k) = k·A(ℓ-1, k) + (ℓ-k+1)·A(ℓ-1, k-1)`;
/// [`eulerian_poly_by_descents`] is the brute-force cross-check.
pub fn eulerian_poly(l: usize) -> QPoly {
    if l == 0 {
        return QPoly::one();
    }
    // row[k] = A(len, k) for k in 0..=len, starting from A_1 = q.
    let mut row: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
    for len in 2..=l {
        let mut next = vec![BigInt::zero(); len + 1];
        for (k, v) in next.iter_mut().enumerate().take(len + 1).skip(1) {
            let stay = BigInt::from(k as u64) * row.get(k).cloned().unwrap_or_default();
            let step = BigInt::from((len - k + 1) as u64) * row[k - 1].clone();
            *v = stay + step;
        }
        row = next;
    }
    QPoly::from_coeffs(row)
}

/// `A_ℓ(q)` by exhaustively counting descents over all `ℓ!` permutations.
pub fn eulerian_poly_by_descents(l: usize) -> QPoly {
    if l == 0 {
        return QPoly::one();
    }
    let mut coeffs = vec![BigInt::zero(); l + 1];
    for perm in (1..=l as u32).permutations(l) {
        let des = perm.windows(2).filter(|w| w[0] > w[1]).count();
        coeffs[des + 1] += 1;
    }
    QPoly::from_coeffs(coeffs)
}

/// `Σ q^lec(σ)` over all permutations of `1..=l`.
pub fn lec_distribution(l: usize) -> QPoly {
    if l == 0 {
        return QPoly::one();
    }
    let mut coeffs = vec![BigInt::zero(); l];
    for perm in (1..=l as u32).permutations(l) {
        coeffs[lec(&NumberList(perm))] += 1;
    }
    QPoly::from_coeffs(coeffs)
}
