//! Sequences over `Z_n` and the index invariant.
//!
//! A sequence `S = (x_1 g)···(x_k g)` is stored by its coefficients with
//! respect to a fixed generator. Changing the generator to `v⁻¹g` multiplies
//! every coefficient by the unit `v`, so the index is
//!
//! ```text
//! ind(S) = min over units v of  Σ |v·x_i|_n / n
//! ```
//!
//! and is constant on unit orbits.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modarith::Modulus;

/// An unordered sequence of nonzero residues. Terms are kept sorted, so
/// equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueSeq {
    modulus: Arc<Modulus>,
    terms: Vec<u64>,
}

impl ResidueSeq {
    pub fn new(modulus: Arc<Modulus>, mut terms: Vec<u64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        let n = modulus.n();
        if let Some(&term) = terms.iter().find(|&&t| t == 0 || t >= n) {
            return Err(Error::TermOutOfRange { term, n });
        }
        terms.sort_unstable();
        Ok(Self { modulus, terms })
    }

    /// Caller guarantees every term lies in `[1, n-1]`.
    pub(crate) fn from_sorted_unchecked(modulus: Arc<Modulus>, terms: Vec<u64>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(terms.iter().all(|&t| t >= 1 && t < modulus.n()));
        Self { modulus, terms }
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.n()
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn sum(&self) -> u128 {
        self.terms.iter().map(|&t| t as u128).sum()
    }

    /// `ν = Σ x_i / n` when the sequence is zero-sum.
    pub fn zero_sum_nu(&self) -> Option<u64> {
        let s = self.sum();
        let n = self.n() as u128;
        (s % n == 0).then(|| (s / n) as u64)
    }

    pub fn is_zero_sum(&self) -> bool {
        self.zero_sum_nu().is_some()
    }

    /// Zero-sum with no nonempty proper zero-sum subsequence.
    pub fn is_minimal_zero_sum(&self) -> bool {
        if !self.is_zero_sum() {
            return false;
        }
        let n = self.n();
        match self.terms.as_slice() {
            // Singletons and triples of a zero-sum quadruple are nonzero
            // because every term is; only complementary pairs can vanish.
            [x1, x2, x3, x4] => {
                x1 + x2 != n
                    && x1 + x3 != n
                    && x1 + x4 != n
                    && x2 + x3 != n
                    && x2 + x4 != n
                    && x3 + x4 != n
            }
            terms => {
                // A proper zero-sum subsequence or its complement avoids the
                // last term, so it suffices that the rest is zero-sum free.
                zero_sum_free(&terms[..terms.len() - 1], n)
            }
        }
    }

    /// The unit multiple `v·S`, re-sorted.
    pub fn scale(&self, v: u64) -> Result<Self> {
        if !self.modulus.is_unit(v % self.n()) {
            return Err(Error::NotAUnit {
                value: v,
                n: self.n(),
            });
        }
        Ok(self.scale_unchecked(v))
    }

    pub(crate) fn scale_unchecked(&self, v: u64) -> Self {
        let mut terms: Vec<u64> = self.terms.iter().map(|&x| self.modulus.mul(v, x)).collect();
        terms.sort_unstable();
        Self::from_sorted_unchecked(self.modulus.clone(), terms)
    }

    /// Term sum of `v·S` before dividing by `n`.
    #[inline]
    pub(crate) fn scaled_sum(&self, v: u64) -> u128 {
        self.terms
            .iter()
            .map(|&x| self.modulus.mul(v, x) as u128)
            .sum()
    }
}

impl fmt::Display for ResidueSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ") mod {}", self.n())
    }
}

fn zero_sum_free(terms: &[u64], n: u64) -> bool {
    let n = n as usize;
    let mut reachable = vec![false; n];
    for &t in terms {
        let t = t as usize % n;
        let mut next = reachable.clone();
        next[t] = true;
        for (r, &hit) in reachable.iter().enumerate() {
            if hit {
                next[(r + t) % n] = true;
            }
        }
        if next[0] {
            return false;
        }
        reachable = next;
    }
    true
}

pub fn is_zero_sum(s: &ResidueSeq) -> Option<u64> {
    s.zero_sum_nu()
}

pub fn is_minimal_zero_sum(s: &ResidueSeq) -> bool {
    s.is_minimal_zero_sum()
}

/// `‖S‖` with respect to the generator whose coefficient multiplier is `v`:
/// `Σ |v·x_i|_n / n` when the sequence is zero-sum, the raw sum otherwise.
pub fn g_norm(s: &ResidueSeq, v: u64) -> Result<u64> {
    let m = s.modulus();
    if !m.is_unit(v % m.n()) {
        return Err(Error::NotAUnit { value: v, n: m.n() });
    }
    let total = s.scaled_sum(v);
    let n = m.n() as u128;
    Ok(if total % n == 0 { total / n } else { total } as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IndexResult {
    pub index_value: u64,
    /// Least unit attaining the minimum.
    pub witness_unit: u64,
}

/// The index of a zero-sum sequence, by scanning every unit multiplier.
pub fn index(s: &ResidueSeq) -> Result<IndexResult> {
    if !s.is_zero_sum() {
        return Err(Error::NotZeroSum);
    }
    let n = s.n() as u128;
    let mut best = IndexResult {
        index_value: u64::MAX,
        witness_unit: 0,
    };
    for v in s.modulus().units() {
        let value = (s.scaled_sum(v) / n) as u64;
        if value < best.index_value {
            best = IndexResult {
                index_value: value,
                witness_unit: v,
            };
            if value == 1 {
                break;
            }
        }
    }
    Ok(best)
}

/// `‖vS‖` for every unit `v`, in increasing order of `v`.
pub fn index_transcript(s: &ResidueSeq) -> Result<Vec<UnitNorm>> {
    if !s.is_zero_sum() {
        return Err(Error::NotZeroSum);
    }
    let n = s.n() as u128;
    Ok(s.modulus()
        .units()
        .map(|v| UnitNorm {
            v,
            norm: (s.scaled_sum(v) / n) as u64,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct UnitNorm {
    pub v: u64,
    pub norm: u64,
}

/// Lexicographically least sorted unit multiple of `S`.
pub fn canonical_rep(s: &ResidueSeq) -> ResidueSeq {
    let mut best = s.terms.clone();
    let mut buf = vec![0u64; s.len()];
    for v in s.modulus().units().skip(1) {
        for (slot, &x) in buf.iter_mut().zip(&s.terms) {
            *slot = s.modulus().mul(v, x);
        }
        buf.sort_unstable();
        if buf < best {
            best.copy_from_slice(&buf);
        }
    }
    ResidueSeq::from_sorted_unchecked(s.modulus().clone(), best)
}

/// `true` iff `S` is the least element of its unit orbit. Stops at the first
/// smaller multiple.
pub fn is_canonical(s: &ResidueSeq) -> bool {
    let mut buf = vec![0u64; s.len()];
    for v in s.modulus().units().skip(1) {
        for (slot, &x) in buf.iter_mut().zip(&s.terms) {
            *slot = s.modulus().mul(v, x);
        }
        buf.sort_unstable();
        if buf < s.terms {
            return false;
        }
    }
    true
}

/// Every distinct sorted unit multiple of `S`, ascending.
pub fn orbit(s: &ResidueSeq) -> Vec<Vec<u64>> {
    let mut members: Vec<Vec<u64>> = s
        .modulus()
        .units()
        .map(|v| {
            let mut t: Vec<u64> = s.terms.iter().map(|&x| s.modulus().mul(v, x)).collect();
            t.sort_unstable();
            t
        })
        .collect();
    members.sort_unstable();
    members.dedup();
    members
}
