//! Normal form `(e, c, b, a)` of minimal zero-sum quadruples and their gcd
//! pattern classification.
//!
//! A quadruple is in normal form when some unit multiple, sorted as
//! `y1 ≤ y2 ≤ y3 ≤ y4`, satisfies
//!
//! ```text
//! y1 < y2 < n/2 < y3 ≤ y4 < n − y1,   y1 + y2 + y3 + y4 = 2n
//! ```
//!
//! and then `(e, c, b, a) = (y1, y2, n − y3, n − y4)` with `e + c = a + b` and
//! `e < a ≤ b < c < n/2`. Not every minimal zero-sum quadruple has such a
//! multiple; [`normalize`] reports absence instead of assuming it.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::Modulus;
use crate::zseq::ResidueSeq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternTag {
    /// `{p1, p2, p1p3, p2p3}`
    A1,
    /// `{1, p1, p2, p1p2}`
    A2,
    /// `{1, 1, 1, 1}`
    A3,
    /// `{1, p1p2, p1p3, p2p3}`
    A4,
    /// `n` has at most two distinct prime factors.
    TwoPrimeOrFewer,
    Other,
}

impl PatternTag {
    /// The four patterns that need `n` to be a product of three distinct primes.
    pub fn needs_three_primes(self) -> bool {
        matches!(self, Self::A1 | Self::A2 | Self::A3 | Self::A4)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::A1 => "a1",
            Self::A2 => "a2",
            Self::A3 => "a3",
            Self::A4 => "a4",
            Self::TwoPrimeOrFewer => "two_prime_or_fewer",
            Self::Other => "other",
        }
    }
}

impl std::str::FromStr for PatternTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        [
            Self::A1,
            Self::A2,
            Self::A3,
            Self::A4,
            Self::TwoPrimeOrFewer,
            Self::Other,
        ]
        .into_iter()
        .find(|t| t.as_str() == key)
        .ok_or_else(|| Error::Precondition(format!("unknown pattern `{s}`")))
    }
}

impl fmt::Display for PatternTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdPattern {
    pub tag: PatternTag,
    /// `(p1, p2, p3)` realizing the pattern; the first match in lexicographic
    /// order of the permutations of the ascending primes.
    pub labeled_primes: Option<(u64, u64, u64)>,
}

/// Classifies a quadruple by the multiset `{gcd(x_i, n)}`.
pub fn classify(s: &ResidueSeq) -> GcdPattern {
    let m = s.modulus();
    let other = GcdPattern {
        tag: PatternTag::Other,
        labeled_primes: None,
    };
    if m.num_distinct_primes() <= 2 {
        return GcdPattern {
            tag: PatternTag::TwoPrimeOrFewer,
            labeled_primes: None,
        };
    }
    if s.len() != 4 || m.num_distinct_primes() != 3 || !m.is_squarefree() {
        return other;
    }
    let mut gcds: Vec<u64> = s.terms().iter().map(|&x| m.gcd_with(x)).collect();
    gcds.sort_unstable();
    if gcds == [1, 1, 1, 1] {
        return GcdPattern {
            tag: PatternTag::A3,
            labeled_primes: None,
        };
    }
    let primes: Vec<u64> = m.distinct_primes().collect();
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for tag in [PatternTag::A1, PatternTag::A2, PatternTag::A4] {
        for perm in PERMS {
            let (p1, p2, p3) = (primes[perm[0]], primes[perm[1]], primes[perm[2]]);
            let mut expected = match tag {
                PatternTag::A1 => [p1, p2, p1 * p3, p2 * p3],
                PatternTag::A2 => [1, p1, p2, p1 * p2],
                _ => [1, p1 * p2, p1 * p3, p2 * p3],
            };
            expected.sort_unstable();
            if gcds == expected {
                return GcdPattern {
                    tag,
                    labeled_primes: Some((p1, p2, p3)),
                };
            }
        }
    }
    other
}

/// The `(e, c, b, a)` coordinates of a normal-form quadruple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalizedQuadruple {
    modulus: Arc<Modulus>,
    pub e: u64,
    pub c: u64,
    pub b: u64,
    pub a: u64,
    /// `⌊b/a⌋`
    pub s: u64,
    /// Unit `v` with `v·S = (e, c, n−b, n−a)` for the source sequence `S`.
    pub normalizing_unit: u64,
}

impl NormalizedQuadruple {
    /// Validates `e + c = a + b`, `1 ≤ e < a ≤ b < c < n/2` and minimality.
    pub fn new(
        modulus: Arc<Modulus>,
        e: u64,
        c: u64,
        b: u64,
        a: u64,
        normalizing_unit: u64,
    ) -> Result<Self> {
        let n = modulus.n();
        let bad = |why: &str| {
            Err(Error::InvalidQuadruple(format!(
                "({e}, {c}, {b}, {a}) mod {n}: {why}"
            )))
        };
        if e + c != a + b {
            return bad("e + c != a + b");
        }
        if !(1 <= e && e < a && a <= b && b < c && 2 * c < n) {
            return bad("violates e < a <= b < c < n/2");
        }
        if !modulus.is_unit(normalizing_unit % n) {
            return bad("normalizing multiplier is not a unit");
        }
        let q = Self {
            modulus,
            e,
            c,
            b,
            a,
            s: b / a,
            normalizing_unit,
        };
        if !q.sequence().is_minimal_zero_sum() {
            return bad("not a minimal zero-sum sequence");
        }
        Ok(q)
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.n()
    }

    /// `(e, c, n−b, n−a)`, whose term sum is `2n`.
    pub fn sequence(&self) -> ResidueSeq {
        let n = self.n();
        ResidueSeq::from_sorted_unchecked(
            self.modulus.clone(),
            vec![self.e, self.c, n - self.b, n - self.a],
        )
    }

    pub fn coords(&self) -> (u64, u64, u64, u64) {
        (self.e, self.c, self.b, self.a)
    }
}

impl fmt::Display for NormalizedQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(e={}, c={}, b={}, a={}) mod {}",
            self.e,
            self.c,
            self.b,
            self.a,
            self.n()
        )
    }
}

fn normal_shape(y: &[u64], n: u64) -> bool {
    let (y1, y2, y3, y4) = (y[0], y[1], y[2], y[3]);
    y1 + y2 + y3 + y4 == 2 * n && y1 < y2 && 2 * y2 < n && n < 2 * y3 && y3 <= y4 && y4 + y1 < n
}

/// Searches the unit orbit for the normal form; the least unit wins.
pub fn normalize(s: &ResidueSeq) -> Result<Option<NormalizedQuadruple>> {
    if s.len() != 4 {
        return Err(Error::WrongLength {
            expected: 4,
            found: s.len(),
        });
    }
    if !s.is_minimal_zero_sum() {
        return Err(Error::NotMinimal);
    }
    Ok(normalize_unchecked(s))
}

pub(crate) fn normalize_unchecked(s: &ResidueSeq) -> Option<NormalizedQuadruple> {
    let m = s.modulus();
    let n = m.n();
    let mut y = [0u64; 4];
    for v in m.units() {
        for (slot, &x) in y.iter_mut().zip(s.terms()) {
            *slot = m.mul(v, x);
        }
        y.sort_unstable();
        if normal_shape(&y, n) {
            let q = NormalizedQuadruple {
                modulus: m.clone(),
                e: y[0],
                c: y[1],
                b: n - y[2],
                a: n - y[3],
                s: (n - y[2]) / (n - y[3]),
                normalizing_unit: v,
            };
            debug_assert!(q.e + q.c == q.a + q.b && q.e < q.a && q.a <= q.b && q.b < q.c);
            return Some(q);
        }
    }
    None
}

/// `(e, c, n−b, n−a)`.
pub fn denormalize(q: &NormalizedQuadruple) -> ResidueSeq {
    q.sequence()
}
