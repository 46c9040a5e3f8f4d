//! Interval diagnostics on the normal form: the Ω family, `k₁`, `m₁`, `l`
//! and the `N_j` counts.

use serde::{Deserialize, Serialize};

use crate::canon::NormalizedQuadruple;
use crate::modarith::{coprime_in_interval, RationalBound};

/// Exact rational, serialized as two integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i128,
    pub den: i128,
}

impl From<RationalBound> for Fraction {
    fn from(r: RationalBound) -> Self {
        Self {
            num: r.numerator(),
            den: r.denominator(),
        }
    }
}

/// Contents of `[(2s−2t−1)n/2b, (s−t)n/b]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaRow {
    pub t: u64,
    pub lo: Fraction,
    pub hi: Fraction,
    pub integers: u64,
    pub coprimes: u64,
    pub least_coprime: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaDiagnostics {
    pub s: u64,
    /// One row per `t ∈ [0, ⌊s/2⌋ − 1]`.
    pub per_t: Vec<OmegaRow>,
    /// No Ω interval contains an integer coprime to `n`.
    pub assumption_b_holds: bool,
    pub k1: Option<u64>,
    /// `⌈n/c⌉`
    pub m1: u64,
    /// Least `k` with at least four integers in `[kn/c, kn/b)`; only when
    /// `⌈n/c⌉ < ⌈n/b⌉`.
    pub l: Option<u64>,
    /// `N_k` for `k = 1..=l`.
    pub nj_table: Vec<u64>,
}

impl OmegaDiagnostics {
    /// `N_{j+1} − N_j ≤ 2` over the table. `None` unless `n/b − m₁ < 1`
    /// (the companion bound `m₁ − n/c < 1` holds by definition of `m₁`).
    pub fn nj_growth_holds(&self, q: &NormalizedQuadruple) -> Option<bool> {
        if self.l.is_none() || q.n() >= (self.m1 + 1) * q.b {
            return None;
        }
        Some(self.nj_table.windows(2).all(|w| w[1] <= w[0] + 2))
    }
}

/// Integers in the half-open `[kn/c, kn/b)`.
fn half_open_count(q: &NormalizedQuadruple, k: u64) -> u64 {
    let n = q.n() as i128;
    let k = k as i128;
    coprime_in_interval(
        &RationalBound::closed(k * n, q.c as i128),
        &RationalBound::open(k * n, q.b as i128),
        q.modulus(),
    )
    .integers
}

fn ceil_div(x: u128, y: u128) -> u128 {
    x.div_ceil(y)
}

/// `⌈(k−1)n/c⌉ = ⌈(k−1)n/b⌉`.
fn ceilings_agree(q: &NormalizedQuadruple, k: u64) -> bool {
    let x = (k as u128 - 1) * q.n() as u128;
    ceil_div(x, q.c as u128) == ceil_div(x, q.b as u128)
}

/// Largest `k ≤ b` with `⌈(k−1)n/c⌉ = ⌈(k−1)n/b⌉` and an integer in
/// `[kn/c, kn/b)`. Absent unless `⌈n/c⌉ = ⌈n/b⌉`.
pub fn compute_k1(q: &NormalizedQuadruple) -> Option<u64> {
    let (n, c, b) = (q.n() as u128, q.c as u128, q.b as u128);
    if ceil_div(n, c) != ceil_div(n, b) {
        return None;
    }
    let mut k1 = None;
    for k in 1..=q.b {
        // Once [(k−1)n/c, (k−1)n/b) is at least one unit wide it contains an
        // integer, so the ceilings differ for this and every larger k.
        if (k as u128 - 1) * n * (c - b) >= b * c {
            break;
        }
        if ceilings_agree(q, k) && half_open_count(q, k) > 0 {
            k1 = Some(k);
        }
    }
    if let Some(k) = k1 {
        assert!(k <= q.b, "k1 = {k} exceeds b = {}", q.b);
    }
    k1
}

/// Each `[(2s−t−1)n/2b, (2s−t)n/2b]`, `t ∈ [0, s−1]`, holds an integer.
pub fn half_steps_nonempty(q: &NormalizedQuadruple) -> bool {
    let (n, b, s) = (q.n() as i128, q.b as i128, q.s as i128);
    (0..s).all(|t| {
        coprime_in_interval(
            &RationalBound::closed((2 * s - t - 1) * n, 2 * b),
            &RationalBound::closed((2 * s - t) * n, 2 * b),
            q.modulus(),
        )
        .integers
            >= 1
    })
}

pub fn omega_diagnostics(q: &NormalizedQuadruple) -> OmegaDiagnostics {
    let (n, b, c, s) = (q.n() as i128, q.b as i128, q.c as i128, q.s);
    let per_t: Vec<OmegaRow> = (0..(s / 2))
        .map(|t| {
            let (si, ti) = (s as i128, t as i128);
            let lo = RationalBound::closed((2 * si - 2 * ti - 1) * n, 2 * b);
            let hi = RationalBound::closed((si - ti) * n, b);
            let scan = coprime_in_interval(&lo, &hi, q.modulus());
            OmegaRow {
                t,
                lo: lo.into(),
                hi: hi.into(),
                integers: scan.integers,
                coprimes: scan.coprimes,
                least_coprime: scan.least_coprime.map(|m| m as u64),
            }
        })
        .collect();
    let assumption_b_holds = per_t.iter().all(|row| row.coprimes == 0);

    let m1 = RationalBound::closed(n, c).ceil() as u64;
    let m1_b = RationalBound::closed(n, b).ceil() as u64;
    let (l, nj_table) = if m1 < m1_b {
        let mut table = Vec::new();
        let mut l = None;
        for k in 1..=q.b {
            let count = half_open_count(q, k);
            table.push(count);
            if count >= 4 {
                l = Some(k);
                break;
            }
        }
        if l.is_none() {
            table.clear();
        }
        (l, table)
    } else {
        (None, Vec::new())
    };

    OmegaDiagnostics {
        s,
        per_t,
        assumption_b_holds,
        k1: compute_k1(q),
        m1,
        l,
        nj_table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::Modulus;
    use std::sync::Arc;

    fn quad(n: u64, e: u64, c: u64, b: u64, a: u64) -> NormalizedQuadruple {
        NormalizedQuadruple::new(Arc::new(Modulus::new(n).unwrap()), e, c, b, a, 1).unwrap()
    }

    /// Floating-point-free oracle for integer counts: scan a window and
    /// compare by cross-multiplication.
    fn count_half_open(n: u64, c: u64, b: u64, k: u64) -> u64 {
        (0..=k * n / b + 1)
            .filter(|&m| m * c >= k * n && m * b < k * n)
            .count() as u64
    }

    fn k1_oracle(q: &NormalizedQuadruple) -> Option<u64> {
        let (n, c, b) = (q.n(), q.c, q.b);
        let ceil = |x: u64, y: u64| x.div_ceil(y);
        if ceil(n, c) != ceil(n, b) {
            return None;
        }
        (1..=b)
            .filter(|&k| {
                ceil((k - 1) * n, c) == ceil((k - 1) * n, b) && count_half_open(n, c, b, k) > 0
            })
            .max()
    }

    #[test]
    fn k1_fixtures() {
        let q = quad(1235, 13, 285, 260, 38);
        assert_eq!(compute_k1(&q), Some(2));
        assert_eq!(k1_oracle(&q), Some(2));
        assert_eq!(compute_k1(&quad(2635, 17, 510, 465, 62)), Some(2));
        assert_eq!(compute_k1(&quad(1001, 11, 182, 154, 39)), None);
    }

    #[test]
    fn omega_fixture_1235() {
        let d = omega_diagnostics(&quad(1235, 13, 285, 260, 38));
        assert_eq!(d.s, 6);
        let rows: Vec<(u64, u64, Option<u64>)> = d
            .per_t
            .iter()
            .map(|r| (r.integers, r.coprimes, r.least_coprime))
            .collect();
        // t = 0: {27, 28}; t = 1: {22, 23}; t = 2: {17, 18, 19}, 19 | 1235
        assert_eq!(
            rows,
            vec![(2, 2, Some(27)), (2, 2, Some(22)), (3, 2, Some(17))]
        );
        assert!(!d.assumption_b_holds);
        assert_eq!(d.m1, 5);
        assert_eq!(d.k1, Some(2));
        assert_eq!(d.l, None);
    }

    #[test]
    fn omega_fixture_1001_three_regime() {
        let q = quad(1001, 11, 182, 154, 39);
        let d = omega_diagnostics(&q);
        assert_eq!(d.s, 3);
        assert_eq!(d.per_t.len(), 1);
        assert_eq!(d.m1, 6);
        assert_eq!(d.l, Some(4));
        assert_eq!(d.nj_table, vec![1, 2, 3, 4]);
        for (k, &count) in d.nj_table.iter().enumerate() {
            assert_eq!(count, count_half_open(1001, 182, 154, k as u64 + 1));
        }
        assert_eq!(d.nj_growth_holds(&q), Some(true));
    }

    #[test]
    fn s_one_has_no_rows() {
        // b < 2a
        let q = quad(1235, 13, 285, 260, 38);
        assert!(q.s > 1);
        let q = quad(101, 2, 40, 22, 20);
        assert_eq!(q.s, 1);
        let d = omega_diagnostics(&q);
        assert!(d.per_t.is_empty());
        assert!(d.assumption_b_holds);
    }

    #[test]
    fn k1_matches_oracle_and_bound() {
        for n in [101u64, 143, 175, 221] {
            let m = Arc::new(Modulus::new(n).unwrap());
            for e in 1..n / 2 {
                for a in e + 1..n / 2 {
                    for b in a..n / 2 {
                        let c = a + b - e;
                        let Ok(q) = NormalizedQuadruple::new(m.clone(), e, c, b, a, 1) else {
                            continue;
                        };
                        let k1 = compute_k1(&q);
                        assert_eq!(k1, k1_oracle(&q), "{q}");
                        if let Some(k) = k1 {
                            assert!(k <= q.b);
                        }
                        assert!(half_steps_nonempty(&q));
                    }
                }
            }
        }
    }
}
