//! Multiplier searches on the normal form `(e, c, b, a)`.

use std::ops::RangeInclusive;

use crate::canon::NormalizedQuadruple;
use crate::error::{Error, Result};
use crate::modarith::{coprime_in_interval, RationalBound};

use super::{Certificate, CertificateKind, HalfPlaneSide, IntervalMode};

/// Exact check of an interval certificate by cross-multiplication.
pub(crate) fn interval_holds(q: &NormalizedQuadruple, k: u64, m: u64, mode: IntervalMode) -> bool {
    let n = q.n() as u128;
    let (k128, m128) = (k as u128, m as u128);
    let side = match mode {
        IntervalMode::MaBelowN => m128 * (q.a as u128) < n,
        IntervalMode::ABelowBOverK => q.a as u128 * k128 <= q.b as u128,
    };
    (1..=q.b).contains(&k)
        && m128 * q.c as u128 >= k128 * n
        && m128 * q.b as u128 <= k128 * n
        && q.modulus().is_unit(m)
        && side
}

/// Least `(k, m)` with `k` ascending over `1..=k_max` and `m` least within
/// each `k`, such that `kn/c ≤ m ≤ kn/b`, `gcd(m, n) = 1` and the mode's side
/// condition holds. `k_max` is clamped to `b`.
pub fn search_interval(
    q: &NormalizedQuadruple,
    k_max: u64,
    mode: IntervalMode,
) -> Option<Certificate> {
    search_interval_in(q, 1..=k_max, mode)
}

/// [`search_interval`] restricted to an explicit range of `k`.
pub fn search_interval_in(
    q: &NormalizedQuadruple,
    ks: RangeInclusive<u64>,
    mode: IntervalMode,
) -> Option<Certificate> {
    let n = q.n() as i128;
    let (c, b, a) = (q.c as i128, q.b as i128, q.a as i128);
    let k_lo = (*ks.start()).max(1);
    let k_hi = (*ks.end()).min(q.b);
    for k in k_lo..=k_hi {
        let ki = k as i128;
        if mode == IntervalMode::ABelowBOverK && a * ki > b {
            break;
        }
        let lo = RationalBound::closed(ki * n, c);
        if mode == IntervalMode::MaBelowN && lo.ceil() * a >= n {
            // every admissible m from here on has m·a ≥ n
            break;
        }
        let hi = RationalBound::closed(ki * n, b);
        let Some(m) = coprime_in_interval(&lo, &hi, q.modulus()).least_coprime else {
            continue;
        };
        let m = m as u64;
        if interval_holds(q, k, m, mode) {
            return Some(Certificate::on_quadruple(
                CertificateKind::Interval { k, m, mode },
                q,
            ));
        }
    }
    None
}

/// `(|Ma|_n > n/2, |Mb|_n > n/2, |Mc|_n < n/2)`, read literally on the
/// normal-form coordinates.
pub(crate) fn m_type_flags(q: &NormalizedQuadruple, m: u64) -> [bool; 3] {
    let md = q.modulus();
    let n = md.n();
    [
        2 * md.mul(m, q.a) > n,
        2 * md.mul(m, q.b) > n,
        2 * md.mul(m, q.c) < n,
    ]
}

/// Least unit `M ∈ [1, n/2e]` satisfying at least two of the three M-type
/// inequalities.
pub fn search_m(q: &NormalizedQuadruple) -> Option<Certificate> {
    let bound = q.n() / (2 * q.e);
    q.modulus()
        .units()
        .take_while(|&m| m <= bound)
        .find_map(|m| {
            let satisfied = m_type_flags(q, m);
            (satisfied.iter().filter(|&&f| f).count() >= 2)
                .then(|| Certificate::on_quadruple(CertificateKind::MType { m, satisfied }, q))
        })
}

/// `(n + (j+1)·a) / a` for `j ∈ 0..4`, when `a | n`.
pub fn small_a_multiplier(q: &NormalizedQuadruple, j: u8) -> Option<u64> {
    let n = q.n();
    (j < 4 && n % q.a == 0).then(|| (n + (j as u64 + 1) * q.a) / q.a)
}

/// The small-`a` multiplier family. Requires `a < 2e`, `a | b` and `a | n`.
///
/// Uses `(n+a)/a` when it is a unit, otherwise picks by the range of `b`:
/// `(n+2a)/a` for `b < n/4`, `(n+4a)/a` for `n/4 < b < n/3`, `(n+3a)/a` for
/// `n/3 < b < n/2`. The chosen multiplier is returned only if all of
/// `|me|_n`, `|m(n−a)|_n`, `|m(n−b)|_n` exceed `n/2`.
pub fn search_small_a(q: &NormalizedQuadruple) -> Result<Option<Certificate>> {
    let (n, e, b, a) = (q.n(), q.e, q.b, q.a);
    if a >= 2 * e {
        return Err(Error::Precondition(format!(
            "a = {a} is not below 2e = {}",
            2 * e
        )));
    }
    if b % a != 0 {
        return Err(Error::Precondition(format!(
            "a = {a} does not divide b = {b}"
        )));
    }
    if n % a != 0 {
        return Err(Error::Precondition(format!(
            "a = {a} does not divide n = {n}"
        )));
    }
    let first = small_a_multiplier(q, 0).expect("a | n checked");
    let j = if q.modulus().is_unit(first % n) {
        0
    } else if 4 * b < n {
        1
    } else if 4 * b > n && 3 * b < n {
        3
    } else if 3 * b > n {
        2
    } else {
        return Ok(None);
    };
    let m = small_a_multiplier(q, j).expect("a | n checked") % n;
    if m == 0 || !q.modulus().is_unit(m) {
        return Ok(None);
    }
    let md = q.modulus();
    let above = |x: u64| 2 * md.mul(m, x) > n;
    if !(above(e) && above(n - a) && above(n - b)) {
        return Ok(None);
    }
    let cert = Certificate::on_quadruple(CertificateKind::SmallA { j, m }, q);
    debug_assert!(super::notice::halfplane_count(&q.sequence(), m, HalfPlaneSide::Lower) <= 1);
    Ok(Some(cert))
}
