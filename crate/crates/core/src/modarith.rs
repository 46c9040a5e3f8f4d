//! Exact modular and rational arithmetic over `Z_n`.
//!
//! Residues follow the `|x|_n ∈ [1, n]` convention: a multiple of `n` maps to
//! `n`, never to `0`. Every other module relies on this so that identities
//! such as `|-x|_n = n - |x|_n` hold literally for `x ≢ 0`.
//!
//! Products are formed in 128-bit arithmetic, so any `n < 2^63` is safe.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The group order `n` together with its factorization and Euler totient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u64,
    prime_factors: Vec<(u64, u32)>,
    phi: u64,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        factorize(n)
    }

    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn prime_factors(&self) -> &[(u64, u32)] {
        &self.prime_factors
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_factors.iter().map(|&(p, _)| p)
    }

    pub fn num_distinct_primes(&self) -> usize {
        self.prime_factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.prime_factors.iter().all(|&(_, e)| e == 1)
    }

    /// Order of the unit group.
    #[inline]
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// `true` when `gcd(n, 6) = 1`, the hypothesis of the index-1 conjecture.
    pub fn coprime_to_six(&self) -> bool {
        self.n % 2 != 0 && self.n % 3 != 0
    }

    #[inline]
    pub fn is_unit(&self, v: u64) -> bool {
        self.prime_factors.iter().all(|&(p, _)| v % p != 0)
    }

    pub fn gcd_with(&self, x: u64) -> u64 {
        x.gcd(&self.n)
    }

    #[inline]
    pub fn residue(&self, x: i128) -> u64 {
        residue(x, self)
    }

    /// `|a·b|_n` without overflow.
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let r = ((a as u128 * b as u128) % self.n as u128) as u64;
        if r == 0 {
            self.n
        } else {
            r
        }
    }

    pub fn units(&self) -> Units<'_> {
        units(self)
    }

    pub fn inverse(&self, v: u64) -> Result<u64> {
        inverse(v, self)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.n)?;
        for (i, &(p, e)) in self.prime_factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The representative of `x (mod n)` in `[1, n]`.
pub fn residue(x: i128, m: &Modulus) -> u64 {
    let n = m.n as i128;
    let r = x.rem_euclid(n);
    if r == 0 {
        m.n
    } else {
        r as u64
    }
}

/// Factorizes `n` by trial division.
pub fn factorize(n: u64) -> Result<Modulus> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let mut rest = n;
    let mut prime_factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            prime_factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut p = 3;
    while p * p <= rest {
        push(p, &mut rest);
        p += 2;
    }
    if rest > 1 {
        prime_factors.push((rest, 1));
    }
    let phi = prime_factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1));
    Ok(Modulus {
        n,
        prime_factors,
        phi,
    })
}

/// Ascending iterator over the units of `Z_n` in `[1, n-1]`.
#[derive(Debug, Clone)]
pub struct Units<'a> {
    modulus: &'a Modulus,
    next: u64,
}

impl Iterator for Units<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next < self.modulus.n {
            let v = self.next;
            self.next += 1;
            if self.modulus.is_unit(v) {
                return Some(v);
            }
        }
        None
    }
}

pub fn units(m: &Modulus) -> Units<'_> {
    Units {
        modulus: m,
        next: 1,
    }
}

/// Multiplicative inverse of a unit, in `[1, n-1]`.
pub fn inverse(v: u64, m: &Modulus) -> Result<u64> {
    let n = m.n as i128;
    let g = (v as i128).extended_gcd(&n);
    if g.gcd != 1 {
        return Err(Error::NotAUnit { value: v, n: m.n });
    }
    let inv = g.x.rem_euclid(n) as u64;
    // n = 1 cannot occur; inv = 0 only if v ≡ 0, excluded by gcd = 1 for n ≥ 2.
    Ok(inv)
}

/// An exact rational interval endpoint `numerator / denominator`.
///
/// `inclusive` decides whether an integer equal to the endpoint belongs to the
/// interval. Stored in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalBound {
    numerator: i128,
    denominator: i128,
    pub inclusive: bool,
}

impl RationalBound {
    /// Panics on a zero denominator.
    pub fn new(numerator: i128, denominator: i128, inclusive: bool) -> Self {
        assert!(denominator != 0, "rational bound with zero denominator");
        let sign = if denominator < 0 { -1 } else { 1 };
        let g = numerator.gcd(&denominator).max(1);
        Self {
            numerator: sign * numerator / g,
            denominator: sign * denominator / g,
            inclusive,
        }
    }

    pub fn closed(numerator: i128, denominator: i128) -> Self {
        Self::new(numerator, denominator, true)
    }

    pub fn open(numerator: i128, denominator: i128) -> Self {
        Self::new(numerator, denominator, false)
    }

    pub fn numerator(&self) -> i128 {
        self.numerator
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numerator, &self.denominator)
    }

    pub fn ceil(&self) -> i128 {
        Integer::div_ceil(&self.numerator, &self.denominator)
    }

    pub fn is_integer(&self) -> bool {
        self.denominator == 1
    }

    /// Least integer admitted when this is a lower endpoint.
    pub fn first_integer_above(&self) -> i128 {
        if self.inclusive || !self.is_integer() {
            self.ceil()
        } else {
            self.numerator + 1
        }
    }

    /// Greatest integer admitted when this is an upper endpoint.
    pub fn last_integer_below(&self) -> i128 {
        if self.inclusive || !self.is_integer() {
            self.floor()
        } else {
            self.numerator - 1
        }
    }

    /// Compares the values, ignoring inclusivity.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self.numerator * other.denominator).cmp(&(other.numerator * self.denominator))
    }
}

impl fmt::Display for RationalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// Integer content of a rational interval relative to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntervalScan {
    /// Least integer in the interval coprime to `n`.
    pub least_coprime: Option<i128>,
    pub integers: u64,
    pub coprimes: u64,
}

/// Counts the integers in `[lo, hi]` (inclusivity per endpoint) and those
/// coprime to `n`, and returns the least coprime one.
pub fn coprime_in_interval(lo: &RationalBound, hi: &RationalBound, m: &Modulus) -> IntervalScan {
    let first = lo.first_integer_above();
    let last = hi.last_integer_below();
    if first > last {
        return IntervalScan::default();
    }
    let integers = (last - first + 1) as u64;
    let coprimes = count_coprime_in(first, last, m);
    let least_coprime = if coprimes == 0 {
        None
    } else {
        (first..=last).find(|&x| x.unsigned_abs().gcd(&(m.n as u128)) == 1)
    };
    IntervalScan {
        least_coprime,
        integers,
        coprimes,
    }
}

/// Number of integers in `[first, last]` coprime to `n`.
fn count_coprime_in(first: i128, last: i128, m: &Modulus) -> u64 {
    // gcd(x, n) depends on |x| only, and 0 is never coprime to n ≥ 2.
    if first > 0 {
        count_coprime_upto(last as u128, m) - count_coprime_upto(first as u128 - 1, m)
    } else if last < 0 {
        count_coprime_in(-last, -first, m)
    } else {
        count_coprime_upto(last.max(0) as u128, m) + count_coprime_upto(first.unsigned_abs(), m)
    }
}

/// Number of integers in `[1, x]` coprime to `n`, by inclusion-exclusion.
fn count_coprime_upto(x: u128, m: &Modulus) -> u64 {
    let primes: Vec<u128> = m.distinct_primes().map(u128::from).collect();
    let mut total: i128 = 0;
    for mask in 0u32..(1 << primes.len()) {
        let mut d = 1u128;
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= p;
            }
        }
        let term = (x / d) as i128;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn md(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(7, &md(7)), 7);
        assert_eq!(residue(18 * 285, &md(1235)), 190);
        assert_eq!(residue(-3, &md(25)), 22);
        assert_eq!(residue(0, &md(25)), 25);
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(md(1235).prime_factors(), &[(5, 1), (13, 1), (19, 1)]);
        assert_eq!(md(1001).prime_factors(), &[(7, 1), (11, 1), (13, 1)]);
        assert_eq!(md(2048).prime_factors(), &[(2, 11)]);
        assert_eq!(md(1235).phi(), 864);
        assert_eq!(factorize(1), Err(Error::ModulusTooSmall(1)));
        assert_eq!(factorize(0), Err(Error::ModulusTooSmall(0)));
    }

    #[test]
    fn units_examples() {
        assert_eq!(md(7).units().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(md(10).units().collect::<Vec<_>>(), vec![1, 3, 7, 9]);
        assert_eq!(md(1235).units().count(), 864);
    }

    #[test]
    fn inverse_examples() {
        for n in [2, 7, 10, 1001] {
            assert_eq!(inverse(1, &md(n)).unwrap(), 1);
        }
        assert_eq!(inverse(6, &md(1001)).unwrap(), 167);
        assert_eq!(inverse(3, &md(10)).unwrap(), 7);
        assert_eq!(
            inverse(5, &md(10)),
            Err(Error::NotAUnit { value: 5, n: 10 })
        );
    }

    #[test]
    fn inverse_of_every_unit_up_to_1000() {
        for n in 2..=1000 {
            let m = md(n);
            for v in m.units() {
                let inv = inverse(v, &m).unwrap();
                assert!((1..n).contains(&inv));
                assert_eq!(v as u128 * inv as u128 % n as u128, 1 % n as u128);
            }
        }
    }

    #[test]
    fn coprime_in_interval_examples() {
        let m = md(1235);
        let scan = coprime_in_interval(
            &RationalBound::closed(4 * 1235, 285),
            &RationalBound::closed(4 * 1235, 260),
            &m,
        );
        assert_eq!(scan.least_coprime, Some(18));
        assert_eq!(scan.integers, 2);
        assert_eq!(scan.coprimes, 1);

        let scan = coprime_in_interval(
            &RationalBound::closed(1001, 182),
            &RationalBound::closed(1001, 154),
            &md(1001),
        );
        assert_eq!(scan.least_coprime, Some(6));
        assert_eq!(scan.integers, 1);

        let scan = coprime_in_interval(
            &RationalBound::closed(1, 3),
            &RationalBound::closed(2, 3),
            &md(30),
        );
        assert_eq!(scan, IntervalScan::default());
    }

    #[test]
    fn inclusivity_at_integer_endpoints() {
        let m = md(7);
        let lo = RationalBound::closed(6, 2);
        let hi = RationalBound::closed(10, 2);
        assert_eq!(coprime_in_interval(&lo, &hi, &m).integers, 3);
        let hi_open = RationalBound::open(10, 2);
        assert_eq!(coprime_in_interval(&lo, &hi_open, &m).integers, 2);
        let lo_open = RationalBound::open(6, 2);
        assert_eq!(coprime_in_interval(&lo_open, &hi_open, &m).integers, 1);
        assert_eq!(coprime_in_interval(&hi, &lo, &m), IntervalScan::default());
    }

    #[test]
    fn negative_ranges_count_by_absolute_value() {
        let m = md(10);
        let scan = coprime_in_interval(
            &RationalBound::closed(-10, 1),
            &RationalBound::closed(3, 1),
            &m,
        );
        // -9 -7 -3 -1 1 3
        assert_eq!(scan.integers, 14);
        assert_eq!(scan.coprimes, 6);
        assert_eq!(scan.least_coprime, Some(-9));
    }

    #[test]
    fn rational_bound_is_reduced() {
        let b = RationalBound::closed(4 * 1235, 260);
        assert_eq!((b.numerator(), b.denominator()), (19, 1));
        let b = RationalBound::closed(3, -6);
        assert_eq!((b.numerator(), b.denominator()), (-1, 2));
        assert_eq!(b.floor(), -1);
        assert_eq!(b.ceil(), 0);
    }

    proptest! {
        #[test]
        fn residue_in_range_and_congruent(x in -1_000_000i128..1_000_000, n in 2u64..5000) {
            let m = md(n);
            let r = residue(x, &m);
            prop_assert!((1..=n).contains(&r));
            prop_assert_eq!((x - r as i128).rem_euclid(n as i128), 0);
        }

        #[test]
        fn complement_identity(n in 2u64..5000, raw in 0u64..1 << 20) {
            let x = 1 + raw % (n - 1);
            let m = md(n);
            prop_assert_eq!(residue(-(x as i128), &m), n - residue(x as i128, &m));
        }

        #[test]
        fn unit_multiples_never_hit_n(n in 2u64..2000, rv in 0u64..1 << 20, rx in 0u64..1 << 20) {
            let m = md(n);
            let v = m.units().nth((rv % m.phi()) as usize).unwrap();
            let x = 1 + rx % (n - 1);
            prop_assert!(m.mul(v, x) < n);
        }

        #[test]
        fn factorization_invariants(n in 2u64..1_000_000) {
            let m = md(n);
            let prod: u64 = m.prime_factors().iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(prod, n);
            prop_assert!(m.prime_factors().windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(m.prime_factors().iter().all(|&(_, e)| e >= 1));
            let brute = if n <= 5000 { (1..n).filter(|v| v.gcd(&n) == 1).count() as u64 } else { m.phi() };
            prop_assert_eq!(m.phi(), brute);
        }
    }
}
