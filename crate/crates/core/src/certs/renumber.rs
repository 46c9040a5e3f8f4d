//! Renumbering of a normal form with `a` prime, `a < 2e` and `a | c`.
//!
//! Multipliers used (all exact since `a | n` and `n/a` is odd):
//!
//! ```text
//! m  = (n − a)/a     m1 = (n − 2a)/a
//! m2 = (n + 3a)/2a   m3 = (n + 5a)/2a     m' = (n + a)/2a
//! ```
//!
//! Each branch either certifies `ind(S) = 1` through a half-plane condition
//! or produces a new normal form of a unit multiple of `S` with `e' ∈ {a, 2a}`.
//! Every claimed inequality is re-checked; a branch whose claim fails on the
//! instance yields a [`RenumberFailure`] rather than a guess.

use serde::{Deserialize, Serialize};

use crate::canon::NormalizedQuadruple;

use super::{notice::halfplane_count, Certificate, CertificateKind, HalfPlaneSide};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RenumberBranch {
    /// `gcd(n, m) = 1`
    UnitM,
    /// `gcd(n, m) > 1`, `c/a` even: multiplier `m'`.
    EvenQuotient,
    /// `gcd(n, m) > 1`, `c/a` odd, `c < n/4`: multiplier `m1`.
    SmallC,
    /// `gcd(n, m) > 1`, `c/a` odd, `n/4 < c < n/3`: multiplier `m3`.
    MiddleC,
    /// `gcd(n, m) > 1`, `c/a` odd, `c > n/3`: multiplier `m2`.
    LargeC,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum RenumberFailure {
    /// `a` prime dividing `n`, `a < 2e`, `a | c` not all satisfied.
    HypothesisUnmet { detail: String },
    /// The branch's multiplier is not a unit, or its half-plane claim fails.
    BranchClaimFailed {
        branch: RenumberBranch,
        multiplier: u64,
    },
    /// The renumbered coordinates are not a valid normal form, or `a' < 10e'`.
    ConclusionViolated {
        branch: RenumberBranch,
        multiplier: u64,
        /// `[e', c', b', a']`
        coords: [u64; 4],
    },
    /// `c` sits exactly on `n/4` or `n/3`, where no branch applies.
    OutsideBranches,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RenumberOutcome {
    Certified {
        certificate: Certificate,
        branch: RenumberBranch,
    },
    Renumbered {
        quadruple: NormalizedQuadruple,
        /// Unit taking the old normal form to the new one.
        multiplier: u64,
        branch: RenumberBranch,
    },
    Failed(RenumberFailure),
}

impl RenumberOutcome {
    pub fn branch(&self) -> Option<RenumberBranch> {
        match self {
            Self::Certified { branch, .. } | Self::Renumbered { branch, .. } => Some(*branch),
            Self::Failed(
                RenumberFailure::BranchClaimFailed { branch, .. }
                | RenumberFailure::ConclusionViolated { branch, .. },
            ) => Some(*branch),
            Self::Failed(_) => None,
        }
    }
}

pub fn renumber(q: &NormalizedQuadruple) -> RenumberOutcome {
    let md = q.modulus();
    let (n, e, c, b, a) = (md.n(), q.e, q.c, q.b, q.a);
    let unmet =
        |detail: String| RenumberOutcome::Failed(RenumberFailure::HypothesisUnmet { detail });
    if !md.distinct_primes().any(|p| p == a) {
        return unmet(format!("a = {a} is not a prime factor of n = {n}"));
    }
    if a >= 2 * e {
        return unmet(format!("a = {a} is not below 2e = {}", 2 * e));
    }
    if c % a != 0 {
        return unmet(format!("a = {a} does not divide c = {c}"));
    }
    let na = n / a;
    if na % 2 == 0 {
        return unmet(format!("n/a = {na} is even"));
    }

    let seq = q.sequence();
    let certify = |m: u64, side: HalfPlaneSide, branch: RenumberBranch| {
        if md.is_unit(m) && halfplane_count(&seq, m, side) <= 1 {
            RenumberOutcome::Certified {
                certificate: Certificate::on_sequence(CertificateKind::HalfPlane { m, side }, &seq),
                branch,
            }
        } else {
            RenumberOutcome::Failed(RenumberFailure::BranchClaimFailed {
                branch,
                multiplier: m,
            })
        }
    };
    // New normal form (e', c', {b', a'}) with a' ≤ b'.
    let renumbered = |m: u64, e2: u64, c2: u64, pair: (u64, u64), branch: RenumberBranch| {
        let (a2, b2) = if pair.0 <= pair.1 {
            pair
        } else {
            (pair.1, pair.0)
        };
        let violated = RenumberOutcome::Failed(RenumberFailure::ConclusionViolated {
            branch,
            multiplier: m,
            coords: [e2, c2, b2, a2],
        });
        if a2 < 10 * e2 {
            return violated;
        }
        let unit = md.mul(q.normalizing_unit, m);
        match NormalizedQuadruple::new(md.clone(), e2, c2, b2, a2, unit) {
            Ok(quadruple) => {
                debug_assert_eq!(quadruple.sequence(), seq.scale_unchecked(m));
                RenumberOutcome::Renumbered {
                    quadruple,
                    multiplier: m,
                    branch,
                }
            }
            Err(_) => violated,
        }
    };

    let m = na - 1;
    if md.is_unit(m) {
        let branch = RenumberBranch::UnitM;
        let image_b = md.mul(m, n - b);
        if 2 * image_b > n {
            return certify(m, HalfPlaneSide::Lower, branch);
        }
        return renumbered(m, a, image_b, (c, n - md.mul(m, e)), branch);
    }

    if (c / a) % 2 == 0 {
        return certify(
            na.div_ceil(2),
            HalfPlaneSide::Upper,
            RenumberBranch::EvenQuotient,
        );
    }
    if 4 * c < n {
        let branch = RenumberBranch::SmallC;
        let m1 = na - 2;
        if !md.is_unit(m1) {
            return RenumberOutcome::Failed(RenumberFailure::BranchClaimFailed {
                branch,
                multiplier: m1,
            });
        }
        if halfplane_count(&seq, m1, HalfPlaneSide::Lower) <= 1 {
            return certify(m1, HalfPlaneSide::Lower, branch);
        }
        return renumbered(
            m1,
            2 * a,
            md.mul(m1, n - b),
            (2 * c, n - md.mul(m1, e)),
            branch,
        );
    }
    if 4 * c > n && 3 * c < n {
        return certify((na + 5) / 2, HalfPlaneSide::Upper, RenumberBranch::MiddleC);
    }
    if 3 * c > n {
        return certify((na + 3) / 2, HalfPlaneSide::Upper, RenumberBranch::LargeC);
    }
    RenumberOutcome::Failed(RenumberFailure::OutsideBranches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::Modulus;
    use std::sync::Arc;

    fn quad(n: u64, e: u64, c: u64, b: u64, a: u64) -> NormalizedQuadruple {
        NormalizedQuadruple::new(Arc::new(Modulus::new(n).unwrap()), e, c, b, a, 1).unwrap()
    }

    #[test]
    fn hypothesis_gate() {
        // a = 38 is not prime, and a > 2e
        match renumber(&quad(1235, 13, 285, 260, 38)) {
            RenumberOutcome::Failed(RenumberFailure::HypothesisUnmet { .. }) => {}
            other => panic!("{other:?}"),
        }
        // a = 7 prime, a ≥ 2e: (1001, 3, 77, 73, 7)
        match renumber(&quad(1001, 3, 77, 73, 7)) {
            RenumberOutcome::Failed(RenumberFailure::HypothesisUnmet { detail }) => {
                assert!(detail.contains("2e"))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unit_m_certificate_branch() {
        // gcd(n, (n−a)/a) = 1 and |m(n−b)| > n/2
        let out = renumber(&quad(1001, 7, 143, 139, 11));
        match out {
            RenumberOutcome::Certified {
                certificate,
                branch,
            } => {
                assert_eq!(branch, RenumberBranch::UnitM);
                assert_eq!(certificate.kind.multiplier(), 90);
                assert_eq!(certificate.validate(), Ok(()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unit_m_renumbering_branch() {
        let q = quad(1001, 7, 110, 106, 11);
        match renumber(&q) {
            RenumberOutcome::Renumbered {
                quadruple,
                multiplier,
                branch,
            } => {
                assert_eq!(branch, RenumberBranch::UnitM);
                assert_eq!(multiplier, 90);
                assert_eq!(quadruple.e, 11);
                assert!(quadruple.a >= 10 * quadruple.e);
                assert_eq!(quadruple.sequence(), q.sequence().scale(90).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unit_m_renumbering_can_miss_the_ten_e_bound() {
        // e' = 11 but a' = 29 < 110
        match renumber(&quad(1001, 7, 22, 18, 11)) {
            RenumberOutcome::Failed(RenumberFailure::ConclusionViolated {
                branch, coords, ..
            }) => {
                assert_eq!(branch, RenumberBranch::UnitM);
                assert_eq!(coords[0], 11);
                assert!(coords[3] < 110);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_unit_m_branches() {
        // n = 1085 = 5·7·31, a = 7: m = 154 shares 7 with n
        let cases = [
            ((1085, 5, 14, 12, 7), RenumberBranch::EvenQuotient),
            ((1085, 5, 119, 117, 7), RenumberBranch::SmallC),
            ((1085, 5, 371, 369, 7), RenumberBranch::LargeC),
            ((1463, 7, 385, 381, 11), RenumberBranch::MiddleC),
        ];
        for ((n, e, c, b, a), expected) in cases {
            match renumber(&quad(n, e, c, b, a)) {
                RenumberOutcome::Certified {
                    certificate,
                    branch,
                } => {
                    assert_eq!(branch, expected);
                    assert_eq!(certificate.validate(), Ok(()));
                }
                other => panic!("{n} {e} {c} {b} {a}: {other:?}"),
            }
        }
        match renumber(&quad(1085, 5, 77, 75, 7)) {
            RenumberOutcome::Renumbered {
                quadruple, branch, ..
            } => {
                assert_eq!(branch, RenumberBranch::SmallC);
                assert_eq!(quadruple.e, 14);
                assert!(quadruple.a >= 140);
            }
            other => panic!("{other:?}"),
        }
        // middle range where the claimed half-plane condition fails
        match renumber(&quad(1085, 5, 273, 271, 7)) {
            RenumberOutcome::Failed(RenumberFailure::BranchClaimFailed { branch, .. }) => {
                assert_eq!(branch, RenumberBranch::MiddleC)
            }
            other => panic!("{other:?}"),
        }
    }
}
