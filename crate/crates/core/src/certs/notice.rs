use crate::error::{Error, Result};
use crate::zseq::ResidueSeq;

use super::{Certificate, CertificateKind, HalfPlaneSide};

fn require_unit(s: &ResidueSeq, m: u64) -> Result<()> {
    let md = s.modulus();
    if m == 0 || m >= md.n() || !md.is_unit(m) {
        return Err(Error::NotAUnit {
            value: m,
            n: md.n(),
        });
    }
    Ok(())
}

/// Number of images `|m·x_i|_n` on the given (closed) half.
pub(crate) fn halfplane_count(s: &ResidueSeq, m: u64, side: HalfPlaneSide) -> usize {
    let md = s.modulus();
    let n = md.n();
    s.terms()
        .iter()
        .map(|&x| md.mul(m, x))
        .filter(|&y| match side {
            HalfPlaneSide::Lower => 2 * y <= n,
            HalfPlaneSide::Upper => 2 * y >= n,
        })
        .count()
}

/// `Σ |m·x_i|_n = 3n`. The index-1 witness is then `n − m`.
pub fn check_sum_3n(s: &ResidueSeq, m: u64) -> Result<Option<Certificate>> {
    require_unit(s, m)?;
    let n = s.n() as u128;
    Ok((s.scaled_sum(m) == 3 * n)
        .then(|| Certificate::on_sequence(CertificateKind::ThreeN { m }, s)))
}

/// At most one image in `[1, n/2]`, or else at most one in `[n/2, n]`.
pub fn check_halfplane(s: &ResidueSeq, m: u64) -> Result<Option<Certificate>> {
    require_unit(s, m)?;
    for side in [HalfPlaneSide::Lower, HalfPlaneSide::Upper] {
        if halfplane_count(s, m, side) <= 1 {
            return Ok(Some(Certificate::on_sequence(
                CertificateKind::HalfPlane { m, side },
                s,
            )));
        }
    }
    Ok(None)
}

/// Least unit `m ≤ cap` passing [`check_sum_3n`].
pub fn scan_sum_3n(s: &ResidueSeq, cap: u64) -> Option<Certificate> {
    let cap = cap.min(s.n() - 1);
    s.modulus()
        .units()
        .take_while(|&m| m <= cap)
        .find_map(|m| check_sum_3n(s, m).ok().flatten())
}

/// Least unit `m ≤ cap` passing [`check_halfplane`].
pub fn scan_halfplane(s: &ResidueSeq, cap: u64) -> Option<Certificate> {
    let cap = cap.min(s.n() - 1);
    s.modulus()
        .units()
        .take_while(|&m| m <= cap)
        .find_map(|m| check_halfplane(s, m).ok().flatten())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::normalize;
    use crate::modarith::Modulus;
    use crate::zseq::g_norm;
    use std::sync::Arc;

    fn seq(n: u64, terms: &[u64]) -> ResidueSeq {
        ResidueSeq::new(Arc::new(Modulus::new(n).unwrap()), terms.to_vec()).unwrap()
    }

    #[test]
    fn three_n_is_complement_of_index_one_witness() {
        let s = seq(1235, &[13, 285, 975, 1197]);
        let cert = check_sum_3n(&s, 1235 - 18).unwrap().unwrap();
        assert_eq!(cert.implied_unit(), Some(18));
        assert_eq!(cert.validate(), Ok(()));
        // g_norm(S, 1) = 2, so no 3n certificate at m = 1
        assert_eq!(g_norm(&s, 1).unwrap(), 2);
        assert_eq!(check_sum_3n(&s, 1).unwrap(), None);
        assert!(matches!(check_sum_3n(&s, 5), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn halfplane_identity_on_normal_form_is_absent() {
        let s = seq(1235, &[13, 285, 975, 1197]);
        assert!(normalize(&s).unwrap().is_some());
        assert_eq!(check_halfplane(&s, 1).unwrap(), None);
    }

    #[test]
    fn halfplane_certificates_validate_on_fixture() {
        let s = seq(1235, &[13, 285, 975, 1197]);
        let mut found = 0;
        let mut missing = 0;
        for m in s.modulus().units() {
            match check_halfplane(&s, m).unwrap() {
                Some(cert) => {
                    found += 1;
                    assert_eq!(cert.validate(), Ok(()), "{cert}");
                }
                None => missing += 1,
            }
        }
        assert!(found > 0 && missing > 0);
    }

    #[test]
    fn scans_respect_cap() {
        let s = seq(1235, &[13, 285, 975, 1197]);
        let first = scan_sum_3n(&s, 10_000).unwrap();
        let m = first.kind.multiplier();
        assert!(scan_sum_3n(&s, m - 1).is_none());
        assert_eq!(scan_sum_3n(&s, m), Some(first));
    }
}
