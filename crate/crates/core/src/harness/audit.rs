use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::canon::{classify, NormalizedQuadruple, PatternTag};
use crate::certs::omega_diagnostics;
use crate::modarith::Modulus;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuditFinding {
    /// `n` is not a squarefree product of three primes coprime to 6.
    InvalidModulus { n: u64, reason: String },
    /// `a > 2e`, `s ≥ 10`, and no Ω interval holds an integer coprime to `n`.
    NoCoprimeInOmega {
        n: u64,
        /// `[e, c, b, a]`
        coords: [u64; 4],
        s: u64,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_values: Vec<u64>,
    /// A1 normal forms with `a > 2e` examined.
    pub examined: u64,
    /// Those with `s ≥ 10`.
    pub large_s: u64,
    pub findings: Vec<AuditFinding>,
}

fn modulus_problem(m: &Modulus) -> Option<String> {
    if !m.coprime_to_six() {
        return Some("gcd(n, 6) != 1".into());
    }
    if m.num_distinct_primes() != 3 || !m.is_squarefree() {
        return Some(format!("{m} is not a product of three distinct primes"));
    }
    None
}

/// Checks, for every A1 normal form `(e, c, b, a)` with `a > 2e` and
/// `s = ⌊b/a⌋ ≥ 10`, that some Ω interval contains an integer coprime to `n`.
///
/// Every normal form is examined, not only the least-unit one per orbit.
pub fn lemma29_audit(n_set: &[u64]) -> AuditReport {
    let mut report = AuditReport {
        n_values: n_set.to_vec(),
        ..AuditReport::default()
    };
    for &n in n_set {
        let m = match Modulus::new(n) {
            Ok(m) => Arc::new(m),
            Err(e) => {
                report.findings.push(AuditFinding::InvalidModulus {
                    n,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        if let Some(reason) = modulus_problem(&m) {
            report
                .findings
                .push(AuditFinding::InvalidModulus { n, reason });
            continue;
        }
        // A1 has no unit terms, and every normal-form coordinate lies below n/2.
        let non_units: Vec<u64> = (1..=(n - 1) / 2).filter(|&x| !m.is_unit(x)).collect();
        for (i, &e) in non_units.iter().enumerate() {
            for &a in non_units[i + 1..].iter().filter(|&&a| a > 2 * e) {
                for &b in non_units.iter().filter(|&&b| b >= a) {
                    let c = a + b - e;
                    if 2 * c >= n {
                        break;
                    }
                    if m.is_unit(c) {
                        continue;
                    }
                    let Ok(q) = NormalizedQuadruple::new(m.clone(), e, c, b, a, 1) else {
                        continue;
                    };
                    if classify(&q.sequence()).tag != PatternTag::A1 {
                        continue;
                    }
                    report.examined += 1;
                    if q.s < 10 {
                        continue;
                    }
                    report.large_s += 1;
                    if omega_diagnostics(&q).assumption_b_holds {
                        report.findings.push(AuditFinding::NoCoprimeInOmega {
                            n,
                            coords: [e, c, b, a],
                            s: q.s,
                        });
                    }
                }
            }
        }
    }
    report
}

/// The first `count` squarefree products of three primes, coprime to 6,
/// strictly above `above`.
pub fn three_prime_moduli_above(above: u64, count: usize) -> Vec<u64> {
    (above + 1..)
        .filter(|&n| {
            Modulus::new(n)
                .map(|m| modulus_problem(&m).is_none())
                .unwrap_or(false)
        })
        .take(count)
        .collect()
}
