use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certs::CertificateFailure;
use crate::enumgen::{enumerate_orbit_reps, enumerate_quadruples, EnumFilter};
use crate::error::{Error, Result};
use crate::modarith::Modulus;
use crate::zseq::{index, is_canonical, ResidueSeq};

use super::waterfall::{verify_instance, Strategy, WaterfallConfig};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    /// Minimal zero-sum quadruples (multisets) passing the filter.
    pub instances: u64,
    /// Unit orbits among them; one representative of each is verified.
    pub orbits: u64,
    /// Orbits with no normal form.
    pub unnormalizable: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    IndexAtLeastTwo,
    UnsoundCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub terms: Vec<u64>,
    pub index: u64,
    pub strategy: Option<Strategy>,
    pub failure: Option<CertificateFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: u64,
    pub totals: Totals,
    /// Instances by index, each orbit weighted by its size.
    pub index_histogram: BTreeMap<u64, u64>,
    /// Orbit representatives by first successful strategy (`none` for index ≥ 2).
    pub strategy_histogram: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    /// Wall time, recorded only on request so reports stay reproducible.
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn empty(n: u64) -> Self {
        let mut strategy_histogram: BTreeMap<String, u64> = Strategy::ALL
            .iter()
            .map(|s| (s.as_str().to_owned(), 0))
            .collect();
        strategy_histogram.insert("none".to_owned(), 0);
        Self {
            n,
            totals: Totals::default(),
            index_histogram: [(1, 0), (2, 0)].into_iter().collect(),
            strategy_histogram,
            violations: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn max_index(&self) -> u64 {
        self.index_histogram
            .iter()
            .filter(|(_, &count)| count > 0)
            .map(|(&i, _)| i)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub filter: EnumFilter,
    /// Also sweep `n` with `gcd(n, 6) ≠ 1`.
    pub include_all_n: bool,
    pub jobs: usize,
    pub waterfall: WaterfallConfig,
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            filter: EnumFilter::default(),
            include_all_n: false,
            jobs: 1,
            waterfall: WaterfallConfig::default(),
            timing: false,
        }
    }
}

/// Verifies every orbit representative mod `n`, sequentially.
pub fn verify_modulus(n: u64, cfg: &SweepConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let m = Arc::new(Modulus::new(n)?);
    let mut report = VerificationReport::empty(n);
    for orbit in enumerate_orbit_reps(&m, cfg.filter) {
        let record = verify_instance(&orbit.rep, &cfg.waterfall)?;
        report.totals.orbits += 1;
        report.totals.instances += orbit.orbit_size;
        if record.normalized.is_none() {
            report.totals.unnormalizable += 1;
        }
        *report.index_histogram.entry(record.index).or_default() += orbit.orbit_size;
        let key = record.strategy.map_or("none", Strategy::as_str);
        *report
            .strategy_histogram
            .get_mut(key)
            .expect("all keys present") += 1;
        if record.counterexample {
            report.violations.push(Violation {
                kind: ViolationKind::IndexAtLeastTwo,
                terms: record.terms.clone(),
                index: record.index,
                strategy: None,
                failure: None,
            });
        }
        for failure in record.soundness_failures {
            report.violations.push(Violation {
                kind: ViolationKind::UnsoundCertificate,
                terms: record.terms.clone(),
                index: record.index,
                strategy: Some(failure.strategy),
                failure: Some(failure.failure),
            });
        }
    }
    if cfg.timing {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// The moduli a sweep over `[n_lo, n_hi]` visits.
pub fn sweep_moduli(n_lo: u64, n_hi: u64, include_all_n: bool) -> Vec<u64> {
    (n_lo..=n_hi)
        .filter(|n| include_all_n || (n % 2 != 0 && n % 3 != 0))
        .collect()
}

/// Verifies every `n` in range. Moduli are distributed over `jobs` workers;
/// each modulus is processed sequentially and reports come back ordered by
/// `n`, so the output does not depend on `jobs`.
pub fn sweep(n_lo: u64, n_hi: u64, cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    if n_lo < 5 || n_lo > n_hi {
        return Err(Error::Precondition(format!(
            "sweep range must satisfy 5 <= min <= max, got [{n_lo}, {n_hi}]"
        )));
    }
    let moduli = sweep_moduli(n_lo, n_hi, cfg.include_all_n);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    pool.install(|| moduli.par_iter().map(|&n| verify_modulus(n, cfg)).collect())
}

/// Lexicographically least minimal zero-sum quadruple mod `n` with index at
/// least `threshold`.
pub fn find_min_index_at_least(n: u64, threshold: u64) -> Result<Option<ResidueSeq>> {
    if !(2..=3).contains(&threshold) {
        return Err(Error::Precondition(format!(
            "threshold must be 2 or 3, got {threshold}"
        )));
    }
    let m = Arc::new(Modulus::new(n)?);
    // The least element with a given index is the least of its orbit.
    Ok(enumerate_quadruples(&m, EnumFilter::default())
        .filter(is_canonical)
        .find(|s| {
            index(s)
                .map(|r| r.index_value >= threshold)
                .unwrap_or(false)
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_has_no_violations() {
        let reports = sweep(5, 40, &SweepConfig::default()).unwrap();
        assert_eq!(
            reports.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37]
        );
        for r in &reports {
            assert!(r.violations.is_empty(), "n={}", r.n);
            assert_eq!(r.max_index(), 1);
            assert_eq!(r.index_histogram.values().sum::<u64>(), r.totals.instances);
            assert_eq!(r.strategy_histogram.values().sum::<u64>(), r.totals.orbits);
        }
        let n25 = reports.iter().find(|r| r.n == 25).unwrap();
        assert_eq!((n25.totals.instances, n25.totals.orbits), (624, 32));
    }

    #[test]
    fn off_hypothesis_sweep_finds_index_two() {
        let cfg = SweepConfig {
            include_all_n: true,
            ..SweepConfig::default()
        };
        let reports = sweep(8, 30, &cfg).unwrap();
        assert_eq!(reports.len(), 23);
        assert!(reports.iter().any(|r| r.max_index() == 2));
        assert!(reports
            .iter()
            .filter(|r| r.n % 2 != 0 && r.n % 3 != 0)
            .all(|r| r.violations.is_empty()));
    }

    #[test]
    fn rejects_bad_range() {
        assert!(sweep(4, 10, &SweepConfig::default()).is_err());
        assert!(sweep(11, 10, &SweepConfig::default()).is_err());
    }

    #[test]
    fn min_index_search() {
        assert_eq!(
            find_min_index_at_least(6, 2).unwrap().unwrap().terms(),
            &[1, 3, 4, 4]
        );
        for n in [25, 35, 49, 77] {
            assert_eq!(find_min_index_at_least(n, 2).unwrap(), None);
        }
        for n in [6, 8, 10, 12] {
            assert_eq!(find_min_index_at_least(n, 3).unwrap(), None);
        }
        assert!(find_min_index_at_least(25, 1).is_err());
    }
}
