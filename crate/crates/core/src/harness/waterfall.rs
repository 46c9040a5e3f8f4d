use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{classify, normalize, NormalizedQuadruple, PatternTag};
use crate::certs::{
    compute_k1, omega_diagnostics, renumber, scan_halfplane, scan_sum_3n, search_interval_in,
    search_m, search_small_a, Certificate, CertificateFailure, CertificateKind, CertificateRecord,
    IntervalMode, RenumberOutcome,
};
use crate::error::{Error, Result};
use crate::zseq::{index, ResidueSeq};

/// A step of the verification waterfall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// The sequence already sums to `n`.
    Direct,
    /// Some unit multiple sums to `3n`.
    Notice1,
    /// Some unit multiple has at most one image on one side of `n/2`.
    Notice2,
    /// The `(n + ja)/a` multiplier family for `a < 2e`, `a | b`.
    SmallA,
    /// Interval multiplier with `m·a < n`.
    Lemma22_1,
    /// M-type multiplier in `[1, n/2e]`.
    Lemma22_2,
    /// Interval multiplier with `a ≤ b/k`.
    Lemma23,
    /// Renumber the normal form, then retry the normal-form strategies once.
    Renumber,
    /// No strategy applied; the brute-force index is the only evidence.
    OracleOnly,
}

impl Strategy {
    pub const ALL: [Strategy; 9] = [
        Strategy::Direct,
        Strategy::Notice1,
        Strategy::Notice2,
        Strategy::SmallA,
        Strategy::Lemma22_1,
        Strategy::Lemma23,
        Strategy::Lemma22_2,
        Strategy::Renumber,
        Strategy::OracleOnly,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::Notice1 => "notice1",
            Self::Notice2 => "notice2",
            Self::SmallA => "small_a",
            Self::Lemma22_1 => "lemma22_1",
            Self::Lemma22_2 => "lemma22_2",
            Self::Lemma23 => "lemma23",
            Self::Renumber => "renumber",
            Self::OracleOnly => "oracle_only",
        }
    }

    fn needs_normal_form(self) -> bool {
        matches!(
            self,
            Self::SmallA | Self::Lemma22_1 | Self::Lemma22_2 | Self::Lemma23 | Self::Renumber
        )
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Strategy::ALL
            .into_iter()
            .find(|st| st.as_str() == key)
            .ok_or_else(|| Error::Precondition(format!("unknown strategy `{s}`")))
    }
}

pub const DEFAULT_NOTICE_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaterfallConfig {
    /// Strategies tried in order; `OracleOnly` is implicit at the end.
    pub order: Vec<Strategy>,
    /// Largest multiplier scanned by the `Notice1`/`Notice2` steps.
    pub notice_cap: u64,
    /// Inclusive range of `k` for the interval steps (`None` means `[1, b]`).
    pub interval_k: Option<(u64, u64)>,
}

impl Default for WaterfallConfig {
    fn default() -> Self {
        Self {
            order: vec![
                Strategy::Direct,
                Strategy::Notice1,
                Strategy::Notice2,
                Strategy::SmallA,
                Strategy::Lemma22_1,
                Strategy::Lemma23,
                Strategy::Lemma22_2,
                Strategy::Renumber,
            ],
            notice_cap: DEFAULT_NOTICE_CAP,
            interval_k: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOutcome {
    Certified,
    NoCertificate,
    /// Needs a normal form the sequence does not have, or a precondition fails.
    NotApplicable,
    /// Produced a certificate that failed re-validation.
    Unsound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub strategy: Strategy,
    pub outcome: StepOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessFailure {
    pub strategy: Strategy,
    pub certificate: CertificateRecord,
    pub failure: CertificateFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub s: u64,
    pub k1: Option<u64>,
    pub assumption_b: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub n: u64,
    pub terms: Vec<u64>,
    pub pattern: PatternTag,
    /// Ground truth from the brute-force oracle.
    pub index: u64,
    pub witness_unit: u64,
    /// `[e, c, b, a]`
    pub normalized: Option<[u64; 4]>,
    pub normalizing_unit: Option<u64>,
    /// First strategy whose certificate re-validated; `None` iff index ≥ 2.
    pub strategy: Option<Strategy>,
    pub certificate: Option<CertificateRecord>,
    pub trace: Vec<TraceStep>,
    pub soundness_failures: Vec<SoundnessFailure>,
    pub counterexample: bool,
    pub diagnostics: Option<Diagnostics>,
}

fn attempt(
    strategy: Strategy,
    s: &ResidueSeq,
    q: Option<&NormalizedQuadruple>,
    cfg: &WaterfallConfig,
    allow_renumber: bool,
) -> Option<Option<Certificate>> {
    if strategy.needs_normal_form() && q.is_none() {
        return None;
    }
    let ks = |q: &NormalizedQuadruple| {
        let (lo, hi) = cfg.interval_k.unwrap_or((1, q.b));
        lo..=hi
    };
    let found = match strategy {
        Strategy::Direct => (s.zero_sum_nu() == Some(1))
            .then(|| Certificate::on_sequence(CertificateKind::Multiplier { v: 1 }, s)),
        Strategy::Notice1 => scan_sum_3n(s, cfg.notice_cap),
        Strategy::Notice2 => scan_halfplane(s, cfg.notice_cap),
        Strategy::SmallA => return search_small_a(q?).ok(),
        Strategy::Lemma22_1 => search_interval_in(q?, ks(q?), IntervalMode::MaBelowN),
        Strategy::Lemma23 => search_interval_in(q?, ks(q?), IntervalMode::ABelowBOverK),
        Strategy::Lemma22_2 => search_m(q?),
        Strategy::Renumber => {
            if !allow_renumber {
                return None;
            }
            match renumber(q?) {
                RenumberOutcome::Certified { certificate, .. } => Some(certificate),
                RenumberOutcome::Renumbered { quadruple, .. } => {
                    let renumbered = quadruple.sequence();
                    cfg.order
                        .iter()
                        .filter(|st| st.needs_normal_form() && **st != Strategy::Renumber)
                        .find_map(|&st| {
                            attempt(st, &renumbered, Some(&quadruple), cfg, false).flatten()
                        })
                }
                RenumberOutcome::Failed(_) => return None,
            }
        }
        Strategy::OracleOnly => return None,
    };
    Some(found)
}

fn check_quadruple(s: &ResidueSeq) -> Result<()> {
    if s.len() != 4 {
        return Err(Error::WrongLength {
            expected: 4,
            found: s.len(),
        });
    }
    if !s.is_minimal_zero_sum() {
        return Err(Error::NotMinimal);
    }
    Ok(())
}

/// Runs the waterfall on a minimal zero-sum quadruple. The oracle index is
/// always computed and never overridden by a strategy.
pub fn verify_instance(s: &ResidueSeq, cfg: &WaterfallConfig) -> Result<InstanceRecord> {
    check_quadruple(s)?;
    let oracle = index(s)?;
    let q = normalize(s)?;
    let mut record = InstanceRecord {
        n: s.n(),
        terms: s.terms().to_vec(),
        pattern: classify(s).tag,
        index: oracle.index_value,
        witness_unit: oracle.witness_unit,
        normalized: q.as_ref().map(|q| [q.e, q.c, q.b, q.a]),
        normalizing_unit: q.as_ref().map(|q| q.normalizing_unit),
        strategy: None,
        certificate: None,
        trace: Vec::new(),
        soundness_failures: Vec::new(),
        counterexample: oracle.index_value >= 2,
        diagnostics: q.as_ref().map(|q| Diagnostics {
            s: q.s,
            k1: compute_k1(q),
            assumption_b: omega_diagnostics(q).assumption_b_holds,
        }),
    };

    for &strategy in &cfg.order {
        if strategy == Strategy::OracleOnly {
            continue;
        }
        let outcome = match attempt(strategy, s, q.as_ref(), cfg, true) {
            None => StepOutcome::NotApplicable,
            Some(None) => StepOutcome::NoCertificate,
            Some(Some(cert)) => match cert.validate() {
                Ok(()) => {
                    record.strategy = Some(strategy);
                    record.certificate = Some(cert.record());
                    StepOutcome::Certified
                }
                Err(failure) => {
                    record.soundness_failures.push(SoundnessFailure {
                        strategy,
                        certificate: cert.record(),
                        failure,
                    });
                    StepOutcome::Unsound
                }
            },
        };
        record.trace.push(TraceStep { strategy, outcome });
        if outcome == StepOutcome::Certified {
            break;
        }
    }

    if record.strategy.is_none() && oracle.index_value == 1 {
        record.strategy = Some(Strategy::OracleOnly);
        record.certificate = Some(
            Certificate::on_sequence(
                CertificateKind::Multiplier {
                    v: oracle.witness_unit,
                },
                s,
            )
            .record(),
        );
    }
    debug_assert_eq!(record.strategy.is_none(), record.counterexample);
    Ok(record)
}

/// Every certificate each strategy produces on its own, without stopping at
/// the first. Used to audit the soundness of the whole certificate layer.
pub fn certify_all(s: &ResidueSeq, cfg: &WaterfallConfig) -> Result<Vec<(Strategy, Certificate)>> {
    check_quadruple(s)?;
    let q = normalize(s)?;
    Ok(Strategy::ALL
        .into_iter()
        .filter_map(|st| {
            attempt(st, s, q.as_ref(), cfg, true)
                .flatten()
                .map(|c| (st, c))
        })
        .collect())
}
