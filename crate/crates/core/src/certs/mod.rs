//! Index-1 certificates and the searches that produce them.
//!
//! Each certificate carries the sequence (or normal-form quadruple) it speaks
//! about and can be re-checked on its own. [`Certificate::validate`] also
//! runs the brute-force index oracle, so a certificate produced from a
//! sufficient condition that turns out not to be sufficient is caught.
//!
//! Interval conventions used by the searches:
//!
//! | search                       | interval          | endpoints           |
//! |------------------------------|-------------------|---------------------|
//! | [`search_interval`]          | `[kn/c, kn/b]`    | both closed         |
//! | [`compute_k1`]               | `[kn/c, kn/b)`    | closed, open        |
//! | `l` and `N_j` in [`omega_diagnostics`] | `[kn/c, kn/b)` | closed, open |
//! | Ω rows in [`omega_diagnostics`] | `[(2s−2t−1)n/2b, (s−t)n/b]` | both closed |

mod interval;
mod notice;
mod omega;
mod renumber;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::NormalizedQuadruple;
use crate::zseq::{g_norm, index, ResidueSeq};

pub use interval::{
    search_interval, search_interval_in, search_m, search_small_a, small_a_multiplier,
};
pub use notice::{check_halfplane, check_sum_3n, scan_halfplane, scan_sum_3n};
pub use omega::{
    compute_k1, half_steps_nonempty, omega_diagnostics, Fraction, OmegaDiagnostics, OmegaRow,
};
pub use renumber::{renumber, RenumberBranch, RenumberFailure, RenumberOutcome};

/// Which half of `[1, n]` may hold at most one image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfPlaneSide {
    /// At most one `|m·x_i|_n` in `[1, n/2]`.
    Lower,
    /// At most one `|m·x_i|_n` in `[n/2, n]`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalMode {
    /// `m·a < n`
    MaBelowN,
    /// `a ≤ b/k`
    ABelowBOverK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateKind {
    /// `Σ |v·x_i|_n = n`.
    Multiplier {
        v: u64,
    },
    /// `Σ |m·x_i|_n = 3n`; the witness is `n − m`.
    ThreeN {
        m: u64,
    },
    HalfPlane {
        m: u64,
        side: HalfPlaneSide,
    },
    /// `kn/c ≤ m ≤ kn/b`, `gcd(m, n) = 1`, `1 ≤ k ≤ b`, plus the mode's side condition.
    Interval {
        k: u64,
        m: u64,
        mode: IntervalMode,
    },
    /// `M ≤ n/2e`, unit, and at least two of
    /// `|Ma|_n > n/2`, `|Mb|_n > n/2`, `|Mc|_n < n/2` (flags in that order).
    MType {
        m: u64,
        satisfied: [bool; 3],
    },
    /// `m = (n + (j+1)a)/a` with `|me|_n`, `|m(n−a)|_n`, `|m(n−b)|_n` all above `n/2`.
    SmallA {
        j: u8,
        m: u64,
    },
}

impl CertificateKind {
    pub fn multiplier(&self) -> u64 {
        match *self {
            Self::Multiplier { v } => v,
            Self::ThreeN { m }
            | Self::HalfPlane { m, .. }
            | Self::Interval { m, .. }
            | Self::MType { m, .. }
            | Self::SmallA { m, .. } => m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertContext {
    Sequence(ResidueSeq),
    Quadruple(NormalizedQuadruple),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub context: CertContext,
}

/// Why a certificate failed re-validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum CertificateFailure {
    /// The certificate's own defining condition does not hold on its context.
    DefiningCheck,
    /// The oracle index of the context is not 1.
    OracleIndex { index: u64 },
    /// The implied unit does not give `‖S‖ = 1`.
    ImpliedUnit { unit: u64, norm: u64 },
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DefiningCheck => f.write_str("defining check fails"),
            Self::OracleIndex { index } => write!(f, "oracle index is {index}"),
            Self::ImpliedUnit { unit, norm } => write!(f, "implied unit {unit} gives norm {norm}"),
        }
    }
}

impl Certificate {
    pub(crate) fn on_sequence(kind: CertificateKind, s: &ResidueSeq) -> Self {
        Self {
            kind,
            context: CertContext::Sequence(s.clone()),
        }
    }

    pub(crate) fn on_quadruple(kind: CertificateKind, q: &NormalizedQuadruple) -> Self {
        Self {
            kind,
            context: CertContext::Quadruple(q.clone()),
        }
    }

    pub fn sequence(&self) -> ResidueSeq {
        match &self.context {
            CertContext::Sequence(s) => s.clone(),
            CertContext::Quadruple(q) => q.sequence(),
        }
    }

    pub fn quadruple(&self) -> Option<&NormalizedQuadruple> {
        match &self.context {
            CertContext::Quadruple(q) => Some(q),
            CertContext::Sequence(_) => None,
        }
    }

    /// Unit `v*` with `‖S‖ = 1` under `v*`, for certificates that name one
    /// directly. Half-plane style conditions do not.
    pub fn implied_unit(&self) -> Option<u64> {
        let n = self.sequence().n();
        match self.kind {
            CertificateKind::Multiplier { v } => Some(v),
            CertificateKind::ThreeN { m } => Some(n - m % n),
            CertificateKind::Interval { m, .. } => Some(m),
            _ => None,
        }
    }

    /// Re-checks the defining condition on the context.
    pub fn holds(&self) -> bool {
        let s = self.sequence();
        let md = s.modulus();
        let n = md.n();
        let m = self.kind.multiplier();
        if m == 0 || m >= n || !md.is_unit(m) {
            return false;
        }
        match self.kind {
            CertificateKind::Multiplier { v } => s.scaled_sum(v) == n as u128,
            CertificateKind::ThreeN { m } => s.scaled_sum(m) == 3 * n as u128,
            CertificateKind::HalfPlane { m, side } => notice::halfplane_count(&s, m, side) <= 1,
            CertificateKind::Interval { k, m, mode } => match self.quadruple() {
                Some(q) => interval::interval_holds(q, k, m, mode),
                None => false,
            },
            CertificateKind::MType { m, satisfied } => match self.quadruple() {
                Some(q) => {
                    let flags = interval::m_type_flags(q, m);
                    2 * q.e * m <= n
                        && flags == satisfied
                        && flags.iter().filter(|&&f| f).count() >= 2
                }
                None => false,
            },
            CertificateKind::SmallA { j, m } => match self.quadruple() {
                Some(q) => {
                    small_a_multiplier(q, j) == Some(m)
                        && notice::halfplane_count(&s, m, HalfPlaneSide::Lower) <= 1
                }
                None => false,
            },
        }
    }

    /// Defining check, then the oracle, then the implied unit if any.
    pub fn validate(&self) -> Result<(), CertificateFailure> {
        if !self.holds() {
            return Err(CertificateFailure::DefiningCheck);
        }
        let s = self.sequence();
        let oracle = index(&s).map_err(|_| CertificateFailure::DefiningCheck)?;
        if oracle.index_value != 1 {
            return Err(CertificateFailure::OracleIndex {
                index: oracle.index_value,
            });
        }
        if let Some(unit) = self.implied_unit() {
            let norm = g_norm(&s, unit).map_err(|_| CertificateFailure::DefiningCheck)?;
            if norm != 1 {
                return Err(CertificateFailure::ImpliedUnit { unit, norm });
            }
        }
        Ok(())
    }

    pub fn record(&self) -> CertificateRecord {
        let s = self.sequence();
        CertificateRecord {
            kind: self.kind,
            n: s.n(),
            terms: s.terms().to_vec(),
            coords: self.quadruple().map(|q| [q.e, q.c, q.b, q.a]),
            implied_unit: self.implied_unit(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CertificateKind::Multiplier { v } => write!(f, "multiplier v={v}")?,
            CertificateKind::ThreeN { m } => write!(f, "3n-sum m={m}")?,
            CertificateKind::HalfPlane { m, side } => write!(f, "half-plane ({side:?}) m={m}")?,
            CertificateKind::Interval { k, m, mode } => {
                write!(f, "interval k={k} m={m} ({mode:?})")?
            }
            CertificateKind::MType { m, satisfied } => write!(f, "M-type M={m} {satisfied:?}")?,
            CertificateKind::SmallA { j, m } => write!(f, "small-a j={j} m={m}")?,
        }
        match &self.context {
            CertContext::Sequence(s) => write!(f, " on {s}"),
            CertContext::Quadruple(q) => write!(f, " on {q}"),
        }
    }
}

/// Flat, serializable view of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    #[serde(flatten)]
    pub kind: CertificateKind,
    pub n: u64,
    pub terms: Vec<u64>,
    /// `[e, c, b, a]` when the certificate is stated on a normal form.
    pub coords: Option<[u64; 4]>,
    pub implied_unit: Option<u64>,
}
