//! Verification waterfall, per-modulus sweeps and the Ω audit.

mod audit;
mod sweep;
mod waterfall;

pub use audit::{lemma29_audit, three_prime_moduli_above, AuditFinding, AuditReport};
pub use sweep::{
    find_min_index_at_least, sweep, sweep_moduli, verify_modulus, SweepConfig, Totals,
    VerificationReport, Violation, ViolationKind,
};
pub use waterfall::{
    certify_all, verify_instance, Diagnostics, InstanceRecord, SoundnessFailure, StepOutcome,
    Strategy, TraceStep, WaterfallConfig, DEFAULT_NOTICE_CAP,
};
