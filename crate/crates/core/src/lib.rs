//! Index of sequences over finite cyclic groups.
//!
//! For a sequence `S = (x_1 g)···(x_k g)` over `Z_n` the index is the least
//! `Σ |v·x_i|_n / n` over all units `v`. The crate provides:
//!
//! - [`modarith`]: residues in `[1, n]`, factorization, units, inverses and
//!   exact coprime counting over rational intervals.
//! - [`zseq`]: zero-sum and minimality predicates, `‖S‖`, the index, and
//!   canonical orbit representatives.
//! - [`canon`]: the `(e, c, b, a)` normal form of minimal zero-sum
//!   quadruples and the gcd pattern classes.
//! - [`certs`]: small certificates of index 1 and the searches producing them.
//! - [`enumgen`]: exhaustive and random generation of minimal zero-sum
//!   quadruples.
//! - [`harness`]: the verification waterfall, parallel sweeps over `n`, and
//!   the Ω-interval audit.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod canon;
pub mod certs;
pub mod enumgen;
pub mod error;
pub mod harness;
pub mod modarith;
pub mod zseq;

pub use canon::{classify, denormalize, normalize, GcdPattern, NormalizedQuadruple, PatternTag};
pub use certs::{Certificate, CertificateKind, CertificateRecord};
pub use enumgen::{
    enumerate_orbit_reps, enumerate_quadruples, random_instance, EnumFilter, OrbitRep,
};
pub use error::{Error, Result};
pub use harness::{
    sweep, verify_instance, InstanceRecord, Strategy, SweepConfig, VerificationReport,
    WaterfallConfig,
};
pub use modarith::{coprime_in_interval, factorize, inverse, residue, Modulus, RationalBound};
pub use zseq::{canonical_rep, g_norm, index, index_transcript, IndexResult, ResidueSeq, UnitNorm};
