use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde::Serialize;
use zsindex_core::canon::GcdPattern;
use zsindex_core::enumgen::enumerate_orbit_reps;
use zsindex_core::harness::{
    find_min_index_at_least, lemma29_audit, sweep, sweep_moduli, three_prime_moduli_above,
    AuditFinding, InstanceRecord, Strategy, SweepConfig, VerificationReport, WaterfallConfig,
    DEFAULT_NOTICE_CAP,
};
use zsindex_core::{
    classify, enumerate_quadruples, index, index_transcript, normalize, EnumFilter, Error, Modulus,
    PatternTag, ResidueSeq, UnitNorm,
};

use crate::output::{emit, join, opt, Format, Rendered};

/// Exit status for a finished command.
pub type Code = i32;
pub const OK: Code = 0;
pub const VIOLATION: Code = 1;

#[derive(Debug)]
pub enum CliError {
    Input(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Input(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Input(e) => write!(f, "invalid input: {e}"),
            Self::Usage(msg) => f.write_str(msg),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type CmdResult = Result<Code, CliError>;

fn sequence(n: u64, terms: &[u64]) -> Result<ResidueSeq, CliError> {
    Ok(ResidueSeq::new(Arc::new(Modulus::new(n)?), terms.to_vec())?)
}

fn minimal_quadruple(n: u64, terms: &[u64]) -> Result<ResidueSeq, CliError> {
    let s = sequence(n, terms)?;
    if !s.is_minimal_zero_sum() {
        return Err(Error::NotMinimal.into());
    }
    Ok(s)
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Modulus.
    #[arg(long)]
    pub n: u64,
    /// Terms in [1, n-1].
    #[arg(required = true, num_args = 1..)]
    pub terms: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Serialize)]
struct IndexOutput {
    n: u64,
    terms: Vec<u64>,
    zero_sum: bool,
    minimal: bool,
    index: Option<u64>,
    witness_unit: Option<u64>,
}

pub fn cmd_index(a: &SeqArgs) -> CmdResult {
    if a.terms.len() > 4 {
        return Err(CliError::Usage(format!(
            "expected 1 to 4 terms, got {}",
            a.terms.len()
        )));
    }
    let s = sequence(a.n, &a.terms)?;
    let r = s.is_zero_sum().then(|| index(&s)).transpose()?;
    let out = IndexOutput {
        n: s.n(),
        terms: s.terms().to_vec(),
        zero_sum: s.is_zero_sum(),
        minimal: s.is_minimal_zero_sum(),
        index: r.map(|r| r.index_value),
        witness_unit: r.map(|r| r.witness_unit),
    };
    let mut rendered = Rendered::new(
        &out,
        &["n", "terms", "zero_sum", "minimal", "index", "witness_unit"],
    )
    .row([
        out.n.to_string(),
        join(&out.terms),
        out.zero_sum.to_string(),
        out.minimal.to_string(),
        opt(out.index),
        opt(out.witness_unit),
    ]);
    if !out.zero_sum {
        rendered = rendered.note("not zero-sum");
    }
    emit(&rendered, a.format, None)?;
    Ok(OK)
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Try only this strategy (then fall back to the oracle).
    #[arg(long)]
    pub strategy: Option<Strategy>,
    /// Comma-separated waterfall order.
    #[arg(long, value_delimiter = ',', conflicts_with = "strategy")]
    pub order: Option<Vec<Strategy>>,
    /// Pin `k` for the interval strategies.
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_NOTICE_CAP)]
    pub notice_cap: u64,
}

fn certificate_kind(record: &InstanceRecord) -> String {
    record
        .certificate
        .as_ref()
        .and_then(|c| serde_json::to_value(c.kind).ok())
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(str::to_owned))
        .unwrap_or_default()
}

pub fn cmd_certify(a: &CertifyArgs) -> CmdResult {
    let s = minimal_quadruple(a.seq.n, &a.seq.terms)?;
    let mut cfg = WaterfallConfig {
        notice_cap: a.notice_cap,
        ..WaterfallConfig::default()
    };
    if let Some(st) = a.strategy {
        cfg.order = vec![st];
    }
    if let Some(order) = &a.order {
        cfg.order = order.clone();
    }
    cfg.interval_k = a.k.map(|k| (k, k));
    let record = zsindex_core::verify_instance(&s, &cfg)?;

    let cert = record.certificate.as_ref();
    let mut rendered = Rendered::new(
        &record,
        &[
            "n",
            "terms",
            "pattern",
            "index",
            "witness_unit",
            "strategy",
            "certificate",
            "multiplier",
            "implied_unit",
            "counterexample",
        ],
    )
    .row([
        record.n.to_string(),
        join(&record.terms),
        record.pattern.to_string(),
        record.index.to_string(),
        record.witness_unit.to_string(),
        opt(record.strategy),
        certificate_kind(&record),
        opt(cert.map(|c| c.kind.multiplier())),
        opt(cert.and_then(|c| c.implied_unit)),
        record.counterexample.to_string(),
    ]);
    for step in &record.trace {
        rendered = rendered.note(format!("{:<12} {:?}", step.strategy.as_str(), step.outcome));
    }
    if let Some(c) = cert {
        rendered = rendered.note(format!(
            "certificate: {}",
            serde_json::to_string(&c.kind).unwrap_or_default()
        ));
    }
    emit(&rendered, a.seq.format, None)?;
    Ok(if record.counterexample { VIOLATION } else { OK })
}

#[derive(Serialize)]
struct NormalizeOutput {
    n: u64,
    terms: Vec<u64>,
    /// `[e, c, b, a]`
    normalized: Option<[u64; 4]>,
    normalizing_unit: Option<u64>,
    s: Option<u64>,
}

pub fn cmd_normalize(a: &SeqArgs) -> CmdResult {
    let s = minimal_quadruple(a.n, &a.terms)?;
    let q = normalize(&s)?;
    let out = NormalizeOutput {
        n: s.n(),
        terms: s.terms().to_vec(),
        normalized: q.as_ref().map(|q| [q.e, q.c, q.b, q.a]),
        normalizing_unit: q.as_ref().map(|q| q.normalizing_unit),
        s: q.as_ref().map(|q| q.s),
    };
    let coord = |i: usize| opt(out.normalized.map(|c| c[i]));
    let rendered = Rendered::new(&out, &["n", "terms", "e", "c", "b", "a", "unit", "s"]).row([
        out.n.to_string(),
        join(&out.terms),
        coord(0),
        coord(1),
        coord(2),
        coord(3),
        opt(out.normalizing_unit),
        opt(out.s),
    ]);
    emit(&rendered, a.format, None)?;
    Ok(OK)
}

#[derive(Serialize)]
struct ClassifyOutput {
    n: u64,
    terms: Vec<u64>,
    gcds: Vec<u64>,
    #[serde(flatten)]
    pattern: GcdPattern,
}

pub fn cmd_classify(a: &SeqArgs) -> CmdResult {
    let s = sequence(a.n, &a.terms)?;
    let m = s.modulus();
    let out = ClassifyOutput {
        n: s.n(),
        terms: s.terms().to_vec(),
        gcds: s.terms().iter().map(|&x| m.gcd_with(x)).collect(),
        pattern: classify(&s),
    };
    let primes = out
        .pattern
        .labeled_primes
        .map(|(p1, p2, p3)| format!("{p1} {p2} {p3}"))
        .unwrap_or_default();
    let rendered = Rendered::new(&out, &["n", "terms", "gcds", "pattern", "labeled_primes"]).row([
        out.n.to_string(),
        join(&out.terms),
        join(&out.gcds),
        out.pattern.tag.to_string(),
        primes,
    ]);
    emit(&rendered, a.format, None)?;
    Ok(OK)
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[arg(long)]
    pub pattern: Option<PatternTag>,
    /// Keep only quadruples with a normal form.
    #[arg(long)]
    pub normalizable: bool,
    /// Require `a > 2e` (true) or `a <= 2e` (false) on the normal form.
    #[arg(long)]
    pub a_gt_2e: Option<bool>,
    /// Require `a > 4e` (true) or `a <= 4e` (false) on the normal form.
    #[arg(long)]
    pub a_gt_4e: Option<bool>,
}

impl FilterArgs {
    fn filter(&self) -> EnumFilter {
        EnumFilter {
            pattern: self.pattern,
            require_normalizable: self.normalizable,
            a_gt_2e: self.a_gt_2e,
            a_gt_4e: self.a_gt_4e,
        }
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub filter: FilterArgs,
    /// Stop after this many rows.
    #[arg(long)]
    pub limit: Option<usize>,
    /// One representative per unit orbit, with orbit sizes.
    #[arg(long)]
    pub orbits: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Serialize)]
struct EnumRow {
    terms: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_size: Option<u64>,
}

pub fn cmd_enumerate(a: &EnumerateArgs) -> CmdResult {
    let m = Arc::new(Modulus::new(a.n)?);
    let limit = a.limit.unwrap_or(usize::MAX);
    let rows: Vec<EnumRow> = if a.orbits {
        enumerate_orbit_reps(&m, a.filter.filter())
            .into_iter()
            .take(limit)
            .map(|o| EnumRow {
                terms: o.rep.terms().to_vec(),
                orbit_size: Some(o.orbit_size),
            })
            .collect()
    } else {
        enumerate_quadruples(&m, a.filter.filter())
            .take(limit)
            .map(|s| EnumRow {
                terms: s.terms().to_vec(),
                orbit_size: None,
            })
            .collect()
    };
    let mut rendered = Rendered::new(&rows, &["x1", "x2", "x3", "x4", "orbit_size"]);
    for r in &rows {
        rendered = rendered.row([
            r.terms[0].to_string(),
            r.terms[1].to_string(),
            r.terms[2].to_string(),
            r.terms[3].to_string(),
            opt(r.orbit_size),
        ]);
    }
    emit(&rendered, a.format, None)?;
    Ok(OK)
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub min_n: u64,
    #[arg(long)]
    pub max_n: u64,
    #[command(flatten)]
    pub filter: FilterArgs,
    /// Also sweep moduli divisible by 2 or 3.
    #[arg(long)]
    pub include_all_n: bool,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_NOTICE_CAP)]
    pub notice_cap: u64,
    /// Comma-separated waterfall order.
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<Strategy>>,
    /// Record wall time per modulus (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

pub const SWEEP_CSV_HEAD: [&str; 7] = [
    "n",
    "instances",
    "orbits",
    "unnormalizable",
    "index_1",
    "index_2",
    "max_index",
];

fn sweep_rendered(reports: &[VerificationReport]) -> Rendered {
    let mut header: Vec<&str> = SWEEP_CSV_HEAD.to_vec();
    header.extend(Strategy::ALL.iter().map(|s| s.as_str()));
    header.extend(["none", "violations", "elapsed_ms"]);
    let mut rendered = Rendered::new(&reports, &header);
    for r in reports {
        let hist = |i: u64| r.index_histogram.get(&i).copied().unwrap_or(0).to_string();
        let mut row = vec![
            r.n.to_string(),
            r.totals.instances.to_string(),
            r.totals.orbits.to_string(),
            r.totals.unnormalizable.to_string(),
            hist(1),
            hist(2),
            r.max_index().to_string(),
        ];
        row.extend(
            Strategy::ALL
                .iter()
                .map(|s| s.as_str())
                .chain(["none"])
                .map(|k| {
                    r.strategy_histogram
                        .get(k)
                        .copied()
                        .unwrap_or(0)
                        .to_string()
                }),
        );
        row.push(r.violations.len().to_string());
        row.push(opt(r.elapsed_ms));
        rendered = rendered.row(row);
    }
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    rendered.note(format!(
        "moduli: {}  violations: {violations}",
        reports.len()
    ))
}

pub fn cmd_sweep(a: &SweepArgs) -> CmdResult {
    if a.min_n < 5 || a.min_n > a.max_n {
        return Err(CliError::Usage(format!(
            "need 5 <= --min-n <= --max-n, got {} and {}",
            a.min_n, a.max_n
        )));
    }
    if a.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let mut waterfall = WaterfallConfig {
        notice_cap: a.notice_cap,
        ..WaterfallConfig::default()
    };
    if let Some(order) = &a.order {
        waterfall.order = order.clone();
    }
    let cfg = SweepConfig {
        filter: a.filter.filter(),
        include_all_n: a.include_all_n,
        jobs: a.jobs,
        waterfall,
        timing: a.timing,
    };
    let reports = sweep(a.min_n, a.max_n, &cfg)?;
    emit(&sweep_rendered(&reports), a.format, a.out.as_deref())?;
    Ok(if reports.iter().any(|r| !r.violations.is_empty()) {
        VIOLATION
    } else {
        OK
    })
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Explicit moduli (comma-separated or repeated).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["min_n", "first_above"])]
    pub n: Vec<u64>,
    /// With --max-n: every valid modulus in the range.
    #[arg(long, requires = "max_n")]
    pub min_n: Option<u64>,
    #[arg(long, requires = "min_n")]
    pub max_n: Option<u64>,
    /// With --count: the first valid moduli above this bound.
    #[arg(long, requires = "count", conflicts_with = "min_n")]
    pub first_above: Option<u64>,
    #[arg(long, requires = "first_above")]
    pub count: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

pub fn cmd_audit(a: &AuditArgs) -> CmdResult {
    let moduli: Vec<u64> = if !a.n.is_empty() {
        a.n.clone()
    } else if let (Some(lo), Some(hi)) = (a.min_n, a.max_n) {
        (lo..=hi).filter(|&n| valid_three_prime(n)).collect()
    } else if let (Some(above), Some(count)) = (a.first_above, a.count) {
        three_prime_moduli_above(above, count)
    } else {
        return Err(CliError::Usage(
            "give --n, --min-n/--max-n, or --first-above/--count".into(),
        ));
    };
    let report = lemma29_audit(&moduli);
    let mut rendered = Rendered::new(&report, &["kind", "n", "e", "c", "b", "a", "s", "reason"]);
    for f in &report.findings {
        rendered = match f {
            AuditFinding::InvalidModulus { n, reason } => rendered.row([
                "invalid_modulus".into(),
                n.to_string(),
                "".into(),
                "".into(),
                "".into(),
                "".into(),
                "".into(),
                reason.clone(),
            ]),
            AuditFinding::NoCoprimeInOmega { n, coords, s } => rendered.row([
                "no_coprime_in_omega".to_string(),
                n.to_string(),
                coords[0].to_string(),
                coords[1].to_string(),
                coords[2].to_string(),
                coords[3].to_string(),
                s.to_string(),
                String::new(),
            ]),
        };
    }
    let rendered = rendered.note(format!(
        "moduli: {}  examined: {}  s>=10: {}  findings: {}",
        join(&report.n_values),
        report.examined,
        report.large_s,
        report.findings.len()
    ));
    emit(&rendered, a.format, a.out.as_deref())?;
    Ok(OK)
}

fn valid_three_prime(n: u64) -> bool {
    three_prime_moduli_above(n.saturating_sub(1), 1).first() == Some(&n)
}

#[derive(Debug, Args)]
pub struct FindArgs {
    /// A single modulus.
    #[arg(long, conflicts_with_all = ["min_n", "max_n"])]
    pub n: Option<u64>,
    /// Ascending scan start.
    #[arg(long, default_value_t = 5)]
    pub min_n: u64,
    #[arg(long, default_value_t = 50)]
    pub max_n: u64,
    /// Scan every modulus, not just those divisible by 2 or 3.
    #[arg(long)]
    pub all_n: bool,
    #[arg(long, default_value_t = 2)]
    pub threshold: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Serialize)]
struct Counterexample {
    n: u64,
    terms: Vec<u64>,
    index: u64,
    transcript: Vec<UnitNorm>,
}

#[derive(Serialize)]
struct FindOutput {
    scanned: Vec<u64>,
    found: Option<Counterexample>,
}

pub fn cmd_find(a: &FindArgs) -> CmdResult {
    let scanned: Vec<u64> = match a.n {
        Some(n) => vec![n],
        None => {
            if a.min_n < 2 || a.min_n > a.max_n {
                return Err(CliError::Usage("need 2 <= --min-n <= --max-n".into()));
            }
            let all = sweep_moduli(a.min_n, a.max_n, true);
            all.into_iter()
                .filter(|n| a.all_n || n % 2 == 0 || n % 3 == 0)
                .collect()
        }
    };
    let mut found = None;
    let mut visited = Vec::new();
    for &n in &scanned {
        visited.push(n);
        if let Some(s) = find_min_index_at_least(n, a.threshold)? {
            let transcript = index_transcript(&s)?;
            found = Some(Counterexample {
                n,
                terms: s.terms().to_vec(),
                index: index(&s)?.index_value,
                transcript,
            });
            break;
        }
    }
    let out = FindOutput {
        scanned: visited,
        found,
    };
    let mut rendered = Rendered::new(&out, &["n", "terms", "index"]);
    match &out.found {
        Some(c) => {
            rendered = rendered.row([c.n.to_string(), join(&c.terms), c.index.to_string()]);
        }
        None => {
            rendered = rendered.note(format!("no quadruple with index >= {} found", a.threshold))
        }
    }
    emit(&rendered, a.format, None)?;
    Ok(if out.found.is_some() { VIOLATION } else { OK })
}
