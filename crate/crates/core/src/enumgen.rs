//! Generation of minimal zero-sum quadruples over `Z_n`.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canon::{classify, normalize_unchecked, PatternTag};
use crate::modarith::Modulus;
use crate::zseq::{is_canonical, orbit, ResidueSeq};

/// Orbit dedup switches from the canonical-representative test to a seen-set
/// above this many units.
pub const CANONICAL_PHI_LIMIT: u64 = 10_000;

pub const RANDOM_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumFilter {
    pub pattern: Option<PatternTag>,
    pub require_normalizable: bool,
    /// Required value of `a > 2e` on the normal form.
    pub a_gt_2e: Option<bool>,
    /// Required value of `a > 4e` on the normal form.
    pub a_gt_4e: Option<bool>,
}

impl EnumFilter {
    pub fn pattern(tag: PatternTag) -> Self {
        Self {
            pattern: Some(tag),
            ..Self::default()
        }
    }

    fn needs_normal_form(&self) -> bool {
        self.require_normalizable || self.a_gt_2e.is_some() || self.a_gt_4e.is_some()
    }

    /// Whether any sequence mod `n` can pass.
    pub fn satisfiable_for(&self, m: &Modulus) -> bool {
        match self.pattern {
            Some(tag) if tag.needs_three_primes() => {
                m.num_distinct_primes() == 3 && m.is_squarefree()
            }
            Some(PatternTag::TwoPrimeOrFewer) => m.num_distinct_primes() <= 2,
            Some(PatternTag::Other) => m.num_distinct_primes() >= 3,
            _ => true,
        }
    }

    /// Checks a minimal zero-sum quadruple against the filter.
    pub fn accepts(&self, s: &ResidueSeq) -> bool {
        if let Some(tag) = self.pattern {
            if classify(s).tag != tag {
                return false;
            }
        }
        if !self.needs_normal_form() {
            return true;
        }
        let Some(q) = normalize_unchecked(s) else {
            return false;
        };
        self.a_gt_2e.map_or(true, |want| (q.a > 2 * q.e) == want)
            && self.a_gt_4e.map_or(true, |want| (q.a > 4 * q.e) == want)
    }
}

/// Every minimal zero-sum quadruple `x1 ≤ x2 ≤ x3 ≤ x4` passing the filter,
/// in strictly increasing lexicographic order.
pub struct Quadruples {
    modulus: Arc<Modulus>,
    filter: EnumFilter,
    /// Admissible values for every term, ascending.
    cands: Vec<u64>,
    i: [usize; 3],
    done: bool,
}

impl Quadruples {
    fn advance(&mut self) {
        let len = self.cands.len();
        let [i1, i2, i3] = &mut self.i;
        *i3 += 1;
        if *i3 < len {
            return;
        }
        *i2 += 1;
        if *i2 < len {
            *i3 = *i2;
            return;
        }
        *i1 += 1;
        if *i1 < len {
            *i2 = *i1;
            *i3 = *i1;
            return;
        }
        self.done = true;
    }
}

impl Iterator for Quadruples {
    type Item = ResidueSeq;

    fn next(&mut self) -> Option<ResidueSeq> {
        let n = self.modulus.n();
        while !self.done {
            let [x1, x2, x3] = self.i.map(|i| self.cands[i]);
            self.advance();
            let x4 = self.modulus.residue(-((x1 + x2 + x3) as i128));
            if x4 == n || x4 < x3 {
                continue;
            }
            // zero-sum by construction; minimal iff no complementary pair
            if x1 + x2 == n
                || x1 + x3 == n
                || x1 + x4 == n
                || x2 + x3 == n
                || x2 + x4 == n
                || x3 + x4 == n
            {
                continue;
            }
            let s = ResidueSeq::from_sorted_unchecked(self.modulus.clone(), vec![x1, x2, x3, x4]);
            if self.filter.accepts(&s) {
                return Some(s);
            }
        }
        None
    }
}

pub fn enumerate_quadruples(m: &Arc<Modulus>, f: EnumFilter) -> Quadruples {
    // A1 has no unit terms and A3 only unit terms.
    let cands: Vec<u64> = match f.pattern {
        Some(PatternTag::A1) => (1..m.n()).filter(|&x| !m.is_unit(x)).collect(),
        Some(PatternTag::A3) => m.units().collect(),
        _ => (1..m.n()).collect(),
    };
    Quadruples {
        modulus: m.clone(),
        filter: f,
        done: cands.is_empty() || !f.satisfiable_for(m),
        cands,
        i: [0; 3],
    }
}

/// A canonical orbit representative with the number of distinct multisets in
/// its unit orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRep {
    pub rep: ResidueSeq,
    pub orbit_size: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitMethod {
    /// Keep a quadruple iff it is the least element of its orbit.
    Canonical,
    /// Walk quadruples in order and remember the orbit mates still to come.
    SeenSet,
}

impl OrbitMethod {
    pub fn for_modulus(m: &Modulus) -> Self {
        if m.phi() <= CANONICAL_PHI_LIMIT {
            Self::Canonical
        } else {
            Self::SeenSet
        }
    }
}

/// One representative (the canonical, lexicographically least member) per
/// unit orbit of minimal zero-sum quadruples, in increasing order. The filter
/// is applied to the representative.
pub fn enumerate_orbit_reps(m: &Arc<Modulus>, f: EnumFilter) -> Vec<OrbitRep> {
    enumerate_orbit_reps_with(m, f, OrbitMethod::for_modulus(m))
}

pub fn enumerate_orbit_reps_with(
    m: &Arc<Modulus>,
    f: EnumFilter,
    method: OrbitMethod,
) -> Vec<OrbitRep> {
    if !f.satisfiable_for(m) {
        return Vec::new();
    }
    let all = enumerate_quadruples(m, EnumFilter::default());
    match method {
        OrbitMethod::Canonical => all
            .filter(|s| is_canonical(s) && f.accepts(s))
            .map(|rep| OrbitRep {
                orbit_size: orbit(&rep).len() as u64,
                rep,
            })
            .collect(),
        OrbitMethod::SeenSet => {
            let mut pending: HashSet<Vec<u64>> = HashSet::new();
            let mut reps = Vec::new();
            for s in all {
                if pending.remove(s.terms()) {
                    continue;
                }
                let members = orbit(&s);
                let orbit_size = members.len() as u64;
                pending.extend(members.into_iter().filter(|t| t.as_slice() != s.terms()));
                if f.accepts(&s) {
                    reps.push(OrbitRep { rep: s, orbit_size });
                }
            }
            debug_assert!(pending.is_empty());
            reps
        }
    }
}

/// Rejection-samples a minimal zero-sum quadruple passing the filter.
/// Deterministic for a fixed seed.
pub fn random_instance(m: &Arc<Modulus>, f: EnumFilter, seed: u64) -> Option<ResidueSeq> {
    let n = m.n();
    if n < 3 || !f.satisfiable_for(m) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let xs: [u64; 3] = std::array::from_fn(|_| rng.gen_range(1..n));
        let x4 = m.residue(-(xs.iter().map(|&x| x as i128).sum::<i128>()));
        if x4 == n {
            continue;
        }
        let mut terms = vec![xs[0], xs[1], xs[2], x4];
        terms.sort_unstable();
        let s = ResidueSeq::from_sorted_unchecked(m.clone(), terms);
        if s.is_minimal_zero_sum() && f.accepts(&s) {
            return Some(s);
        }
    }
    None
}
