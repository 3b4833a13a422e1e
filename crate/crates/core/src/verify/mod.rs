//! Exhaustive and structured verification of the ball-intersection results
//! and the code constructions built on them.
//!
//! Every verifier returns a [`VerificationReport`]. Work is spread over the
//! current rayon pool and merged with order-independent reductions, so the
//! report does not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::sequences::Word;

mod bounds;
mod claims;
mod dense;
mod lemmas;
mod theorems;

pub use bounds::{bad_count, claim_tables, decomposition, intersection_bounds};
pub use claims::{check_claims, RunSide};
pub use lemmas::{ball_sizes, constrained_deletion, del_positions, pair_structure};
pub use theorems::{code_theorem, reconstruction, rll, run_bound, ReconstructionPlan, TheoremId};

/// Counterexamples kept per report; the total is always reported.
pub const COUNTEREXAMPLE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

/// Whether `bound` caps `extremal_observed` from above or below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Counterexample {
    pub words: Vec<Word>,
    pub reason: String,
}

impl Counterexample {
    pub fn new(words: &[Word], reason: impl Into<String>) -> Self {
        Counterexample {
            words: words.to_vec(),
            reason: reason.into(),
        }
    }
}

/// A sorted, capped sample of counterexamples plus their total count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Counterexamples {
    kept: Vec<Counterexample>,
    total: u64,
}

impl Counterexamples {
    pub fn push(&mut self, c: Counterexample) {
        self.total += 1;
        self.kept.push(c);
        if self.kept.len() > 4 * COUNTEREXAMPLE_CAP {
            self.compact();
        }
    }

    fn compact(&mut self) {
        self.kept.sort();
        self.kept.dedup();
        self.kept.truncate(COUNTEREXAMPLE_CAP);
    }

    pub fn merge(mut self, mut other: Counterexamples) -> Self {
        self.total += other.total;
        self.kept.append(&mut other.kept);
        self.compact();
        self
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn into_sorted(mut self) -> Vec<Counterexample> {
        self.compact();
        self.kept
    }
}

/// Running totals for one verification; merging is associative and
/// commutative.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub checked: u64,
    pub extremal: u64,
    pub equality_cases: u64,
    pub counterexamples: Counterexamples,
    /// Per-category maxima, e.g. largest intersection per case tag.
    pub maxima: BTreeMap<String, u64>,
    /// Per-category counts.
    pub counts: BTreeMap<String, u64>,
}

impl Tally {
    pub fn fail(&mut self, words: &[Word], reason: impl Into<String>) {
        self.counterexamples.push(Counterexample::new(words, reason));
    }

    pub fn check(&mut self, ok: bool, words: &[Word], reason: impl FnOnce() -> String) {
        if !ok {
            self.fail(words, reason());
        }
    }

    pub fn observe(&mut self, value: u64) {
        self.extremal = self.extremal.max(value);
    }

    pub fn observe_in(&mut self, key: &str, value: u64) {
        match self.maxima.get_mut(key) {
            Some(v) => *v = (*v).max(value),
            None => {
                self.maxima.insert(key.to_string(), value);
            }
        }
    }

    pub fn count(&mut self, key: &str) {
        self.add(key, 1);
    }

    pub fn add(&mut self, key: &str, amount: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += amount;
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.extremal = self.extremal.max(other.extremal);
        self.equality_cases += other.equality_cases;
        self.counterexamples = self.counterexamples.merge(other.counterexamples);
        for (k, v) in other.maxima {
            let e = self.maxima.entry(k).or_insert(0);
            *e = (*e).max(v);
        }
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub n_range: [usize; 2],
    pub pairs_checked: u64,
    pub extremal_observed: u64,
    pub bound: u64,
    pub bound_kind: BoundKind,
    pub equality_cases: u64,
    pub counterexamples: Vec<Counterexample>,
    pub counterexample_total: u64,
    pub verdict: Verdict,
    pub details: BTreeMap<String, Value>,
    /// Wall-clock seconds; left out unless explicitly requested so that
    /// reports stay byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

impl VerificationReport {
    pub fn from_tally(target: &str, n: usize, bound: u64, bound_kind: BoundKind, tally: Tally) -> Self {
        let mut details = BTreeMap::new();
        if !tally.maxima.is_empty() {
            details.insert("maxima".to_string(), serde_json::to_value(&tally.maxima).unwrap());
        }
        if !tally.counts.is_empty() {
            details.insert("counts".to_string(), serde_json::to_value(&tally.counts).unwrap());
        }
        let total = tally.counterexamples.total();
        VerificationReport {
            target: target.to_string(),
            n_range: [n, n],
            pairs_checked: tally.checked,
            extremal_observed: tally.extremal,
            bound,
            bound_kind,
            equality_cases: tally.equality_cases,
            counterexamples: tally.counterexamples.into_sorted(),
            counterexample_total: total,
            verdict: if total == 0 { Verdict::Pass } else { Verdict::Fail },
            details,
            elapsed: None,
        }
    }

    pub fn skipped(target: &str, n: usize, reason: impl Into<String>) -> Self {
        let mut details = BTreeMap::new();
        details.insert("reason".to_string(), Value::String(reason.into()));
        VerificationReport {
            target: target.to_string(),
            n_range: [n, n],
            pairs_checked: 0,
            extremal_observed: 0,
            bound: 0,
            bound_kind: BoundKind::AtMost,
            equality_cases: 0,
            counterexamples: Vec::new(),
            counterexample_total: 0,
            verdict: Verdict::Skipped,
            details,
            elapsed: None,
        }
    }

    pub fn with_detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details
            .insert(key.to_string(), serde_json::to_value(value).expect("detail serializes"));
        self
    }

    /// Records a failure that is not tied to particular words.
    pub fn fail_with(mut self, reason: impl Into<String>) -> Self {
        self.counterexamples.push(Counterexample::new(&[], reason));
        self.counterexamples.sort();
        self.counterexamples.truncate(COUNTEREXAMPLE_CAP);
        self.counterexample_total += 1;
        self.verdict = Verdict::Fail;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One line per report for terminals.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} n={}..{} verdict={} checked={} extremal={} bound={}{} equality={} counterexamples={}",
            self.target,
            self.n_range[0],
            self.n_range[1],
            self.verdict.name(),
            self.pairs_checked,
            self.extremal_observed,
            match self.bound_kind {
                BoundKind::AtMost => "<=",
                BoundKind::AtLeast => ">=",
            },
            self.bound,
            self.equality_cases,
            self.counterexample_total,
        );
        for c in &self.counterexamples {
            let words: Vec<String> = c.words.iter().map(|w| w.to_string()).collect();
            s.push_str(&format!("\n  counterexample [{}]: {}", words.join(", "), c.reason));
        }
        s
    }

    pub const CSV_HEADER: &'static str =
        "target,n_min,n_max,verdict,pairs_checked,extremal_observed,bound,bound_kind,equality_cases,counterexamples";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.target,
            self.n_range[0],
            self.n_range[1],
            self.verdict.name(),
            self.pairs_checked,
            self.extremal_observed,
            self.bound,
            match self.bound_kind {
                BoundKind::AtMost => "at_most",
                BoundKind::AtLeast => "at_least",
            },
            self.equality_cases,
            self.counterexample_total
        )
    }
}

/// Names accepted by [`run_target`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    BallSizes,
    DelPositions,
    ConstrainedDeletion,
    PairStructure,
    IntersectionBounds,
    Decomposition,
    ClaimTables,
    BadCount,
    Theorem(TheoremId),
    Rll,
    RunBound,
    Reconstruction,
}

impl Target {
    pub const ALL: [Target; 17] = [
        Target::BallSizes,
        Target::DelPositions,
        Target::ConstrainedDeletion,
        Target::PairStructure,
        Target::IntersectionBounds,
        Target::Decomposition,
        Target::ClaimTables,
        Target::BadCount,
        Target::Theorem(TheoremId::Thm1),
        Target::Theorem(TheoremId::Thm2),
        Target::Theorem(TheoremId::Thm3),
        Target::Theorem(TheoremId::Thm4),
        Target::Theorem(TheoremId::Thm5),
        Target::Theorem(TheoremId::Thm6),
        Target::Rll,
        Target::RunBound,
        Target::Reconstruction,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Target::BallSizes => "ball-sizes",
            Target::DelPositions => "del-positions",
            Target::ConstrainedDeletion => "constrained-deletion",
            Target::PairStructure => "pair-structure",
            Target::IntersectionBounds => "intersection-bounds",
            Target::Decomposition => "decomposition",
            Target::ClaimTables => "claim-tables",
            Target::BadCount => "bad-count",
            Target::Theorem(t) => t.name(),
            Target::Rll => "rll",
            Target::RunBound => "run-bound",
            Target::Reconstruction => "reconstruction",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('_', "-");
        Target::ALL
            .iter()
            .find(|t| t.name() == lower)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
                Error::Parse(format!(
                    "unknown verification target {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Knobs for targets that take more than a length.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyOptions {
    /// Period bound for `rll`; defaults to `ceil(log2 n) + 3`.
    pub p: Option<u64>,
    pub reconstruction: ReconstructionPlan,
}

pub fn run_target(target: Target, n: usize, options: &VerifyOptions) -> Result<VerificationReport> {
    match target {
        Target::BallSizes => ball_sizes(n),
        Target::DelPositions => del_positions(n),
        Target::ConstrainedDeletion => constrained_deletion(n),
        Target::PairStructure => pair_structure(n),
        Target::IntersectionBounds => intersection_bounds(n),
        Target::Decomposition => decomposition(n),
        Target::ClaimTables => claim_tables(n),
        Target::BadCount => bad_count(n),
        Target::Theorem(t) => code_theorem(t, n),
        Target::Rll => rll(n, options.p.unwrap_or_else(|| theorems::min_period(n))),
        Target::RunBound => run_bound(n),
        Target::Reconstruction => reconstruction(n, &options.reconstruction),
    }
}

/// Rejects lengths the exhaustive verifiers cannot handle.
pub(crate) fn check_exhaustive_len(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::EnumerationLimit { n, limit: max })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("nonsense".parse::<Target>().is_err());
        assert_eq!("BALL_SIZES".parse::<Target>().unwrap(), Target::BallSizes);
    }

    #[test]
    fn counterexamples_keep_smallest() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        let mut a = Counterexamples::default();
        for i in (0..100u64).rev() {
            a.push(Counterexample::new(&[Word::from_bits(i, 8)], "x"));
        }
        let mut b = Counterexamples::default();
        b.push(Counterexample::new(&[w("1")], "y"));
        let merged = a.merge(b);
        assert_eq!(merged.total(), 101);
        let kept = merged.into_sorted();
        assert_eq!(kept.len(), COUNTEREXAMPLE_CAP);
        assert_eq!(kept[0].words[0], w("1"));
        assert_eq!(kept[1].words[0], Word::from_bits(0, 8));
    }

    #[test]
    fn tally_merge_is_order_free() {
        let mut a = Tally {
            checked: 3,
            ..Tally::default()
        };
        a.observe(5);
        a.observe_in("k", 2);
        a.count("c");
        let mut b = Tally {
            checked: 4,
            ..Tally::default()
        };
        b.observe(7);
        b.observe_in("k", 9);
        b.count("c");
        let ab = a.clone().merge(b.clone());
        let ba = b.merge(a);
        assert_eq!(ab.checked, ba.checked);
        assert_eq!(ab.extremal, 7);
        assert_eq!(ab.maxima, ba.maxima);
        assert_eq!(ab.counts["c"], 2);
    }
}
