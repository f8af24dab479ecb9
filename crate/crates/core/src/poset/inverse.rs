//! Necessary conditions for a family of sets to be a factor poset, and an
//! exact integer search for ℝ² frames realizing a candidate.

use std::fmt;

use super::{closure_report_unchecked, empty_cover, reconstruct_from_ec, ClosureReport, FactorPoset, IndexSet};
use crate::error::{FrameError, Result};
use crate::frame::Frame;

/// Largest ground set accepted by [`realize_poset_r2`].
pub const REALIZE_CAP: usize = 16;

/// One failed necessary condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// ∅ must always be a member.
    MissingEmptySet,
    /// A single nonzero vector never spans a space of dimension ≥ 2.
    SingletonMember(IndexSet),
    /// For members `C`, `D` the memberships of `C∪D`, `C∩D`, `C△D`, `C∖D` must agree.
    ClosureDisagreement { c: IndexSet, d: IndexSet, report: ClosureReport },
    /// A member that does not cover ∅ must split into two disjoint members.
    NoDisjointSplit(IndexSet),
    /// The poset must equal the closure of its empty cover.
    NotDeterminedByEmptyCover { missing: Vec<IndexSet>, extra: Vec<IndexSet> },
}

impl Violation {
    pub fn rule(&self) -> &'static str {
        match self {
            Violation::MissingEmptySet => "empty-set-member",
            Violation::SingletonMember(_) => "no-singletons",
            Violation::ClosureDisagreement { .. } => "closure-equivalence",
            Violation::NoDisjointSplit(_) => "disjoint-decomposition",
            Violation::NotDeterminedByEmptyCover { .. } => "empty-cover-closure",
        }
    }
}

fn list(sets: &[IndexSet]) -> String {
    sets.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingEmptySet => write!(f, "the empty set is not a member"),
            Violation::SingletonMember(s) => write!(f, "singleton {s} is a member"),
            Violation::ClosureDisagreement { c, d, report } => write!(
                f,
                "C={c}, D={d}: union {} {}, intersection {} {}, symmetric difference {} {}, difference {} {}",
                c.union(*d),
                mark(report.union),
                c.intersection(*d),
                mark(report.intersection),
                c.symmetric_difference(*d),
                mark(report.symmetric_difference),
                c.difference(*d),
                mark(report.difference),
            ),
            Violation::NoDisjointSplit(j) => write!(f, "{j} is not a disjoint union of two smaller members"),
            Violation::NotDeterminedByEmptyCover { missing, extra } => write!(
                f,
                "closure of the empty cover differs: not generated [{}], generated but absent [{}]",
                list(missing),
                list(extra)
            ),
        }
    }
}

fn mark(present: bool) -> &'static str {
    if present {
        "present"
    } else {
        "absent"
    }
}

/// Violations found by [`poset_necessary_check`]. An empty list is
/// inconclusive: the candidate may or may not be realizable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryCheck {
    pub violations: Vec<Violation>,
}

impl NecessaryCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every known necessary condition for `candidate` to be the factor
/// poset of a frame in dimension ≥ 2. Any violation certifies it is not one.
pub fn poset_necessary_check(candidate: &FactorPoset) -> NecessaryCheck {
    let mut violations = Vec::new();
    if !candidate.contains(IndexSet::EMPTY) {
        violations.push(Violation::MissingEmptySet);
    }
    for m in candidate.nonempty_members() {
        if m.len() == 1 {
            violations.push(Violation::SingletonMember(m));
        }
    }
    for &c in candidate.members() {
        for &d in candidate.members() {
            let report = closure_report_unchecked(candidate, c, d);
            if !report.all_agree() {
                violations.push(Violation::ClosureDisagreement { c, d, report });
            }
        }
    }
    let ec = empty_cover(candidate);
    for j in candidate.nonempty_members() {
        if ec.sets.contains(&j) {
            continue;
        }
        let splits =
            candidate.nonempty_members().any(|part| part.is_proper_subset(j) && candidate.contains(j.difference(part)));
        if !splits {
            violations.push(Violation::NoDisjointSplit(j));
        }
    }
    let rebuilt = reconstruct_from_ec(&ec, candidate.ground()).expect("subsets of the same ground set");
    let mut with_empty: Vec<IndexSet> = candidate.members().to_vec();
    if !candidate.contains(IndexSet::EMPTY) {
        with_empty.insert(0, IndexSet::EMPTY);
    }
    let missing: Vec<IndexSet> = with_empty.iter().copied().filter(|m| !rebuilt.contains(*m)).collect();
    let extra: Vec<IndexSet> = rebuilt.members().iter().copied().filter(|m| !with_empty.contains(m)).collect();
    if !missing.is_empty() || !extra.is_empty() {
        violations.push(Violation::NotDeterminedByEmptyCover { missing, extra });
    }
    NecessaryCheck { violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Weights range over `[-W, W] ∖ {0}`.
    pub weight_bound: i64,
    /// Maximum number of weight assignments tried.
    pub node_budget: u64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self { weight_bound: 4, node_budget: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RealizeOutcome {
    /// Integer weights and the axis-multiple frame built from them.
    Realized { weights: Vec<i64>, frame: Frame },
    /// The search space was exhausted without a match.
    NotFound,
    /// The candidate fails a necessary condition; no search was run.
    FailsNecessaryCheck(NecessaryCheck),
}

/// Searches for an ℝ² frame of axis multiples whose factor poset is `candidate`.
///
/// In that model `g_i = √λ_i e₁` or `√(−λ_i) e₂` has diagram vector `(λ_i, 0)`,
/// so `J` is tight exactly when `Σ_{i∈J} λ_i = 0`. Integer weights make the
/// test exact. Weights are assigned index by index; after each assignment every
/// new subset (those containing the latest index) is checked against the
/// candidate. The first weight is taken positive since negating all weights
/// preserves every zero sum.
pub fn realize_poset_r2(candidate: &FactorPoset, opts: RealizeOptions) -> Result<RealizeOutcome> {
    let k = candidate.ground();
    if k > REALIZE_CAP {
        return Err(FrameError::GroundSetTooLarge { k, cap: REALIZE_CAP });
    }
    if k == 0 {
        return Err(FrameError::InvalidArgument("empty ground set".into()));
    }
    if opts.weight_bound < 1 {
        return Err(FrameError::InvalidArgument("weight bound must be at least 1".into()));
    }
    let check = poset_necessary_check(candidate);
    if !check.passed() {
        return Ok(RealizeOutcome::FailsNecessaryCheck(check));
    }

    let w = opts.weight_bound;
    let values: Vec<i64> = (1..=w).flat_map(|v| [v, -v]).collect();
    let mut search =
        Search { candidate, sums: vec![0; 1 << k], weights: vec![0; k], values, nodes: 0, budget: opts.node_budget };
    if !search.descend(0)? {
        return Ok(RealizeOutcome::NotFound);
    }
    let weights = search.weights;
    let vectors = weights
        .iter()
        .map(|&l| {
            let r = (l.unsigned_abs() as f64).sqrt();
            if l > 0 {
                vec![r, 0.0]
            } else {
                vec![0.0, r]
            }
        })
        .collect();
    let frame = Frame::real(2, vectors)?;
    Ok(RealizeOutcome::Realized { weights, frame })
}

struct Search<'a> {
    candidate: &'a FactorPoset,
    sums: Vec<i64>,
    weights: Vec<i64>,
    values: Vec<i64>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn descend(&mut self, i: usize) -> Result<bool> {
        let k = self.weights.len();
        if i == k {
            return Ok(true);
        }
        let bit = 1usize << i;
        for idx in 0..self.values.len() {
            let lambda = self.values[idx];
            if i == 0 && lambda < 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(FrameError::SearchBudgetExceeded(self.budget));
            }
            let mut consistent = true;
            for s in 0..bit {
                let sum = self.sums[s] + lambda;
                self.sums[s | bit] = sum;
                if (sum == 0) != self.candidate.contains(IndexSet::from_bits((s | bit) as u32)) {
                    consistent = false;
                    break;
                }
            }
            if consistent {
                self.weights[i] = lambda;
                if self.descend(i + 1)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}
