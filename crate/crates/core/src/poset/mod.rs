//! Factor posets: the family of index subsets whose subframes are tight.
//!
//! Subsets of the index set are bitmasks ([`IndexSet`]). Enumeration is
//! exhaustive over all `2^k` subsets, so the ground set is capped (24 by
//! default).

mod extend;
mod inverse;
mod iso;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{FrameError, Result};
use crate::frame::{diagram_vectors, Frame};
use crate::linalg::ToleranceConfig;

pub use extend::{extend_preserving_poset, extension_candidate_admissible, project_to_onb_frame, OnbProjection};
pub use inverse::{poset_necessary_check, realize_poset_r2, NecessaryCheck, RealizeOptions, RealizeOutcome, Violation};
pub use iso::{strongly_isomorphic, ISO_CAP};

/// Default upper bound on the number of frame vectors for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 24;

/// Largest ground set an [`IndexSet`] can represent.
pub const MAX_GROUND: usize = 32;

/// A subset of `{0, …, k-1}` stored as a bitmask. Displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        IndexSet(bits)
    }

    pub fn full(k: usize) -> Self {
        assert!(k <= MAX_GROUND, "ground set too large for a bitmask");
        if k == MAX_GROUND {
            IndexSet(u32::MAX)
        } else {
            IndexSet((1u32 << k) - 1)
        }
    }

    /// From 0-based indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        IndexSet(indices.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    /// From 1-based indices as used in files and output.
    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in indices {
            if i == 0 || i > MAX_GROUND {
                return Err(FrameError::IndexOutOfRange { index: i, ground: MAX_GROUND });
            }
            bits |= 1 << (i - 1);
        }
        Ok(IndexSet(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: IndexSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 ^ other.0)
    }

    pub fn with(self, i: usize) -> IndexSet {
        IndexSet(self.0 | (1 << i))
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Indices in increasing order, 0-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Image under an index permutation.
    pub fn permuted(self, perm: &[usize]) -> IndexSet {
        IndexSet(self.iter().fold(0, |acc, i| acc | (1 << perm[i])))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.to_one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Diagram-vector partial sums over every subset, split into two halves of
/// the index set so each subset sum is one addition of two table entries.
pub(crate) struct SubsetSums {
    k: usize,
    lo_bits: usize,
    dim: usize,
    lo_sums: Vec<f64>,
    hi_sums: Vec<f64>,
    lo_max: Vec<f64>,
    hi_max: Vec<f64>,
}

impl SubsetSums {
    pub(crate) fn new(frame: &Frame) -> Self {
        let coords: Vec<Vec<f64>> = diagram_vectors(frame).iter().map(|d| d.real_coords()).collect();
        Self::from_coords(&coords)
    }

    pub(crate) fn from_coords(coords: &[Vec<f64>]) -> Self {
        let k = coords.len();
        let dim = coords.first().map_or(0, Vec::len);
        let lo_bits = k / 2;
        let norms: Vec<f64> = coords.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
        let table = |offset: usize, bits: usize| {
            let size = 1usize << bits;
            let mut sums = vec![0.0; size * dim];
            let mut maxes = vec![0.0; size];
            for m in 1..size {
                let i = m.trailing_zeros() as usize;
                let prev = m & (m - 1);
                for j in 0..dim {
                    sums[m * dim + j] = sums[prev * dim + j] + coords[offset + i][j];
                }
                maxes[m] = f64::max(maxes[prev], norms[offset + i]);
            }
            (sums, maxes)
        };
        let (lo_sums, lo_max) = table(0, lo_bits);
        let (hi_sums, hi_max) = table(lo_bits, k - lo_bits);
        Self { k, lo_bits, dim, lo_sums, hi_sums, lo_max, hi_max }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    /// Writes the subset sum for `mask` into `out`.
    pub(crate) fn sum_into(&self, mask: u32, out: &mut [f64]) {
        let (lo, hi) = self.split(mask);
        let a = &self.lo_sums[lo * self.dim..(lo + 1) * self.dim];
        let b = &self.hi_sums[hi * self.dim..(hi + 1) * self.dim];
        for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
            *o = x + y;
        }
    }

    fn split(&self, mask: u32) -> (usize, usize) {
        let mask = mask as usize;
        (mask & ((1 << self.lo_bits) - 1), mask >> self.lo_bits)
    }

    /// `(‖Σ_J‖, max_{i∈J} ‖d_i‖)` for the subset `mask`.
    pub(crate) fn residual(&self, mask: u32) -> (f64, f64) {
        let (lo, hi) = self.split(mask);
        let a = &self.lo_sums[lo * self.dim..(lo + 1) * self.dim];
        let b = &self.hi_sums[hi * self.dim..(hi + 1) * self.dim];
        let r2: f64 = a.iter().zip(b).map(|(x, y)| (x + y) * (x + y)).sum();
        (r2.sqrt(), f64::max(self.lo_max[lo], self.hi_max[hi]))
    }

    pub(crate) fn is_tight(&self, mask: u32, tol: &ToleranceConfig) -> bool {
        let (r, scale) = self.residual(mask);
        scale > 0.0 && r <= tol.zero_rel * scale
    }

    /// All nonempty masks, in increasing order.
    pub(crate) fn masks(&self) -> impl Iterator<Item = u32> {
        1..=(IndexSet::full(self.k).bits())
    }
}

/// A family of index subsets ordered by inclusion.
///
/// Posets computed from a frame always contain ∅. Candidate posets read from
/// files are stored as given so that [`poset_necessary_check`] can judge them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPoset {
    ground: usize,
    members: Vec<IndexSet>,
    source: Option<String>,
}

impl FactorPoset {
    pub fn from_members(ground: usize, members: impl IntoIterator<Item = IndexSet>) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(FrameError::GroundSetTooLarge { k: ground, cap: MAX_GROUND });
        }
        let full = IndexSet::full(ground);
        let mut set = BTreeSet::new();
        for m in members {
            if !m.is_subset(full) {
                return Err(FrameError::IndexOutOfRange { index: m.max_index().unwrap_or(0), ground });
            }
            set.insert(m);
        }
        Ok(Self { ground, members: set.into_iter().collect(), source: None })
    }

    pub fn with_source(mut self, fingerprint: impl Into<String>) -> Self {
        self.source = Some(fingerprint.into());
        self
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Members sorted by bitmask.
    pub fn members(&self) -> &[IndexSet] {
        &self.members
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: IndexSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn nonempty_members(&self) -> impl Iterator<Item = IndexSet> + '_ {
        self.members.iter().copied().filter(|m| !m.is_empty())
    }

    /// Member sets only, ignoring ground size and provenance.
    pub fn same_members(&self, other: &FactorPoset) -> bool {
        self.members == other.members
    }

    /// Cover relation of the inclusion order: `(upper, lower)` pairs where no
    /// member lies strictly between. Sorted by `(upper, lower)`.
    pub fn hasse(&self) -> Vec<(IndexSet, IndexSet)> {
        let mut edges = Vec::new();
        for &upper in &self.members {
            let below: Vec<IndexSet> = self.members.iter().copied().filter(|m| m.is_proper_subset(upper)).collect();
            for &lower in &below {
                if !below.iter().any(|&mid| lower.is_proper_subset(mid)) {
                    edges.push((upper, lower));
                }
            }
        }
        edges
    }

    /// Hasse diagram as a DOT digraph with edges from each set to the sets it covers.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph factor_poset {\n  rankdir=BT;\n");
        for m in &self.members {
            out.push_str(&format!("  s{} [label=\"{}\"];\n", m.bits(), m));
        }
        for (upper, lower) in self.hasse() {
            out.push_str(&format!("  s{} -> s{};\n", upper.bits(), lower.bits()));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for FactorPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

pub(crate) fn require_poset_eligible(frame: &Frame, cap: usize) -> Result<()> {
    if let Some(i) = frame.first_zero_vector() {
        return Err(FrameError::ZeroVector(i));
    }
    let cap = cap.min(MAX_GROUND - 1);
    if frame.len() > cap {
        return Err(FrameError::GroundSetTooLarge { k: frame.len(), cap });
    }
    Ok(())
}

/// Factor poset of a frame with the default ground-set cap.
pub fn factor_poset(frame: &Frame, tol: &ToleranceConfig) -> Result<FactorPoset> {
    factor_poset_with_cap(frame, tol, DEFAULT_CAP)
}

/// `{∅} ∪ {J : {f_j}_{j∈J} is tight}`, by exhaustive enumeration.
pub fn factor_poset_with_cap(frame: &Frame, tol: &ToleranceConfig, cap: usize) -> Result<FactorPoset> {
    require_poset_eligible(frame, cap)?;
    let sums = SubsetSums::new(frame);
    let mut members = vec![IndexSet::EMPTY];
    members.extend(sums.masks().filter(|&m| sums.is_tight(m, tol)).map(IndexSet::from_bits));
    Ok(FactorPoset { ground: frame.len(), members, source: Some(frame.fingerprint()) })
}

/// Minimal nonempty members of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyCover {
    pub sets: Vec<IndexSet>,
}

impl EmptyCover {
    pub fn new(sets: Vec<IndexSet>) -> Self {
        Self { sets }
    }

    pub fn is_antichain(&self) -> bool {
        self.sets.iter().all(|a| !a.is_empty() && self.sets.iter().all(|b| a == b || !a.is_subset(*b)))
    }
}

pub fn empty_cover(poset: &FactorPoset) -> EmptyCover {
    let nonempty: Vec<IndexSet> = poset.nonempty_members().collect();
    let sets = nonempty.iter().copied().filter(|&j| !nonempty.iter().any(|&other| other.is_proper_subset(j))).collect();
    EmptyCover { sets }
}

/// Rebuilds a factor poset from its empty cover: starting from the cover plus
/// ∅, adjoin `J₁ ∪ J₂` whenever `J₁ ∩ J₂` is already present, until nothing
/// changes.
pub fn reconstruct_from_ec(ec: &EmptyCover, k: usize) -> Result<FactorPoset> {
    let mut present: BTreeSet<IndexSet> = ec.sets.iter().copied().collect();
    present.insert(IndexSet::EMPTY);
    let mut order: Vec<IndexSet> = present.iter().copied().collect();
    let mut next = 0;
    // Worklist: pair every newly added set with everything seen so far.
    while next < order.len() {
        let current = order[next];
        let mut fresh = Vec::new();
        for &other in &order[..=next] {
            if present.contains(&current.intersection(other)) {
                let u = current.union(other);
                if !present.contains(&u) && !fresh.contains(&u) {
                    fresh.push(u);
                }
            }
        }
        for u in fresh {
            present.insert(u);
            order.push(u);
        }
        next += 1;
    }
    FactorPoset::from_members(k, present)
}

/// Membership of `C∪D`, `C∩D`, `C△D` and `C∖D` for two members `C`, `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureReport {
    pub union: bool,
    pub intersection: bool,
    pub symmetric_difference: bool,
    pub difference: bool,
}

impl ClosureReport {
    pub fn all_agree(&self) -> bool {
        let v = self.union;
        self.intersection == v && self.symmetric_difference == v && self.difference == v
    }
}

pub fn closure_equivalences(poset: &FactorPoset, c: IndexSet, d: IndexSet) -> Result<ClosureReport> {
    if !poset.contains(c) || !poset.contains(d) {
        return Err(FrameError::NotMembers);
    }
    Ok(closure_report_unchecked(poset, c, d))
}

pub(crate) fn closure_report_unchecked(poset: &FactorPoset, c: IndexSet, d: IndexSet) -> ClosureReport {
    ClosureReport {
        union: poset.contains(c.union(d)),
        intersection: poset.contains(c.intersection(d)),
        symmetric_difference: poset.contains(c.symmetric_difference(d)),
        difference: poset.contains(c.difference(d)),
    }
}

/// Per-index count of empty-cover memberships.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    pub counts: Vec<usize>,
}

impl Characteristic {
    pub fn is_uniform(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    /// Uniform with a positive common value.
    pub fn is_positive_uniform(&self) -> bool {
        self.is_uniform() && self.counts.first().is_some_and(|&c| c > 0)
    }
}

pub fn characteristic_of_poset(poset: &FactorPoset) -> Characteristic {
    let ec = empty_cover(poset);
    let counts = (0..poset.ground()).map(|i| ec.sets.iter().filter(|s| s.contains(i)).count()).collect();
    Characteristic { counts }
}

pub fn characteristic(frame: &Frame, tol: &ToleranceConfig) -> Result<Characteristic> {
    Ok(characteristic_of_poset(&factor_poset(frame, tol)?))
}

/// Partition of the index set of a tight frame into prime tight subframes,
/// choosing the lowest-bitmask empty-cover member at every step.
pub fn prime_factors(frame: &Frame, tol: &ToleranceConfig) -> Result<Vec<IndexSet>> {
    let poset = factor_poset(frame, tol)?;
    let all = frame.all_indices();
    if !poset.contains(all) {
        return Err(FrameError::NotTight);
    }
    prime_factors_of_poset(&poset, all)
}

/// Greedy decomposition of a member `whole` of `poset` into empty-cover members.
pub fn prime_factors_of_poset(poset: &FactorPoset, whole: IndexSet) -> Result<Vec<IndexSet>> {
    if !poset.contains(whole) {
        return Err(FrameError::NotMembers);
    }
    let ec = empty_cover(poset);
    let mut rest = whole;
    let mut parts = Vec::new();
    while !rest.is_empty() {
        let next = ec.sets.iter().copied().find(|s| s.is_subset(rest)).ok_or(FrameError::NotMembers)?;
        parts.push(next);
        rest = rest.difference(next);
        if !poset.contains(rest) {
            // Only possible for candidates that violate the closure rules.
            return Err(FrameError::NotMembers);
        }
    }
    Ok(parts)
}
