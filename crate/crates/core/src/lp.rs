//! ℓp norms of frame coefficients against duals and the comparison bounds
//! between the canonical dual and any other dual.
//!
//! Each bound has the form `Σ|⟨f,g_i⟩|^p ≤ c · Σ|⟨f,h_i⟩|^p` with `g` the
//! canonical dual and `h` an arbitrary dual. They hold for every `f`, so the
//! checks below evaluate them on supplied probes and report any violation.

use serde::Serialize;

use crate::dual::{dual_family, DualElement};
use crate::error::{FrameError, Result};
use crate::frame::{Field, Frame};
use crate::linalg::{inner, ToleranceConfig, C64};
use crate::sampling::{gaussian_matrix, random_frame, seeded_rng, unit_vector, FrameRng};

/// Relative and absolute slack allowed on every sampled inequality.
pub const LP_SLACK: f64 = 1e-12;

/// Minimum gap `Σ|⟨f,h_i⟩|² − Σ|⟨f,g_i⟩|²` that counts as strict.
pub const STRICT_GAP: f64 = 1e-9;

/// Coefficient norm above which a dual is treated as non-canonical.
pub const NONCANONICAL_COEFFS: f64 = 1e-6;

/// `|x|^p`, with `0^p = 0`.
pub fn abs_pow(x: f64, p: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        0.0
    } else if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
        x.powi(p as i32)
    } else {
        (p * x.ln()).exp()
    }
}

/// `Σ_i |⟨f, g_i⟩|^p` over the columns of `dual` (the p-th power of the ℓp norm).
pub fn coeff_norm(f: &[C64], dual: &DualElement, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 || p.is_infinite() {
        return Err(FrameError::InvalidExponent(p));
    }
    let d = dual.materialized();
    if f.len() != d.rows() {
        return Err(FrameError::DimensionMismatch(format!("probe has length {}, expected {}", f.len(), d.rows())));
    }
    Ok(d.columns().iter().map(|g| abs_pow(inner(f, g).norm(), p)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// Factor 1 at p = 2.
    L2Min,
    /// Factor `√k` at p = 1.
    L1,
    /// Factor `k^(3p/2 − 1)` for p > 1.
    GeneralP,
    /// Factor `k^(p/2 − 1)` for p > 2.
    PGt2,
}

impl Bound {
    pub fn name(self) -> &'static str {
        match self {
            Bound::L2Min => "l2-min",
            Bound::L1 => "l1",
            Bound::GeneralP => "general-p",
            Bound::PGt2 => "p-gt-2",
        }
    }

    pub fn factor(self, k: usize, p: f64) -> f64 {
        let k = k as f64;
        match self {
            Bound::L2Min => 1.0,
            Bound::L1 => k.sqrt(),
            Bound::GeneralP => k.powf(1.5 * p - 1.0),
            Bound::PGt2 => k.powf(0.5 * p - 1.0),
        }
    }

    fn validate(self, p: f64) -> Result<()> {
        let ok = match self {
            Bound::L2Min => p == 2.0,
            Bound::L1 => p == 1.0,
            Bound::GeneralP => p > 1.0 && p.is_finite(),
            Bound::PGt2 => p > 2.0 && p.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(FrameError::InvalidExponent(p))
        }
    }
}

/// Outcome of checking one bound on a set of samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpReport {
    pub bound: Bound,
    pub p: f64,
    /// Factor of the largest ground set seen.
    pub factor: f64,
    pub samples: usize,
    pub violations: usize,
    /// Largest observed `canonical / (factor · alternate)`.
    pub max_ratio: f64,
    /// Largest observed excess `canonical − factor · alternate`.
    pub max_violation: f64,
    pub passed: bool,
}

impl LpReport {
    fn empty(bound: Bound, p: f64) -> Self {
        LpReport { bound, p, factor: 0.0, samples: 0, violations: 0, max_ratio: 0.0, max_violation: 0.0, passed: true }
    }

    fn merge(&mut self, other: &LpReport) {
        self.factor = self.factor.max(other.factor);
        self.samples += other.samples;
        self.violations += other.violations;
        self.max_ratio = self.max_ratio.max(other.max_ratio);
        self.max_violation = self.max_violation.max(other.max_violation);
        self.passed &= other.passed;
    }
}

fn check_bound(frame: &Frame, alt: &DualElement, bound: Bound, p: f64, probes: &[Vec<C64>]) -> Result<LpReport> {
    bound.validate(p)?;
    if alt.family().frame() != frame {
        return Err(FrameError::FamilyMismatch);
    }
    let canonical = alt.family().canonical_element();
    let factor = bound.factor(frame.len(), p);
    let mut report = LpReport::empty(bound, p);
    report.factor = factor;
    for f in probes {
        let lhs = coeff_norm(f, &canonical, p)?;
        let rhs = factor * coeff_norm(f, alt, p)?;
        report.samples += 1;
        if rhs > 0.0 {
            report.max_ratio = report.max_ratio.max(lhs / rhs);
        }
        let excess = lhs - rhs;
        report.max_violation = report.max_violation.max(excess);
        if excess > LP_SLACK * (1.0 + rhs) {
            report.violations += 1;
        }
    }
    report.passed = report.violations == 0;
    Ok(report)
}

/// The canonical dual minimizes `Σ|⟨f,·⟩|²` among all duals.
pub fn check_l2_min(frame: &Frame, alt: &DualElement, probes: &[Vec<C64>]) -> Result<LpReport> {
    check_bound(frame, alt, Bound::L2Min, 2.0, probes)
}

/// `Σ|⟨f,g_i⟩| ≤ √k Σ|⟨f,h_i⟩|`.
pub fn check_l1_bound(frame: &Frame, alt: &DualElement, probes: &[Vec<C64>]) -> Result<LpReport> {
    check_bound(frame, alt, Bound::L1, 1.0, probes)
}

/// `Σ|⟨f,g_i⟩|^p ≤ k^(3p/2 − 1) Σ|⟨f,h_i⟩|^p` for `p > 1`.
pub fn check_general_p_bound(frame: &Frame, alt: &DualElement, p: f64, probes: &[Vec<C64>]) -> Result<LpReport> {
    check_bound(frame, alt, Bound::GeneralP, p, probes)
}

/// `Σ|⟨f,g_i⟩|^p ≤ k^(p/2 − 1) Σ|⟨f,h_i⟩|^p` for `p > 2`.
pub fn check_p_gt2_bound(frame: &Frame, alt: &DualElement, p: f64, probes: &[Vec<C64>]) -> Result<LpReport> {
    check_bound(frame, alt, Bound::PGt2, p, probes)
}

/// `‖x‖_p ≤ ‖x‖_1 ≤ k^(1 − 1/p) ‖x‖_p`, checked to relative precision [`LP_SLACK`].
pub fn holder_sandwich_selftest(x: &[f64], p: f64) -> Result<bool> {
    if p.is_nan() || p <= 1.0 || p.is_infinite() {
        return Err(FrameError::InvalidExponent(p));
    }
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    let lp = x.iter().map(|&v| abs_pow(v, p)).sum::<f64>().powf(1.0 / p);
    let k = x.len() as f64;
    let slack = LP_SLACK * l1;
    Ok(lp <= l1 + slack && l1 <= k.powf(1.0 - 1.0 / p) * lp + slack)
}

/// Whether some probe separates `alt` from the canonical dual in ℓ², i.e.
/// `Σ|⟨f,h_i⟩|² − Σ|⟨f,g_i⟩|² > STRICT_GAP`. `None` when `alt` is canonical
/// up to [`NONCANONICAL_COEFFS`], where no gap is expected.
pub fn strict_l2_gap(alt: &DualElement, probes: &[Vec<C64>]) -> Result<Option<bool>> {
    if alt.coeffs().frobenius() <= NONCANONICAL_COEFFS {
        return Ok(None);
    }
    let canonical = alt.family().canonical_element();
    for f in probes {
        if coeff_norm(f, alt, 2.0)? - coeff_norm(f, &canonical, 2.0)? > STRICT_GAP {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

/// Sizes and exponents of the randomized suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSuiteConfig {
    pub frames: usize,
    pub duals: usize,
    pub probes: usize,
    pub converse_probes: usize,
    pub general_p: Vec<f64>,
    pub p_gt2: Vec<f64>,
}

impl Default for LpSuiteConfig {
    fn default() -> Self {
        LpSuiteConfig {
            frames: 100,
            duals: 20,
            probes: 50,
            converse_probes: 200,
            general_p: vec![1.5, 2.0],
            p_gt2: vec![2.5, 3.0, 4.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConverseReport {
    pub duals: usize,
    pub with_gap: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSuiteReport {
    pub seed: u64,
    pub reports: Vec<LpReport>,
    pub converse: ConverseReport,
    pub holder_samples: usize,
    pub holder_passed: bool,
    pub passed: bool,
}

/// Random duals of one frame: Gaussian coefficients scaled by the largest
/// entry of the canonical dual.
pub fn random_duals(
    rng: &mut FrameRng,
    frame: &Frame,
    count: usize,
    tol: &ToleranceConfig,
) -> Result<Vec<DualElement>> {
    let family = dual_family(frame, tol)?;
    let scale = family.canonical().max_abs();
    (0..count)
        .map(|_| family.element(gaussian_matrix(rng, frame.field(), frame.dim(), family.kernel_dim(), scale)))
        .collect()
}

pub fn random_probes(rng: &mut FrameRng, field: Field, n: usize, count: usize) -> Vec<Vec<C64>> {
    (0..count).map(|_| unit_vector(rng, field, n)).collect()
}

/// Checks every bound on one frame against the given duals and probes,
/// merging into `acc` (one entry per bound and exponent, in a fixed order).
pub fn check_all(
    frame: &Frame,
    duals: &[DualElement],
    probes: &[Vec<C64>],
    config: &LpSuiteConfig,
    acc: &mut Vec<LpReport>,
) -> Result<()> {
    let mut plan: Vec<(Bound, f64)> = vec![(Bound::L2Min, 2.0), (Bound::L1, 1.0)];
    plan.extend(config.general_p.iter().map(|&p| (Bound::GeneralP, p)));
    plan.extend(config.p_gt2.iter().map(|&p| (Bound::PGt2, p)));
    if acc.is_empty() {
        acc.extend(plan.iter().map(|&(b, p)| LpReport::empty(b, p)));
    }
    for alt in duals {
        for (slot, &(bound, p)) in plan.iter().enumerate() {
            let r = check_bound(frame, alt, bound, p, probes)?;
            acc[slot].merge(&r);
        }
    }
    Ok(())
}

/// Randomized suite over real and complex frames with `n ∈ {2,3,4}` and
/// `n < k ≤ 2n + 2`, deterministic in `tol.seed`.
pub fn run_lp_suite(config: &LpSuiteConfig, tol: &ToleranceConfig) -> Result<LpSuiteReport> {
    for &p in &config.general_p {
        Bound::GeneralP.validate(p)?;
    }
    for &p in &config.p_gt2 {
        Bound::PGt2.validate(p)?;
    }
    let mut rng = seeded_rng(tol.seed);
    let mut reports = Vec::new();
    let mut converse = ConverseReport { duals: 0, with_gap: 0, passed: true };
    use rand::Rng;
    for t in 0..config.frames {
        let field = if t % 2 == 0 { Field::Real } else { Field::Complex };
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(n + 1..=2 * n + 2);
        let frame = random_frame(&mut rng, field, n, k);
        let duals = random_duals(&mut rng, &frame, config.duals, tol)?;
        let probes = random_probes(&mut rng, field, n, config.probes);
        check_all(&frame, &duals, &probes, config, &mut reports)?;
        let converse_probes = random_probes(&mut rng, field, n, config.converse_probes);
        for alt in &duals {
            if let Some(gap) = strict_l2_gap(alt, &converse_probes)? {
                converse.duals += 1;
                converse.with_gap += gap as usize;
            }
        }
    }
    converse.passed = converse.with_gap == converse.duals;

    let mut holder_passed = true;
    let mut holder_samples = 0;
    for &p in &[1.5, 2.0, 3.0] {
        for _ in 0..1000 {
            let len = rng.gen_range(1..=12);
            let x: Vec<f64> = (0..len).map(|_| rng.sample(rand_distr::StandardNormal)).collect();
            holder_passed &= holder_sandwich_selftest(&x, p)?;
            holder_samples += 1;
        }
    }
    let passed = reports.iter().all(|r| r.passed) && converse.passed && holder_passed;
    Ok(LpSuiteReport { seed: tol.seed, reports, converse, holder_samples, holder_passed, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn e1e1e2() -> Frame {
        Frame::real(2, vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    fn e(i: usize) -> Vec<C64> {
        (0..2).map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    fn alt(frame: &Frame) -> DualElement {
        let fam = dual_family(frame, &ToleranceConfig::default()).unwrap();
        let d = Matrix::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        fam.decompose(&d).unwrap()
    }

    #[test]
    fn coefficient_norms() {
        let f = e1e1e2();
        let canon = dual_family(&f, &ToleranceConfig::default()).unwrap().canonical_element();
        assert!((coeff_norm(&e(0), &canon, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((coeff_norm(&e(0), &alt(&f), 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(coeff_norm(&[C64::new(0.0, 0.0); 2], &canon, 1.5).unwrap(), 0.0);
        assert!((coeff_norm(&e(0), &canon, 4.0).unwrap() - 0.125).abs() < 1e-15);
        assert!(matches!(coeff_norm(&e(0), &canon, 0.5), Err(FrameError::InvalidExponent(_))));
    }

    #[test]
    fn bounds_on_the_example() {
        let f = e1e1e2();
        let h = alt(&f);
        let probes = vec![e(0), e(1)];
        let r = check_l2_min(&f, &h, &probes[..1]).unwrap();
        assert!(r.passed && (r.max_ratio - 0.5).abs() < 1e-15);
        assert!(check_l2_min(&f, &h, &probes).unwrap().passed);
        let r = check_l1_bound(&f, &h, &probes).unwrap();
        assert!(r.passed && (r.factor - 3f64.sqrt()).abs() < 1e-15);
        assert!(check_general_p_bound(&f, &h, 1.5, &probes).unwrap().passed);
        let r = check_p_gt2_bound(&f, &h, 4.0, &probes).unwrap();
        assert!(r.passed && (r.factor - 3.0).abs() < 1e-15);
        assert!(matches!(check_general_p_bound(&f, &h, 1.0, &probes), Err(FrameError::InvalidExponent(_))));
        assert!(matches!(check_p_gt2_bound(&f, &h, 2.0, &probes), Err(FrameError::InvalidExponent(_))));
        assert_eq!(strict_l2_gap(&h, &probes).unwrap(), Some(true));
        let canon = h.family().canonical_element();
        assert_eq!(strict_l2_gap(&canon, &probes).unwrap(), None);
        let r = check_l2_min(&f, &canon, &probes).unwrap();
        assert!(r.passed && r.max_ratio == 1.0);
    }

    #[test]
    fn holder_edges() {
        assert!(holder_sandwich_selftest(&[1.0, 0.0, 0.0], 2.0).unwrap());
        assert!(holder_sandwich_selftest(&[1.0; 5], 3.0).unwrap());
        assert!(holder_sandwich_selftest(&[], 2.0).unwrap());
        assert!(holder_sandwich_selftest(&[1.0], 1.0).is_err());
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let config = LpSuiteConfig { frames: 6, duals: 3, probes: 10, converse_probes: 50, ..Default::default() };
        let tol = ToleranceConfig::default().with_seed(4);
        let a = run_lp_suite(&config, &tol).unwrap();
        assert!(a.passed, "{a:?}");
        assert_eq!(a, run_lp_suite(&config, &tol).unwrap());
    }
}
