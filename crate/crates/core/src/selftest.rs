//! Regression corpus of worked examples, replayed by `frameposet self-test`.

use serde::Serialize;

use crate::dual::{canonical_dual_poset_compare, dual_family, dual_sum, is_tight_dual, PosetVerdict};
use crate::error::Result;
use crate::frame::{is_tight, Frame};
use crate::io::{parse_frame, parse_poset};
use crate::linalg::{Matrix, ToleranceConfig};
use crate::lp::{run_lp_suite, LpSuiteConfig, LpSuiteReport};
use crate::poset::{
    characteristic, empty_cover, factor_poset, poset_necessary_check, realize_poset_r2, FactorPoset, IndexSet,
    RealizeOptions, RealizeOutcome,
};

pub const E1E2E2_FRAME: &str = include_str!("../corpus/e1e2e2.frame");
pub const SQUARE_FRAME: &str = include_str!("../corpus/square.frame");
pub const E1E1E2_FRAME: &str = include_str!("../corpus/e1e1e2.frame");
pub const SIX_VECTORS_FRAME: &str = include_str!("../corpus/six_vectors.frame");
pub const DUAL_MISMATCH_FRAME: &str = include_str!("../corpus/dual_mismatch.frame");
pub const ZERO_TAIL_FRAME: &str = include_str!("../corpus/zero_tail.frame");
pub const E1E2E2_POSET: &str = include_str!("../corpus/e1e2e2.poset");
pub const SQUARE_POSET: &str = include_str!("../corpus/square.poset");
pub const NESTED_POSET: &str = include_str!("../corpus/nested.poset");

/// Relative tolerance for the dual-mismatch frame, whose canonical dual has a
/// near-tight pair at relative residual ~4e-11.
pub const DUAL_MISMATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub lp: LpSuiteReport,
    pub passed: bool,
}

fn sets(lists: &[&[usize]]) -> Vec<IndexSet> {
    lists.iter().map(|l| IndexSet::from_one_based(l).expect("1-based")).collect()
}

fn poset(k: usize, lists: &[&[usize]]) -> FactorPoset {
    FactorPoset::from_members(k, sets(lists)).expect("valid")
}

fn frame(text: &str) -> Frame {
    parse_frame(text).expect("corpus frame parses")
}

fn case(name: &'static str, run: impl FnOnce() -> Result<(bool, String)>) -> CaseResult {
    match run() {
        Ok((passed, detail)) => CaseResult { name, passed, detail },
        Err(e) => CaseResult { name, passed: false, detail: format!("error: {e}") },
    }
}

/// Every corpus case, in a fixed order.
pub fn corpus_cases(tol: &ToleranceConfig) -> Vec<CaseResult> {
    let mut out = Vec::new();
    out.push(case("e1e2e2-poset", || {
        let p = factor_poset(&frame(E1E2E2_FRAME), tol)?;
        Ok((p.same_members(&poset(3, &[&[], &[1, 2], &[1, 3]])), p.to_string()))
    }));
    out.push(case("square-empty-cover", || {
        let p = factor_poset(&frame(SQUARE_FRAME), tol)?;
        let ec = empty_cover(&p);
        let mut expected = sets(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        expected.sort();
        let ok = ec.sets == expected && p.contains(IndexSet::full(4)) && p.len() == 6;
        Ok((ok, p.to_string()))
    }));
    out.push(case("e1e1e2-characteristic", || {
        let f = frame(E1E1E2_FRAME);
        let p = factor_poset(&f, tol)?;
        let ec = empty_cover(&p);
        let chi = characteristic(&f, tol)?;
        let ok = ec.sets == sets(&[&[1, 3], &[2, 3]]) && chi.counts == vec![1, 1, 2] && !chi.is_uniform();
        Ok((ok, format!("chi={:?}", chi.counts)))
    }));
    out.push(case("six-vectors-characteristic", || {
        let f = frame(SIX_VECTORS_FRAME);
        let chi = characteristic(&f, tol)?;
        let tight = is_tight(&f, f.all_indices(), tol)?.tight;
        Ok((chi.counts == vec![2, 2, 2, 2, 1, 1] && tight, format!("chi={:?} tight={tight}", chi.counts)))
    }));
    out.push(case("realize-e1e2e2", || {
        let p = parse_poset(E1E2E2_POSET)?;
        match realize_poset_r2(&p, RealizeOptions::default())? {
            RealizeOutcome::Realized { weights, frame } => {
                let ok = factor_poset(&frame, tol)?.same_members(&p);
                Ok((ok, format!("weights={weights:?}")))
            }
            other => Ok((false, format!("{other:?}"))),
        }
    }));
    out.push(case("realize-square", || {
        let p = parse_poset(SQUARE_POSET)?;
        match realize_poset_r2(&p, RealizeOptions::default())? {
            RealizeOutcome::Realized { weights, frame } => {
                let ok = factor_poset(&frame, tol)?.same_members(&p);
                Ok((ok, format!("weights={weights:?}")))
            }
            other => Ok((false, format!("{other:?}"))),
        }
    }));
    out.push(case("nested-poset-rejected", || {
        let p = parse_poset(NESTED_POSET)?;
        let check = poset_necessary_check(&p);
        let rules: Vec<&str> = check.violations.iter().map(|v| v.rule()).collect();
        Ok((!check.passed(), format!("violations={rules:?}")))
    }));
    out.push(case("dual-group-sum", || {
        let fam = dual_family(&frame(ZERO_TAIL_FRAME), tol)?;
        let m = |rows: [[f64; 4]; 2]| Matrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        let a = fam.decompose(&m([[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 1.0, 0.0]])?)?;
        let b = fam.decompose(&m([[1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]])?)?;
        let sum = dual_sum(&a, &b)?;
        let expected = m([[1.0, 0.0, 1.0, 1.0], [0.0, 1.0, 1.0, 1.0]])?;
        let ok = sum.materialized().sub(&expected)?.max_abs() < 1e-12
            && is_tight_dual(&a, tol).tight
            && is_tight_dual(&b, tol).tight
            && !is_tight_dual(&sum, tol).tight;
        Ok((ok, format!("sum residual {:e}", sum.materialized().sub(&expected)?.max_abs())))
    }));
    out.push(case("dual-mismatch-not-isomorphic", || {
        let strict = tol.with_zero_rel(DUAL_MISMATCH_TOL)?;
        let cmp = canonical_dual_poset_compare(&frame(DUAL_MISMATCH_FRAME), &strict)?;
        let ok = cmp.verdict == PosetVerdict::NotStronglyIsomorphic
            && cmp.frame_poset.same_members(&poset(4, &[&[], &[1, 2]]))
            && cmp.dual_poset.same_members(&poset(4, &[&[], &[1, 2, 3]]));
        Ok((ok, format!("frame {} dual {}", cmp.frame_poset, cmp.dual_poset)))
    }));
    out.push(case("square-dual-same-poset", || {
        let cmp = canonical_dual_poset_compare(&frame(SQUARE_FRAME), tol)?;
        Ok((cmp.verdict == PosetVerdict::Equal, format!("{:?}", cmp.verdict)))
    }));
    out
}

/// Small ℓp suite used by the self-test.
pub fn selftest_lp_config() -> LpSuiteConfig {
    LpSuiteConfig { frames: 10, duals: 5, probes: 20, converse_probes: 100, ..LpSuiteConfig::default() }
}

pub fn run_self_test(tol: &ToleranceConfig) -> Result<SelfTestReport> {
    let cases = corpus_cases(tol);
    let lp = run_lp_suite(&selftest_lp_config(), tol)?;
    let passed = cases.iter().all(|c| c.passed) && lp.passed;
    Ok(SelfTestReport { seed: tol.seed, cases, lp, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes() {
        let report = run_self_test(&ToleranceConfig::default()).unwrap();
        for c in &report.cases {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert!(report.passed);
    }
}
