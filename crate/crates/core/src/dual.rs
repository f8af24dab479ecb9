//! Dual frames, parametrized by coefficients against a fixed orthonormal
//! basis of the kernel of the synthesis operator.
//!
//! Every dual of `F` has synthesis matrix `S_F⁻¹ θ*_F + W` where the conjugate
//! of every row of `W` lies in `ker θ*_F`. With `u_1 … u_{k−n}` an orthonormal
//! basis of that kernel and `K` the matrix with rows `conj(u_j)`, a dual is
//! stored as the n×(k−n) coefficient matrix `C` with `W = C·K`. Adding duals
//! adds coefficients, which makes the group operation exact.

use std::sync::Arc;

use crate::error::{FrameError, Result};
use crate::frame::{frame_bounds, is_tight_frame, Field, Frame};
use crate::linalg::{hermitian_inverse, orthonormal_nullspace, Matrix, ToleranceConfig, C64};
use crate::poset::{factor_poset, strongly_isomorphic, FactorPoset, IndexSet};

/// Bound on `‖θ*_G θ_F − I‖_max` for `G` to count as a dual of `F`.
pub const DUALITY_RESIDUAL: f64 = 1e-9;

/// All duals of one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFamily {
    frame: Frame,
    canonical: Matrix,
    kernel_basis: Vec<Vec<C64>>,
    kernel_rows: Matrix,
    bounds: (f64, f64),
}

impl DualFamily {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// n×k matrix with columns `S_F⁻¹ f_i`.
    pub fn canonical(&self) -> &Matrix {
        &self.canonical
    }

    /// Orthonormal basis of `ker θ*_F`, in pivot order.
    pub fn kernel_basis(&self) -> &[Vec<C64>] {
        &self.kernel_basis
    }

    /// `k − n`.
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Number of free scalar parameters, `n(k − n)`.
    pub fn parameter_count(&self) -> usize {
        self.frame.dim() * self.kernel_dim()
    }

    /// Optimal frame bounds of `F`.
    pub fn frame_bounds(&self) -> (f64, f64) {
        self.bounds
    }

    pub fn field(&self) -> Field {
        self.frame.field()
    }

    /// `‖D θ_F − I‖_max` for an n×k matrix `D`.
    pub fn duality_residual(&self, d: &Matrix) -> Result<f64> {
        let analysis = self.frame.synthesis().adjoint();
        Ok(d.mul(&analysis)?.identity_residual())
    }
}

/// Builds the dual family of `F`.
pub fn dual_family(frame: &Frame, tol: &ToleranceConfig) -> Result<Arc<DualFamily>> {
    let bounds = frame_bounds(frame, tol)?;
    let synthesis = frame.synthesis();
    let s_inv = hermitian_inverse(&frame.frame_operator(), tol).map_err(|_| FrameError::NotAFrame)?;
    let canonical = s_inv.mul(&synthesis)?;
    let kernel_basis = orthonormal_nullspace(&synthesis, tol);
    let expected = frame.len() - frame.dim();
    if kernel_basis.len() != expected {
        return Err(FrameError::DimensionMismatch(format!(
            "kernel has dimension {} but k - n = {expected}",
            kernel_basis.len()
        )));
    }
    let conj_rows: Vec<Vec<C64>> = kernel_basis.iter().map(|u| u.iter().map(|z| z.conj()).collect()).collect();
    let kernel_rows = if conj_rows.is_empty() { Matrix::zeros(0, frame.len()) } else { Matrix::from_rows(&conj_rows)? };
    Ok(Arc::new(DualFamily { frame: frame.clone(), canonical, kernel_basis, kernel_rows, bounds }))
}

/// One dual of a frame: canonical dual plus `C·K`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualElement {
    family: Arc<DualFamily>,
    coeffs: Matrix,
    materialized: Matrix,
}

impl DualElement {
    pub fn family(&self) -> &Arc<DualFamily> {
        &self.family
    }

    /// n×(k−n) coefficient matrix.
    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    /// n×k synthesis matrix of the dual.
    pub fn materialized(&self) -> &Matrix {
        &self.materialized
    }

    /// `W = C·K`, the offset from the canonical dual.
    pub fn offset(&self) -> Matrix {
        self.coeffs.mul(&self.family.kernel_rows).expect("conformable by construction")
    }

    pub fn is_canonical(&self) -> bool {
        self.coeffs.max_abs() == 0.0
    }

    /// The dual vectors as a frame (which may contain zero vectors).
    pub fn as_frame(&self) -> Frame {
        Frame::from_synthesis(self.family.field(), &self.materialized).expect("same shape as the primal frame")
    }

    pub fn duality_residual(&self) -> f64 {
        self.family.duality_residual(&self.materialized).expect("conformable by construction")
    }

    /// First zero column, judged relative to the largest column norm.
    pub fn first_zero_vector(&self, tol: &ToleranceConfig) -> Option<usize> {
        let norms: Vec<f64> = self.materialized.columns().iter().map(|c| crate::linalg::norm(c)).collect();
        let scale = norms.iter().copied().fold(0.0, f64::max);
        norms.iter().position(|&x| x <= tol.zero_rel * scale)
    }

    /// Duals with zero vectors are excluded from factor-poset operations.
    pub fn poset_eligible(&self, tol: &ToleranceConfig) -> bool {
        self.first_zero_vector(tol).is_none()
    }
}

impl DualFamily {
    /// The dual with coefficient matrix `coeffs`.
    pub fn element(self: &Arc<Self>, coeffs: Matrix) -> Result<DualElement> {
        let (n, d) = (self.frame.dim(), self.kernel_dim());
        if coeffs.rows() != n || coeffs.cols() != d {
            return Err(FrameError::DimensionMismatch(format!(
                "coefficients must be {n}x{d}, got {}x{}",
                coeffs.rows(),
                coeffs.cols()
            )));
        }
        let materialized =
            if d == 0 { self.canonical.clone() } else { self.canonical.add(&coeffs.mul(&self.kernel_rows)?)? };
        Ok(DualElement { family: Arc::clone(self), coeffs, materialized })
    }

    pub fn canonical_element(self: &Arc<Self>) -> DualElement {
        DualElement {
            family: Arc::clone(self),
            coeffs: Matrix::zeros(self.frame.dim(), self.kernel_dim()),
            materialized: self.canonical.clone(),
        }
    }

    /// Coefficients of an explicit dual matrix, `C = (D − canonical)·K*`.
    pub fn decompose(self: &Arc<Self>, d: &Matrix) -> Result<DualElement> {
        if d.rows() != self.frame.dim() || d.cols() != self.frame.len() {
            return Err(FrameError::DimensionMismatch(format!(
                "dual matrix must be {}x{}",
                self.frame.dim(),
                self.frame.len()
            )));
        }
        let residual = self.duality_residual(d)?;
        if residual.is_nan() || residual > DUALITY_RESIDUAL {
            return Err(FrameError::NotADual(residual));
        }
        let coeffs = if self.kernel_dim() == 0 {
            Matrix::zeros(self.frame.dim(), 0)
        } else {
            d.sub(&self.canonical)?.mul(&self.kernel_rows.adjoint())?
        };
        // Keep the caller's matrix rather than rebuilding it from coefficients.
        Ok(DualElement { family: Arc::clone(self), coeffs, materialized: d.clone() })
    }
}

pub fn canonical_dual(frame: &Frame, tol: &ToleranceConfig) -> Result<DualElement> {
    Ok(dual_family(frame, tol)?.canonical_element())
}

fn same_family(a: &DualElement, b: &DualElement) -> bool {
    Arc::ptr_eq(&a.family, &b.family) || a.family == b.family
}

/// Group operation: canonical + `W₁ + W₂`.
pub fn dual_sum(a: &DualElement, b: &DualElement) -> Result<DualElement> {
    if !same_family(a, b) {
        return Err(FrameError::FamilyMismatch);
    }
    a.family.element(a.coeffs.add(&b.coeffs)?)
}

/// Group inverse: canonical − `W`.
pub fn dual_neg(a: &DualElement) -> DualElement {
    a.family.element(a.coeffs.scale(C64::new(-1.0, 0.0))).expect("same shape")
}

/// Group identity: the canonical dual.
pub fn dual_identity(family: &Arc<DualFamily>) -> DualElement {
    family.canonical_element()
}

/// Tightness test for a dual, with the quantities it was decided on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightDualCertificate {
    pub tight: bool,
    /// `trace(W W*) / n`.
    pub alpha: f64,
    /// `‖S_G − (trace S_G / n) I‖_max`.
    pub residual: f64,
    /// `trace S_G / n`, the frame bound when tight.
    pub bound: f64,
}

/// Whether the dual vectors form a tight frame, i.e. `S_G = θ*_G θ_G` is a
/// multiple of the identity. For tight `F` this is `W W* = α I`.
pub fn is_tight_dual(dual: &DualElement, tol: &ToleranceConfig) -> TightDualCertificate {
    let d = dual.materialized();
    let n = d.rows();
    let s = d.mul(&d.adjoint()).expect("conformable");
    let bound = s.trace().re / n as f64;
    let target = Matrix::identity(n).scale(C64::new(bound, 0.0));
    let residual = s.sub(&target).expect("same shape").max_abs();
    let w = dual.offset();
    let alpha = w.mul(&w.adjoint()).expect("conformable").trace().re / n as f64;
    let tight = bound > 0.0 && residual <= tol.zero_rel * s.max_abs();
    TightDualCertificate { tight, alpha, residual, bound }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TightDualOutcome {
    /// An alternate tight dual with frame bound `1/λ + α²`.
    Alternate { element: DualElement, bound: f64 },
    /// `k < 2n`: the kernel has dimension `k − n < n`, so `W W* = α I` forces
    /// `α = 0` and the canonical dual is the only tight dual.
    CanonicalOnly { kernel_dim: usize, n: usize },
}

/// Tight dual of a λ-tight frame with `W = α · (first n kernel rows)`.
pub fn tight_dual(frame: &Frame, alpha: f64, tol: &ToleranceConfig) -> Result<TightDualOutcome> {
    if !is_tight_frame(frame, tol) {
        return Err(FrameError::NotTight);
    }
    let family = dual_family(frame, tol)?;
    let n = frame.dim();
    if family.kernel_dim() < n {
        return Ok(TightDualOutcome::CanonicalOnly { kernel_dim: family.kernel_dim(), n });
    }
    let (a, b) = family.frame_bounds();
    let lambda = 0.5 * (a + b);
    let coeffs =
        Matrix::from_fn(n, family.kernel_dim(), |r, c| if r == c { C64::new(alpha, 0.0) } else { C64::new(0.0, 0.0) });
    let element = family.element(coeffs)?;
    Ok(TightDualOutcome::Alternate { element, bound: 1.0 / lambda + alpha * alpha })
}

/// A dual of `F` built from a dual of one of its subframes.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedDual {
    pub element: DualElement,
    /// Whether the lifted dual has no zero vectors (only then do factor-poset
    /// operations apply).
    pub poset_eligible: bool,
}

/// Places the dual `k_dual` of the subframe on `subset` into a dual of `F`,
/// with zero vectors on the remaining indices.
pub fn lift_subframe_dual(
    frame: &Frame,
    subset: IndexSet,
    k_dual: &Frame,
    tol: &ToleranceConfig,
) -> Result<LiftedDual> {
    let sub = frame.subframe(subset)?;
    frame_bounds(&sub, tol).map_err(|_| FrameError::SubframeNotFrame)?;
    if k_dual.len() != sub.len() || k_dual.dim() != frame.dim() {
        return Err(FrameError::DimensionMismatch(format!(
            "subframe has {} vectors in dimension {}, dual has {} in dimension {}",
            sub.len(),
            sub.dim(),
            k_dual.len(),
            k_dual.dim()
        )));
    }
    let residual = k_dual.synthesis().mul(&sub.synthesis().adjoint())?.identity_residual();
    if residual.is_nan() || residual > DUALITY_RESIDUAL {
        return Err(FrameError::NotADual(residual));
    }
    let zero = vec![C64::new(0.0, 0.0); frame.dim()];
    let mut columns = vec![zero; frame.len()];
    for (slot, i) in subset.iter().enumerate() {
        columns[i] = k_dual.vector(slot).to_vec();
    }
    let d = Matrix::from_columns(frame.dim(), &columns);
    let family = dual_family(frame, tol)?;
    let element = family.decompose(&d)?;
    let poset_eligible = subset == frame.all_indices() && k_dual.first_zero_vector().is_none();
    Ok(LiftedDual { element, poset_eligible })
}

/// For a basis: `Some(c)` with `c_i = 1/‖f_i‖` making `{c_i f_i}` Parseval
/// when the basis is orthogonal, `None` otherwise.
pub fn is_scalable_basis(frame: &Frame, tol: &ToleranceConfig) -> Result<Option<Vec<f64>>> {
    if frame.len() != frame.dim() || frame_bounds(frame, tol).is_err() {
        return Err(FrameError::NotABasis);
    }
    let norms: Vec<f64> = frame.vectors().iter().map(|v| crate::linalg::norm(v)).collect();
    for i in 0..frame.len() {
        for j in i + 1..frame.len() {
            let ip = crate::linalg::inner(frame.vector(i), frame.vector(j)).norm();
            if ip > tol.zero_rel * norms[i] * norms[j] {
                return Ok(None);
            }
        }
    }
    Ok(Some(norms.iter().map(|x| 1.0 / x).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetVerdict {
    Equal,
    /// Different member sets, related by the given index permutation.
    StronglyIsomorphic(Vec<usize>),
    NotStronglyIsomorphic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PosetComparison {
    pub frame_poset: FactorPoset,
    pub dual_poset: FactorPoset,
    pub verdict: PosetVerdict,
}

/// Compares the factor posets of a frame and its canonical dual.
pub fn canonical_dual_poset_compare(frame: &Frame, tol: &ToleranceConfig) -> Result<PosetComparison> {
    let canonical = canonical_dual(frame, tol)?;
    if let Some(i) = canonical.first_zero_vector(tol) {
        return Err(FrameError::ZeroDualVector(i));
    }
    let frame_poset = factor_poset(frame, tol)?;
    let dual_poset = factor_poset(&canonical.as_frame(), tol)?;
    let verdict = if frame_poset.same_members(&dual_poset) {
        PosetVerdict::Equal
    } else {
        match strongly_isomorphic(&frame_poset, &dual_poset)? {
            Some(eta) => PosetVerdict::StronglyIsomorphic(eta),
            None => PosetVerdict::NotStronglyIsomorphic,
        }
    };
    Ok(PosetComparison { frame_poset, dual_poset, verdict })
}

/// `(1/λ) θ*_F + m W` for a tight dual `G = (1/λ) θ*_F + W` of a λ-tight
/// frame; returns the element and its predicted bound `1/λ + m² α`.
pub fn tight_dual_subgroup_walk(
    frame: &Frame,
    generator: &DualElement,
    m: i64,
    tol: &ToleranceConfig,
) -> Result<(DualElement, f64)> {
    if !is_tight_frame(frame, tol) {
        return Err(FrameError::NotTight);
    }
    if generator.family().frame() != frame {
        return Err(FrameError::FamilyMismatch);
    }
    let cert = is_tight_dual(generator, tol);
    if !cert.tight {
        return Err(FrameError::NotTightDual);
    }
    let (a, b) = generator.family().frame_bounds();
    let lambda = 0.5 * (a + b);
    let element = generator.family().element(generator.coeffs().scale(C64::new(m as f64, 0.0)))?;
    if !is_tight_dual(&element, tol).tight {
        return Err(FrameError::NotTightDual);
    }
    Ok((element, 1.0 / lambda + (m * m) as f64 * cert.alpha))
}
