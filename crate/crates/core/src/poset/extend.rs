use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::StandardNormal;

use super::{factor_poset_with_cap, require_poset_eligible, SubsetSums, DEFAULT_CAP};
use crate::error::{FrameError, Result};
use crate::frame::{diagram_vector, diagram_vectors, Field, Frame};
use crate::linalg::{ToleranceConfig, C64};
use crate::sampling::seeded_rng;

/// Minimum separation, relative to the diagram scale, between a candidate's
/// diagram vector and every negated subset sum.
pub const EXTENSION_MARGIN: f64 = 1e-6;

/// Rejections allowed per appended vector.
pub const MAX_EXTENSION_ATTEMPTS: usize = 1000;

/// Margin below which a projection direction is considered degenerate.
pub const PROJECTION_MARGIN: f64 = 1e-6;

/// Whether appending `g` to `frame` creates no new tight subframe, i.e. `g̃`
/// stays at least the margin away from every `−Σ_{ℓ∈L} f̃_ℓ`, `∅ ≠ L ⊆ I`.
pub fn extension_candidate_admissible(frame: &Frame, g: &[C64]) -> Result<bool> {
    require_poset_eligible(frame, DEFAULT_CAP)?;
    let sums = SubsetSums::new(frame);
    candidate_admissible(frame, &sums, g)
}

fn candidate_admissible(frame: &Frame, sums: &SubsetSums, g: &[C64]) -> Result<bool> {
    if g.len() != frame.dim() {
        return Err(FrameError::DimensionMismatch("candidate vector has the wrong length".into()));
    }
    let gd = diagram_vector(g, frame.field())?.real_coords();
    let g_norm = gd.iter().map(|x| x * x).sum::<f64>().sqrt();
    if g_norm == 0.0 {
        return Ok(false);
    }
    let f_scale = diagram_vectors(frame).iter().map(|d| d.norm()).fold(0.0, f64::max);
    let margin = EXTENSION_MARGIN * g_norm.max(f_scale);
    let mut buf = vec![0.0; sums.dim()];
    for mask in sums.masks() {
        sums.sum_into(mask, &mut buf);
        let dist2: f64 = gd.iter().zip(&buf).map(|(a, b)| (a + b) * (a + b)).sum();
        if dist2.sqrt() <= margin {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Appends random vectors one at a time until the frame has `m` vectors,
/// rejecting any candidate that would create a new tight subframe.
pub fn extend_preserving_poset(frame: &Frame, m: usize, tol: &ToleranceConfig) -> Result<Frame> {
    require_poset_eligible(frame, DEFAULT_CAP)?;
    if m < frame.len() {
        return Err(FrameError::InvalidArgument(format!("cannot extend {} vectors to {m}", frame.len())));
    }
    if m > DEFAULT_CAP {
        return Err(FrameError::GroundSetTooLarge { k: m, cap: DEFAULT_CAP });
    }
    let mut rng = seeded_rng(tol.seed);
    let mut current = frame.clone();
    let rms = (current.vectors().iter().map(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>()).sum::<f64>()
        / current.len() as f64)
        .sqrt();
    while current.len() < m {
        let sums = SubsetSums::new(&current);
        let mut accepted = None;
        for _ in 0..MAX_EXTENSION_ATTEMPTS {
            let g: Vec<C64> = (0..current.dim())
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = match current.field() {
                        Field::Real => 0.0,
                        Field::Complex => rng.sample(StandardNormal),
                    };
                    C64::new(re, im) * rms
                })
                .collect();
            if candidate_admissible(&current, &sums, &g)? {
                accepted = Some(g);
                break;
            }
        }
        let g = accepted.ok_or(FrameError::SamplingExhausted(MAX_EXTENSION_ATTEMPTS))?;
        current = current.extended([g])?;
    }
    Ok(current)
}

/// Result of projecting an ℝ² frame onto axis multiples.
#[derive(Debug, Clone, PartialEq)]
pub struct OnbProjection {
    /// Vectors of the form `(√λ, 0)` or `(0, √−λ)`.
    pub frame: Frame,
    /// Signed diagram coefficients `λ_i = ⟨v, f̃_i⟩`.
    pub weights: Vec<f64>,
    /// Unit projection direction `v` in diagram space.
    pub direction: [f64; 2],
    /// `min |⟨v, s⟩| / ‖s‖` over all non-tight subset sums `s`.
    pub margin: f64,
}

/// Replaces an ℝ² frame by scaled multiples of `e₁`, `e₂` with the same factor poset.
///
/// Diagram vectors of ℝ² frames live in ℝ². A direction `v` is chosen so that
/// no non-vanishing subset sum of diagram vectors is orthogonal to it; then
/// `λ_i = ⟨v, f̃_i⟩` and `g_i = (√λ_i, 0)` for `λ_i ≥ 0`, `(0, √−λ_i)` otherwise.
/// The direction is the midpoint of the widest angular gap between forbidden
/// directions, which maximizes the margin deterministically.
pub fn project_to_onb_frame(frame: &Frame, tol: &ToleranceConfig) -> Result<OnbProjection> {
    if frame.field() != Field::Real || frame.dim() != 2 {
        return Err(FrameError::WrongDimension);
    }
    require_poset_eligible(frame, DEFAULT_CAP)?;
    let sums = SubsetSums::new(frame);
    let mut forbidden = Vec::new();
    let mut buf = [0.0; 2];
    for mask in sums.masks() {
        if sums.is_tight(mask, tol) {
            continue;
        }
        sums.sum_into(mask, &mut buf);
        let angle = buf[1].atan2(buf[0]) + FRAC_PI_2;
        forbidden.push(angle.rem_euclid(PI));
    }
    forbidden.sort_by(f64::total_cmp);
    forbidden.dedup();
    let (theta, margin) = widest_gap_midpoint(&forbidden);
    if margin < PROJECTION_MARGIN {
        return Err(FrameError::SamplingExhausted(forbidden.len()));
    }
    let direction = [theta.cos(), theta.sin()];
    let weights: Vec<f64> = diagram_vectors(frame)
        .iter()
        .map(|d| {
            let c = d.real_coords();
            direction[0] * c[0] + direction[1] * c[1]
        })
        .collect();
    let vectors =
        weights.iter().map(|&l| if l >= 0.0 { vec![l.sqrt(), 0.0] } else { vec![0.0, (-l).sqrt()] }).collect();
    let projected = Frame::real(2, vectors)?;
    let original = factor_poset_with_cap(frame, tol, DEFAULT_CAP)?;
    let image = factor_poset_with_cap(&projected, tol, DEFAULT_CAP)?;
    if !original.same_members(&image) {
        return Err(FrameError::ProjectionMismatch);
    }
    Ok(OnbProjection { frame: projected, weights, direction, margin })
}

/// Midpoint of the widest gap between sorted angles on the circle ℝ/πℤ, and
/// the sine of half that gap.
fn widest_gap_midpoint(sorted: &[f64]) -> (f64, f64) {
    if sorted.is_empty() {
        return (0.0, 1.0);
    }
    let mut best = (sorted[0] + PI - sorted[sorted.len() - 1], sorted[sorted.len() - 1]);
    for w in sorted.windows(2) {
        let gap = w[1] - w[0];
        if gap > best.0 {
            best = (gap, w[0]);
        }
    }
    let (gap, start) = best;
    ((start + gap / 2.0).rem_euclid(PI), (gap / 2.0).min(FRAC_PI_2).sin())
}
