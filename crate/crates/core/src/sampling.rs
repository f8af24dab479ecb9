//! Seeded random generators for frames, duals and probes.
//!
//! All randomized routines in the crate draw from a ChaCha8 stream seeded by
//! `ToleranceConfig::seed`, so every report is reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::frame::{frame_bounds, Field, Frame};
use crate::linalg::{Matrix, ToleranceConfig, C64, ZERO};

pub type FrameRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> FrameRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard Gaussian scalar in the given field (complex: independent parts).
pub fn gaussian(rng: &mut FrameRng, field: Field) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    match field {
        Field::Real => C64::new(re, 0.0),
        Field::Complex => C64::new(re, rng.sample(StandardNormal)),
    }
}

pub fn gaussian_vector(rng: &mut FrameRng, field: Field, n: usize) -> Vec<C64> {
    (0..n).map(|_| gaussian(rng, field)).collect()
}

/// Uniform point on the unit sphere of ℝⁿ or ℂⁿ.
pub fn unit_vector(rng: &mut FrameRng, field: Field, n: usize) -> Vec<C64> {
    loop {
        let v = gaussian_vector(rng, field, n);
        let norm = crate::linalg::norm(&v);
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Unit-modulus scalar: ±1 for real fields, a random phase for complex ones.
pub fn phase(rng: &mut FrameRng, field: Field) -> C64 {
    match field {
        Field::Real => C64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0),
        Field::Complex => C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
    }
}

/// Random m×m unitary (orthogonal for real fields) from Gram–Schmidt on a
/// Gaussian matrix.
pub fn random_unitary(rng: &mut FrameRng, field: Field, m: usize) -> Matrix {
    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(m);
    while rows.len() < m {
        let mut v = gaussian_vector(rng, field, m);
        // Two passes of classical Gram-Schmidt.
        for _ in 0..2 {
            for r in &rows {
                let c = crate::linalg::inner(&v, r);
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= c * y;
                }
            }
        }
        let norm = crate::linalg::norm(&v);
        if norm > 1e-8 {
            rows.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    Matrix::from_rows(&rows).expect("square")
}

/// Gaussian frame of `k ≥ n` vectors, redrawn until it spans.
pub fn random_frame(rng: &mut FrameRng, field: Field, n: usize, k: usize) -> Frame {
    assert!(k >= n, "a frame needs at least n vectors");
    let tol = ToleranceConfig::default();
    loop {
        let vectors = (0..k).map(|_| gaussian_vector(rng, field, n)).collect();
        let f = Frame::new(field, n, vectors).expect("valid shape");
        if let Ok((a, b)) = frame_bounds(&f, &tol) {
            if a > 1e-3 * b {
                return f;
            }
        }
    }
}

/// λ-tight frame of `k ≥ n` vectors: the first n rows of a random k×k unitary,
/// scaled by `√λ`, as synthesis matrix. Columns are redrawn if any is tiny.
pub fn random_tight_frame(rng: &mut FrameRng, field: Field, n: usize, k: usize, lambda: f64) -> Frame {
    assert!(k >= n, "a frame needs at least n vectors");
    loop {
        let u = random_unitary(rng, field, k);
        let s = C64::new(lambda.sqrt(), 0.0);
        let vectors: Vec<Vec<C64>> = (0..k).map(|c| (0..n).map(|r| u[(r, c)] * s).collect()).collect();
        let min_norm = vectors.iter().map(|v| crate::linalg::norm(v)).fold(f64::INFINITY, f64::min);
        if min_norm > 1e-3 * lambda.sqrt() {
            return Frame::new(field, n, vectors).expect("valid shape");
        }
    }
}

/// Union of random tight pieces, optionally with phase-rotated copies of
/// existing vectors and a few generic vectors, shuffled. Copies and pieces
/// create overlapping tight subsets, which exercises the poset machinery far
/// more than generic frames (whose posets are almost surely `{∅}`).
///
/// With `tight_only`, generic vectors are left out and copies are made of
/// whole pieces, so the result is a tight frame.
pub fn random_structured_frame(rng: &mut FrameRng, field: Field, n: usize, max_k: usize, tight_only: bool) -> Frame {
    assert!(max_k >= n, "need room for at least one tight piece");
    let mut vectors: Vec<Vec<C64>> = Vec::new();
    loop {
        let room = max_k - vectors.len();
        if room < n {
            break;
        }
        let m = rng.gen_range(n..=room.min(n + 2));
        let lambda = rng.gen_range(0.5..2.0);
        let piece = random_tight_frame(rng, field, n, m, lambda);
        let piece: Vec<Vec<C64>> = piece.vectors().to_vec();
        vectors.extend(piece.iter().cloned());
        if tight_only {
            if max_k - vectors.len() >= m && rng.gen_bool(0.4) {
                // A phase-rotated copy of a whole piece keeps the union tight.
                for v in &piece {
                    let p = phase(rng, field);
                    vectors.push(v.iter().map(|z| z * p).collect());
                }
            }
        } else if rng.gen_bool(0.6) && vectors.len() < max_k {
            let src = vectors[rng.gen_range(0..vectors.len())].clone();
            let p = phase(rng, field);
            vectors.push(src.iter().map(|z| z * p).collect());
        }
        if rng.gen_bool(0.5) {
            break;
        }
    }
    if !tight_only {
        let extra = rng.gen_range(0..=(max_k - vectors.len()).min(2));
        for _ in 0..extra {
            vectors.push(gaussian_vector(rng, field, n));
        }
    }
    vectors.shuffle(rng);
    // Guard against an accidental zero vector from a degenerate draw.
    vectors.retain(|v| v.iter().any(|z| *z != ZERO));
    Frame::new(field, n, vectors).expect("valid shape")
}

/// n×m matrix of Gaussian coefficients scaled by `scale`.
pub fn gaussian_matrix(rng: &mut FrameRng, field: Field, rows: usize, cols: usize, scale: f64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng, field) * scale)
}
