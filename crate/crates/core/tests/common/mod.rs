//! Independent oracles shared by the integration tests.
//!
//! None of these go through diagram vectors: tightness is decided from the
//! frame operator `S_J = Σ_{i∈J} f_i f_i*` directly, in floating point or in
//! exact rational arithmetic.

#![allow(dead_code)]

use frameposet::{Frame, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact symmetric n×n rational matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMat {
    pub n: usize,
    pub data: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(n: usize) -> Self {
        RatMat { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn outer(v: &[BigRational]) -> Self {
        let n = v.len();
        let mut m = RatMat::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m.data[r * n + c] = &v[r] * &v[c];
            }
        }
        m
    }

    pub fn diag(d: &[BigRational]) -> Self {
        let n = d.len();
        let mut m = RatMat::zeros(n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn add_assign(&mut self, other: &RatMat) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// Whether the matrix is a multiple of the identity (zero included).
    pub fn is_scalar(&self) -> bool {
        let n = self.n;
        let d = &self.data[0];
        (0..n).all(|r| (0..n).all(|c| if r == c { &self.data[r * n + c] == d } else { self.data[r * n + c].is_zero() }))
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Bitmasks of all nonempty tight subsets, from exact per-vector outer products.
pub fn exact_tight_masks(outer: &[RatMat]) -> Vec<u32> {
    let k = outer.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << k) {
        let mut s = RatMat::zeros(outer[0].n);
        for (i, o) in outer.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.add_assign(o);
            }
        }
        if s.is_scalar() {
            out.push(mask);
        }
    }
    out
}

/// Exact tight subsets of a frame of integer vectors.
pub fn exact_tight_masks_int(vectors: &[Vec<i64>]) -> Vec<u32> {
    let outer: Vec<RatMat> =
        vectors.iter().map(|v| RatMat::outer(&v.iter().map(|&x| int(x)).collect::<Vec<_>>())).collect();
    exact_tight_masks(&outer)
}

/// Floating-point frame operator of a subset.
pub fn subset_frame_operator(frame: &Frame, mask: u32) -> Vec<Vec<C64>> {
    let n = frame.dim();
    let mut s = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (i, v) in frame.vectors().iter().enumerate() {
        if mask >> i & 1 == 1 {
            for r in 0..n {
                for c in 0..n {
                    s[r][c] += v[r] * v[c].conj();
                }
            }
        }
    }
    s
}

/// Tight subsets decided from `S_J` against `(tr S_J / n) I`, relative to the
/// largest squared vector norm.
pub fn operator_tight_masks(frame: &Frame, rel: f64) -> Vec<u32> {
    let n = frame.dim();
    let scale = frame.vectors().iter().map(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>()).fold(0.0, f64::max);
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << frame.len()) {
        let s = subset_frame_operator(frame, mask);
        let t = (0..n).map(|i| s[i][i].re).sum::<f64>() / n as f64;
        let dev = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| (s[r][c] - if r == c { C64::new(t, 0.0) } else { C64::new(0.0, 0.0) }).norm())
            .fold(0.0, f64::max);
        if dev <= rel * scale {
            out.push(mask);
        }
    }
    out
}

/// Nonempty member bitmasks of a factor poset.
pub fn member_masks(p: &frameposet::FactorPoset) -> Vec<u32> {
    let mut v: Vec<u32> = p.nonempty_members().map(|m| m.bits()).collect();
    v.sort_unstable();
    v
}

/// `G θ_F` computed entry by entry: `Σ_i g_i f_i*`.
pub fn reconstruction_residual(frame: &Frame, dual_columns: &[Vec<C64>]) -> f64 {
    let n = frame.dim();
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for (g, f) in dual_columns.iter().zip(frame.vectors()) {
                acc += g[r] * f[c].conj();
            }
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((acc - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Exact outer products of the dual-mismatch frame's canonical dual.
///
/// The frame is `{e1, e2, a e1, b e2}` with `a² = 3989²·15912321/10⁴` and
/// `b = 3989/10`, so `S = diag(1 + a², 1 + b²)` and every dual vector is an
/// axis multiple whose outer product only involves `a²` and `b²`.
pub fn dual_mismatch_outer() -> (Vec<RatMat>, Vec<RatMat>) {
    let a2 = BigRational::new(BigInt::from(3989i64 * 3989 * 15912321), BigInt::from(10_000));
    let b2 = BigRational::new(BigInt::from(3989i64 * 3989), BigInt::from(100));
    let zero = BigRational::zero();
    let one = BigRational::one();
    let primal = vec![
        RatMat::diag(&[one.clone(), zero.clone()]),
        RatMat::diag(&[zero.clone(), one.clone()]),
        RatMat::diag(&[a2.clone(), zero.clone()]),
        RatMat::diag(&[zero.clone(), b2.clone()]),
    ];
    let s1 = &one + &a2;
    let s2 = &one + &b2;
    let inv1 = &one / (&s1 * &s1);
    let inv2 = &one / (&s2 * &s2);
    let dual = vec![
        RatMat::diag(&[inv1.clone(), zero.clone()]),
        RatMat::diag(&[zero.clone(), inv2.clone()]),
        RatMat::diag(&[&a2 * &inv1, zero.clone()]),
        RatMat::diag(&[zero, &b2 * &inv2]),
    ];
    (primal, dual)
}

pub fn corpus(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
