//! Frames, their operators, frame bounds and diagram vectors.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{FrameError, Result};
use crate::linalg::{self, extremal_eigenvalues, Matrix, ToleranceConfig, C64, ZERO};
use crate::poset::IndexSet;

/// Scalar field of the ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Length of a diagram vector in dimension `n`.
    pub fn diagram_len(self, n: usize) -> usize {
        match self {
            Field::Real => n * (n - 1),
            Field::Complex => 3 * n * (n - 1) / 2,
        }
    }
}

/// An ordered sequence of vectors in ℝⁿ or ℂⁿ.
///
/// Zero vectors are allowed here because dual frames may contain them; the
/// factor-poset machinery rejects them separately.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    field: Field,
    n: usize,
    vectors: Vec<Vec<C64>>,
}

impl Frame {
    pub fn new(field: Field, n: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if n < 2 {
            return Err(FrameError::DimensionTooSmall(n));
        }
        if vectors.is_empty() {
            return Err(FrameError::EmptyFrame);
        }
        for v in &vectors {
            if v.len() != n {
                return Err(FrameError::DimensionMismatch(format!("vector of length {} in dimension {n}", v.len())));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(FrameError::NonFinite);
            }
            if field == Field::Real && v.iter().any(|z| z.im != 0.0) {
                return Err(FrameError::ComplexEntryInRealFrame);
            }
        }
        Ok(Self { field, n, vectors })
    }

    pub fn real(n: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let vectors = vectors.into_iter().map(|v| v.into_iter().map(|x| C64::new(x, 0.0)).collect()).collect();
        Self::new(Field::Real, n, vectors)
    }

    pub fn complex(n: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        Self::new(Field::Complex, n, vectors)
    }

    /// Frame whose vectors are the columns of an n×k synthesis matrix.
    pub fn from_synthesis(field: Field, synthesis: &Matrix) -> Result<Self> {
        Self::new(field, synthesis.rows(), synthesis.columns())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of vectors.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[C64] {
        &self.vectors[i]
    }

    /// Index set `{0, …, k-1}` as a bitmask.
    pub fn all_indices(&self) -> IndexSet {
        IndexSet::full(self.len())
    }

    pub fn first_zero_vector(&self) -> Option<usize> {
        self.vectors.iter().position(|v| v.iter().all(|z| *z == ZERO))
    }

    /// Subframe on the indices in `subset`, in increasing index order.
    pub fn subframe(&self, subset: IndexSet) -> Result<Frame> {
        self.check_subset(subset)?;
        let vectors = subset.iter().map(|i| self.vectors[i].clone()).collect();
        Frame::new(self.field, self.n, vectors)
    }

    /// Frame with extra vectors appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = Vec<C64>>) -> Result<Frame> {
        let mut vectors = self.vectors.clone();
        vectors.extend(extra);
        Frame::new(self.field, self.n, vectors)
    }

    pub(crate) fn check_subset(&self, subset: IndexSet) -> Result<()> {
        if subset.is_empty() {
            return Err(FrameError::EmptySubset);
        }
        if let Some(max) = subset.max_index() {
            if max >= self.len() {
                return Err(FrameError::IndexOutOfRange { index: max, ground: self.len() });
            }
        }
        Ok(())
    }

    /// n×k matrix with the frame vectors as columns.
    pub fn synthesis(&self) -> Matrix {
        Matrix::from_columns(self.n, &self.vectors)
    }

    /// Frame operator `Σ f_i f_i*`.
    pub fn frame_operator(&self) -> Matrix {
        let mut s = Matrix::zeros(self.n, self.n);
        for f in &self.vectors {
            for r in 0..self.n {
                for c in 0..self.n {
                    s[(r, c)] += f[r] * f[c].conj();
                }
            }
        }
        s
    }

    /// SHA-256 of the canonical byte encoding (field tag, n, k, entry bits).
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update([matches!(self.field, Field::Complex) as u8]);
        hasher.update((self.n as u64).to_le_bytes());
        hasher.update((self.len() as u64).to_le_bytes());
        for v in &self.vectors {
            for z in v {
                hasher.update(z.re.to_bits().to_le_bytes());
                hasher.update(z.im.to_bits().to_le_bytes());
            }
        }
        hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Analysis, synthesis, frame and Gramian matrices of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBundle {
    /// k×n, row i is `f_i*`.
    pub analysis: Matrix,
    /// n×k, column i is `f_i`.
    pub synthesis: Matrix,
    /// n×n, `synthesis · analysis`.
    pub frame_op: Matrix,
    /// k×k, `analysis · synthesis`.
    pub gramian: Matrix,
}

pub fn operators(frame: &Frame) -> OperatorBundle {
    let synthesis = frame.synthesis();
    let analysis = synthesis.adjoint();
    let frame_op = synthesis.mul(&analysis).expect("conformable by construction");
    let gramian = analysis.mul(&synthesis).expect("conformable by construction");
    OperatorBundle { analysis, synthesis, frame_op, gramian }
}

/// Whether the frame operator is invertible (rank n).
pub fn is_frame(frame: &Frame, tol: &ToleranceConfig) -> bool {
    frame_bounds(frame, tol).is_ok()
}

/// Optimal frame bounds `(A, B)`: the extremal eigenvalues of the frame operator.
pub fn frame_bounds(frame: &Frame, tol: &ToleranceConfig) -> Result<(f64, f64)> {
    let s = frame.frame_operator();
    let (lo, hi) = extremal_eigenvalues(&s, tol)?;
    if hi.is_nan() || hi <= 0.0 || lo <= tol.rank_rel * hi {
        return Err(FrameError::NotAFrame);
    }
    Ok((lo, hi))
}

/// Quadratic embedding of a vector whose sum over a sequence vanishes exactly
/// when the sequence is a tight frame.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramVector {
    field: Field,
    data: Vec<C64>,
}

impl DiagramVector {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.data)
    }

    /// `Σ a_i conj(b_i)`.
    pub fn inner(&self, other: &DiagramVector) -> C64 {
        linalg::inner(&self.data, &other.data)
    }

    /// Components as a real coordinate vector (real parts only for real
    /// frames, interleaved re/im for complex ones). Euclidean norms agree.
    pub fn real_coords(&self) -> Vec<f64> {
        match self.field {
            Field::Real => self.data.iter().map(|z| z.re).collect(),
            Field::Complex => self.data.iter().flat_map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Diagram vector of `f`.
///
/// Layout: the differences `|f(i)|² − |f(j)|²` for `i < j` in lexicographic
/// order, then the product block. Real: `√(2n) f(i) f(j)` per pair. Complex:
/// `√n f(i) conj(f(j))` followed by `√n conj(f(i)) f(j)` per pair. Everything
/// is scaled by `1/√(n−1)`.
pub fn diagram_vector(f: &[C64], field: Field) -> Result<DiagramVector> {
    let n = f.len();
    if n < 2 {
        return Err(FrameError::DimensionTooSmall(n));
    }
    let scale = 1.0 / ((n - 1) as f64).sqrt();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut data = Vec::with_capacity(field.diagram_len(n));
    for &(i, j) in &pairs {
        data.push(C64::new((f[i].norm_sqr() - f[j].norm_sqr()) * scale, 0.0));
    }
    match field {
        Field::Real => {
            let w = (2.0 * n as f64).sqrt() * scale;
            for &(i, j) in &pairs {
                data.push(C64::new(w * f[i].re * f[j].re, 0.0));
            }
        }
        Field::Complex => {
            let w = (n as f64).sqrt() * scale;
            for &(i, j) in &pairs {
                data.push(f[i] * f[j].conj() * w);
                data.push(f[i].conj() * f[j] * w);
            }
        }
    }
    Ok(DiagramVector { field, data })
}

/// Diagram vectors of every frame vector.
pub fn diagram_vectors(frame: &Frame) -> Vec<DiagramVector> {
    frame.vectors().iter().map(|f| diagram_vector(f, frame.field()).expect("frames have n >= 2")).collect()
}

/// Outcome of a tightness test with its residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightnessCertificate {
    pub tight: bool,
    /// `‖Σ_{i∈J} f̃_i‖`.
    pub residual: f64,
    /// `max_{i∈J} ‖f̃_i‖`, the scale the residual is compared against.
    pub scale: f64,
}

/// Decides whether `{f_j}_{j∈J}` is a tight frame by checking that its diagram
/// vectors sum to zero, relative to the largest diagram norm in `J`.
pub fn is_tight(frame: &Frame, subset: IndexSet, tol: &ToleranceConfig) -> Result<TightnessCertificate> {
    frame.check_subset(subset)?;
    let diagrams: Vec<DiagramVector> =
        subset.iter().map(|i| diagram_vector(frame.vector(i), frame.field())).collect::<Result<_>>()?;
    let mut sum = vec![ZERO; frame.field().diagram_len(frame.dim())];
    let mut scale: f64 = 0.0;
    for d in &diagrams {
        for (s, z) in sum.iter_mut().zip(d.data()) {
            *s += z;
        }
        scale = scale.max(d.norm());
    }
    let residual = linalg::norm(&sum);
    // All-zero subsets are not frames.
    let tight = scale > 0.0 && residual <= tol.zero_rel * scale;
    Ok(TightnessCertificate { tight, residual, scale })
}

/// Tightness of the whole frame.
pub fn is_tight_frame(frame: &Frame, tol: &ToleranceConfig) -> bool {
    is_tight(frame, frame.all_indices(), tol).map(|c| c.tight).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn operators_of_small_frames() {
        let onb = Frame::real(2, vec![e(2, 0), e(2, 1)]).unwrap();
        let ops = operators(&onb);
        assert_eq!(ops.frame_op, Matrix::identity(2));
        assert_eq!(ops.gramian, Matrix::identity(2));

        let f = Frame::real(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        assert_eq!(operators(&f).frame_op, Matrix::diag(&[2.0, 1.0]));

        let f = Frame::real(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let ops = operators(&f);
        assert_eq!(ops.frame_op, Matrix::diag(&[2.0, 2.0]));
        assert_eq!(ops.frame_op, f.frame_operator());
    }

    #[test]
    fn bounds_examples() {
        let f = Frame::real(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let (a, b) = frame_bounds(&f, &tol()).unwrap();
        assert!((a - 2.0).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);
        let f = Frame::real(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        assert_eq!(frame_bounds(&f, &tol()).unwrap(), (1.0, 2.0));
        let f = Frame::real(2, vec![e(2, 0)]).unwrap();
        assert_eq!(frame_bounds(&f, &tol()), Err(FrameError::NotAFrame));
    }

    #[test]
    fn diagram_vector_examples() {
        let d = |v: [f64; 2]| diagram_vector(&[C64::new(v[0], 0.0), C64::new(v[1], 0.0)], Field::Real).unwrap();
        assert_eq!(d([1.0, 0.0]).real_coords(), vec![1.0, 0.0]);
        assert_eq!(d([0.0, 1.0]).real_coords(), vec![-1.0, 0.0]);
        let v = d([1.0, 1.0]).real_coords();
        assert_eq!(v[0], 0.0);
        assert!((v[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn diagram_lengths_and_complex_conjugate_pairs() {
        let f = vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.25), C64::new(0.0, 1.0)];
        let d = diagram_vector(&f, Field::Complex).unwrap();
        assert_eq!(d.len(), 9);
        let prods = &d.data()[3..];
        for pair in prods.chunks(2) {
            assert_eq!(pair[0], pair[1].conj());
        }
        let real = diagram_vector(&[C64::new(1.0, 0.0); 4], Field::Real).unwrap();
        assert_eq!(real.len(), 12);
    }

    #[test]
    fn dimension_one_rejected() {
        assert_eq!(diagram_vector(&[C64::new(1.0, 0.0)], Field::Real), Err(FrameError::DimensionTooSmall(1)));
        assert_eq!(Frame::real(1, vec![vec![1.0]]), Err(FrameError::DimensionTooSmall(1)));
    }

    #[test]
    fn tightness_examples() {
        let f = Frame::real(2, vec![e(2, 0), e(2, 1), e(2, 1)]).unwrap();
        assert!(is_tight(&f, IndexSet::from_indices(&[0, 1]), &tol()).unwrap().tight);
        assert!(!is_tight(&f, IndexSet::from_indices(&[1, 2]), &tol()).unwrap().tight);
        let remark = Frame::real(2, vec![e(2, 0), e(2, 0), e(2, 1), e(2, 1), vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        assert!(is_tight_frame(&remark, &tol()));
        assert_eq!(is_tight(&f, IndexSet::EMPTY, &tol()), Err(FrameError::EmptySubset));
    }

    #[test]
    fn real_frame_rejects_imaginary_parts() {
        let r = Frame::new(Field::Real, 2, vec![vec![C64::new(1.0, 1.0), ZERO]]);
        assert_eq!(r, Err(FrameError::ComplexEntryInRealFrame));
    }

    #[test]
    fn fingerprint_is_stable_and_sensitive() {
        let a = Frame::real(2, vec![e(2, 0), e(2, 1)]).unwrap();
        let b = Frame::real(2, vec![e(2, 1), e(2, 0)]).unwrap();
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
    }
}
