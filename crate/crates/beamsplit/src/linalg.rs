//! Dense complex linear algebra shared by every other module.
//!
//! The simulator works with modest dimensions (single-mode dimension up to a
//! few hundred, joint dimension up to a few thousand), so everything is stored
//! densely in row-major order. Eigendecompositions, singular values, and large
//! matrix products are delegated to `faer`; small elementwise kernels are
//! written directly.

use faer::complex_native::c64;
use faer::{Mat, Side};
use num_complex::Complex64 as C64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Outer product `v v†`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    /// Kronecker product, row-major with the left factor index major.
    pub fn kron(a: &CMat, b: &CMat) -> Self {
        let mut out = Self::zeros(a.rows * b.rows, a.cols * b.cols);
        for ia in 0..a.rows {
            for ja in 0..a.cols {
                let x = a[(ia, ja)];
                if x == C64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..b.rows {
                    for jb in 0..b.cols {
                        out[(ia * b.rows + ib, ja * b.cols + jb)] = x * b[(ib, jb)];
                    }
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= s;
        }
        out
    }

    pub fn add(&self, other: &CMat) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(&other.data) {
            *z += w;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(&other.data) {
            *z -= w;
        }
        out
    }

    pub fn add_assign(&mut self, other: &CMat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (z, w) in self.data.iter_mut().zip(&other.data) {
            *z += w;
        }
    }

    /// Accumulate `s · v v†` into `self`.
    pub fn add_scaled_outer(&mut self, s: f64, v: &[C64]) {
        assert_eq!(self.rows, v.len());
        assert_eq!(self.cols, v.len());
        for i in 0..self.rows {
            let vi = v[i] * s;
            for j in 0..self.cols {
                self[(i, j)] += vi * v[j].conj();
            }
        }
    }

    pub fn mul(&self, other: &CMat) -> Self {
        assert_eq!(self.cols, other.rows);
        // faer's gemm is much faster than a scalar triple loop at the joint
        // dimensions used here.
        let a = self.to_faer();
        let b = other.to_faer();
        CMat::from_faer_ref(&(&a * &b))
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (a, x) in row.iter().zip(v) {
                acc += a * x;
            }
            out[i] = acc;
        }
        out
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Σ_ij |a_ij|²; equals Tr[A†A], and Tr[A²] for Hermitian A.
    pub fn abs_sqr_sum(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max_ij |a_ij − conj(a_ji)|.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// max-abs of `self†·self − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.dagger().mul(self);
        gram.sub(&CMat::identity(gram.rows())).max_abs()
    }

    fn to_faer(&self) -> Mat<c64> {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            let z = self[(i, j)];
            c64::new(z.re, z.im)
        })
    }

    fn from_faer_ref(m: &Mat<c64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| {
            let z = m[(i, j)];
            C64::new(z.re, z.im)
        })
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle
    /// is read, so callers should check `hermitian_defect` first when the
    /// input is not Hermitian by construction.
    pub fn eigvalsh(&self) -> Vec<f64> {
        assert!(self.is_square());
        if self.rows == 0 {
            return Vec::new();
        }
        self.to_faer().selfadjoint_eigenvalues(Side::Lower)
    }

    /// Hermitian eigendecomposition: ascending eigenvalues and the matrix of
    /// column eigenvectors.
    pub fn eigh(&self) -> (Vec<f64>, CMat) {
        assert!(self.is_square());
        let evd = self.to_faer().selfadjoint_eigendecomposition(Side::Lower);
        let u = evd.u();
        let vecs = CMat::from_fn(self.rows, self.cols, |i, j| {
            let z = u[(i, j)];
            C64::new(z.re, z.im)
        });
        let vals = evd
            .s()
            .column_vector()
            .iter()
            .map(|z| z.re)
            .collect::<Vec<_>>();
        (vals, vecs)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Vec::new();
        }
        self.to_faer().singular_values()
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// exp(G) for an anti-Hermitian generator G (G† = −G).
///
/// iG is Hermitian, so exp(G) = U diag(e^{−iλ}) U† with iG = U diag(λ) U†.
/// The result is unitary up to floating-point roundoff regardless of how the
/// generator was truncated.
pub fn expm_anti_hermitian(gen: &CMat) -> CMat {
    assert!(gen.is_square());
    let n = gen.rows();
    let defect = gen.add(&gen.dagger()).max_abs();
    assert!(
        defect < 1e-12 * (1.0 + gen.max_abs()),
        "generator is not anti-Hermitian (defect {defect:.3e})"
    );
    let h = gen.scale(C64::new(0.0, 1.0));
    let (vals, vecs) = h.eigh();
    let mut phased = Mat::<c64>::zeros(n, n);
    for j in 0..n {
        let phase = C64::from_polar(1.0, -vals[j]);
        for i in 0..n {
            let z = vecs[(i, j)] * phase;
            phased[(i, j)] = c64::new(z.re, z.im);
        }
    }
    let u = vecs.to_faer();
    CMat::from_faer_ref(&(&phased * &u.adjoint()))
}

/// Eigenvalues of the Hermitian difference `a − b`, ascending.
pub fn eigvalsh_diff(a: &CMat, b: &CMat) -> Vec<f64> {
    a.sub(b).eigvalsh()
}
