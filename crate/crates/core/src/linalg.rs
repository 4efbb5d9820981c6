//! Small dense complex matrices.
//!
//! Irrep blocks are tiny (a handful of rows) and operator kernels are at most
//! a few hundred rows, so everything here is plain row-major storage with
//! straightforward loops. The Hermitian eigensolver is cyclic Jacobi, which
//! has good absolute accuracy for the PSD and singularity tests built on it.

use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::scalar::{cone, czero, Real};

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![czero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Wraps row-major data. Panics if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    /// Copies a square `d×d` block stored row-major in a slice.
    pub fn from_block(d: usize, block: &[Complex<T>]) -> Self {
        Self::from_vec(d, d, block[..d * d].to_vec())
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

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == czero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len(), "matvec shape");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(czero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| *z * s).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, rhs.rows, rhs.cols);
        Self::from_fn(r1 * r2, c1 * c2, |r, c| self[(r / r2, c / c2)] * rhs[(r % r2, c % c2)])
    }

    /// `max |(M M*) - I|` entrywise.
    pub fn unitarity_defect(&self) -> T {
        self.matmul(&self.adjoint()).sub(&Self::identity(self.rows)).max_abs()
    }

    pub fn hermitian_part(&self) -> Self {
        let half = Complex::new(T::lit(0.5), T::zero());
        self.add(&self.adjoint()).scale(half)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    ///
    /// Returns `None` when a pivot vanishes exactly.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().partial_cmp(&a[(j, col)].norm()).unwrap())
                .unwrap();
            if a[(pivot, col)].norm() == T::zero() {
                return None;
            }
            if pivot != col {
                for k in 0..n {
                    a.data.swap(pivot * n + k, col * n + k);
                    inv.data.swap(pivot * n + k, col * n + k);
                }
            }
            let p = cone::<T>() / a[(col, col)];
            for k in 0..n {
                a[(col, k)] *= p;
                inv[(col, k)] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == czero() {
                    continue;
                }
                for k in 0..n {
                    let ak = a[(col, k)];
                    let ik = inv[(col, k)];
                    a[(r, k)] -= f * ak;
                    inv[(r, k)] -= f * ik;
                }
            }
        }
        Some(inv)
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Only the Hermitian part is used. Eigenvalues are returned in ascending
    /// order together with the matching unit eigenvectors as columns.
    pub fn hermitian_eigen(&self) -> (Vec<T>, Self) {
        assert!(self.is_square(), "eigen of non-square matrix");
        let n = self.rows;
        let mut a = self.hermitian_part();
        let mut v = Self::identity(n);
        let scale = a.frobenius();
        if n <= 1 || scale == T::zero() {
            let vals = (0..n).map(|i| a[(i, i)].re).collect();
            return (vals, v);
        }
        let eps = T::epsilon();
        for _sweep in 0..100 {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= eps * scale * T::lit(1e-2) {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let g = a[(p, q)];
                    let gabs = g.norm();
                    if gabs <= eps * eps * scale {
                        continue;
                    }
                    let phase = g / gabs;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (T::lit(2.0) * gabs);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on (p, q)
                    let jpp = Complex::new(c, T::zero());
                    let jpq = Complex::new(s, T::zero());
                    let jqp = -phase.conj() * s;
                    let jqq = phase.conj() * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * jpp + akq * jqp;
                        a[(k, q)] = akp * jpq + akq * jqq;
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * jpp + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * jqq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                    }
                    a[(p, q)] = czero();
                    a[(q, p)] = czero();
                    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
        let vals = order.iter().map(|&i| a[(i, i)].re).collect();
        let vecs = Self::from_fn(n, n, |r, c| v[(r, order[c])]);
        (vals, vecs)
    }

    /// Singular values in ascending order.
    ///
    /// Computed from the Hermitian dilation `[[0, A], [A*, 0]]`, whose
    /// eigenvalues are `±σ`; this keeps absolute accuracy near `ε‖A‖` for
    /// small singular values instead of the `√ε` lost by squaring.
    pub fn singular_values(&self) -> Vec<T> {
        let (r, c) = (self.rows, self.cols);
        let n = r + c;
        let mut dil = Self::zeros(n, n);
        for i in 0..r {
            for j in 0..c {
                dil[(i, r + j)] = self[(i, j)];
                dil[(r + j, i)] = self[(i, j)].conj();
            }
        }
        let (vals, _) = dil.hermitian_eigen();
        let k = r.min(c);
        let mut sv: Vec<T> = vals[n - k..].iter().map(|v| v.max(T::zero())).collect();
        sv.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sv
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> T {
        if self.rows == 1 && self.cols == 1 {
            return self.data[0].norm();
        }
        self.singular_values().last().copied().unwrap_or_else(T::zero)
    }

    /// Unit vector `z` with `self · z ≈ 0`, taken as the right singular
    /// vector of the smallest singular value.
    pub fn null_vector(&self) -> Vec<Complex<T>> {
        let gram = self.adjoint().matmul(self);
        let (_, vecs) = gram.hermitian_eigen();
        (0..vecs.rows).map(|r| vecs[(r, 0)]).collect()
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.cols + c]
    }
}

// Slice kernels on square row-major blocks. These sit on the hot paths of the
// transforms, where allocating a `CMatrix` per block would dominate.

/// `out = a · b` for `d×d` blocks.
#[inline]
pub(crate) fn block_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], out: &mut [Complex<T>], d: usize) {
    for i in 0..d {
        for j in 0..d {
            let mut acc = czero();
            for k in 0..d {
                acc += a[i * d + k] * b[k * d + j];
            }
            out[i * d + j] = acc;
        }
    }
}

/// `out = a* · b` for `d×d` blocks.
#[inline]
pub(crate) fn block_adj_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], out: &mut [Complex<T>], d: usize) {
    for i in 0..d {
        for j in 0..d {
            let mut acc = czero();
            for k in 0..d {
                acc += a[k * d + i].conj() * b[k * d + j];
            }
            out[i * d + j] = acc;
        }
    }
}

/// `tr(a · b)`.
#[inline]
pub(crate) fn trace_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], d: usize) -> Complex<T> {
    let mut acc = czero();
    for i in 0..d {
        for k in 0..d {
            acc += a[i * d + k] * b[k * d + i];
        }
    }
    acc
}

/// `tr(a · b*)`.
#[inline]
pub(crate) fn trace_mul_adj<T: Real>(a: &[Complex<T>], b: &[Complex<T>], d: usize) -> Complex<T> {
    a[..d * d].iter().zip(&b[..d * d]).fold(czero(), |acc, (x, y)| acc + *x * y.conj())
}
