//! Time-frequency plane `G×Ĝ`, ambiguity plane `Ĝ×G`, and the symplectic
//! Fourier transform between them.
//!
//! Both planes store one row of length `|G|` per group element: for a
//! [`TFFunction`] the row is indexed by time `x`, for an
//! [`AmbiguityFunction`] by lag `y`. Inside a row the irrep blocks sit at
//! [`Group::offset`].

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::harmonic::check_same;
use crate::linalg::{block_mul, trace_mul, trace_mul_adj, CMatrix};
use crate::scalar::{cone, czero, Real};

macro_rules! plane_common {
    ($ty:ident) => {
        impl<T: Real> $ty<T> {
            pub fn zeros(group: &Arc<Group<T>>) -> Self {
                let n = group.order();
                Self { group: group.clone(), data: vec![czero(); n * n] }
            }

            /// Wraps raw row-major data of length `|G|²`.
            pub fn from_raw(group: &Arc<Group<T>>, data: Vec<Complex<T>>) -> Result<Self> {
                let n = group.order();
                if data.len() != n * n {
                    return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
                }
                Ok(Self { group: group.clone(), data })
            }

            /// Entries drawn uniformly from `[-1, 1)²`.
            pub fn random<R: Rng + ?Sized>(group: &Arc<Group<T>>, rng: &mut R) -> Self {
                let n = group.order();
                let data = (0..n * n)
                    .map(|_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
                    .collect();
                Self { group: group.clone(), data }
            }

            pub fn group(&self) -> &Arc<Group<T>> {
                &self.group
            }

            pub fn as_slice(&self) -> &[Complex<T>] {
                &self.data
            }

            pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
                &mut self.data
            }

            /// Row of all irrep blocks at one group element.
            #[inline]
            pub fn row(&self, g: usize) -> &[Complex<T>] {
                let n = self.group.order();
                &self.data[g * n..(g + 1) * n]
            }

            #[inline]
            fn index(&self, g: usize, eta: usize) -> std::ops::Range<usize> {
                let n = self.group.order();
                let d = self.group.dim(eta);
                let o = g * n + self.group.offset(eta);
                o..o + d * d
            }

            pub fn scale(&self, s: Complex<T>) -> Self {
                Self { group: self.group.clone(), data: self.data.iter().map(|&z| z * s).collect() }
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                check_same(&self.group, &other.group)?;
                let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
                Ok(Self { group: self.group.clone(), data })
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                check_same(&self.group, &other.group)?;
                let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
                Ok(Self { group: self.group.clone(), data })
            }

            /// Largest entrywise modulus of `self − other`.
            pub fn max_diff(&self, other: &Self) -> T {
                self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
            }

            pub fn max_abs(&self) -> T {
                self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
            }

            /// Blockwise adjoint.
            pub fn adjoint(&self) -> Self {
                let g = &self.group;
                let mut out = Self::zeros(g);
                for p in 0..g.order() {
                    for eta in 0..g.n_irreps() {
                        let d = g.dim(eta);
                        let r = self.index(p, eta);
                        let src = &self.data[r.clone()];
                        let dst = &mut out.data[r];
                        for i in 0..d {
                            for j in 0..d {
                                dst[i * d + j] = src[j * d + i].conj();
                            }
                        }
                    }
                }
                out
            }
        }
    };
}

/// Matrix-valued function `a(x, η)` on `G×Ĝ`.
#[derive(Clone, Debug)]
pub struct TFFunction<T> {
    group: Arc<Group<T>>,
    data: Vec<Complex<T>>,
}

plane_common!(TFFunction);

impl<T: Real> TFFunction<T> {
    /// `a(x, η) = I` everywhere; the Kohn–Nirenberg symbol of the identity.
    pub fn identity(group: &Arc<Group<T>>) -> Self {
        let mut a = Self::zeros(group);
        for x in 0..group.order() {
            for eta in 0..group.n_irreps() {
                let d = group.dim(eta);
                let b = a.block_mut(x, eta);
                for i in 0..d {
                    b[i * d + i] = cone();
                }
            }
        }
        a
    }

    #[inline]
    pub fn block(&self, x: usize, eta: usize) -> &[Complex<T>] {
        &self.data[self.index(x, eta)]
    }

    #[inline]
    pub fn block_mut(&mut self, x: usize, eta: usize) -> &mut [Complex<T>] {
        let r = self.index(x, eta);
        &mut self.data[r]
    }

    pub fn matrix(&self, x: usize, eta: usize) -> CMatrix<T> {
        CMatrix::from_block(self.group.dim(eta), self.block(x, eta))
    }

    /// Haar `L²` norm on `G×Ĝ`.
    pub fn norm(&self) -> T {
        tf_inner(self, self).map(|z| z.re.max(T::zero()).sqrt()).unwrap_or_else(|_| T::zero())
    }

    /// `∬ a = (1/|G|) Σ_x Σ_η d_η tr a(x,η)`
    pub fn integral(&self) -> Complex<T> {
        let g = &self.group;
        let mut acc = czero();
        for x in 0..g.order() {
            for eta in 0..g.n_irreps() {
                let d = g.dim(eta);
                let b = self.block(x, eta);
                let tr = (0..d).fold(czero::<T>(), |t, i| t + b[i * d + i]);
                acc += tr * T::from_usize_lossy(d);
            }
        }
        acc * g.inv_order()
    }

    /// Time margin `Σ_η d_η tr a(x, η)`.
    pub fn time_margin(&self) -> Vec<Complex<T>> {
        let g = &self.group;
        (0..g.order())
            .map(|x| {
                (0..g.n_irreps()).fold(czero(), |acc, eta| {
                    let d = g.dim(eta);
                    let b = self.block(x, eta);
                    acc + (0..d).fold(czero::<T>(), |t, i| t + b[i * d + i]) * T::from_usize_lossy(d)
                })
            })
            .collect()
    }

    /// Frequency margin `(1/|G|) Σ_x a(x, η)`, one block per irrep.
    pub fn frequency_margin(&self) -> Vec<CMatrix<T>> {
        let g = &self.group;
        (0..g.n_irreps())
            .map(|eta| {
                let d = g.dim(eta);
                let mut m = CMatrix::zeros(d, d);
                for x in 0..g.order() {
                    for (o, z) in m.as_mut_slice().iter_mut().zip(self.block(x, eta)) {
                        *o += *z;
                    }
                }
                m.scale(Complex::new(g.inv_order(), T::zero()))
            })
            .collect()
    }
}

/// Matrix-valued function `A(ξ, y)` on `Ĝ×G`.
#[derive(Clone, Debug)]
pub struct AmbiguityFunction<T> {
    group: Arc<Group<T>>,
    data: Vec<Complex<T>>,
}

plane_common!(AmbiguityFunction);

impl<T: Real> AmbiguityFunction<T> {
    pub fn from_fn(group: &Arc<Group<T>>, mut f: impl FnMut(usize, usize) -> CMatrix<T>) -> Result<Self> {
        let mut a = Self::zeros(group);
        for y in 0..group.order() {
            for xi in 0..group.n_irreps() {
                let m = f(xi, y);
                let d = group.dim(xi);
                if m.rows() != d || m.cols() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: m.rows() });
                }
                a.block_mut(xi, y).copy_from_slice(m.as_slice());
            }
        }
        Ok(a)
    }

    /// Builds a table on a group whose irreps are all one-dimensional.
    pub fn from_scalar_fn(group: &Arc<Group<T>>, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Result<Self> {
        if group.dims().iter().any(|&d| d != 1) {
            return Err(Error::InvalidArgument("scalar kernel table needs a commutative group".into()));
        }
        let n = group.order();
        let mut data = Vec::with_capacity(n * n);
        for y in 0..n {
            for xi in 0..n {
                data.push(f(xi, y));
            }
        }
        Ok(Self { group: group.clone(), data })
    }

    /// `A(ξ, y) = I` everywhere.
    pub fn identity(group: &Arc<Group<T>>) -> Self {
        let mut a = Self::zeros(group);
        for y in 0..group.order() {
            for xi in 0..group.n_irreps() {
                let d = group.dim(xi);
                let b = a.block_mut(xi, y);
                for i in 0..d {
                    b[i * d + i] = cone();
                }
            }
        }
        a
    }

    #[inline]
    pub fn block(&self, xi: usize, y: usize) -> &[Complex<T>] {
        &self.data[self.index(y, xi)]
    }

    #[inline]
    pub fn block_mut(&mut self, xi: usize, y: usize) -> &mut [Complex<T>] {
        let r = self.index(y, xi);
        &mut self.data[r]
    }

    pub fn matrix(&self, xi: usize, y: usize) -> CMatrix<T> {
        CMatrix::from_block(self.group.dim(xi), self.block(xi, y))
    }

    /// Scalar entry of a one-dimensional block.
    #[inline]
    pub fn scalar(&self, xi: usize, y: usize) -> Complex<T> {
        self.block(xi, y)[0]
    }

    /// Blockwise product `self(ξ,y) · other(ξ,y)`.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let g = &self.group;
        let mut out = Self::zeros(g);
        let mut tmp = Vec::new();
        for y in 0..g.order() {
            for xi in 0..g.n_irreps() {
                let d = g.dim(xi);
                tmp.resize(d * d, czero());
                block_mul(self.block(xi, y), other.block(xi, y), &mut tmp, d);
                out.block_mut(xi, y).copy_from_slice(&tmp);
            }
        }
        Ok(out)
    }

    /// `max_{ξ,y} ‖A(ξ,y)‖₂`, the `L∞` norm on the ambiguity plane.
    pub fn linf_norm(&self) -> T {
        let g = &self.group;
        let mut worst = T::zero();
        for y in 0..g.order() {
            for xi in 0..g.n_irreps() {
                let v = if g.dim(xi) == 1 { self.scalar(xi, y).norm() } else { self.matrix(xi, y).spectral_norm() };
                worst = worst.max(v);
            }
        }
        worst
    }

    /// Haar `L²` norm on `Ĝ×G`.
    pub fn norm(&self) -> T {
        ambiguity_inner(self, self).map(|z| z.re.max(T::zero()).sqrt()).unwrap_or_else(|_| T::zero())
    }
}

/// Scalar time-lag kernel `k(x, y)` on `G×G`, stored row-major in `x`.
#[derive(Clone, Debug)]
pub struct TimeLagKernel<T> {
    group: Arc<Group<T>>,
    data: Vec<Complex<T>>,
}

impl<T: Real> TimeLagKernel<T> {
    pub fn from_fn(group: &Arc<Group<T>>, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let n = group.order();
        let mut data = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                data.push(f(x, y));
            }
        }
        Self { group: group.clone(), data }
    }

    pub fn group(&self) -> &Arc<Group<T>> {
        &self.group
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> Complex<T> {
        self.data[x * self.group.order() + y]
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn max_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }
}

/// `Fa(ξ,y) = (1/|G|) Σ_x ξ(x)* s(x,y)` with `s(x,y) = Σ_η d_η tr(η(y) a(x,η))`.
pub fn symplectic_fourier<T: Real>(a: &TFFunction<T>) -> AmbiguityFunction<T> {
    let g = a.group.clone();
    let n = g.order();
    // s[x*n + y]
    let s: Vec<Complex<T>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let g = &g;
            (0..n).map(move |y| {
                (0..g.n_irreps()).fold(czero(), |acc, eta| {
                    let d = g.dim(eta);
                    acc + trace_mul(g.irrep(eta).at(y), a.block(x, eta), d) * T::from_usize_lossy(d)
                })
            })
        })
        .collect();
    let inv_n = g.inv_order();
    let mut out = AmbiguityFunction::zeros(&g);
    out.data.par_chunks_mut(n).enumerate().for_each(|(y, row)| {
        for xi in 0..g.n_irreps() {
            let d = g.dim(xi);
            let o = g.offset(xi);
            let irrep = g.irrep(xi);
            let block = &mut row[o..o + d * d];
            for x in 0..n {
                let sx = s[x * n + y];
                let m = irrep.at(x);
                for j in 0..d {
                    for k in 0..d {
                        block[j * d + k] += m[k * d + j].conj() * sx;
                    }
                }
            }
            for z in block.iter_mut() {
                *z *= inv_n;
            }
        }
    });
    out
}

/// `a(x,η) = (1/|G|) Σ_y η(y)* t(x,y)` with `t(x,y) = Σ_ξ d_ξ tr(ξ(x) A(ξ,y))`.
pub fn inverse_symplectic_fourier<T: Real>(a: &AmbiguityFunction<T>) -> TFFunction<T> {
    let g = a.group.clone();
    let n = g.order();
    // t[x*n + y]
    let t: Vec<Complex<T>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let g = &g;
            (0..n).map(move |y| {
                (0..g.n_irreps()).fold(czero(), |acc, xi| {
                    let d = g.dim(xi);
                    acc + trace_mul(g.irrep(xi).at(x), a.block(xi, y), d) * T::from_usize_lossy(d)
                })
            })
        })
        .collect();
    let inv_n = g.inv_order();
    let mut out = TFFunction::zeros(&g);
    out.data.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
        for eta in 0..g.n_irreps() {
            let d = g.dim(eta);
            let o = g.offset(eta);
            let irrep = g.irrep(eta);
            let block = &mut row[o..o + d * d];
            for y in 0..n {
                let txy = t[x * n + y];
                let m = irrep.at(y);
                for j in 0..d {
                    for k in 0..d {
                        block[j * d + k] += m[k * d + j].conj() * txy;
                    }
                }
            }
            for z in block.iter_mut() {
                *z *= inv_n;
            }
        }
    });
    out
}

/// `⟨b, a⟩ = (1/|G|) Σ_x Σ_η d_η tr(b(x,η) a(x,η)*)`
pub fn tf_inner<T: Real>(b: &TFFunction<T>, a: &TFFunction<T>) -> Result<Complex<T>> {
    check_same(&a.group, &b.group)?;
    let g = &a.group;
    let mut acc = czero();
    for x in 0..g.order() {
        for eta in 0..g.n_irreps() {
            let d = g.dim(eta);
            acc += trace_mul_adj(b.block(x, eta), a.block(x, eta), d) * T::from_usize_lossy(d);
        }
    }
    Ok(acc * g.inv_order())
}

/// `⟨A, B⟩ = Σ_ξ d_ξ (1/|G|) Σ_y tr(A(ξ,y) B(ξ,y)*)`
pub fn ambiguity_inner<T: Real>(a: &AmbiguityFunction<T>, b: &AmbiguityFunction<T>) -> Result<Complex<T>> {
    check_same(&a.group, &b.group)?;
    let g = &a.group;
    let mut acc = czero();
    for y in 0..g.order() {
        for xi in 0..g.n_irreps() {
            let d = g.dim(xi);
            acc += trace_mul_adj(a.block(xi, y), b.block(xi, y), d) * T::from_usize_lossy(d);
        }
    }
    Ok(acc * g.inv_order())
}

/// `a ∗ b = F⁻¹((Fb)(Fa))`
pub fn tf_convolve<T: Real>(a: &TFFunction<T>, b: &TFFunction<T>) -> Result<TFFunction<T>> {
    check_same(&a.group, &b.group)?;
    let prod = symplectic_fourier(b).pointwise_mul(&symplectic_fourier(a))?;
    Ok(inverse_symplectic_fourier(&prod))
}

/// `k(x,y) = Σ_ξ d_ξ tr(ξ(x) φ(ξ,y))`
pub fn ambiguity_to_timelag<T: Real>(phi: &AmbiguityFunction<T>) -> TimeLagKernel<T> {
    let g = phi.group.clone();
    let n = g.order();
    let data = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let g = &g;
            (0..n).map(move |y| {
                (0..g.n_irreps()).fold(czero(), |acc, xi| {
                    let d = g.dim(xi);
                    acc + trace_mul(g.irrep(xi).at(x), phi.block(xi, y), d) * T::from_usize_lossy(d)
                })
            })
        })
        .collect();
    TimeLagKernel { group: g.clone(), data }
}

/// `φ(ξ,y) = (1/|G|) Σ_x ξ(x)* k(x,y)`
pub fn timelag_to_ambiguity<T: Real>(k: &TimeLagKernel<T>) -> AmbiguityFunction<T> {
    let g = k.group.clone();
    let n = g.order();
    let inv_n = g.inv_order();
    let mut out = AmbiguityFunction::zeros(&g);
    out.data.par_chunks_mut(n).enumerate().for_each(|(y, row)| {
        for xi in 0..g.n_irreps() {
            let d = g.dim(xi);
            let o = g.offset(xi);
            let irrep = g.irrep(xi);
            let block = &mut row[o..o + d * d];
            for x in 0..n {
                let kxy = k.at(x, y);
                let m = irrep.at(x);
                for j in 0..d {
                    for kk in 0..d {
                        block[j * d + kk] += m[kk * d + j].conj() * kxy;
                    }
                }
            }
            for z in block.iter_mut() {
                *z *= inv_n;
            }
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symplectic_roundtrip_d3() {
        let g = build_dihedral::<f64>(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = TFFunction::random(&g, &mut rng);
        let fa = symplectic_fourier(&a);
        assert!(inverse_symplectic_fourier(&fa).max_diff(&a) < 1e-12);
        let na = tf_inner(&a, &a).unwrap().re;
        let nf = ambiguity_inner(&fa, &fa).unwrap().re;
        assert!((na - nf).abs() < 1e-12);
    }

    #[test]
    fn trivial_symbol_maps_to_trivial_block() {
        let g = build_cyclic::<f64>(4).unwrap();
        let mut a = TFFunction::zeros(&g);
        for x in 0..4 {
            a.block_mut(x, 0)[0] = cone();
        }
        let fa = symplectic_fourier(&a);
        for y in 0..4 {
            for xi in 0..4 {
                let want = if xi == 0 { 1.0 } else { 0.0 };
                assert!((fa.scalar(xi, y) - Complex::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn identity_kernel_is_dirac_in_time() {
        let g = build_dihedral::<f64>(3).unwrap();
        let k = ambiguity_to_timelag(&AmbiguityFunction::identity(&g));
        for x in 0..6 {
            for y in 0..6 {
                let want = if x == g.identity() { 6.0 } else { 0.0 };
                assert!((k.at(x, y) - Complex::new(want, 0.0)).norm() < 1e-13);
            }
        }
        assert!(timelag_to_ambiguity(&k).max_diff(&AmbiguityFunction::identity(&g)) < 1e-13);
    }

    #[test]
    fn convolution_with_constant_identity() {
        let g = build_dihedral::<f64>(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = TFFunction::random(&g, &mut rng);
        let lambda = symplectic_fourier(&a).block(g.trivial(), g.identity())[0];
        let c = tf_convolve(&a, &TFFunction::identity(&g)).unwrap();
        assert!(c.max_diff(&TFFunction::identity(&g).scale(lambda)) < 1e-12);
    }
}
