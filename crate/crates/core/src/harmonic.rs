//! Signals on a finite group and the matrix-valued Fourier transform.
//!
//! Haar measure is the uniform probability measure, so
//! `⟨u, v⟩ = (1/|G|) Σ_x u(x) v(x)*` and `δ_e` takes the value `|G|` at the
//! identity. Fourier coefficients are `û(η) = (1/|G|) Σ_x u(x) η(x)*` and the
//! inverse is `u(x) = Σ_η d_η tr(η(x) û(η))`.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{block_adj_mul, block_mul, trace_mul, trace_mul_adj, CMatrix};
use crate::scalar::{cone, czero, creal, Real};

/// A complex function on `G`.
#[derive(Clone, Debug)]
pub struct Signal<T> {
    group: Arc<Group<T>>,
    values: Vec<Complex<T>>,
}

impl<T: Real> Signal<T> {
    pub fn new(group: Arc<Group<T>>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: values.len() });
        }
        Ok(Self { group, values })
    }

    pub fn from_fn(group: &Arc<Group<T>>, f: impl FnMut(usize) -> Complex<T>) -> Self {
        let values = (0..group.order()).map(f).collect();
        Self { group: group.clone(), values }
    }

    pub fn from_real(group: &Arc<Group<T>>, values: &[T]) -> Result<Self> {
        Self::new(group.clone(), values.iter().map(|&v| creal(v)).collect())
    }

    pub fn zeros(group: &Arc<Group<T>>) -> Self {
        Self::from_fn(group, |_| czero())
    }

    /// The all-ones signal `𝟏`.
    pub fn constant(group: &Arc<Group<T>>) -> Self {
        Self::from_fn(group, |_| cone())
    }

    /// `δ_e`, equal to `|G|` at the identity so that its Haar integral is 1.
    pub fn delta(group: &Arc<Group<T>>) -> Self {
        let e = group.identity();
        let n = T::from_usize_lossy(group.order());
        Self::from_fn(group, |x| if x == e { creal(n) } else { czero() })
    }

    /// Real and imaginary parts drawn uniformly from `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(group: &Arc<Group<T>>, rng: &mut R) -> Self {
        Self::from_fn(group, |_| {
            Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)))
        })
    }

    pub fn group(&self) -> &Arc<Group<T>> {
        &self.group
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> Complex<T> {
        self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Haar `L²` norm.
    pub fn norm(&self) -> T {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<T>() * self.group.inv_order()).sqrt()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|&z| z * s).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|z| z.conj()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { group: self.group.clone(), values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self { group: self.group.clone(), values })
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_diff(&self, other: &Self) -> T {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    /// Left translate `x ↦ u(s⁻¹x)`.
    pub fn translate(&self, s: usize) -> Self {
        let si = self.group.inv(s);
        let g = self.group.clone();
        Self::from_fn(&g, |x| self.values[g.mul(si, x)])
    }

    /// True when every imaginary part is below `tol`.
    pub fn is_real(&self, tol: T) -> bool {
        self.values.iter().all(|z| z.im.abs() <= tol)
    }
}

pub(crate) fn check_same<T: Real>(a: &Arc<Group<T>>, b: &Arc<Group<T>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.compatible(b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `(1/|G|) Σ_x u(x) v(x)*`
pub fn haar_inner<T: Real>(u: &Signal<T>, v: &Signal<T>) -> Result<Complex<T>> {
    check_same(&u.group, &v.group)?;
    let s = u.values.iter().zip(&v.values).fold(czero(), |acc: Complex<T>, (a, b)| acc + a * b.conj());
    Ok(s * u.group.inv_order())
}

/// One `d_η×d_η` block per irrep, stored back to back.
#[derive(Clone, Debug)]
pub struct FourierCoefficients<T> {
    group: Arc<Group<T>>,
    data: Vec<Complex<T>>,
}

impl<T: Real> FourierCoefficients<T> {
    pub fn zeros(group: &Arc<Group<T>>) -> Self {
        Self { group: group.clone(), data: vec![czero(); group.order()] }
    }

    /// Builds coefficients from one matrix per irrep.
    pub fn from_blocks(group: &Arc<Group<T>>, blocks: &[CMatrix<T>]) -> Result<Self> {
        if blocks.len() != group.n_irreps() {
            return Err(Error::DimensionMismatch { expected: group.n_irreps(), found: blocks.len() });
        }
        let mut c = Self::zeros(group);
        for (eta, b) in blocks.iter().enumerate() {
            let d = group.dim(eta);
            if b.rows() != d || b.cols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: b.rows() });
            }
            c.block_mut(eta).copy_from_slice(b.as_slice());
        }
        Ok(c)
    }

    /// `c(η) = I` for every irrep, the coefficients of `δ_e`.
    pub fn identity(group: &Arc<Group<T>>) -> Self {
        let mut c = Self::zeros(group);
        for eta in 0..group.n_irreps() {
            let d = group.dim(eta);
            let b = c.block_mut(eta);
            for i in 0..d {
                b[i * d + i] = cone();
            }
        }
        c
    }

    pub fn random<R: Rng + ?Sized>(group: &Arc<Group<T>>, rng: &mut R) -> Self {
        let data = (0..group.order())
            .map(|_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
            .collect();
        Self { group: group.clone(), data }
    }

    pub fn group(&self) -> &Arc<Group<T>> {
        &self.group
    }

    #[inline]
    pub fn block(&self, eta: usize) -> &[Complex<T>] {
        let d = self.group.dim(eta);
        let o = self.group.offset(eta);
        &self.data[o..o + d * d]
    }

    #[inline]
    pub fn block_mut(&mut self, eta: usize) -> &mut [Complex<T>] {
        let d = self.group.dim(eta);
        let o = self.group.offset(eta);
        &mut self.data[o..o + d * d]
    }

    pub fn matrix(&self, eta: usize) -> CMatrix<T> {
        CMatrix::from_block(self.group.dim(eta), self.block(eta))
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn max_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }
}

/// `û(η) = (1/|G|) Σ_x u(x) η(x)*`
pub fn fourier<T: Real>(u: &Signal<T>) -> FourierCoefficients<T> {
    let g = &u.group;
    let inv_n = g.inv_order();
    let mut c = FourierCoefficients::zeros(g);
    for eta in 0..g.n_irreps() {
        let irrep = g.irrep(eta);
        let d = irrep.dim();
        let block = c.block_mut(eta);
        for x in 0..g.order() {
            let ux = u.values[x];
            let m = irrep.at(x);
            // η(x)* entry (j,k) = conj(η(x)_{kj})
            for j in 0..d {
                for k in 0..d {
                    block[j * d + k] += ux * m[k * d + j].conj();
                }
            }
        }
        for z in block.iter_mut() {
            *z *= inv_n;
        }
    }
    c
}

/// `u(x) = Σ_η d_η tr(η(x) c(η))`
pub fn inverse_fourier<T: Real>(c: &FourierCoefficients<T>) -> Signal<T> {
    let g = c.group.clone();
    Signal::from_fn(&g, |x| {
        (0..g.n_irreps()).fold(czero(), |acc, eta| {
            let d = g.dim(eta);
            acc + trace_mul(g.irrep(eta).at(x), c.block(eta), d) * T::from_usize_lossy(d)
        })
    })
}

/// `Σ_η d_η tr c(η)`; recovers `u(e)` from `û`.
pub fn nc_integral<T: Real>(c: &FourierCoefficients<T>) -> Complex<T> {
    let g = &c.group;
    (0..g.n_irreps()).fold(czero(), |acc, eta| {
        let d = g.dim(eta);
        let b = c.block(eta);
        let tr = (0..d).fold(czero::<T>(), |t, i| t + b[i * d + i]);
        acc + tr * T::from_usize_lossy(d)
    })
}

/// `Σ_η d_η tr(c(η) d(η)*)`
pub fn plancherel_inner<T: Real>(c: &FourierCoefficients<T>, d: &FourierCoefficients<T>) -> Result<Complex<T>> {
    check_same(&c.group, &d.group)?;
    let g = &c.group;
    Ok((0..g.n_irreps()).fold(czero(), |acc, eta| {
        let de = g.dim(eta);
        acc + trace_mul_adj(c.block(eta), d.block(eta), de) * T::from_usize_lossy(de)
    }))
}

/// `(u∗v)(x) = (1/|G|) Σ_y u(xy⁻¹) v(y)`; on the Fourier side `(u∗v)^ = v̂ û`.
pub fn convolve<T: Real>(u: &Signal<T>, v: &Signal<T>) -> Result<Signal<T>> {
    check_same(&u.group, &v.group)?;
    let g = u.group.clone();
    let inv_n = g.inv_order();
    Ok(Signal::from_fn(&g, |x| {
        (0..g.order()).fold(czero(), |acc, y| acc + u.values[g.mul(x, g.inv(y))] * v.values[y]) * inv_n
    }))
}

/// Blockwise product `a(η) b(η)` of two coefficient sets.
pub fn coefficient_product<T: Real>(a: &FourierCoefficients<T>, b: &FourierCoefficients<T>) -> Result<FourierCoefficients<T>> {
    check_same(&a.group, &b.group)?;
    let mut out = FourierCoefficients::zeros(&a.group);
    for eta in 0..a.group.n_irreps() {
        let d = a.group.dim(eta);
        let mut tmp = vec![czero(); d * d];
        block_mul(a.block(eta), b.block(eta), &mut tmp, d);
        out.block_mut(eta).copy_from_slice(&tmp);
    }
    Ok(out)
}

/// Blockwise `a(η)* b(η)`.
pub fn coefficient_adj_product<T: Real>(a: &FourierCoefficients<T>, b: &FourierCoefficients<T>) -> Result<FourierCoefficients<T>> {
    check_same(&a.group, &b.group)?;
    let mut out = FourierCoefficients::zeros(&a.group);
    for eta in 0..a.group.n_irreps() {
        let d = a.group.dim(eta);
        let mut tmp = vec![czero(); d * d];
        block_adj_mul(a.block(eta), b.block(eta), &mut tmp, d);
        out.block_mut(eta).copy_from_slice(&tmp);
    }
    Ok(out)
}
