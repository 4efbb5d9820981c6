//! Quantization of time-frequency symbols into operators on `L²(G)`.
//!
//! An operator is stored through its kernel `K` with Haar-weighted action
//! `(Av)(x) = (1/|G|) Σ_y K(x,y) v(y)`, so the identity has `K = |G|·I`.
//! The `D`-quantization `a ↦ a^D` is characterised by
//! `⟨u, a^D v⟩ = ⟨D(u,v), a⟩` and computed as the Kohn–Nirenberg operator of
//! `F⁻¹(φ* · Fa)`.

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::harmonic::{check_same, Signal};
use crate::linalg::{trace_mul_adj, CMatrix};
use crate::scalar::{creal, czero, Real};
use crate::tfplane::{inverse_symplectic_fourier, symplectic_fourier, AmbiguityFunction, TFFunction, TimeLagKernel};
use crate::transforms::CohenKernel;

/// A linear operator on signals, held as its `|G|×|G|` kernel.
#[derive(Clone, Debug)]
pub struct GroupOperator<T> {
    group: Arc<Group<T>>,
    kernel: CMatrix<T>,
}

impl<T: Real> GroupOperator<T> {
    pub fn new(group: &Arc<Group<T>>, kernel: CMatrix<T>) -> Result<Self> {
        let n = group.order();
        if kernel.rows() != n || kernel.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: kernel.rows() });
        }
        Ok(Self { group: group.clone(), kernel })
    }

    pub fn from_fn(group: &Arc<Group<T>>, f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let n = group.order();
        Self { group: group.clone(), kernel: CMatrix::from_fn(n, n, f) }
    }

    /// Kernel `|G|·[x = y]`.
    pub fn identity(group: &Arc<Group<T>>) -> Self {
        let n = T::from_usize_lossy(group.order());
        Self::from_fn(group, |x, y| if x == y { creal(n) } else { czero() })
    }

    pub fn group(&self) -> &Arc<Group<T>> {
        &self.group
    }

    pub fn kernel(&self) -> &CMatrix<T> {
        &self.kernel
    }

    /// Matrix of the operator in the point basis, `K / |G|`.
    pub fn matrix(&self) -> CMatrix<T> {
        self.kernel.scale(creal(self.group.inv_order()))
    }

    pub fn apply(&self, v: &Signal<T>) -> Result<Signal<T>> {
        check_same(&self.group, v.group())?;
        let inv_n = self.group.inv_order();
        let out = self.kernel.matvec(v.values()).into_iter().map(|z| z * inv_n).collect();
        Signal::new(self.group.clone(), out)
    }

    /// `(AB)` with kernel `(1/|G|) Σ_z K_A(x,z) K_B(z,y)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let k = self.kernel.matmul(&other.kernel).scale(creal(self.group.inv_order()));
        Ok(Self { group: self.group.clone(), kernel: k })
    }

    /// Kernel `K(y,x)*`.
    pub fn adjoint(&self) -> Self {
        Self { group: self.group.clone(), kernel: self.kernel.adjoint() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        Ok(Self { group: self.group.clone(), kernel: self.kernel.add(&other.kernel) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        Ok(Self { group: self.group.clone(), kernel: self.kernel.sub(&other.kernel) })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { group: self.group.clone(), kernel: self.kernel.scale(s) }
    }

    /// Largest kernel-entry difference.
    pub fn max_diff(&self, other: &Self) -> T {
        self.kernel.sub(&other.kernel).max_abs()
    }

    /// Hilbert–Schmidt norm `sqrt((1/|G|²) Σ |K|²)`.
    pub fn hs_norm(&self) -> T {
        hs_inner(self, self).map(|z| z.re.max(T::zero()).sqrt()).unwrap_or_else(|_| T::zero())
    }
}

/// `(1/|G|) Σ_x K(x,x)`; the identity operator has trace `|G|`.
pub fn operator_trace<T: Real>(b: &GroupOperator<T>) -> Complex<T> {
    b.kernel.trace() * b.group.inv_order()
}

/// `(1/|G|²) Σ_{x,y} K₁(x,y) K₂(x,y)*`
pub fn hs_inner<T: Real>(a: &GroupOperator<T>, b: &GroupOperator<T>) -> Result<Complex<T>> {
    check_same(&a.group, &b.group)?;
    let inv = a.group.inv_order();
    let s = a.kernel.as_slice().iter().zip(b.kernel.as_slice()).fold(czero(), |acc: Complex<T>, (x, y)| acc + x * y.conj());
    Ok(s * inv * inv)
}

/// Kohn–Nirenberg operator `(a^R v)(x) = Σ_η d_η tr(η(x) a(x,η) v̂(η))`,
/// with kernel `K(x,y) = Σ_η d_η tr(η(x) a(x,η) η(y)*)`.
pub fn kn_operator<T: Real>(a: &TFFunction<T>) -> GroupOperator<T> {
    let g = a.group().clone();
    let n = g.order();
    let rows: Vec<Complex<T>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let g = &g;
            // η(x) a(x,η) per irrep
            let m: Vec<Vec<Complex<T>>> = (0..g.n_irreps())
                .map(|eta| {
                    let d = g.dim(eta);
                    let mut out = vec![czero(); d * d];
                    crate::linalg::block_mul(g.irrep(eta).at(x), a.block(x, eta), &mut out, d);
                    out
                })
                .collect();
            (0..n).map(move |y| {
                (0..g.n_irreps()).fold(czero(), |acc, eta| {
                    let d = g.dim(eta);
                    acc + trace_mul_adj(&m[eta], g.irrep(eta).at(y), d) * T::from_usize_lossy(d)
                })
            })
        })
        .collect();
    GroupOperator { group: g.clone(), kernel: CMatrix::from_vec(n, n, rows) }
}

/// Kohn–Nirenberg symbol `a(x,η) = η(x)* (Bη)(x)`.
pub fn kn_symbol<T: Real>(b: &GroupOperator<T>) -> TFFunction<T> {
    let g = b.group.clone();
    let n = g.order();
    let inv_n = g.inv_order();
    let rows: Vec<Vec<Complex<T>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut row = vec![czero(); n];
            for eta in 0..g.n_irreps() {
                let d = g.dim(eta);
                let irrep = g.irrep(eta);
                // (Bη)(x) = (1/|G|) Σ_y K(x,y) η(y)
                let mut be = vec![czero::<T>(); d * d];
                for y in 0..n {
                    let kxy = b.kernel[(x, y)];
                    for (o, e) in be.iter_mut().zip(irrep.at(y)) {
                        *o += kxy * e;
                    }
                }
                for z in be.iter_mut() {
                    *z *= inv_n;
                }
                let o = g.offset(eta);
                crate::linalg::block_adj_mul(irrep.at(x), &be, &mut row[o..o + d * d], d);
            }
            row
        })
        .collect();
    TFFunction::from_raw(&g, rows.concat()).expect("row layout matches group")
}

/// `a^D`: the Kohn–Nirenberg operator of `F⁻¹(φ* · Fa)`.
pub fn quantize<T: Real>(k: &CohenKernel<T>, a: &TFFunction<T>) -> Result<GroupOperator<T>> {
    check_same(k.group(), a.group())?;
    let fa = symplectic_fourier(a);
    let fb = k.phi().adjoint().pointwise_mul(&fa)?;
    Ok(kn_operator(&inverse_symplectic_fourier(&fb)))
}

/// Relative threshold below which a kernel block counts as singular.
fn singular_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(100.0))
}

fn block_singular_values<T: Real>(phi: &AmbiguityFunction<T>, xi: usize, y: usize) -> Vec<T> {
    if phi.group().dim(xi) == 1 {
        vec![phi.scalar(xi, y).norm()]
    } else {
        phi.matrix(xi, y).singular_values()
    }
}

/// The `(ξ, y)` pairs where `φ(ξ,y)` is singular relative to the largest
/// singular value over the whole table, or has condition number above `1e12`.
pub fn singular_blocks<T: Real>(k: &CohenKernel<T>) -> Vec<(usize, usize)> {
    let phi = k.phi();
    let g = phi.group();
    let mut sv = Vec::with_capacity(g.order() * g.n_irreps());
    let mut global = T::zero();
    for y in 0..g.order() {
        for xi in 0..g.n_irreps() {
            let s = block_singular_values(phi, xi, y);
            let hi = s.iter().copied().fold(T::zero(), T::max);
            let lo = s.iter().copied().fold(T::infinity(), T::min);
            global = global.max(hi);
            sv.push((xi, y, lo, hi));
        }
    }
    let tol = singular_tol::<T>();
    let mut out: Vec<(usize, usize)> = sv
        .into_iter()
        .filter(|&(_, _, lo, hi)| lo <= tol * global || hi > lo / tol)
        .map(|(xi, y, _, _)| (xi, y))
        .collect();
    out.sort_unstable();
    out
}

/// Inverse of [`quantize`]: the symbol `b` with `b^D = B`.
pub fn dequantize<T: Real>(k: &CohenKernel<T>, b: &GroupOperator<T>) -> Result<TFFunction<T>> {
    check_same(k.group(), b.group())?;
    let singular = singular_blocks(k);
    if !singular.is_empty() {
        return Err(Error::SingularKernel { pairs: singular });
    }
    let g = k.group().clone();
    let fa = symplectic_fourier(&kn_symbol(b));
    let mut fb = AmbiguityFunction::zeros(&g);
    for y in 0..g.order() {
        for xi in 0..g.n_irreps() {
            let d = g.dim(xi);
            if d == 1 {
                fb.block_mut(xi, y)[0] = fa.scalar(xi, y) / k.phi().scalar(xi, y).conj();
            } else {
                let inv = k.phi().matrix(xi, y).adjoint().inverse().ok_or_else(|| Error::SingularKernel { pairs: vec![(xi, y)] })?;
                let m = inv.matmul(&fa.matrix(xi, y));
                fb.block_mut(xi, y).copy_from_slice(m.as_slice());
            }
        }
    }
    Ok(inverse_symplectic_fourier(&fb))
}

/// A unit-norm symbol annihilated by quantization, supported in the
/// ambiguity plane on the singular blocks of `φ`; `None` when `φ` has none.
pub fn null_symbol_witness<T: Real>(k: &CohenKernel<T>) -> Option<TFFunction<T>> {
    let singular = singular_blocks(k);
    if singular.is_empty() {
        return None;
    }
    let g = k.group().clone();
    let mut fb = AmbiguityFunction::zeros(&g);
    for &(xi, y) in &singular {
        let d = g.dim(xi);
        // φ* v = 0, block = v e₁ᵀ
        let v = k.phi().matrix(xi, y).adjoint().null_vector();
        let blk = fb.block_mut(xi, y);
        for r in 0..d {
            blk[r * d] = v[r];
        }
    }
    let b = inverse_symplectic_fourier(&fb);
    let nb = b.norm();
    if nb <= T::zero() {
        return None;
    }
    Some(b.scale(creal(T::one() / nb)))
}

/// `|tr(a^D) − ∬ a|`
pub fn trace_identity_check<T: Real>(k: &CohenKernel<T>, a: &TFFunction<T>) -> Result<T> {
    let op = quantize(k, a)?;
    Ok((operator_trace(&op) - a.integral()).norm())
}

/// Original localization operator `δ^D` with kernel `K(z,y) = k(z⁻¹, y⁻¹z)*`,
/// so that `⟨u, δ^D u⟩ = D[u](e, ε)`.
pub fn original_localization<T: Real>(k: &CohenKernel<T>) -> GroupOperator<T> {
    let g = k.group().clone();
    let lag = k.timelag();
    GroupOperator::from_fn(&g, |z, y| lag.at(g.inv(z), g.mul(g.inv(y), z)).conj())
}

/// Time-lag kernel recovered from an original localization operator.
pub fn timelag_from_localization<T: Real>(op: &GroupOperator<T>) -> TimeLagKernel<T> {
    let g = op.group.clone();
    // k(a,b) = K(a⁻¹, (ba)⁻¹)*
    TimeLagKernel::from_fn(&g, |a, b| op.kernel[(g.inv(a), g.inv(g.mul(b, a)))].conj())
}

/// `D(u,v)(x,η) = (1/|G|²) Σ_{z,y} u(xz) η(z)* K(z,y)* η(y) v(xy)*`
pub fn distribution_from_localization<T: Real>(
    op: &GroupOperator<T>,
    u: &Signal<T>,
    v: &Signal<T>,
) -> Result<TFFunction<T>> {
    check_same(&op.group, u.group())?;
    check_same(u.group(), v.group())?;
    let g = op.group.clone();
    let n = g.order();
    let inv_n = g.inv_order();
    let rows: Vec<Vec<Complex<T>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let vx: Vec<Complex<T>> = (0..n).map(|y| v.at(g.mul(x, y)).conj()).collect();
            let mut row = vec![czero(); n];
            for eta in 0..g.n_irreps() {
                let d = g.dim(eta);
                let irrep = g.irrep(eta);
                let o = g.offset(eta);
                let mut acc = vec![czero::<T>(); d * d];
                let mut tmp = vec![czero::<T>(); d * d];
                for z in 0..n {
                    // W_z = Σ_y K(z,y)* v(xy)* η(y)
                    let mut w = vec![czero::<T>(); d * d];
                    for y in 0..n {
                        let c = op.kernel[(z, y)].conj() * vx[y];
                        for (o, e) in w.iter_mut().zip(irrep.at(y)) {
                            *o += c * e;
                        }
                    }
                    crate::linalg::block_adj_mul(irrep.at(z), &w, &mut tmp, d);
                    let uz = u.at(g.mul(x, z));
                    for (a, t) in acc.iter_mut().zip(&tmp) {
                        *a += uz * t;
                    }
                }
                for (dst, a) in row[o..o + d * d].iter_mut().zip(acc) {
                    *dst = a * inv_n * inv_n;
                }
            }
            row
        })
        .collect();
    TFFunction::from_raw(&g, rows.concat())
}
