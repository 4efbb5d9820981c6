//! Cohen-class transforms and the kernel library.
//!
//! A transform is fixed by its ambiguity kernel `φ`: `D(u,v) = F⁻¹(φ · FR(u,v))`
//! with the kernel multiplying from the left. [`cohen_transform_direct`]
//! evaluates the same distribution through the time-lag kernel and serves as
//! an independent route.

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::harmonic::{check_same, fourier, Signal};
use crate::linalg::CMatrix;
use crate::scalar::{cone, czero, creal, root_of_unity, Real};
use crate::tfplane::{
    ambiguity_to_timelag, inverse_symplectic_fourier, timelag_to_ambiguity, AmbiguityFunction, TFFunction,
    TimeLagKernel,
};

/// An ambiguity kernel together with a display name.
#[derive(Clone, Debug)]
pub struct CohenKernel<T> {
    name: String,
    phi: AmbiguityFunction<T>,
}

impl<T: Real> CohenKernel<T> {
    pub fn new(name: impl Into<String>, phi: AmbiguityFunction<T>) -> Self {
        Self { name: name.into(), phi }
    }

    pub fn from_timelag(name: impl Into<String>, k: &TimeLagKernel<T>) -> Self {
        Self::new(name, timelag_to_ambiguity(k))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self) -> &AmbiguityFunction<T> {
        &self.phi
    }

    pub fn group(&self) -> &Arc<Group<T>> {
        self.phi.group()
    }

    pub fn timelag(&self) -> TimeLagKernel<T> {
        ambiguity_to_timelag(&self.phi)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// `R(u,v)(x,η) = u(x) η(x)* v̂(η)*`
pub fn rihaczek<T: Real>(u: &Signal<T>, v: &Signal<T>) -> Result<TFFunction<T>> {
    check_same(u.group(), v.group())?;
    let g = u.group();
    let vh = fourier(v);
    let mut out = TFFunction::zeros(g);
    for x in 0..g.order() {
        let ux = u.at(x);
        for eta in 0..g.n_irreps() {
            let d = g.dim(eta);
            let m = g.irrep(eta).at(x);
            let c = vh.block(eta);
            let b = out.block_mut(x, eta);
            // η(x)* v̂(η)* = (v̂(η) η(x))*
            for i in 0..d {
                for j in 0..d {
                    let mut acc = czero();
                    for k in 0..d {
                        acc += c[j * d + k] * m[k * d + i];
                    }
                    b[i * d + j] = ux * acc.conj();
                }
            }
        }
    }
    Ok(out)
}

/// `FR(u,v)(ξ,y) = (1/|G|) Σ_x ξ(x)* u(x) v(xy⁻¹)*`
pub fn ambiguity_transform<T: Real>(u: &Signal<T>, v: &Signal<T>) -> Result<AmbiguityFunction<T>> {
    check_same(u.group(), v.group())?;
    let g = u.group().clone();
    let n = g.order();
    let inv_n = g.inv_order();
    let mut data = vec![czero(); n * n];
    data.par_chunks_mut(n).enumerate().for_each(|(y, row)| {
        let yi = g.inv(y);
        let r: Vec<Complex<T>> = (0..n).map(|x| u.at(x) * v.at(g.mul(x, yi)).conj()).collect();
        for xi in 0..g.n_irreps() {
            let d = g.dim(xi);
            let o = g.offset(xi);
            let irrep = g.irrep(xi);
            let block = &mut row[o..o + d * d];
            for (x, &rx) in r.iter().enumerate() {
                let m = irrep.at(x);
                for j in 0..d {
                    for k in 0..d {
                        block[j * d + k] += m[k * d + j].conj() * rx;
                    }
                }
            }
            for z in block.iter_mut() {
                *z *= inv_n;
            }
        }
    });
    AmbiguityFunction::from_raw(&g, data)
}

/// `D(u,v) = F⁻¹(φ · FR(u,v))`
pub fn cohen_transform<T: Real>(k: &CohenKernel<T>, u: &Signal<T>, v: &Signal<T>) -> Result<TFFunction<T>> {
    check_same(k.group(), u.group())?;
    let fr = ambiguity_transform(u, v)?;
    Ok(inverse_symplectic_fourier(&k.phi.pointwise_mul(&fr)?))
}

/// `D[u] = D(u,u)`
pub fn cohen_distribution<T: Real>(k: &CohenKernel<T>, u: &Signal<T>) -> Result<TFFunction<T>> {
    cohen_transform(k, u, u)
}

/// `D(u,v)(x,η) = (1/|G|) Σ_y η(y)* (1/|G|) Σ_z k(z⁻¹x, y) u(z) v(zy⁻¹)*`
pub fn cohen_transform_direct<T: Real>(k: &CohenKernel<T>, u: &Signal<T>, v: &Signal<T>) -> Result<TFFunction<T>> {
    check_same(k.group(), u.group())?;
    check_same(u.group(), v.group())?;
    let lag = k.timelag();
    cohen_transform_with_timelag(&lag, u, v)
}

/// Direct evaluation from a time-lag table.
pub fn cohen_transform_with_timelag<T: Real>(
    lag: &TimeLagKernel<T>,
    u: &Signal<T>,
    v: &Signal<T>,
) -> Result<TFFunction<T>> {
    check_same(lag.group(), u.group())?;
    let g = u.group().clone();
    let n = g.order();
    let inv_n = g.inv_order();
    let rows: Vec<Vec<Complex<T>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let c: Vec<Complex<T>> = (0..n)
                .map(|y| {
                    let yi = g.inv(y);
                    (0..n).fold(czero(), |acc, z| {
                        acc + lag.at(g.mul(g.inv(z), x), y) * u.at(z) * v.at(g.mul(z, yi)).conj()
                    }) * inv_n
                })
                .collect();
            let mut row = vec![czero(); n];
            for eta in 0..g.n_irreps() {
                let d = g.dim(eta);
                let o = g.offset(eta);
                let irrep = g.irrep(eta);
                let block = &mut row[o..o + d * d];
                for (y, &cy) in c.iter().enumerate() {
                    let m = irrep.at(y);
                    for j in 0..d {
                        for kk in 0..d {
                            block[j * d + kk] += m[kk * d + j].conj() * cy;
                        }
                    }
                }
                for z in block.iter_mut() {
                    *z *= inv_n;
                }
            }
            row
        })
        .collect();
    TFFunction::from_raw(&g, rows.concat())
}

/// Kernel of `D*(u,v) = D(v,u)*`, with time-lag table `k(yx, y⁻¹)*`.
pub fn conjugate_kernel<T: Real>(k: &CohenKernel<T>) -> CohenKernel<T> {
    let g = k.group().clone();
    let lag = k.timelag();
    let conj = TimeLagKernel::from_fn(&g, |x, y| lag.at(g.mul(y, x), g.inv(y)).conj());
    let name = match k.name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{}*", k.name),
    };
    CohenKernel::from_timelag(name, &conj)
}

/// Kohn–Nirenberg kernel `φ ≡ I`; its transform is the Rihaczek transform.
pub fn kn_kernel<T: Real>(group: &Arc<Group<T>>) -> CohenKernel<T> {
    CohenKernel::new("kn", AmbiguityFunction::identity(group))
}

/// Anti-Kohn–Nirenberg kernel `φ(ξ,y) = ξ(y)`.
pub fn anti_kn_kernel<T: Real>(group: &Arc<Group<T>>) -> CohenKernel<T> {
    let mut phi = AmbiguityFunction::zeros(group);
    for y in 0..group.order() {
        for xi in 0..group.n_irreps() {
            phi.block_mut(xi, y).copy_from_slice(group.irrep(xi).at(y));
        }
    }
    CohenKernel::new("anti-kn", phi)
}

/// Rejects non-cyclic groups, returning `N`.
pub(crate) fn require_cyclic<T: Real>(group: &Group<T>) -> Result<usize> {
    group.cyclic_order().ok_or(Error::NotCyclic)
}

/// `Σ_{k<y} e^{i2πkξ/N}`, equal to `(1−e^{i2πξy/N})/(1−e^{i2πξ/N})` for `ξ ≠ 0`.
fn partial_geometric<T: Real>(xi: usize, y: usize, n: usize) -> Complex<T> {
    (0..y).fold(czero(), |acc, k| acc + root_of_unity::<T>((k * xi) as i64, n))
}

/// Born–Jordan kernel on `ℤ/N`:
/// `(i2π/N)(1−ω^{ξy}) / ((1−ω^ξ)(1−ω^{−y}))` off the axes and `1` on them.
pub fn born_jordan_cyclic_kernel<T: Real>(group: &Arc<Group<T>>) -> Result<CohenKernel<T>> {
    let n = require_cyclic(group)?;
    let phi = AmbiguityFunction::from_scalar_fn(group, |xi, y| born_jordan_value(xi, y, n))?;
    Ok(CohenKernel::new("born-jordan", phi))
}

/// Single entry of the cyclic Born–Jordan kernel, evaluated as a finite
/// geometric sum so that zero divisors give exact zeros.
pub fn born_jordan_value<T: Real>(xi: usize, y: usize, n: usize) -> Complex<T> {
    let (xi, y) = (xi % n, y % n);
    if xi == 0 || y == 0 {
        return cone();
    }
    if (xi * y) % n == 0 {
        return czero();
    }
    let s = partial_geometric::<T>(xi, y, n);
    s * born_jordan_scale::<T>(y, n)
}

/// `(i2π/N) / (1 − e^{−i2πy/N})` for `y ≠ 0`.
pub(crate) fn born_jordan_scale<T: Real>(y: usize, n: usize) -> Complex<T> {
    let i2pi_n = Complex::new(T::zero(), T::TAU() / T::from_usize_lossy(n));
    i2pi_n / (cone::<T>() - root_of_unity::<T>(-(y as i64), n))
}

/// `(2π/N) |1 − e^{i2π/N}|⁻¹`, the largest modulus of the cyclic Born–Jordan kernel.
pub fn born_jordan_bound<T: Real>(n: usize) -> T {
    let tau = T::TAU();
    let nn = T::from_usize_lossy(n);
    // |1 − e^{iθ}| = 2 sin(θ/2)
    tau / nn / (T::lit(2.0) * (tau / (T::lit(2.0) * nn)).sin())
}

/// `f(x) = x/N` and `g(y) = N f̂(−y)`, whose commutator kernel is the
/// off-axis part of the Born–Jordan kernel.
pub fn born_jordan_commutator_inputs<T: Real>(group: &Arc<Group<T>>) -> Result<(Signal<T>, Signal<T>)> {
    let n = require_cyclic(group)?;
    let nn = T::from_usize_lossy(n);
    let f = Signal::from_fn(group, |x| creal(T::from_usize_lossy(x) / nn));
    let fh = fourier(&f);
    let g = Signal::from_fn(group, |y| fh.block((n - y) % n)[0] * nn);
    Ok((f, g))
}

fn check_commutator_inputs<T: Real>(f: &Signal<T>, g: &Signal<T>) -> Result<usize> {
    check_same(f.group(), g.group())?;
    let n = require_cyclic(f.group())?;
    if !f.is_real(T::lit(T::ALGEBRA_TOL)) {
        return Err(Error::NotReal("f"));
    }
    let gh = fourier(g);
    if gh.as_slice().iter().any(|z| z.im.abs() > T::lit(T::ALGEBRA_TOL)) {
        log::warn!("commutator kernel: ĝ is not real, so the second operator is not self-adjoint");
    }
    Ok(n)
}

/// Kernel of `−i2π[A,B]` with `A` multiplication by `f` and `B` convolution
/// by `g`, built from the operator kernel `K(x,y) = i2π(f(y)−f(x))g(x−y)`
/// through the time-lag table `K(−x, −x−y)*`.
pub fn commutator_kernel<T: Real>(f: &Signal<T>, g: &Signal<T>) -> Result<CohenKernel<T>> {
    let n = check_commutator_inputs(f, g)?;
    let grp = f.group().clone();
    let i2pi = Complex::new(T::zero(), T::TAU());
    let op = |x: usize, y: usize| i2pi * (f.at(y) - f.at(x)) * g.at((x + n - y) % n);
    let lag = TimeLagKernel::from_fn(&grp, |x, y| {
        let mx = (n - x) % n;
        op(mx, (2 * n - x - y) % n).conj()
    });
    Ok(CohenKernel::from_timelag("commutator", &lag))
}

/// Closed form `φ(ξ,y) = i2π f̂(−ξ)(1 − e^{i2πξy/N}) g(y)*` of [`commutator_kernel`].
pub fn commutator_kernel_closed_form<T: Real>(f: &Signal<T>, g: &Signal<T>) -> Result<CohenKernel<T>> {
    let n = check_commutator_inputs(f, g)?;
    let fh = fourier(f);
    let i2pi = Complex::new(T::zero(), T::TAU());
    let phi = AmbiguityFunction::from_scalar_fn(f.group(), |xi, y| {
        i2pi * fh.block((n - xi) % n)[0] * (cone::<T>() - root_of_unity((xi * y) as i64, n)) * g.at(y).conj()
    })?;
    Ok(CohenKernel::new("commutator", phi))
}

/// `φ(ξ,y) = I` on the axes `ξ = ε` or `y = e`, zero elsewhere.
pub fn margin_fix_kernel<T: Real>(group: &Arc<Group<T>>) -> CohenKernel<T> {
    let mut phi = AmbiguityFunction::zeros(group);
    for y in 0..group.order() {
        for xi in 0..group.n_irreps() {
            if xi == group.trivial() || y == group.identity() {
                let d = group.dim(xi);
                let b = phi.block_mut(xi, y);
                for i in 0..d {
                    b[i * d + i] = cone();
                }
            }
        }
    }
    CohenKernel::new("margin-fix", phi)
}

/// How [`add_kernels`] treats `(ξ,y)` blocks where both kernels are nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverlapPolicy {
    /// Add the blocks.
    Sum,
    /// Take the second kernel's block wherever it is nonzero.
    Replace,
    /// Refuse to combine overlapping supports.
    Disjoint,
}

/// Blockwise combination of two kernels on the same group.
pub fn add_kernels<T: Real>(k1: &CohenKernel<T>, k2: &CohenKernel<T>, on_overlap: OverlapPolicy) -> Result<CohenKernel<T>> {
    check_same(k1.group(), k2.group())?;
    let g = k1.group().clone();
    let tol = T::lit(T::ALGEBRA_TOL);
    let nonzero = |b: &[Complex<T>]| b.iter().any(|z| z.norm() > tol);
    let mut phi = AmbiguityFunction::zeros(&g);
    let mut overlaps = Vec::new();
    for y in 0..g.order() {
        for xi in 0..g.n_irreps() {
            let (a, b) = (k1.phi.block(xi, y), k2.phi.block(xi, y));
            let both = nonzero(a) && nonzero(b);
            let out = phi.block_mut(xi, y);
            match on_overlap {
                OverlapPolicy::Replace if nonzero(b) => out.copy_from_slice(b),
                OverlapPolicy::Replace => out.copy_from_slice(a),
                OverlapPolicy::Disjoint if both => overlaps.push((xi, y)),
                _ => {
                    for ((o, p), q) in out.iter_mut().zip(a).zip(b) {
                        *o = p + q;
                    }
                }
            }
        }
    }
    if !overlaps.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "kernels `{}` and `{}` overlap at {} (ξ, y) blocks",
            k1.name,
            k2.name,
            overlaps.len()
        )));
    }
    Ok(CohenKernel::new(format!("{}+{}", k1.name, k2.name), phi))
}

/// Short-time Fourier transform `𝒢_w u(x,η) = (1/|G|) Σ_y η(y)* u(y) w(x⁻¹y)*`.
pub fn stft<T: Real>(w: &Signal<T>, u: &Signal<T>) -> Result<TFFunction<T>> {
    check_same(w.group(), u.group())?;
    let g = u.group().clone();
    let n = g.order();
    let inv_n = g.inv_order();
    let rows: Vec<Vec<Complex<T>>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let xi = g.inv(x);
            let r: Vec<Complex<T>> = (0..n).map(|y| u.at(y) * w.at(g.mul(xi, y)).conj()).collect();
            let mut row = vec![czero(); n];
            for eta in 0..g.n_irreps() {
                let d = g.dim(eta);
                let o = g.offset(eta);
                let irrep = g.irrep(eta);
                let block = &mut row[o..o + d * d];
                for (y, &ry) in r.iter().enumerate() {
                    let m = irrep.at(y);
                    for j in 0..d {
                        for k in 0..d {
                            block[j * d + k] += m[k * d + j].conj() * ry;
                        }
                    }
                }
                for z in block.iter_mut() {
                    *z *= inv_n;
                }
            }
            row
        })
        .collect();
    TFFunction::from_raw(&g, rows.concat())
}

/// Spectrogram kernel `φ(ξ,y) = FR(w,w)(ξ,y)*`.
pub fn spectrogram_kernel<T: Real>(w: &Signal<T>) -> Result<CohenKernel<T>> {
    let nw = w.norm();
    if (nw - T::one()).abs() > T::lit(T::STATISTICAL_TOL) {
        log::warn!("spectrogram window has norm {} rather than 1; the transform is not normalized", nw.as_f64());
    }
    Ok(CohenKernel::new("spectrogram", ambiguity_transform(w, w)?.adjoint()))
}

/// `𝒢_w u (𝒢_w v)*` computed blockwise from the short-time Fourier transforms.
pub fn spectrogram_distribution<T: Real>(w: &Signal<T>, u: &Signal<T>, v: &Signal<T>) -> Result<TFFunction<T>> {
    let gu = stft(w, u)?;
    let gv = if std::ptr::eq(u, v) { gu.clone() } else { stft(w, v)? };
    let g = u.group();
    let mut out = TFFunction::zeros(g);
    for x in 0..g.order() {
        for eta in 0..g.n_irreps() {
            let d = g.dim(eta);
            let a = gu.block(x, eta);
            let b = gv.block(x, eta);
            let o = out.block_mut(x, eta);
            for i in 0..d {
                for j in 0..d {
                    o[i * d + j] = (0..d).fold(czero(), |acc, k| acc + a[i * d + k] * b[j * d + k].conj());
                }
            }
        }
    }
    Ok(out)
}

/// `h(y) = ((N+1)/2)·y mod N`, the inverse of doubling on odd `ℤ/N`.
fn halve(y: usize, n: usize) -> usize {
    (n.div_ceil(2) * y) % n
}

fn require_odd_cyclic<T: Real>(group: &Group<T>) -> Result<usize> {
    let n = require_cyclic(group)?;
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    Ok(n)
}

/// Wigner kernel `φ(ξ,y) = e^{i2πξh(y)/N}` on odd `ℤ/N`.
pub fn wigner_kernel_odd_cyclic<T: Real>(group: &Arc<Group<T>>) -> Result<CohenKernel<T>> {
    let n = require_odd_cyclic(group)?;
    let phi = AmbiguityFunction::from_scalar_fn(group, |xi, y| root_of_unity((xi * halve(y, n)) as i64, n))?;
    Ok(CohenKernel::new("wigner-odd", phi))
}

/// `W(u,v)(x,η) = (1/N) Σ_y e^{−i2πyη/N} u(x+h(y)) v(x−h(y))*`
pub fn wigner_odd_cyclic<T: Real>(u: &Signal<T>, v: &Signal<T>) -> Result<TFFunction<T>> {
    check_same(u.group(), v.group())?;
    let g = u.group().clone();
    let n = require_odd_cyclic(&g)?;
    let inv_n = g.inv_order();
    let mut data = vec![czero(); n * n];
    data.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
        let c: Vec<Complex<T>> = (0..n)
            .map(|y| {
                let h = halve(y, n);
                u.at((x + h) % n) * v.at((x + n - h) % n).conj()
            })
            .collect();
        for (eta, out) in row.iter_mut().enumerate() {
            *out = c
                .iter()
                .enumerate()
                .fold(czero(), |acc, (y, &cy)| acc + root_of_unity::<T>(-((y * eta) as i64), n) * cy)
                * inv_n;
        }
    });
    TFFunction::from_raw(&g, data)
}

/// Born–Jordan distribution `Q(u,v)` on `ℤ/N` in `O(N²)` time-lag work plus
/// one length-`N` DFT per time index.
///
/// For `y ≠ 0` the time-lag kernel is a box of width `y` plus a constant, so
/// the inner sums reduce to sliding windows.
pub fn born_jordan_distribution_cyclic<T: Real>(u: &Signal<T>, v: &Signal<T>) -> Result<TFFunction<T>> {
    check_same(u.group(), v.group())?;
    let g = u.group().clone();
    let n = require_cyclic(&g)?;
    let nn = T::from_usize_lossy(n);
    let inv_n = g.inv_order();
    // c[y*n + x]
    let c: Vec<Complex<T>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|y| {
            let r: Vec<Complex<T>> = (0..n).map(|z| u.at(z) * v.at((z + n - y) % n).conj()).collect();
            let out: Vec<Complex<T>> = if y == 0 {
                r
            } else {
                let cy = born_jordan_scale::<T>(y, n);
                let total = r.iter().fold(czero::<T>(), |a, b| a + b);
                let constant = (cone::<T>() - cy * T::from_usize_lossy(y)) * total / nn;
                let mut window = (0..y).fold(czero::<T>(), |a, k| a + r[k % n]);
                (0..n)
                    .map(|x| {
                        let val = cy * window + constant;
                        window = window - r[x] + r[(x + y) % n];
                        val
                    })
                    .collect()
            };
            out.into_iter()
        })
        .collect();
    let twiddle: Vec<Complex<T>> = (0..n).map(|k| root_of_unity::<T>(-(k as i64), n)).collect();
    let mut data = vec![czero(); n * n];
    data.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
        for (eta, out) in row.iter_mut().enumerate() {
            let mut acc = czero();
            for y in 0..n {
                acc += twiddle[(y * eta) % n] * c[y * n + x];
            }
            *out = acc * inv_n;
        }
    });
    TFFunction::from_raw(&g, data)
}

/// Copy of `k` with the block at `(ξ, y)` replaced by `m`.
pub fn perturb_block<T: Real>(k: &CohenKernel<T>, xi: usize, y: usize, m: &CMatrix<T>) -> Result<CohenKernel<T>> {
    let d = k.group().dim(xi);
    if m.rows() != d || m.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: m.rows() });
    }
    let mut phi = k.phi.clone();
    phi.block_mut(xi, y).copy_from_slice(m.as_slice());
    Ok(CohenKernel::new(format!("{}~", k.name), phi))
}
