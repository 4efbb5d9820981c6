//! Large-`N` limits of the cyclic Born–Jordan kernel.
//!
//! On the circle `𝕋` (frequencies `ξ ∈ ℤ`, lags `y ∈ 𝕋`) and on the integers
//! `ℤ` (frequencies `ξ ∈ 𝕋`, lags `y ∈ ℤ`) the kernels reduce to averaged
//! geometric sums. On `ℤ` the time-lag kernel is a box of height `1/|y|`,
//! which gives a direct discrete Born–Jordan distribution for finitely
//! supported signals.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::build_cyclic;
use crate::harmonic::Signal;
use crate::scalar::{cis, creal, czero, Real};
use crate::transforms::born_jordan_distribution_cyclic;

/// `e^{i2πt}`
#[inline]
fn turn<T: Real>(t: T) -> Complex<T> {
    cis(T::TAU() * t)
}

/// Ambiguity kernel of the circle limit, `φ_𝕋(ξ, y)` for `ξ ∈ ℤ`, `y ∈ ℝ/ℤ`,
/// evaluated as a finite average:
/// `(1/ξ) Σ_{k=1}^{ξ} e^{i2πyk}` for `ξ > 0`,
/// `(1/|ξ|) Σ_{k=0}^{|ξ|−1} e^{−i2πyk}` for `ξ < 0`, and `0` for `ξ = 0`.
pub fn phi_dt<T: Real>(xi: i64, y: T) -> Complex<T> {
    let m = xi.unsigned_abs();
    if m == 0 {
        return czero();
    }
    let y = y - y.floor();
    let sum = if xi > 0 {
        (1..=m).fold(czero(), |acc, k| acc + turn(y * T::lit(k as f64)))
    } else {
        (0..m).fold(czero(), |acc, k| acc + turn(-y * T::lit(k as f64)))
    };
    sum / T::lit(m as f64)
}

/// Quotient form `−ξ⁻¹ (1 − e^{i2πξy}) / (1 − e^{−i2πy})`, valid for
/// `ξ ≠ 0` and `y ∉ ℤ`.
pub fn phi_dt_quotient<T: Real>(xi: i64, y: T) -> Complex<T> {
    let xr = T::lit(xi as f64);
    -(creal::<T>(T::one()) - turn(xr * y)) / (creal::<T>(T::one()) - turn(-y)) / xr
}

/// Ambiguity kernel of the integer limit, `φ_ℤ(ξ, y)` for `ξ ∈ ℝ/ℤ`, `y ∈ ℤ`:
/// `(1/y) Σ_{k=0}^{y−1} e^{i2πξk}` for `y > 0`,
/// `(1/|y|) Σ_{j=1}^{|y|} e^{−i2πξj}` for `y < 0`, and `0` for `y = 0`.
pub fn phi_dz<T: Real>(xi: T, y: i64) -> Complex<T> {
    let m = y.unsigned_abs();
    if m == 0 {
        return czero();
    }
    let xi = xi - xi.floor();
    let sum = if y > 0 {
        (0..m).fold(czero(), |acc, k| acc + turn(xi * T::lit(k as f64)))
    } else {
        (1..=m).fold(czero(), |acc, j| acc + turn(-xi * T::lit(j as f64)))
    };
    sum / T::lit(m as f64)
}

/// Quotient form `y⁻¹ (1 − e^{i2πξy}) / (1 − e^{i2πξ})`, valid for `y ≠ 0`
/// and `ξ ∉ ℤ`.
pub fn phi_dz_quotient<T: Real>(xi: T, y: i64) -> Complex<T> {
    let yr = T::lit(y as f64);
    (creal::<T>(T::one()) - turn(xi * yr)) / (creal::<T>(T::one()) - turn(xi)) / yr
}

/// Time-lag kernel on `ℤ`: `1/|y|` for `−y < x ≤ 0` or `0 < x ≤ −y`, else `0`.
pub fn varphi_dz<T: Real>(x: i64, y: i64) -> T {
    let inside = (y > 0 && -y < x && x <= 0) || (y < 0 && 0 < x && x <= -y);
    if inside {
        T::one() / T::lit(y.unsigned_abs() as f64)
    } else {
        T::zero()
    }
}

/// `Σ_x varphi_ℤ(x, y) e^{−i2πxm/M}` for `m = 0..M`, summed over the lag
/// window `|x| ≤ |y|`.
pub fn sampled_timelag_transform<T: Real>(y: i64, m: usize) -> Vec<Complex<T>> {
    let span = y.abs();
    (0..m)
        .map(|j| {
            let xi = T::lit(j as f64) / T::lit(m as f64);
            (-span..=span).fold(czero(), |acc, x| {
                let w = varphi_dz::<T>(x, y);
                if w == T::zero() {
                    acc
                } else {
                    acc + turn(-xi * T::lit(x as f64)) * w
                }
            })
        })
        .collect()
}

/// Finitely supported signal on `ℤ`: `values[i]` sits at `offset + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSignal<T> {
    pub offset: i64,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> ZSignal<T> {
    pub fn new(offset: i64, values: Vec<Complex<T>>) -> Self {
        Self { offset, values }
    }

    pub fn from_real(offset: i64, values: &[T]) -> Self {
        Self { offset, values: values.iter().map(|&v| creal(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `u(t)`, zero outside the stored window.
    #[inline]
    pub fn at(&self, t: i64) -> Complex<T> {
        let i = t - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            czero()
        } else {
            self.values[i as usize]
        }
    }

    /// Counting-measure energy `Σ |u(t)|²`.
    pub fn energy(&self) -> T {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Time-frequency grid on `ℤ × 𝕋`: rows are time samples of the support,
/// columns are `M` uniform frequency samples `θ = j/M`.
#[derive(Clone, Debug)]
pub struct ZTFGrid<T> {
    /// First time index.
    pub start: i64,
    pub times: usize,
    pub freqs: usize,
    /// `values[t * freqs + j]`
    pub values: Vec<Complex<T>>,
}

impl<T: Real> ZTFGrid<T> {
    #[inline]
    pub fn at(&self, t: usize, j: usize) -> Complex<T> {
        self.values[t * self.freqs + j]
    }

    /// Largest imaginary part; zero up to rounding for symmetric kernels.
    pub fn imag_residue(&self) -> T {
        self.values.iter().map(|z| z.im.abs()).fold(T::zero(), T::max)
    }

    /// Real parts as an image: rows are frequencies (low at the top), columns times.
    pub fn real_image(&self) -> (usize, usize, Vec<T>) {
        let mut out = Vec::with_capacity(self.values.len());
        for j in 0..self.freqs {
            for t in 0..self.times {
                out.push(self.at(t, j).re);
            }
        }
        (self.freqs, self.times, out)
    }

    /// `(1/M) Σ` over the whole grid.
    pub fn energy(&self) -> T {
        self.values.iter().map(|z| z.re).sum::<T>() / T::lit(self.freqs as f64)
    }
}

/// Discrete Born–Jordan distribution on `ℤ` with counting measure,
/// `D(x,θ) = Σ_y e^{−i2πyθ} Σ_t varphi_ℤ(x−t, y) u(t) u(t−y)*`.
///
/// The kernel vanishes at lag zero; with `axis_fix` the term `|u(x)|²` is
/// added there so that the time margin equals `|u|²`.
pub fn q_z_distribution<T: Real>(u: &ZSignal<T>, m: usize, axis_fix: bool) -> Result<ZTFGrid<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument("frequency grid size must be positive".into()));
    }
    let len = u.len();
    let start = u.offset;
    if len == 0 {
        return Ok(ZTFGrid { start, times: 0, freqs: m, values: vec![] });
    }
    let maxlag = len as i64 - 1;
    let twiddle: Vec<Complex<T>> = (0..m).map(|k| turn(-T::lit(k as f64) / T::lit(m as f64))).collect();
    let rows: Vec<Vec<Complex<T>>> = (0..len)
        .into_par_iter()
        .map(|ti| {
            let x = start + ti as i64;
            // lag-domain column c(x, y) for y = −maxlag..=maxlag
            let lags: Vec<(i64, Complex<T>)> = (-maxlag..=maxlag)
                .filter_map(|y| {
                    let c = if y == 0 {
                        if axis_fix {
                            creal(u.at(x).norm_sqr())
                        } else {
                            return None;
                        }
                    } else {
                        // varphi(x−t, y) ≠ 0 exactly for t in this window
                        let (lo, hi) = if y > 0 { (x, x + y - 1) } else { (x + y, x - 1) };
                        let s = (lo..=hi).fold(czero::<T>(), |acc, t| acc + u.at(t) * u.at(t - y).conj());
                        s * varphi_dz::<T>(x - lo, y)
                    };
                    Some((y, c))
                })
                .collect();
            (0..m)
                .map(|j| {
                    lags.iter().fold(czero(), |acc, &(y, c)| {
                        let k = (y.rem_euclid(m as i64) as usize * j) % m;
                        acc + twiddle[k] * c
                    })
                })
                .collect()
        })
        .collect();
    Ok(ZTFGrid { start, times: len, freqs: m, values: rows.concat() })
}

/// Folds a finitely supported signal onto `ℤ/N` by summation.
pub fn periodize_values<T: Real>(u: &ZSignal<T>, n: usize) -> Result<Vec<Complex<T>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let mut out = vec![czero(); n];
    for (i, v) in u.values.iter().enumerate() {
        let t = (u.offset + i as i64).rem_euclid(n as i64) as usize;
        out[t] += *v;
    }
    Ok(out)
}

/// Outcome of [`cyclic_vs_z_comparison`].
#[derive(Clone, Debug)]
pub struct LimitComparison<T> {
    pub period: usize,
    /// Largest `|N·Q_{ℤ/N}[u] − Q_ℤ[u]|` over the central third of the time axis.
    pub central_residual: T,
    pub shift: i64,
}

/// Embeds `u` into `ℤ/N` centred in the middle third, computes the cyclic
/// Born–Jordan distribution and the `ℤ` distribution on the matching
/// `M = N` grid, and reports their largest difference in the central third.
///
/// The cyclic distribution uses Haar probability measure; it is multiplied by
/// `N` to match the counting measure on `ℤ`.
pub fn cyclic_vs_z_comparison<T: Real>(u: &ZSignal<T>, n: usize) -> Result<LimitComparison<T>> {
    let len = u.len();
    if n < 3 * len.max(1) {
        return Err(Error::InvalidArgument(format!("period {n} is shorter than three support lengths ({len})")));
    }
    let third = n / 3;
    // place the support start at the beginning of the middle third
    let shift = third as i64 + ((third as i64 - len as i64) / 2).max(0) - u.offset;
    let moved = ZSignal::new(u.offset + shift, u.values.clone());
    let g = build_cyclic::<T>(n)?;
    let sig = Signal::new(g, periodize_values(&moved, n)?)?;
    let q = born_jordan_distribution_cyclic(&sig, &sig)?;
    let qz = q_z_distribution(&moved, n, true)?;
    let nn = T::lit(n as f64);
    let mut worst = T::zero();
    for x in third..(2 * third) {
        for eta in 0..n {
            let t = x as i64 - qz.start;
            let z = if t >= 0 && (t as usize) < qz.times { qz.at(t as usize, eta) } else { czero() };
            worst = worst.max((q.block(x, eta)[0] * nn - z).norm());
        }
    }
    Ok(LimitComparison { period: n, central_residual: worst, shift })
}
