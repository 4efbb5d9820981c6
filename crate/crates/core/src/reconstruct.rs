//! Phase retrieval from the Born–Jordan distribution on `ℤ/N`.
//!
//! The distribution determines the partial autocorrelations
//! `E(x,y) = Σ_{k<y} u(x+k) u(x+k−y)*`. Starting from a pivot `z` with
//! `u(z) > 0`, the values `u(z±j)` are peeled off one lag at a time: each
//! `E(z+1, j)` and `E(z, j)` contains exactly one new unknown multiplied by
//! `u(z)`. Magnitudes are taken from the time margin and only the phase from
//! the recursion.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::harmonic::Signal;
use crate::scalar::{creal, czero, root_of_unity, Real};
use crate::tfplane::{symplectic_fourier, TFFunction};
use crate::transforms::{born_jordan_distribution_cyclic, born_jordan_scale, require_cyclic};

/// `E(x, y)` for `x ∈ ℤ/N`, `y ∈ 1..N`; stored row-major in `y`.
#[derive(Clone, Debug)]
pub struct PartialAutocorrelation<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> PartialAutocorrelation<T> {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `E(x, y)` for `1 ≤ y < N`.
    #[inline]
    pub fn at(&self, x: usize, y: usize) -> Complex<T> {
        assert!(y >= 1 && y < self.n, "lag {y} outside 1..{}", self.n);
        self.data[(y - 1) * self.n + x % self.n]
    }

    /// Direct evaluation from a signal.
    pub fn from_signal(u: &Signal<T>) -> Result<Self> {
        let n = require_cyclic(u.group())?;
        let mut data = Vec::with_capacity(n * n.saturating_sub(1));
        for y in 1..n {
            for x in 0..n {
                data.push((0..y).fold(czero(), |acc, k| acc + u.at((x + k) % n) * u.at((x + k + n - y) % n).conj()));
            }
        }
        Ok(Self { n, data })
    }

    pub fn max_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }
}

/// Margin tolerance below which a negative value is clamped to zero.
const MARGIN_CLAMP: f64 = 1e-9;

/// `|u(x)|²` from the time margin `Σ_η Q[u](x,η)`.
pub fn magnitudes_from_margins<T: Real>(q: &TFFunction<T>) -> Result<Vec<T>> {
    require_cyclic(q.group())?;
    q.time_margin()
        .into_iter()
        .enumerate()
        .map(|(x, m)| {
            if m.re < T::zero() {
                if m.re.as_f64() < -MARGIN_CLAMP {
                    return Err(Error::MarginNegative { index: x, value: m.re.as_f64() });
                }
                return Ok(T::zero());
            }
            Ok(m.re)
        })
        .collect()
}

/// Extracts `E(x, y)` from `Q[u]` through its symplectic Fourier transform.
pub fn partial_autocorrelations<T: Real>(q: &TFFunction<T>) -> Result<PartialAutocorrelation<T>> {
    let n = require_cyclic(q.group())?;
    let fq = symplectic_fourier(q);
    let mut data = Vec::with_capacity(n * n.saturating_sub(1));
    for y in 1..n {
        // h_y(ξ) = S_y(ξ) FR(ξ, y), recovered by undoing the kernel.
        let undo = born_jordan_scale::<T>(y, n).inv();
        let h: Vec<Complex<T>> = (0..n)
            .map(|xi| {
                if xi == 0 {
                    fq.scalar(0, y) * T::from_usize_lossy(y)
                } else {
                    fq.scalar(xi, y) * undo
                }
            })
            .collect();
        for x in 0..n {
            data.push(
                h.iter()
                    .enumerate()
                    .fold(czero(), |acc, (xi, &hx)| acc + root_of_unity::<T>((x * xi) as i64, n) * hx),
            );
        }
    }
    Ok(PartialAutocorrelation { n, data })
}

/// Diagnostics from [`phase_retrieve`].
#[derive(Clone, Debug, PartialEq)]
pub struct RetrievalInfo {
    /// Index where the recovered signal is real and positive.
    pub pivot: usize,
    pub pivot_magnitude: f64,
    /// Number of maximal runs of nonzero samples around the circle.
    pub islands: usize,
    /// Every margin was below the zero threshold.
    pub all_zero: bool,
}

/// Default magnitude below which a sample is treated as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Recovers a representative of `[u]` from `Q[u]`, real and positive at the
/// pivot `argmax |u|` (smallest index on ties).
pub fn phase_retrieve<T: Real>(q: &TFFunction<T>, tol_zero: T) -> Result<(Signal<T>, RetrievalInfo)> {
    let g = q.group().clone();
    let n = require_cyclic(&g)?;
    let mags: Vec<T> = magnitudes_from_margins(q)?.into_iter().map(|m| m.sqrt()).collect();
    let zero = |x: usize| mags[x] < tol_zero;
    let islands = count_islands(&mags, tol_zero);
    let mut pivot = 0;
    for x in 1..n {
        if mags[x] > mags[pivot] {
            pivot = x;
        }
    }
    if zero(pivot) {
        let info = RetrievalInfo { pivot, pivot_magnitude: mags[pivot].as_f64(), islands: 0, all_zero: true };
        return Ok((Signal::zeros(&g), info));
    }
    let e = partial_autocorrelations(q)?;
    let mut u = vec![czero::<T>(); n];
    let z = pivot;
    u[z] = creal(mags[z]);
    let at = |k: i64| ((z as i64 + k).rem_euclid(n as i64)) as usize;
    let place = |res: Complex<T>, m: T| -> Complex<T> {
        let r = res.norm();
        if r > T::zero() {
            res * (m / r)
        } else {
            creal(m)
        }
    };
    for j in 1..=n / 2 {
        let ji = j as i64;
        // E(z+1, j) = u(z+j) u(z)* + Σ_{k<j−1} u(z+1+k) u(z+1+k−j)*
        let fwd = at(ji);
        if !zero(fwd) {
            let known = (0..j - 1).fold(czero::<T>(), |acc, k| {
                let k = k as i64;
                acc + u[at(1 + k)] * u[at(1 + k - ji)].conj()
            });
            let res = (e.at(at(1), j) - known) / u[z].conj();
            u[fwd] = place(res, mags[fwd]);
        }
        // E(z, j) = u(z) u(z−j)* + Σ_{1≤k<j} u(z+k) u(z+k−j)*
        let back = at(-ji);
        if back != fwd && !zero(back) {
            let known = (1..j).fold(czero::<T>(), |acc, k| {
                let k = k as i64;
                acc + u[at(k)] * u[at(k - ji)].conj()
            });
            let res = ((e.at(z, j) - known) / u[z]).conj();
            u[back] = place(res, mags[back]);
        }
    }
    let info = RetrievalInfo { pivot, pivot_magnitude: mags[pivot].as_f64(), islands, all_zero: false };
    Ok((Signal::new(g, u)?, info))
}

fn count_islands<T: Real>(mags: &[T], tol: T) -> usize {
    let n = mags.len();
    let nonzero: Vec<bool> = mags.iter().map(|&m| m >= tol).collect();
    if nonzero.iter().all(|&b| b) {
        return 1;
    }
    (0..n).filter(|&x| nonzero[x] && !nonzero[(x + n - 1) % n]).count()
}

/// `min_{|λ|=1} ‖u − λ r‖` in the Haar norm.
pub fn class_distance<T: Real>(u: &Signal<T>, r: &Signal<T>) -> T {
    let ip = u.values().iter().zip(r.values()).fold(czero::<T>(), |acc, (a, b)| acc + a * b.conj());
    let lambda = if ip.norm() > T::zero() { ip / ip.norm() } else { creal(T::one()) };
    r.scale(lambda).sub(u).map(|d| d.norm()).unwrap_or_else(|_| T::infinity())
}

/// Result of a forward–inverse round trip.
#[derive(Clone, Debug)]
pub struct RoundtripReport<T> {
    pub recovered: Signal<T>,
    pub class_distance: T,
    /// `max |Q[recovered] − Q[u]|`.
    pub distribution_residual: T,
    pub info: RetrievalInfo,
}

/// Computes `Q[u]`, retrieves a signal from it and measures both residuals.
pub fn roundtrip_report<T: Real>(u: &Signal<T>) -> Result<RoundtripReport<T>> {
    let q = born_jordan_distribution_cyclic(u, u)?;
    let (rec, info) = phase_retrieve(&q, T::lit(DEFAULT_ZERO_TOL))?;
    let q2 = born_jordan_distribution_cyclic(&rec, &rec)?;
    Ok(RoundtripReport {
        class_distance: class_distance(u, &rec),
        distribution_residual: q2.max_diff(&q),
        recovered: rec,
        info,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_cyclic;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn four_point_example() {
        let g = build_cyclic::<f64>(4).unwrap();
        let u = Signal::new(g, vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = roundtrip_report(&u).unwrap();
        assert!(r.class_distance < 1e-8, "{}", r.class_distance);
    }

    #[test]
    fn all_zero_gives_zero_signal() {
        let g = build_cyclic::<f64>(5).unwrap();
        let q = TFFunction::zeros(&g);
        let (s, info) = phase_retrieve(&q, 1e-9).unwrap();
        assert!(info.all_zero);
        assert!(s.values().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn islands_counted_cyclically() {
        assert_eq!(count_islands(&[1.0, 0.0, 1.0, 1.0, 0.0, 1.0], 0.5), 2);
        assert_eq!(count_islands(&[1.0, 1.0], 0.5), 1);
    }

    #[test]
    fn negative_margin_rejected() {
        let g = build_cyclic::<f64>(3).unwrap();
        let mut q = TFFunction::zeros(&g);
        q.block_mut(1, 0)[0] = c(-1.0, 0.0);
        assert!(matches!(magnitudes_from_margins(&q), Err(Error::MarginNegative { index: 1, .. })));
    }
}
