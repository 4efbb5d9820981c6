//! Structural properties of Cohen kernels.
//!
//! Every checker decides on an exhaustive condition on the kernel table and
//! additionally runs a sampled check on the transform itself, reported as
//! `cross_check`. The sampled check uses a fixed seed so reports are
//! reproducible.

use std::fmt;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::harmonic::{fourier, haar_inner, Signal};
use crate::linalg::CMatrix;
use crate::quantization::{kn_operator, GroupOperator};
use crate::scalar::{creal, czero, Real};
use crate::tfplane::{tf_inner, TFFunction};
use crate::transforms::{cohen_distribution, cohen_transform, CohenKernel};

/// Seed for every sampled cross-check.
pub const CROSS_CHECK_SEED: u64 = 0xC0FFEE;

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub holds: bool,
    pub max_violation: f64,
    pub tolerance: f64,
    /// Offending index pairs: `(ξ, y)`, `(x, y)` or sample indices depending on the check.
    pub witnesses: Vec<(usize, usize)>,
    pub cross_check: Option<f64>,
}

impl PropertyReport {
    fn new(name: &'static str, max_violation: f64, tolerance: f64, witnesses: Vec<(usize, usize)>, cross_check: Option<f64>) -> Self {
        Self { name, holds: max_violation <= tolerance, max_violation, tolerance, witnesses, cross_check }
    }

    pub const CSV_HEADER: &'static str = "property,holds,max_violation,witnesses,cross_check";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.name,
            self.holds,
            format_g17(self.max_violation),
            self.witnesses.len(),
            self.cross_check.map(format_g17).unwrap_or_default()
        )
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PROPERTY {} {} max_violation={} witnesses={}",
            self.name,
            if self.holds { "HOLDS" } else { "FAILS" },
            format_g17(self.max_violation),
            self.witnesses.len()
        )
    }
}

/// `printf("%.17g")` formatting.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.16e}", v);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let strip = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip(mant), sign, exp.abs())
    } else {
        let decimals = (16 - exp).max(0) as usize;
        strip(&format!("{:.*}", decimals, v))
    }
}

/// Exhaustive tolerance: `1e-9` at double precision.
fn exact_tol<T: Real>() -> f64 {
    T::ALGEBRA_TOL * 10.0
}

/// Sampled tolerance: `1e-8` at double precision.
fn sampled_tol<T: Real>() -> f64 {
    T::STATISTICAL_TOL
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(CROSS_CHECK_SEED)
}

fn block_dev_from_identity<T: Real>(b: &[Complex<T>], d: usize) -> T {
    let mut worst = T::zero();
    for i in 0..d {
        for j in 0..d {
            let want = if i == j { T::one() } else { T::zero() };
            worst = worst.max((b[i * d + j] - creal(want)).norm());
        }
    }
    worst
}

/// `φ(ε, e) = 1`, equivalently `∬ D(u,v) = ⟨u,v⟩`.
pub fn check_normalized<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let v = (k.phi().scalar(g.trivial(), g.identity()) - creal(T::one())).norm().as_f64();
    let witnesses = if v > exact_tol::<T>() { vec![(g.trivial(), g.identity())] } else { vec![] };
    let mut r = rng();
    let mut cross = 0.0f64;
    for _ in 0..20 {
        let a = Signal::random(&g, &mut r);
        let b = Signal::random(&g, &mut r);
        let d = cohen_transform(k, &a, &b)?;
        cross = cross.max((d.integral() - haar_inner(&a, &b)?).norm().as_f64());
    }
    Ok(PropertyReport::new("normalized", v, exact_tol::<T>(), witnesses, Some(cross)))
}

/// `φ(ξ, e) = I` for every `ξ`, equivalently the time margin of `D(u,v)` is `u v*`.
pub fn check_time_margins<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let e = g.identity();
    let mut worst = 0.0f64;
    let mut witnesses = Vec::new();
    for xi in 0..g.n_irreps() {
        let v = block_dev_from_identity(k.phi().block(xi, e), g.dim(xi)).as_f64();
        if v > exact_tol::<T>() {
            witnesses.push((xi, e));
        }
        worst = worst.max(v);
    }
    let mut r = rng();
    let mut cross = 0.0f64;
    for _ in 0..20 {
        let a = Signal::random(&g, &mut r);
        let b = Signal::random(&g, &mut r);
        let margin = cohen_transform(k, &a, &b)?.time_margin();
        for (x, m) in margin.iter().enumerate() {
            cross = cross.max((m - a.at(x) * b.at(x).conj()).norm().as_f64());
        }
    }
    Ok(PropertyReport::new("time-margins", worst, exact_tol::<T>(), witnesses, Some(cross)))
}

/// `φ(ε, y) = 1` for every `y`, equivalently the frequency margin of `D(u,v)` is `û v̂*`.
pub fn check_frequency_margins<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let eps = g.trivial();
    let mut worst = 0.0f64;
    let mut witnesses = Vec::new();
    for y in 0..g.order() {
        let v = (k.phi().scalar(eps, y) - creal(T::one())).norm().as_f64();
        if v > exact_tol::<T>() {
            witnesses.push((eps, y));
        }
        worst = worst.max(v);
    }
    let mut r = rng();
    let mut cross = 0.0f64;
    for _ in 0..20 {
        let a = Signal::random(&g, &mut r);
        let b = Signal::random(&g, &mut r);
        let margin = cohen_transform(k, &a, &b)?.frequency_margin();
        let (ah, bh) = (fourier(&a), fourier(&b));
        for (eta, m) in margin.iter().enumerate() {
            let want = ah.matrix(eta).matmul(&bh.matrix(eta).adjoint());
            cross = cross.max(m.sub(&want).max_abs().as_f64());
        }
    }
    Ok(PropertyReport::new("freq-margins", worst, exact_tol::<T>(), witnesses, Some(cross)))
}

/// `k(x,y)* = k(yx, y⁻¹)` on the time-lag table, equivalently `D(u,v)* = D(v,u)`.
pub fn check_symmetric<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let lag = k.timelag();
    let scale = T::one() / T::from_usize_lossy(g.order()).max(T::one());
    let mut worst = 0.0f64;
    let mut witnesses = Vec::new();
    for x in 0..g.order() {
        for y in 0..g.order() {
            let v = ((lag.at(x, y).conj() - lag.at(g.mul(y, x), g.inv(y))) * scale).norm().as_f64();
            if v > exact_tol::<T>() {
                witnesses.push((x, y));
            }
            worst = worst.max(v);
        }
    }
    let mut r = rng();
    let mut cross = 0.0f64;
    for _ in 0..50 {
        let u = Signal::random(&g, &mut r);
        let d = cohen_distribution(k, &u)?;
        cross = cross.max(d.block(g.identity(), g.trivial())[0].im.abs().as_f64());
    }
    Ok(PropertyReport::new("symmetric", worst, exact_tol::<T>(), witnesses, Some(cross)))
}

/// Gram matrix `Γ[x,y] = k(x⁻¹, y⁻¹x) / |G|`, whose quadratic form on
/// unit-norm signals is `D[u](e, ε)`.
pub fn positivity_gram<T: Real>(k: &CohenKernel<T>) -> CMatrix<T> {
    let g = k.group().clone();
    let lag = k.timelag();
    let inv_n = g.inv_order();
    let n = g.order();
    CMatrix::from_fn(n, n, |x, y| lag.at(g.inv(x), g.mul(g.inv(y), x)) * inv_n)
}

/// `D[u](x, η) ⪰ 0` for all `u`, decided by positive semidefiniteness of the
/// Gram matrix of the original localization operator.
pub fn check_positive<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let gram = positivity_gram(k);
    let herm_defect = gram.sub(&gram.adjoint()).max_abs().as_f64();
    let (vals, _) = gram.hermitian_part().hermitian_eigen();
    let mut witnesses: Vec<(usize, usize)> = vals
        .iter()
        .enumerate()
        .filter(|(_, &l)| l.as_f64() < -exact_tol::<T>())
        .map(|(i, _)| (i, 0))
        .collect();
    if herm_defect > exact_tol::<T>() {
        let n = g.order();
        for x in 0..n {
            for y in (x + 1)..n {
                if (gram[(x, y)] - gram[(y, x)].conj()).norm().as_f64() > exact_tol::<T>() {
                    witnesses.push((x, y));
                }
            }
        }
    }
    let lam_min = vals.first().map(|l| l.as_f64()).unwrap_or(0.0);
    let violation = (-lam_min).max(0.0) + herm_defect;
    let mut r = rng();
    let mut cross = 0.0f64;
    for _ in 0..50 {
        let u = Signal::random(&g, &mut r);
        let z = cohen_distribution(k, &u)?.block(g.identity(), g.trivial())[0];
        let unit = (u.norm() * u.norm()).as_f64();
        cross = cross.max(((-z.re).as_f64().max(0.0) + z.im.abs().as_f64()) / unit.max(f64::MIN_POSITIVE));
    }
    Ok(PropertyReport::new("positive", violation, exact_tol::<T>(), witnesses, Some(cross)))
}

/// Every block `φ(ξ,y)` unitary, equivalently the Moyal identity
/// `⟨D(u,v), D(f,g)⟩ = ⟨u,f⟩⟨v,g⟩*`.
pub fn check_unitary<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let mut worst = 0.0f64;
    let mut witnesses = Vec::new();
    for y in 0..g.order() {
        for xi in 0..g.n_irreps() {
            let v = k.phi().matrix(xi, y).unitarity_defect().as_f64();
            if v > exact_tol::<T>() {
                witnesses.push((xi, y));
            }
            worst = worst.max(v);
        }
    }
    let mut r = rng();
    let cross = moyal_residual(k, &mut r, 20)?;
    Ok(PropertyReport::new("unitary", worst, exact_tol::<T>(), witnesses, Some(cross)))
}

/// Largest `|⟨D(u,v), D(f,g)⟩ − ⟨u,f⟩⟨v,g⟩*|` over `samples` random quadruples.
pub fn moyal_residual<T: Real>(k: &CohenKernel<T>, r: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let g = k.group().clone();
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let (u, v, f, h) = (Signal::random(&g, r), Signal::random(&g, r), Signal::random(&g, r), Signal::random(&g, r));
        let lhs = tf_inner(&cohen_transform(k, &u, &v)?, &cohen_transform(k, &f, &h)?)?;
        let rhs = haar_inner(&u, &f)? * haar_inner(&v, &h)?.conj();
        worst = worst.max((lhs - rhs).norm().as_f64());
    }
    Ok(worst)
}

/// `φ(ξ, zyz⁻¹) = ξ(z) φ(ξ,y) ξ(z)*`, equivalently `D` commutes with inner
/// automorphisms: `D(u_z, v_z)(x,η) = η(z) D(u,v)(z⁻¹xz, η) η(z)*` where
/// `u_z(x) = u(z⁻¹xz)`.
pub fn check_inner_invariant<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let tg = g.table();
    let mut worst = 0.0f64;
    let mut witnesses = Vec::new();
    for xi in 0..g.n_irreps() {
        let irrep = g.irrep(xi);
        for y in 0..g.order() {
            let phi_y = k.phi().matrix(xi, y);
            let mut bad = false;
            for z in 0..g.order() {
                let rz = irrep.matrix(z);
                let want = rz.matmul(&phi_y).matmul(&rz.adjoint());
                let v = k.phi().matrix(xi, tg.conjugate(z, y)).sub(&want).max_abs().as_f64();
                bad |= v > exact_tol::<T>();
                worst = worst.max(v);
            }
            if bad {
                witnesses.push((xi, y));
            }
        }
    }
    let mut r = rng();
    let mut cross = 0.0f64;
    for _ in 0..5 {
        let u = Signal::random(&g, &mut r);
        let v = Signal::random(&g, &mut r);
        let d = cohen_transform(k, &u, &v)?;
        for z in 0..g.order() {
            let zi = g.inv(z);
            let uz = Signal::from_fn(&g, |x| u.at(tg.conjugate(zi, x)));
            let vz = Signal::from_fn(&g, |x| v.at(tg.conjugate(zi, x)));
            let dz = cohen_transform(k, &uz, &vz)?;
            for x in 0..g.order() {
                let src = tg.conjugate(zi, x);
                for eta in 0..g.n_irreps() {
                    let rz = g.irrep(eta).matrix(z);
                    let want = rz.matmul(&d.matrix(src, eta)).matmul(&rz.adjoint());
                    cross = cross.max(dz.matrix(x, eta).sub(&want).max_abs().as_f64());
                }
            }
        }
    }
    Ok(PropertyReport::new("inner", worst, exact_tol::<T>(), witnesses, Some(cross)))
}

/// `‖D(u,v)‖ ≤ ‖φ‖_{L∞} ‖u‖ ‖v‖` on 100 sampled pairs.
pub fn check_l2_bound<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let bound = k.phi().linf_norm().as_f64();
    let mut r = rng();
    let mut worst = 0.0f64;
    let mut witnesses = Vec::new();
    for i in 0..100 {
        let u = Signal::random(&g, &mut r);
        let v = Signal::random(&g, &mut r);
        let d = cohen_transform(k, &u, &v)?.norm().as_f64();
        let excess = (d - bound * u.norm().as_f64() * v.norm().as_f64()).max(0.0);
        if excess > exact_tol::<T>() {
            witnesses.push((i, 0));
        }
        worst = worst.max(excess);
    }
    Ok(PropertyReport::new("l2-bound", worst, exact_tol::<T>(), witnesses, None))
}

/// Orthonormal basis `√d_η η_jk` of `L²(G)`.
pub fn matrix_coefficient_basis<T: Real>(g: &std::sync::Arc<crate::group::Group<T>>) -> Vec<Signal<T>> {
    let mut out = Vec::with_capacity(g.order());
    for eta in 0..g.n_irreps() {
        let d = g.dim(eta);
        let s = T::from_usize_lossy(d).sqrt();
        for j in 0..d {
            for kk in 0..d {
                out.push(Signal::from_fn(g, |x| g.irrep(eta).entry(x, j, kk) * s));
            }
        }
    }
    out
}

/// `Σ_α D[v_α]` over an orthonormal basis quantizes (Kohn–Nirenberg) to the
/// identity; the deviation is measured on the operator matrix.
pub fn check_onb_resolution<T: Real>(k: &CohenKernel<T>) -> Result<PropertyReport> {
    let g = k.group().clone();
    let mut b = TFFunction::zeros(&g);
    for v in matrix_coefficient_basis(&g) {
        b = b.add(&cohen_distribution(k, &v)?)?;
    }
    let op = kn_operator(&b);
    let diff = op.sub(&GroupOperator::identity(&g))?.matrix();
    let n = g.order();
    let mut witnesses = Vec::new();
    let tol = sampled_tol::<T>();
    for x in 0..n {
        for y in 0..n {
            if diff[(x, y)].norm().as_f64() > tol {
                witnesses.push((x, y));
            }
        }
    }
    Ok(PropertyReport::new("onb-resolution", diff.max_abs().as_f64(), tol, witnesses, None))
}

/// Names accepted by [`check_by_name`], in report order.
pub const PROPERTY_NAMES: [&str; 9] = [
    "normalized",
    "time-margins",
    "freq-margins",
    "symmetric",
    "positive",
    "unitary",
    "inner",
    "l2-bound",
    "onb-resolution",
];

pub fn check_by_name<T: Real>(k: &CohenKernel<T>, name: &str) -> Option<Result<PropertyReport>> {
    Some(match name {
        "normalized" => check_normalized(k),
        "time-margins" => check_time_margins(k),
        "freq-margins" => check_frequency_margins(k),
        "symmetric" => check_symmetric(k),
        "positive" => check_positive(k),
        "unitary" => check_unitary(k),
        "inner" => check_inner_invariant(k),
        "l2-bound" => check_l2_bound(k),
        "onb-resolution" => check_onb_resolution(k),
        _ => return None,
    })
}

/// Runs every checker in [`PROPERTY_NAMES`] order.
pub fn check_all<T: Real>(k: &CohenKernel<T>) -> Result<Vec<PropertyReport>> {
    PROPERTY_NAMES.iter().map(|n| check_by_name(k, n).expect("known name")).collect()
}

/// Zero kernel on the same group, used as a degenerate reference.
pub fn zero_kernel<T: Real>(k: &CohenKernel<T>) -> CohenKernel<T> {
    let mut phi = k.phi().clone();
    for z in phi.as_mut_slice() {
        *z = czero();
    }
    CohenKernel::new("zero", phi)
}
