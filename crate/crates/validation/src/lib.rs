//! Reference formulas written out term by term, used to check the library
//! from the outside. Nothing here calls into the transforms being tested.

use std::f64::consts::TAU;
use std::sync::Arc;

use gtfa_core::{build_cyclic, build_dihedral, build_product, CMatrix, FourierCoefficients, Group, Signal, TFFunction};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex<f64>;
pub type G = Arc<Group<f64>>;

pub fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `e^{i2πp/q}`
pub fn omega(p: i64, q: usize) -> C {
    C::from_polar(1.0, TAU * p as f64 / q as f64)
}

/// ℤ/N for N ∈ {2,3,4,8,16,32}, D₃, D₄ and ℤ/2×D₃.
pub fn corpus() -> Vec<G> {
    let mut v: Vec<G> = [2, 3, 4, 8, 16, 32].iter().map(|&n| build_cyclic(n).unwrap()).collect();
    v.push(build_dihedral(3).unwrap());
    v.push(build_dihedral(4).unwrap());
    v.push(build_product(&build_cyclic(2).unwrap(), &build_dihedral(3).unwrap()).unwrap());
    v
}

/// `(1/|G|) Σ u v*`
pub fn haar(u: &Signal<f64>, v: &Signal<f64>) -> C {
    u.values().iter().zip(v.values()).map(|(a, b)| a * b.conj()).sum::<C>() / u.len() as f64
}

pub fn haar_norm(u: &Signal<f64>) -> f64 {
    haar(u, u).re.sqrt()
}

/// `û(η) = (1/|G|) Σ_x u(x) η(x)*`
pub fn fourier_oracle(u: &Signal<f64>, eta: usize) -> CMatrix<f64> {
    let g = u.group();
    let d = g.dim(eta);
    let n = g.order() as f64;
    CMatrix::from_fn(d, d, |j, k| (0..g.order()).map(|x| u.at(x) * g.irrep(eta).entry(x, k, j).conj()).sum::<C>() / n)
}

/// `Σ_η d_η tr(A(η) B(η)*)`
pub fn plancherel_oracle(a: &FourierCoefficients<f64>, b: &FourierCoefficients<f64>) -> C {
    let g = a.group();
    let mut s = c(0.0, 0.0);
    for eta in 0..g.n_irreps() {
        let d = g.dim(eta);
        let (x, y) = (a.block(eta), b.block(eta));
        for i in 0..d * d {
            s += x[i] * y[i].conj() * d as f64;
        }
    }
    s
}

/// `(1/|G|) Σ_x Σ_η d_η tr(a b*)`
pub fn tf_inner_oracle(a: &TFFunction<f64>, b: &TFFunction<f64>) -> C {
    let g = a.group();
    let mut s = c(0.0, 0.0);
    for x in 0..g.order() {
        for eta in 0..g.n_irreps() {
            let d = g.dim(eta);
            let (p, q) = (a.block(x, eta), b.block(x, eta));
            for i in 0..d * d {
                s += p[i] * q[i].conj() * d as f64;
            }
        }
    }
    s / g.order() as f64
}

/// Born–Jordan ambiguity value on ℤ/N,
/// `(i2π/N) Σ_{k<y} ω^{kξ} / (1 − ω^{−y})` off the axes and `1` on them.
pub fn born_jordan_oracle(xi: usize, y: usize, n: usize) -> C {
    if xi.is_multiple_of(n) || y.is_multiple_of(n) {
        return c(1.0, 0.0);
    }
    let s: C = (0..y).map(|k| omega((k * xi) as i64, n)).sum();
    c(0.0, TAU / n as f64) * s / (c(1.0, 0.0) - omega(-(y as i64), n))
}

/// `Σ_x varphi(x, y) e^{−i2πξx}` with the window kernel `1/|y|` on
/// `−y < x ≤ 0` (y > 0) or `0 < x ≤ −y` (y < 0).
pub fn integer_kernel_oracle(xi: f64, y: i64) -> C {
    if y == 0 {
        return c(0.0, 0.0);
    }
    let xs: Vec<i64> = if y > 0 { (-y + 1..=0).collect() } else { (1..=-y).collect() };
    xs.iter().map(|&x| C::from_polar(1.0, -TAU * xi * x as f64)).sum::<C>() / y.unsigned_abs() as f64
}

/// `min_{|λ|=1} ‖u − λ r‖`, attained at `λ = ⟨u, r⟩/|⟨u, r⟩|`.
pub fn class_distance_oracle(u: &Signal<f64>, r: &Signal<f64>) -> f64 {
    let ip = haar(u, r);
    let lambda = if ip.norm() > 0.0 { ip / ip.norm() } else { c(1.0, 0.0) };
    let d2: f64 = u.values().iter().zip(r.values()).map(|(a, b)| (a - lambda * b).norm_sqr()).sum();
    (d2 / u.len() as f64).sqrt()
}

/// Samples `ρ e^{iθ}` with `ρ ∈ [0.5, 1.5)`.
pub fn zero_free_signal<R: Rng>(g: &G, r: &mut R) -> Signal<f64> {
    Signal::from_fn(g, |_| {
        let rho: f64 = r.gen_range(0.5..1.5);
        C::from_polar(rho, r.gen_range(0.0..TAU))
    })
}

/// Largest entrywise difference between a symbol and a reference table.
pub fn max_abs(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
