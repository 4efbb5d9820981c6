#![allow(dead_code)]

use std::sync::Arc;

use gtfa_core::{build_cyclic, build_dihedral, build_product, CMatrix, Group, Signal};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type C = Complex<f64>;
pub type G = Arc<Group<f64>>;

pub fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cyclic(n: usize) -> G {
    build_cyclic::<f64>(n).unwrap()
}

pub fn dihedral(n: usize) -> G {
    build_dihedral::<f64>(n).unwrap()
}

pub fn z2_d3() -> G {
    build_product(&cyclic(2), &dihedral(3)).unwrap()
}

/// The standard corpus: ℤ/N for a spread of N, D₃, D₄ and ℤ/2×D₃.
pub fn corpus() -> Vec<G> {
    let mut v: Vec<G> = [2, 3, 4, 8, 16, 32].iter().map(|&n| cyclic(n)).collect();
    v.push(dihedral(3));
    v.push(dihedral(4));
    v.push(z2_d3());
    v
}

pub fn e(theta: f64) -> C {
    C::from_polar(1.0, theta)
}

/// `e^{i2πp/q}` computed independently of the crate.
pub fn omega(p: i64, q: usize) -> C {
    e(std::f64::consts::TAU * p as f64 / q as f64)
}

/// `(1/|G|) Σ u v*`, written out.
pub fn haar(u: &Signal<f64>, v: &Signal<f64>) -> C {
    let n = u.len() as f64;
    u.values().iter().zip(v.values()).map(|(a, b)| a * b.conj()).sum::<C>() / n
}

/// `û(η)` as a matrix, summed through `CMatrix` ops rather than raw slices.
pub fn fourier_oracle(u: &Signal<f64>, eta: usize) -> CMatrix<f64> {
    let g = u.group();
    let n = g.order();
    let d = g.dim(eta);
    let mut acc = CMatrix::zeros(d, d);
    for x in 0..n {
        acc = acc.add(&g.irrep(eta).matrix(x).adjoint().scale(u.at(x)));
    }
    acc.scale(c(1.0 / n as f64, 0.0))
}

/// Born–Jordan ambiguity value on ℤ/N via `S_y(ξ) = Σ_{k<y} ω^{kξ}`.
pub fn bj_oracle(xi: usize, y: usize, n: usize) -> C {
    if xi == 0 || y == 0 {
        return c(1.0, 0.0);
    }
    let s: C = (0..y).map(|k| omega((k * xi) as i64, n)).sum();
    c(0.0, std::f64::consts::TAU / n as f64) * s / (c(1.0, 0.0) - omega(-(y as i64), n))
}

pub fn max_abs(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Unit-norm discrete Gaussian window on ℤ/N centred at 0.
pub fn gaussian_window(g: &G, sigma: f64) -> Signal<f64> {
    let n = g.order() as i64;
    let raw: Vec<f64> = (0..n)
        .map(|x| {
            let t = if x > n / 2 { x - n } else { x } as f64;
            (-std::f64::consts::PI * (t / sigma).powi(2)).exp()
        })
        .collect();
    let norm = (raw.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    Signal::from_real(g, &raw.iter().map(|v| v / norm).collect::<Vec<_>>()).unwrap()
}

/// Random unit-norm window on any group.
pub fn unit_window(g: &G, seed: u64) -> Signal<f64> {
    let w = Signal::random(g, &mut rng(seed));
    let nrm = w.norm();
    w.scale(c(1.0 / nrm, 0.0))
}
