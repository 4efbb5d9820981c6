mod common;

use common::*;
use gtfa_core::tfplane::{
    ambiguity_inner, ambiguity_to_timelag, inverse_symplectic_fourier, symplectic_fourier, tf_convolve, tf_inner,
    timelag_to_ambiguity,
};
use gtfa_core::transforms::{born_jordan_cyclic_kernel, rihaczek, spectrogram_kernel};
use gtfa_core::{AmbiguityFunction, Signal, TFFunction, TimeLagKernel};

fn random_scalar_tf(g: &G, seed: u64) -> TFFunction<f64> {
    TFFunction::random(g, &mut rng(seed))
}

#[test]
fn trivial_irrep_indicator_is_flat_in_lag() {
    for g in corpus() {
        let mut a = TFFunction::zeros(&g);
        for x in 0..g.order() {
            a.block_mut(x, g.trivial())[0] = c(1.0, 0.0);
        }
        let fa = symplectic_fourier(&a);
        for xi in 0..g.n_irreps() {
            for y in 0..g.order() {
                let d = g.dim(xi);
                let blk = fa.block(xi, y);
                for (k, z) in blk.iter().enumerate() {
                    let want = if xi == g.trivial() && k == 0 { 1.0 } else { 0.0 };
                    assert!((z - c(want, 0.0)).norm() < 1e-12, "{} ({xi},{y}) d={d}", g.name());
                }
            }
        }
    }
}

#[test]
fn rihaczek_transform_formula_on_z5() {
    let g = cyclic(5);
    let mut r = rng(10);
    let u = Signal::random(&g, &mut r);
    let v = Signal::random(&g, &mut r);
    let fa = symplectic_fourier(&rihaczek(&u, &v).unwrap());
    for xi in 0..5 {
        for y in 0..5 {
            let want: C = (0..5).map(|x| omega(-((x * xi) as i64), 5) * u.at(x) * v.at((x + 5 - y) % 5).conj()).sum::<C>() / 5.0;
            assert!((fa.scalar(xi, y) - want).norm() < 1e-10);
        }
    }
}

#[test]
fn plancherel_on_tf_plane() {
    let mut r = rng(11);
    for g in corpus() {
        let a = TFFunction::random(&g, &mut r);
        let b = TFFunction::random(&g, &mut r);
        let (fa, fb) = (symplectic_fourier(&a), symplectic_fourier(&b));
        assert!((ambiguity_inner(&fa, &fb).unwrap() - tf_inner(&a, &b).unwrap()).norm() <= 1e-10, "{}", g.name());
        assert!((fa.norm() - a.norm()).abs() <= 1e-10);
        assert!(inverse_symplectic_fourier(&fa).max_diff(&a) <= 1e-10);
    }
}

#[test]
fn identity_blocks_round_trip() {
    for g in corpus() {
        let id = AmbiguityFunction::identity(&g);
        let psi = inverse_symplectic_fourier(&id);
        assert!(symplectic_fourier(&psi).max_diff(&id) <= 1e-10);
        // ψ_R is the convolution identity
        let a = random_scalar_tf(&g, 12);
        assert!(tf_convolve(&a, &psi).unwrap().max_diff(&a) <= 1e-10);
    }
}

#[test]
fn inner_product_is_positive_definite() {
    let g = dihedral(3);
    let a = random_scalar_tf(&g, 13);
    let n = tf_inner(&a, &a).unwrap();
    assert!(n.re > 0.0 && n.im.abs() < 1e-12);
    let z = TFFunction::zeros(&g);
    assert!(tf_inner(&z, &z).unwrap().norm() < 1e-12);
}

#[test]
fn rihaczek_inner_products_factor() {
    let g = cyclic(7);
    let mut r = rng(14);
    let s: Vec<Signal<f64>> = (0..4).map(|_| Signal::random(&g, &mut r)).collect();
    let lhs = tf_inner(&rihaczek(&s[0], &s[1]).unwrap(), &rihaczek(&s[2], &s[3]).unwrap()).unwrap();
    let rhs = haar(&s[0], &s[2]) * haar(&s[1], &s[3]).conj();
    assert!((lhs - rhs).norm() < 1e-10);
}

#[test]
fn convolution_with_constant_identity() {
    for g in corpus() {
        let a = TFFunction::random(&g, &mut rng(15));
        let lambda = symplectic_fourier(&a).block(g.trivial(), g.identity())[0];
        let out = tf_convolve(&a, &TFFunction::identity(&g)).unwrap();
        assert!(out.max_diff(&TFFunction::identity(&g).scale(lambda)) <= 1e-10, "{}", g.name());
    }
}

#[test]
fn scalar_convolution_commutes_and_associates() {
    let g = cyclic(5);
    let (a, b, cc) = (random_scalar_tf(&g, 16), random_scalar_tf(&g, 17), random_scalar_tf(&g, 18));
    assert!(tf_convolve(&a, &b).unwrap().max_diff(&tf_convolve(&b, &a).unwrap()) <= 1e-10);
    let left = tf_convolve(&tf_convolve(&a, &b).unwrap(), &cc).unwrap();
    let right = tf_convolve(&a, &tf_convolve(&b, &cc).unwrap()).unwrap();
    assert!(left.max_diff(&right) <= 1e-9);
}

#[test]
fn matrix_convolution_associates() {
    for g in [dihedral(3), z2_d3()] {
        let (a, b, cc) = (random_scalar_tf(&g, 19), random_scalar_tf(&g, 20), random_scalar_tf(&g, 21));
        let left = tf_convolve(&tf_convolve(&a, &b).unwrap(), &cc).unwrap();
        let right = tf_convolve(&a, &tf_convolve(&b, &cc).unwrap()).unwrap();
        assert!(left.max_diff(&right) <= 1e-9);
    }
}

#[test]
fn identity_kernel_is_a_dirac_in_time() {
    for g in corpus() {
        let k = ambiguity_to_timelag(&AmbiguityFunction::identity(&g));
        let n = g.order() as f64;
        for x in 0..g.order() {
            for y in 0..g.order() {
                let want = if x == g.identity() { n } else { 0.0 };
                assert!((k.at(x, y) - c(want, 0.0)).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn spectrogram_lag_kernel_factors() {
    for g in [cyclic(6), dihedral(3), z2_d3()] {
        let w = unit_window(&g, 22);
        let k = spectrogram_kernel(&w).unwrap().timelag();
        let wt = |t: usize| w.at(g.inv(t)).conj();
        for x in 0..g.order() {
            for y in 0..g.order() {
                let want = wt(x) * wt(g.mul(y, x)).conj();
                assert!((k.at(x, y) - want).norm() < 1e-10, "{} ({x},{y})", g.name());
            }
        }
    }
}

#[test]
fn timelag_round_trip() {
    for g in corpus() {
        let phi = AmbiguityFunction::random(&g, &mut rng(23));
        assert!(timelag_to_ambiguity(&ambiguity_to_timelag(&phi)).max_diff(&phi) <= 1e-10);
        let k = TimeLagKernel::from_fn(&g, |x, y| c(x as f64, -(y as f64)));
        assert!(ambiguity_to_timelag(&timelag_to_ambiguity(&k)).max_diff(&k) <= 1e-10);
    }
}

#[test]
fn born_jordan_lag_kernel_transforms_to_closed_form() {
    for n in [2, 5, 8, 12] {
        let g = cyclic(n);
        let k = born_jordan_cyclic_kernel(&g).unwrap();
        let phi = timelag_to_ambiguity(&k.timelag());
        for xi in 0..n {
            for y in 0..n {
                assert!((phi.scalar(xi, y) - bj_oracle(xi, y, n)).norm() <= 1e-10, "N={n} ({xi},{y})");
            }
        }
    }
}

#[test]
fn zero_kernel_stays_zero() {
    let g = dihedral(4);
    let z = timelag_to_ambiguity(&TimeLagKernel::from_fn(&g, |_, _| c(0.0, 0.0)));
    assert_eq!(z.max_abs(), 0.0);
}
