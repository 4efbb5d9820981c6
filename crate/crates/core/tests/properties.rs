mod common;

use common::*;
use gtfa_core::properties::*;
use gtfa_core::transforms::*;
use gtfa_core::{CMatrix, CohenKernel};

fn verdict(k: &CohenKernel<f64>, name: &str) -> bool {
    check_by_name(k, name).unwrap().unwrap().holds
}

fn library(g: &G) -> Vec<CohenKernel<f64>> {
    let mut v = vec![kn_kernel(g), anti_kn_kernel(g), margin_fix_kernel(g), spectrogram_kernel(&unit_window(g, 3)).unwrap()];
    if let Some(n) = g.cyclic_order() {
        v.push(born_jordan_cyclic_kernel(g).unwrap());
        let (f, h) = born_jordan_commutator_inputs(g).unwrap();
        v.push(commutator_kernel(&f, &h).unwrap());
        if n % 2 == 1 {
            v.push(wigner_kernel_odd_cyclic(g).unwrap());
        }
    }
    v
}

#[test]
fn kn_row() {
    for g in [cyclic(5), dihedral(3)] {
        let k = kn_kernel(&g);
        for (p, want) in [
            ("normalized", true),
            ("time-margins", true),
            ("freq-margins", true),
            ("symmetric", false),
            ("positive", false),
            ("unitary", true),
            ("inner", true),
            ("l2-bound", true),
        ] {
            assert_eq!(verdict(&k, p), want, "KN {p} on {}", g.name());
        }
    }
}

#[test]
fn anti_kn_row() {
    let k = anti_kn_kernel(&cyclic(6));
    assert!(verdict(&k, "unitary"));
    assert!(verdict(&k, "freq-margins"));
}

#[test]
fn born_jordan_row() {
    for n in 2..=12 {
        let k = born_jordan_cyclic_kernel(&cyclic(n)).unwrap();
        for p in ["normalized", "time-margins", "freq-margins", "symmetric"] {
            assert!(verdict(&k, p), "BJ N={n} {p}");
        }
        assert!(!verdict(&k, "unitary"), "BJ N={n} unitary");
    }
    assert!(!verdict(&born_jordan_cyclic_kernel(&cyclic(8)).unwrap(), "positive"));
}

#[test]
fn spectrogram_row() {
    let g = cyclic(16);
    let k = spectrogram_kernel(&gaussian_window(&g, 1.0)).unwrap();
    assert!(verdict(&k, "normalized"));
    assert!(verdict(&k, "positive"));
    assert!(verdict(&k, "symmetric"));
    assert!(!verdict(&k, "time-margins"));
    assert!(!verdict(&k, "freq-margins"));
}

#[test]
fn wigner_row() {
    let k = wigner_kernel_odd_cyclic(&cyclic(5)).unwrap();
    for p in ["symmetric", "unitary", "time-margins", "freq-margins"] {
        assert!(verdict(&k, p), "{p}");
    }
}

#[test]
fn commutator_alone_loses_axes() {
    let g = cyclic(7);
    let (f, h) = born_jordan_commutator_inputs(&g).unwrap();
    let k = commutator_kernel(&f, &h).unwrap();
    let r = check_normalized(&k).unwrap();
    assert!(!r.holds && (r.max_violation - 1.0).abs() < 1e-12);
    assert!(!verdict(&k, "freq-margins"));
}

#[test]
fn unitary_fails_exactly_at_zero_divisors() {
    let r = check_unitary(&born_jordan_cyclic_kernel(&cyclic(4)).unwrap()).unwrap();
    assert!(!r.holds);
    assert!(r.max_violation >= 1.0 - 1e-12);
}

#[test]
fn inner_invariance() {
    for g in corpus() {
        assert!(verdict(&kn_kernel(&g), "inner"));
    }
    let g = cyclic(6);
    let k = perturb_block(&kn_kernel(&g), 2, 3, &CMatrix::identity(1).scale(c(3.0, 1.0))).unwrap();
    assert!(verdict(&k, "inner"));
    let d3 = dihedral(3);
    let two = (0..3).find(|&e| d3.dim(e) == 2).unwrap();
    let m = CMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    let k = perturb_block(&kn_kernel(&d3), two, 1, &m).unwrap();
    let r = check_inner_invariant(&k).unwrap();
    assert!(!r.holds && !r.witnesses.is_empty());
}

#[test]
fn l2_bound_cases() {
    for g in [cyclic(6), dihedral(3)] {
        for k in library(&g) {
            assert!(verdict(&k, "l2-bound"), "{}", k.name());
        }
        assert!(verdict(&zero_kernel(&kn_kernel(&g)), "l2-bound"));
    }
}

#[test]
fn onb_resolution() {
    assert!(verdict(&kn_kernel(&cyclic(4)), "onb-resolution"));
    assert!(verdict(&born_jordan_cyclic_kernel(&cyclic(5)).unwrap(), "onb-resolution"));
    assert!(verdict(&margin_fix_kernel(&dihedral(3)), "onb-resolution"));
    assert_eq!(matrix_coefficient_basis(&dihedral(3)).len(), 6);
}

/// Gram eigenvalues from nalgebra as an independent oracle for `check_positive`.
fn nalgebra_min_eigen(k: &CohenKernel<f64>) -> f64 {
    let g = k.group().clone();
    let n = g.order();
    let lag = k.timelag();
    let m = nalgebra::DMatrix::from_fn(n, n, |x, y| {
        let z = lag.at(g.inv(x), g.mul(g.inv(y), x)) / n as f64;
        nalgebra::Complex::new(z.re, z.im)
    });
    let h = (&m + m.adjoint()) * nalgebra::Complex::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

#[test]
fn positivity_matches_nalgebra_eigenvalues() {
    for g in [cyclic(5), cyclic(8), dihedral(3)] {
        for k in library(&g) {
            let r = check_positive(&k).unwrap();
            let lam = nalgebra_min_eigen(&k);
            let gram = positivity_gram(&k);
            let herm = gram.sub(&gram.adjoint()).max_abs();
            let expect = lam >= -1e-9 && herm <= 1e-9;
            assert_eq!(r.holds, expect, "{} on {}: λ_min={lam}", k.name(), g.name());
        }
    }
    let bj8 = born_jordan_cyclic_kernel(&cyclic(8)).unwrap();
    assert!(nalgebra_min_eigen(&bj8) < -1e-3);
}

#[test]
fn cross_checks_agree_with_exhaustive_verdicts() {
    for g in [cyclic(5), cyclic(8), dihedral(3)] {
        for k in library(&g) {
            for r in check_all(&k).unwrap() {
                let Some(cross) = r.cross_check else { continue };
                if r.holds {
                    assert!(cross <= 1e-8, "{} {} on {}: cross {cross}", k.name(), r.name, g.name());
                } else if r.max_violation >= 1e-3 {
                    assert!(cross >= 1e-6, "{} {} on {}: cross {cross}", k.name(), r.name, g.name());
                }
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let k = born_jordan_cyclic_kernel(&cyclic(6)).unwrap();
    let a: Vec<String> = check_all(&k).unwrap().iter().map(|r| format!("{r}|{}", r.csv_row())).collect();
    let b: Vec<String> = check_all(&k).unwrap().iter().map(|r| format!("{r}|{}", r.csv_row())).collect();
    assert_eq!(a, b);
}

#[test]
fn report_line_format() {
    let r = check_normalized(&kn_kernel(&cyclic(3))).unwrap();
    assert_eq!(r.to_string(), "PROPERTY normalized HOLDS max_violation=0 witnesses=0");
    assert_eq!(format_g17(0.1), "0.10000000000000001");
    // expected strings from C printf("%.17g")
    assert_eq!(format_g17(1.5e-20), "1.5000000000000001e-20");
    assert_eq!(format_g17(2.5e-5), "2.5000000000000001e-05");
    assert_eq!(format_g17(1e20), "1e+20");
    assert_eq!(format_g17(123.0), "123");
}

#[test]
fn unknown_property_name() {
    assert!(check_by_name(&kn_kernel(&cyclic(2)), "bogus").is_none());
}
