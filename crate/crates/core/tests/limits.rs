mod common;

use common::*;
use gtfa_core::limits::*;
use gtfa_core::transforms::born_jordan_value;

#[test]
fn circle_kernel_values() {
    for xi in [-5i64, -1, 1, 4] {
        assert!((phi_dt::<f64>(xi, 0.0) - c(1.0, 0.0)).norm() < 1e-14);
    }
    assert_eq!(phi_dt::<f64>(0, 0.37), c(0.0, 0.0));
    assert!((phi_dt::<f64>(2, 0.25) - c(-0.5, 0.5)).norm() < 1e-15);
}

#[test]
fn circle_kernel_bounded_and_matches_quotient() {
    for xi in -12i64..=12 {
        for k in 0..200 {
            let y = k as f64 / 200.0 + 0.0013;
            let v = phi_dt::<f64>(xi, y);
            assert!(v.norm() <= 1.0 + 1e-12);
            let denom = (c(1.0, 0.0) - e(-std::f64::consts::TAU * y)).norm();
            if xi != 0 && denom > 1e-6 {
                assert!((v - phi_dt_quotient::<f64>(xi, y)).norm() <= 1e-10, "ξ={xi} y={y}");
            }
        }
    }
}

#[test]
fn integer_kernel_values() {
    assert!((varphi_dz::<f64>(0, 3) - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(varphi_dz::<f64>(5, 3), 0.0);
    assert_eq!(phi_dz::<f64>(0.3, 0), c(0.0, 0.0));
    for y in [-4i64, -1, 1, 6] {
        assert!((phi_dz::<f64>(0.0, y) - c(1.0, 0.0)).norm() < 1e-14);
    }
}

#[test]
fn integer_kernel_matches_quotient() {
    for y in -10i64..=10 {
        if y == 0 {
            continue;
        }
        for k in 0..300 {
            let xi = k as f64 / 300.0 + 0.0007;
            let denom = (c(1.0, 0.0) - e(std::f64::consts::TAU * xi)).norm();
            if denom > 1e-6 {
                assert!((phi_dz::<f64>(xi, y) - phi_dz_quotient::<f64>(xi, y)).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn sampled_lag_transform_matches_kernel() {
    for m in [8usize, 31, 64] {
        for y in -9i64..=9 {
            let t = sampled_timelag_transform::<f64>(y, m);
            for (j, v) in t.iter().enumerate() {
                assert!((v - phi_dz::<f64>(j as f64 / m as f64, y)).norm() <= 1e-9);
            }
        }
    }
}

#[test]
fn cyclic_kernel_tends_to_integer_kernel() {
    let err_at = |n: usize| {
        let mut worst: f64 = 0.0;
        for xi in [0.0, 0.125, 0.25, 0.375, 0.5, 0.75, 0.9375] {
            for y in [-3i64, -2, -1, 1, 2, 3] {
                let k = (xi * n as f64).round() as usize % n;
                let yy = y.rem_euclid(n as i64) as usize;
                worst = worst.max((born_jordan_value::<f64>(k, yy, n) - phi_dz::<f64>(xi, y)).norm());
            }
        }
        worst
    };
    assert!(err_at(1024) <= 0.01);
    // first-order convergence
    let ratio = err_at(512) / err_at(1024);
    assert!((ratio - 2.0).abs() < 0.05, "ratio {ratio}");
}

/// `D(x,θ)` summed over every `t` with the window kernel, no shortcuts.
fn brute_force(u: &ZSignal<f64>, m: usize, x: i64, j: usize) -> C {
    let lo = u.offset - 2 * u.len() as i64;
    let hi = u.offset + 3 * u.len() as i64;
    let mut s = c(0.0, 0.0);
    for y in -(u.len() as i64)..=(u.len() as i64) {
        let mut inner = c(0.0, 0.0);
        if y == 0 {
            inner = c(u.at(x).norm_sqr(), 0.0);
        } else {
            for t in lo..hi {
                inner += u.at(t) * u.at(t - y).conj() * varphi_dz::<f64>(x - t, y);
            }
        }
        s += omega(-(y * j as i64), m) * inner;
    }
    s
}

#[test]
fn grid_matches_brute_force() {
    let mut r = rng(80);
    let u = ZSignal::new(-3, (0..9).map(|_| {
        use rand::Rng;
        c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    }).collect());
    let q = q_z_distribution(&u, 20, true).unwrap();
    for t in 0..q.times {
        for j in 0..20 {
            assert!((q.at(t, j) - brute_force(&u, 20, q.start + t as i64, j)).norm() <= 1e-12);
        }
    }
    assert!(q.imag_residue() <= 1e-9);
}

#[test]
fn spike_is_flat() {
    let u = ZSignal::from_real(0, &[1.0]);
    let q = q_z_distribution(&u, 16, true).unwrap();
    assert_eq!((q.start, q.times), (0, 1));
    for j in 0..16 {
        assert!((q.at(0, j) - c(1.0, 0.0)).norm() < 1e-15);
    }
    let bare = q_z_distribution(&u, 16, false).unwrap();
    assert!(bare.values.iter().all(|z| z.norm() == 0.0));
}

#[test]
fn tone_ridge() {
    let m = 256;
    let bin = 40;
    let u = ZSignal::new(100, (0..64).map(|t| omega((bin * (100 + t)) as i64, m)).collect());
    let q = q_z_distribution(&u, m, true).unwrap();
    for t in 8..56 {
        let peak = (0..m).max_by(|&a, &b| q.at(t, a).re.partial_cmp(&q.at(t, b).re).unwrap()).unwrap();
        assert_eq!(peak, bin as usize, "t={t}");
    }
}

#[test]
fn energy_and_time_margin() {
    let mut r = rng(81);
    use rand::Rng;
    let u = ZSignal::new(7, (0..12).map(|_| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect());
    let q = q_z_distribution(&u, 48, true).unwrap();
    assert!((q.energy() - u.energy()).abs() <= 1e-6);
    for t in 0..q.times {
        let margin: f64 = (0..48).map(|j| q.at(t, j).re).sum::<f64>() / 48.0;
        assert!((margin - u.values[t].norm_sqr()).abs() <= 1e-10);
    }
    let (h, w, img) = q.real_image();
    assert_eq!((h, w, img.len()), (48, 12, 576));
    assert_eq!(img[w + 3], q.at(3, 1).re);
}

#[test]
fn periodization() {
    let u = ZSignal::from_real(2, &[1.0, 2.0]);
    assert_eq!(periodize_values(&u, 5).unwrap(), vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
    let pair = ZSignal::from_real(0, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 3.0, 0.0]);
    assert_eq!(periodize_values(&pair, 4).unwrap()[2], c(3.0, 0.0));
    assert_eq!(periodize_values(&pair, 4).unwrap()[0], c(1.0, 0.0));
}

#[test]
fn spike_agrees_between_cyclic_and_integer() {
    let u = ZSignal::from_real(0, &[0.7]);
    for n in [3, 12, 30] {
        let rep = cyclic_vs_z_comparison(&u, n).unwrap();
        assert!(rep.central_residual <= 1e-12, "N={n}");
    }
}

#[test]
fn cyclic_and_integer_distributions_converge() {
    let pair = ZSignal::from_real(0, &[1.0, 0.0, 0.0, 0.5]);
    let a: f64 = cyclic_vs_z_comparison(&pair, 48).unwrap().central_residual;
    let b: f64 = cyclic_vs_z_comparison(&pair, 96).unwrap().central_residual;
    let cc: f64 = cyclic_vs_z_comparison(&pair, 192).unwrap().central_residual;
    assert!(a > b && b > cc);
    assert!((a / b - 2.0).abs() < 0.2 && (b / cc - 2.0).abs() < 0.2, "{a} {b} {cc}");
}

#[test]
fn comparison_needs_room() {
    let u = ZSignal::from_real(0, &[1.0; 10]);
    assert!(cyclic_vs_z_comparison(&u, 20).is_err());
}
