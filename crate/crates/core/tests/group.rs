mod common;

use common::*;
use gtfa_core::group::{parse_group_table, write_group_table};
use gtfa_core::{build_cyclic, build_dihedral, build_product, Error, GroupKind};

#[test]
fn trivial_group() {
    let g = cyclic(1);
    assert_eq!(g.order(), 1);
    assert_eq!(g.n_irreps(), 1);
    assert_eq!(g.irrep(0).at(0)[0], c(1.0, 0.0));
}

#[test]
fn cyclic_character_value() {
    let g = cyclic(4);
    assert!((g.irrep(2).at(3)[0] - c(-1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn cyclic_six_is_complete() {
    let g = cyclic(6);
    assert_eq!(g.dims().iter().map(|d| d * d).sum::<usize>(), 6);
    assert!(g.validate().is_empty());
}

#[test]
fn zero_order_rejected() {
    assert!(build_cyclic::<f64>(0).is_err());
    assert!(build_dihedral::<f64>(2).is_err());
}

#[test]
fn dihedral_dims() {
    let d3 = dihedral(3);
    assert_eq!(d3.order(), 6);
    assert_eq!(d3.dims(), &[1, 1, 2]);
    let d4 = dihedral(4);
    assert_eq!(d4.order(), 8);
    let mut dims = d4.dims().to_vec();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 8);
    for n in 3..9 {
        assert!(dihedral(n).validate().is_empty(), "D{n}");
    }
}

#[test]
fn reflections_are_traceless_in_two_dim_irrep() {
    let g = dihedral(3);
    let two = (0..g.n_irreps()).find(|&k| g.dim(k) == 2).unwrap();
    // reflections are the non-identity involutions outside the rotation subgroup
    let mut refl = 0;
    for x in 0..6 {
        if x != g.identity() && g.mul(x, x) == g.identity() {
            refl += 1;
            assert!(g.irrep(two).character(x).norm() < 1e-12);
        }
    }
    assert_eq!(refl, 3);
}

#[test]
fn klein_group() {
    let k = build_product(&cyclic(2), &cyclic(2)).unwrap();
    assert_eq!(k.order(), 4);
    assert_eq!(k.dims(), &[1, 1, 1, 1]);
    for x in 0..4 {
        assert_eq!(k.mul(x, x), k.identity());
    }
}

#[test]
fn product_with_dihedral() {
    let g = z2_d3();
    assert_eq!(g.order(), 12);
    assert_eq!(g.dims(), &[1, 1, 2, 1, 1, 2]);
    assert!(g.validate().is_empty());
    assert!(matches!(g.kind(), GroupKind::Product));
}

#[test]
fn product_with_trivial_is_a_copy() {
    let a = dihedral(3);
    let p = build_product(&a, &cyclic(1)).unwrap();
    assert_eq!(p.order(), a.order());
    for x in 0..6 {
        for y in 0..6 {
            assert_eq!(p.mul(x, y), a.mul(x, y));
        }
        for k in 0..a.n_irreps() {
            assert!((p.irrep(k).character(x) - a.irrep(k).character(x)).norm() < 1e-14);
        }
    }
}

#[test]
fn schur_orthogonality_by_direct_sum() {
    for g in corpus() {
        let n = g.order() as f64;
        for k in 0..g.n_irreps() {
            let d = g.dim(k);
            for (j1, k1, j2, k2) in (0..d).flat_map(|a| (0..d).flat_map(move |b| (0..d).flat_map(move |cc| (0..d).map(move |dd| (a, b, cc, dd))))) {
                let s: C = (0..g.order()).map(|x| g.irrep(k).entry(x, j1, k1) * g.irrep(k).entry(x, j2, k2).conj()).sum::<C>() / n;
                let want = if j1 == j2 && k1 == k2 { 1.0 / d as f64 } else { 0.0 };
                assert!((s - c(want, 0.0)).norm() < 1e-8, "{} irrep {k}", g.name());
            }
        }
    }
}

#[test]
fn characters_pairwise_orthogonal() {
    for g in corpus() {
        let n = g.order() as f64;
        for a in 0..g.n_irreps() {
            for b in 0..g.n_irreps() {
                let s: C = (0..g.order()).map(|x| g.irrep(a).character(x) * g.irrep(b).character(x).conj()).sum::<C>() / n;
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((s - c(want, 0.0)).norm() < 1e-8);
            }
        }
    }
}

#[test]
fn contragredient_is_in_the_dual() {
    for g in corpus() {
        for k in 0..g.n_irreps() {
            // character of x ↦ η(x⁻¹)ᵀ is χ(x)*
            let found = (0..g.n_irreps()).any(|j| (0..g.order()).all(|x| (g.irrep(j).character(x) - g.irrep(k).character(x).conj()).norm() < 1e-8));
            assert!(found, "{} irrep {k}", g.name());
        }
        assert!(g.contragredient_map().iter().all(Option::is_some));
    }
}

const Z3: &str = "# cyclic group of order 3
group 3
identity 0
0 1 2
1 2 0
2 0 1
irreps 3
dim 1
1 0
1 0
1 0
dim 1
1 0
-0.5 0.8660254037844386
-0.5 -0.8660254037844386
dim 1
1 0
-0.5 -0.8660254037844386
-0.5 0.8660254037844386
";

#[test]
fn file_matches_builtin_characters() {
    let f = parse_group_table::<f64>(Z3, "z3").unwrap();
    let b = cyclic(3);
    for k in 0..3 {
        let matched = (0..3).any(|j| (0..3).all(|x| (f.irrep(k).character(x) - b.irrep(j).character(x)).norm() < 1e-12));
        assert!(matched);
    }
}

#[test]
fn file_roundtrip_through_writer() {
    let g = z2_d3();
    let text = write_group_table(&*g);
    let h = parse_group_table::<f64>(&text, "copy").unwrap();
    assert_eq!(h.order(), 12);
    assert_eq!(h.dims(), g.dims());
}

#[test]
fn load_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z3.txt");
    std::fs::write(&p, Z3).unwrap();
    let g = gtfa_core::load_group_file::<f64>(&p).unwrap();
    assert_eq!(g.order(), 3);
}

#[test]
fn non_unitary_matrix_reported() {
    let bad = Z3.replacen("-0.5 0.8660254037844386\n-0.5 -0.8660254037844386\ndim", "-0.5 0.8660254037844386\n-0.9 -0.8660254037844386\ndim", 1);
    match parse_group_table::<f64>(&bad, "bad") {
        Err(Error::InvariantViolation(v)) => {
            assert!(v.iter().any(|x| x.check.contains("unitar") && x.detail.contains('1')), "{v:?}");
        }
        other => panic!("expected invariant violation, got {other:?}"),
    }
}

#[test]
fn dropped_irrep_reported_as_incomplete() {
    let cut = Z3.find("dim 1\n1 0\n-0.5 -0.8660254037844386").unwrap();
    let bad = Z3[..cut].replace("irreps 3", "irreps 2");
    match parse_group_table::<f64>(&bad, "bad") {
        Err(Error::InvariantViolation(v)) => assert!(v.iter().any(|x| x.check.contains("complete")), "{v:?}"),
        other => panic!("expected invariant violation, got {other:?}"),
    }
}

#[test]
fn parse_error_has_line_number() {
    let bad = Z3.replace("1 2 0", "1 two 0");
    assert!(matches!(parse_group_table::<f64>(&bad, "bad"), Err(Error::Parse { line: 5, .. })));
}
