use floq_core::floquet::{specialized_invariants, spectral_invariants, verify_numeric};
use floq_core::grobner::groebner_generators;
use floq_core::solver::*;
use floq_core::symmetry::{elements, Group};
use floq_core::{Basis, Complex64};

fn full(n: usize) -> Basis {
    groebner_generators(&spectral_invariants(n).unwrap()).unwrap()
}

fn specialized(n: usize) -> Basis {
    groebner_generators(&specialized_invariants(n).unwrap()).unwrap()
}

#[test]
fn multiplication_matrices_commute_and_have_zero_trace() {
    for g in [full(4), full(5), specialized(6)] {
        let q = multiplication_matrices(&g, DEFAULT_CEILING).unwrap();
        assert_eq!(q.dim(), g.basis_size());
        assert!(q.commutator_norms().iter().all(|(_, r)| *r <= 1e-8));
        if g.variant == floq_core::floquet::Variant::Full {
            // v_1 + ... + v_n vanishes on the variety
            assert!(q.trace_sum().norm() < 1e-9);
        }
    }
}

#[test]
fn float_and_exact_tables_agree() {
    let g = full(5);
    let exact = multiplication_matrices(&g, DEFAULT_CEILING).unwrap();
    let float = multiplication_matrices_float(&g, DEFAULT_CEILING).unwrap();
    assert_eq!(float.provenance, TableProvenance::Float);
    for (a, b) in exact.matrices.iter().zip(&float.matrices) {
        assert!((a - b).norm() <= 1e-9 * a.norm());
    }
    let xi = random_weights(3, 5);
    assert_eq!(exact.origin_multiplicity(&xi), Some(60));
    assert_eq!(float.origin_multiplicity(&xi), Some(60));
}

#[test]
fn three_sites_have_only_the_origin() {
    let s = solve_variety(&full(3), &SolveConfig::default()).unwrap();
    assert_eq!(s.points.len(), 1);
    assert!(s.points[0].is_zero);
    assert_eq!(s.points[0].multiplicity, 6);
}

#[test]
fn four_sites_specialized_points_are_exact() {
    let s = solve_variety(&specialized(4), &SolveConfig::default()).unwrap();
    assert_eq!(s.total_multiplicity(), 8);
    assert_eq!(s.origin_multiplicity(), 4);
    let nonzero: Vec<_> = s.nonzero().collect();
    assert_eq!(nonzero.len(), 4);
    for p in nonzero {
        let (u1, u2) = (p.coords[0], p.coords[1]);
        assert!((u1.re.abs() - 1.0).abs() < 1e-9 && (u1.im.abs() - 1.0).abs() < 1e-9);
        assert!((u2 - u1.conj()).norm() < 1e-9);
    }
}

#[test]
fn conservation_closure_and_residuals() {
    for g in [full(4), full(5), specialized(6), specialized(7)] {
        let s = solve_variety(&g, &SolveConfig::default()).unwrap();
        assert_eq!(s.total_multiplicity(), g.basis_size());
        assert_eq!(s.diagnostics.closure_violations, 0);
        assert!(s.diagnostics.max_commutator.unwrap() <= 1e-8);
        assert!(s.origin_multiplicity() >= 2 * g.size());
        for p in s.points.iter().filter(|p| p.multiplicity == 1) {
            assert!(p.relative_residual <= 1e-10);
        }
    }
}

#[test]
fn solutions_are_isospectral_and_closed_under_the_full_group() {
    let s = solve_variety(&full(5), &SolveConfig::default()).unwrap();
    let sys = spectral_invariants(5).unwrap();
    for p in &s.points {
        assert!(verify_numeric(&sys, &p.coords, 1e-7).unwrap().isospectral);
        for e in elements(Group::Full, 5) {
            let image: Vec<Complex64> = e.apply(&p.coords);
            assert!(find_point(&s.points, &image, 1e-6).is_some());
        }
    }
}

#[test]
fn counts_do_not_depend_on_the_seed() {
    for g in [full(4), full(5), specialized(8)] {
        let cfg = SolveConfig::default();
        let base = summarize(&solve_variety(&g, &cfg).unwrap());
        let st = crosscheck(&g, &cfg, &base, &[1, 2]).unwrap();
        assert!(st.agree, "{:?}", st.disagreements);
    }
}

#[test]
fn table_rows_for_small_periods() {
    let row = summarize(&solve_variety(&full(4), &SolveConfig::default()).unwrap());
    assert_eq!((row.mult_at_zero, row.unique, row.unique_mod_dihedral), (16, 9, Some(2)));
    assert_eq!(row.conjecture2_count, 4);
    let row = summarize(&solve_variety(&full(5), &SolveConfig::default()).unwrap());
    assert_eq!((row.mult_at_zero, row.unique, row.unique_mod_dihedral), (60, 61, Some(7)));
    let row = summarize(&solve_variety(&specialized(6), &SolveConfig::default()).unwrap());
    assert_eq!((row.mult_at_zero, row.unique, row.unique_mod_all), (8, 41, 11));
}

#[test]
fn report_json_is_deterministic() {
    let g = full(4);
    let text = |seed| {
        let s = solve_variety(&g, &SolveConfig::with_seed(seed)).unwrap();
        serde_json::to_string(&SolveReport::new(s, None)).unwrap()
    };
    assert_eq!(text(5), text(5));
    let v: serde_json::Value = serde_json::from_str(&text(5)).unwrap();
    assert!(v["points"][0]["coords"][0].is_array());
}

#[test]
fn oversized_quotients_are_refused() {
    let err = multiplication_matrices(&full(5), 100).unwrap_err();
    assert!(matches!(err, floq_core::FloqError::CeilingExceeded { size: 120, ceiling: 100 }));
}
