use floq_core::floquet::{paired_potential, spectral_invariants};
use floq_core::scalar::{gaussian, rational};
use floq_core::symmetry::*;
use floq_core::{Complex64, GaussianRational};
use proptest::prelude::*;

fn point(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec((-2i64..=2, -2i64..=2), n).prop_map(|xs| xs.into_iter().map(|(a, b)| gaussian(a, b)).collect())
}

fn element(n: usize) -> impl Strategy<Value = SymmetryElement> {
    (0..n, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(rotation, reflect, negate, conjugate)| SymmetryElement {
        rotation,
        reflect,
        negate,
        conjugate,
    })
}

proptest! {
    #[test]
    fn group_law((v, g, h) in (3usize..8).prop_flat_map(|n| (point(n), element(n), element(n)))) {
        let n = v.len();
        prop_assert_eq!(g.apply(&h.apply(&v)), g.compose(&h, n).apply(&v));
    }

    #[test]
    fn orbit_sizes_divide_the_group_order(v in (3usize..8).prop_flat_map(point)) {
        let n = v.len();
        let size = orbit(&v, Group::Full, Tolerance::Exact).len();
        prop_assert_eq!((8 * n) % size, 0);
        prop_assert_eq!(2 * n % orbit(&v, Group::Dihedral, Tolerance::Exact).len(), 0);
    }

    #[test]
    fn canonical_form_is_constant_on_orbits((v, g) in (3usize..7).prop_flat_map(|n| (point(n), element(n)))) {
        let w = g.apply(&v);
        prop_assert_eq!(canonicalize(&v, Group::Full, Tolerance::Exact), canonicalize(&w, Group::Full, Tolerance::Exact));
    }
}

#[test]
fn group_orders() {
    assert_eq!(elements(Group::Full, 5).len(), 40);
    assert_eq!(elements(Group::Dihedral, 5).len(), 10);
    assert_eq!(elements(Group::Signs, 5).len(), 4);
}

#[test]
fn rotation_direction() {
    let v: Vec<GaussianRational> = (1..=4).map(|x| gaussian(x, 0)).collect();
    let w: Vec<GaussianRational> = [4, 1, 2, 3].iter().map(|&x| gaussian(x, 0)).collect();
    assert_eq!(SymmetryElement::rotation(1).apply(&v), w);
}

#[test]
fn paired_potential_orbit() {
    let v = paired_potential(4).unwrap();
    let orb = orbit(&v, Group::Full, Tolerance::Exact);
    assert_eq!(orb.len(), 8);
    let neg_conj = SymmetryElement {
        negate: true,
        conjugate: true,
        ..SymmetryElement::IDENTITY
    };
    // -conj(1+i, 1-i, -1+i, -1-i) = (-1+i, -1-i, 1+i, 1-i), a rotation by two
    assert_eq!(neg_conj.apply(&v), SymmetryElement::rotation(2).apply(&v));
    let sys = spectral_invariants(4).unwrap();
    for w in &orb {
        assert!(floq_core::floquet::verify_exact(&sys, w).unwrap().isospectral);
    }
}

#[test]
fn palindromic_forms() {
    let v = paired_potential(4).unwrap();
    let shifted = SymmetryElement::rotation(3).apply(&v);
    assert!(conjecture_form_check(&v, ConjectureForm::C1Antipalindromic, Tolerance::Exact));
    assert!(conjecture_form_check(&shifted, ConjectureForm::C2Conjpalindromic, Tolerance::Exact));
    let plain: Vec<Complex64> = (1..=4).map(|x| Complex64::new(x as f64, 0.0)).collect();
    for form in [ConjectureForm::C1Antipalindromic, ConjectureForm::C2Conjpalindromic] {
        assert!(!conjecture_form_check(&plain, form, Tolerance::Abs(1e-9)));
        assert!(conjecture_form_check(&[Complex64::new(0.0, 0.0); 4], form, Tolerance::Abs(1e-9)));
    }
}

#[test]
fn reflection_negates_antipalindromic_potentials() {
    let u = [gaussian(2, 1), GaussianRational::new(rational(1, 2), rational(-3, 1))];
    let v = vec![u[0].clone(), u[1].clone(), gaussian(0, 0), -u[1].clone(), -u[0].clone()];
    let reflect = SymmetryElement {
        reflect: true,
        ..SymmetryElement::IDENTITY
    };
    let neg: Vec<_> = v.iter().map(|z| -z.clone()).collect();
    assert_eq!(reflect.apply(&v), neg);
}
