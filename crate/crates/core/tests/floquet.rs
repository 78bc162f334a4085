mod common;

use floq_core::floquet::*;
use floq_core::grobner::symmetric::elementary;
use floq_core::poly::MultiPoly;
use floq_core::scalar::{gaussian, rational, Conjugate};
use floq_core::symmetry::{orbit, Group, Tolerance};
use floq_core::{GaussianRational, Poly, Rational};
use proptest::prelude::*;

#[test]
fn structured_determinant_matches_leibniz() {
    for n in 3..=5 {
        for z in [ZMode::One, ZMode::Symbolic] {
            let m = build_floquet_1d(n, z).unwrap();
            let lam = lambda_index(m.vars());
            assert_eq!(m.char_poly(lam), common::leibniz_char_poly(&m, lam), "n={n} {z:?}");
        }
    }
}

#[test]
fn free_characteristic_polynomial() {
    let d = char_poly_1d(4).unwrap();
    let free = (0..4).rev().fold(d, |f, v| f.specialize(v, &rational(0, 1)));
    let lam = lambda_index(free.vars());
    let want = [(4, 1), (2, -4)];
    for k in 0..=4 {
        let c = want.iter().find(|w| w.0 == k).map_or(0, |w| w.1);
        assert_eq!(free.coeff_extract(lam, k).constant_term(), rational(c, 1), "lam^{k}");
    }
}

#[test]
fn term_parity() {
    for n in 3..=8 {
        let sys = spectral_invariants(n).unwrap();
        for (i, p) in sys.generators.iter().enumerate() {
            let k = i as i32 + 1;
            assert!(p.terms().all(|(e, _)| (e.total_degree() - k) % 2 == 0), "n={n} p_{k}");
        }
    }
}

#[test]
fn dihedral_invariance() {
    for n in 3..=8 {
        let sys = spectral_invariants(n).unwrap();
        let len = sys.vars.len();
        let fixed = |mut p: Vec<usize>| {
            p.extend(n..len);
            p
        };
        let rotation = fixed((0..n).map(|i| (i + 1) % n).collect());
        let reflection = fixed((0..n).map(|i| n - 1 - i).collect());
        for p in &sys.generators {
            assert_eq!(&p.permute_vars(&rotation), p, "n={n}");
            assert_eq!(&p.permute_vars(&reflection), p, "n={n}");
        }
    }
}

#[test]
fn leading_forms_are_elementary() {
    for n in 3..=8 {
        spectral_invariants(n).unwrap().check_leading_forms().unwrap();
        if n >= 4 {
            specialized_invariants(n).unwrap().check_leading_forms().unwrap();
        }
    }
}

#[test]
fn small_invariants_against_hand_expansion() {
    let sys = spectral_invariants(4).unwrap();
    let vars = &sys.vars;
    let v = |i| Poly::var(vars, i);
    let e = |k| elementary::<Rational>(vars, &sys.main, k, 1).unwrap();
    assert_eq!(sys.generators[0], e(1));
    assert_eq!(sys.generators[2], &e(3) - &e(1).scale(&rational(2, 1)));
    let ring = &(&(&(&v(0) * &v(1)) + &(&v(1) * &v(2))) + &(&v(2) * &v(3))) + &(&v(0) * &v(3));
    assert_eq!(sys.generators[3], &e(4) - &ring);
}

#[test]
fn odd_lambda_coefficients_of_the_specialized_zeta_vanish() {
    for n in 4..=8 {
        let z = specialized_zeta(n).unwrap();
        let lam = lambda_index(z.vars());
        assert_eq!(z.coeff_extract(lam, n as i32).is_zero(), true);
        for j in (0..n as i32).filter(|j| (n as i32 - j) % 2 == 1) {
            assert!(z.coeff_extract(lam, j).is_zero(), "n={n} lam^{j}");
        }
    }
}

#[test]
fn specialized_system_contains_the_paired_point() {
    let sys = specialized_invariants(4).unwrap();
    let values = sys
        .generators
        .iter()
        .map(|g| g.embed::<GaussianRational>().eval_slice(&[gaussian(1, 1), gaussian(1, -1)]).unwrap())
        .collect::<Vec<_>>();
    assert!(values.iter().all(|c| *c == gaussian(0, 0)));
}

#[test]
fn exact_verification() {
    let sys = spectral_invariants(4).unwrap();
    let report = verify_exact(&sys, &paired_potential(4).unwrap()).unwrap();
    assert!(report.isospectral);
    assert_eq!(report.residuals, Residuals::Exact(vec!["0".into(); 4]));
    assert!(verify_exact(&sys, &vec![gaussian(0, 0); 4]).unwrap().isospectral);
    let bump = [gaussian(1, 0), gaussian(0, 0), gaussian(0, 0), gaussian(0, 0)];
    assert!(!verify_exact(&sys, &bump).unwrap().isospectral);
    for w in orbit(&paired_potential(4).unwrap(), Group::Full, Tolerance::Exact) {
        assert!(verify_exact(&sys, &w).unwrap().isospectral);
    }
}

#[test]
fn extended_system_at_zero_and_on_the_ray() {
    let vp: Vec<Rational> = [1, 2, 3, 5].iter().map(|&x| rational(x, 1)).collect();
    let sys = extended_invariants(4, &vp).unwrap();
    let base = spectral_invariants(4).unwrap();
    let t = sys.vars.len() - 1;
    for (h, p) in sys.generators.iter().zip(&base.generators) {
        assert_eq!(&h.specialize(t, &rational(0, 1)), p);
        let s = rational(7, 3);
        let mut point: Vec<Rational> = vp.iter().map(|x| x * &s).collect();
        point.resize(sys.vars.len(), rational(0, 1));
        point[t] = s;
        assert_eq!(h.eval_slice(&point).unwrap(), rational(0, 1));
    }
}

fn gaussian_point(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec((-3i64..=3, -3i64..=3, 1i64..=2), n)
        .prop_map(|xs| xs.into_iter().map(|(a, b, d)| GaussianRational::new(rational(a, d), rational(b, d))).collect())
}

fn values(sys: &InvariantSystem<Rational>, v: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut point = v.to_vec();
    point.resize(sys.vars.len(), gaussian(0, 0));
    sys.generators
        .iter()
        .map(|g| MultiPoly::eval_slice(&g.embed::<GaussianRational>(), &point).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn negation_and_conjugation_preserve_isospectrality(v in gaussian_point(5)) {
        let sys = spectral_invariants(5).unwrap();
        let base = values(&sys, &v);
        let neg: Vec<_> = v.iter().map(|z| -z.clone()).collect();
        let conj: Vec<_> = v.iter().map(|z| z.conjugate()).collect();
        for (k, (a, b)) in base.iter().zip(values(&sys, &neg)).enumerate() {
            let want = if k % 2 == 0 { -a.clone() } else { a.clone() };
            prop_assert_eq!(want, b);
        }
        for (a, b) in base.iter().zip(values(&sys, &conj)) {
            prop_assert_eq!(a.conjugate(), b);
        }
        let iso = verify_exact(&sys, &v).unwrap().isospectral;
        prop_assert_eq!(iso, verify_exact(&sys, &neg).unwrap().isospectral);
        prop_assert_eq!(iso, verify_exact(&sys, &conj).unwrap().isospectral);
    }
}
