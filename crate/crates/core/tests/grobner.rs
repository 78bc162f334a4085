use floq_core::floquet::{extended_invariants, specialized_invariants, spectral_invariants, InvariantSystem};
use floq_core::grobner::{check_generator, groebner_generators, GroebnerSystem, SignConvention};
use floq_core::poly::{ExponentVector, MultiPoly};
use floq_core::scalar::rational;
use floq_core::{Poly, Rational};

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn basis(sys: &InvariantSystem<Rational>) -> GroebnerSystem<Rational> {
    groebner_generators(sys).unwrap()
}

#[test]
fn leading_terms_and_top_forms() {
    for n in 3..=8 {
        let sys = spectral_invariants(n).unwrap();
        let g = basis(&sys);
        let fam = sys.family();
        for (i, gk) in g.generators.iter().enumerate() {
            check_generator(&fam, &[], i + 1, gk).unwrap();
            let mut lt = ExponentVector::zeros(g.vars.len());
            lt[i] = i as i16 + 1;
            assert_eq!(gk.leading_term().unwrap(), (lt, rational(1, 1)));
        }
        assert_eq!(g.generators[0], sys.generators[0]);
    }
}

#[test]
fn invariants_reduce_to_zero() {
    for n in 3..=7 {
        let sys = spectral_invariants(n).unwrap();
        let g = basis(&sys);
        for p in &sys.generators {
            assert!(g.normal_form(p).unwrap().is_zero(), "n={n}");
        }
    }
    for n in 4..=11 {
        let sys = specialized_invariants(n).unwrap();
        let g = basis(&sys);
        for p in &sys.generators {
            assert!(g.normal_form(p).unwrap().is_zero(), "specialized n={n}");
        }
    }
}

#[test]
fn specialized_sign_convention_is_recorded() {
    for n in [6, 8] {
        let g = basis(&specialized_invariants(n).unwrap());
        assert_eq!(g.convention, SignConvention::Alternating);
        assert!(g.unsigned_rejected_at.is_some());
    }
}

#[test]
fn leading_monomials_are_pairwise_coprime() {
    for n in 3..=8 {
        let g = basis(&spectral_invariants(n).unwrap());
        for (i, a) in g.leading.iter().enumerate() {
            for b in &g.leading[i + 1..] {
                assert!(a.iter().zip(b.iter()).all(|(x, y)| *x == 0 || *y == 0));
            }
        }
    }
}

#[test]
fn second_generator_for_three_sites() {
    let g = basis(&spectral_invariants(3).unwrap());
    let v = |i| Poly::var(&g.vars, i);
    let want = &(&(&v(1) * &v(1)) + &(&v(1) * &v(2))) + &(&v(2) * &v(2));
    assert_eq!(g.generators[1].homogeneous_part(floq_core::poly::Degree::Max), want);
}

#[test]
fn standard_monomials_are_normal_forms_and_closed() {
    for sys in [spectral_invariants(4).unwrap(), specialized_invariants(6).unwrap()] {
        let g = basis(&sys);
        let b = g.standard_monomials();
        let in_b = |p: &Poly| p.terms().all(|(e, _)| b.contains(e));
        for e in &b {
            let m = MultiPoly::monomial(&g.vars, e.clone(), rational(1, 1));
            assert_eq!(g.normal_form(&m).unwrap(), m);
            for &x in &g.main {
                let nf = g.normal_form(&(&m * &Poly::var(&g.vars, x))).unwrap();
                assert!(in_b(&nf));
            }
        }
    }
    let g = basis(&spectral_invariants(3).unwrap());
    let mut b: Vec<Vec<i16>> = g.standard_monomials().iter().map(|e| e.iter().copied().collect()).collect();
    b.sort();
    assert_eq!(b, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 2], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
}

#[test]
fn hilbert_data() {
    for n in 3..=8 {
        let g = basis(&spectral_invariants(n).unwrap());
        assert_eq!(g.basis_size() as u128, factorial(n as u128));
        assert_eq!(g.hilbert_function(0), 1);
        let stable = n * (n - 1) / 2;
        assert_eq!(g.max_standard_degree(), stable);
        for s in stable..stable + 4 {
            assert_eq!(g.hilbert_function(s), factorial(n as u128));
        }
        assert!(g.hilbert_function(stable - 1) < factorial(n as u128));
    }
    for n in 4..=11 {
        let m = n as u128 / 2;
        let g = basis(&specialized_invariants(n).unwrap());
        assert_eq!(g.basis_size() as u128, (1u128 << m) * factorial(m));
        assert_eq!(g.hilbert_function(n * (n - 1) / 2), (1u128 << m) * factorial(m));
    }
}

#[test]
fn extended_hilbert_polynomial() {
    for n in [4usize, 5] {
        let vp: Vec<Rational> = (1..=n as i64).map(|x| rational(x * x, 1)).collect();
        let g = basis(&extended_invariants(n, &vp).unwrap());
        let f = factorial(n as u128) as i128;
        for s in [10i128, 20] {
            let want = f * s - f * (n as i128 * (n as i128 - 1) - 4) / 4;
            assert_eq!(g.hilbert_function(s as usize) as i128, want, "n={n} s={s}");
        }
    }
}
