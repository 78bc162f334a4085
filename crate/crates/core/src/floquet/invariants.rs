use serde::{Deserialize, Serialize};

use crate::error::{FloqError, Result};
use crate::floquet::matrix::{build_floquet_1d, floquet_with_diagonal, lambda_index, ZMode};
use crate::grobner::symmetric::SymmetricFamily;
use crate::poly::{Degree, ExponentVector, MultiPoly, VarKind, VariableTable, Vars};
use crate::scalar::{Embed, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `p_1..p_n` in `v_1..v_n`.
    Full,
    /// `p'_1..p'_m` in `u_1..u_m` for the anti-palindromic potential.
    Specialized,
    /// `h_1..h_n` in `v_1..v_n, t`.
    ExtendedT,
    /// Invariants of a two-dimensional lattice at one torus point.
    Lattice,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Specialized => "specialized",
            Variant::ExtendedT => "extended_t",
            Variant::Lattice => "lattice",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = FloqError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "specialized" => Ok(Variant::Specialized),
            "extended" | "extended_t" => Ok(Variant::ExtendedT),
            "lattice" => Ok(Variant::Lattice),
            other => Err(FloqError::InvalidArgument(format!("unknown variant {other:?}"))),
        }
    }
}

/// A square system whose `k`-th generator has top-degree form `e_k` in the
/// main variables (raised to `power`).
#[derive(Debug, Clone)]
pub struct InvariantSystem<C> {
    pub n: usize,
    pub variant: Variant,
    pub vars: Vars,
    /// Positions of `x_1..x_m` in `vars`, in order.
    pub main: Vec<usize>,
    /// 1 for `v`, 2 for the squared `u` of the specialized system.
    pub power: i16,
    pub generators: Vec<MultiPoly<C>>,
}

impl<C: Scalar> InvariantSystem<C> {
    pub fn family(&self) -> SymmetricFamily {
        SymmetricFamily::new(&self.vars, self.main.clone(), self.power)
    }

    /// Number of main variables (and generators).
    pub fn size(&self) -> usize {
        self.main.len()
    }

    /// Positions in `vars` that are not main variables (`t` for the
    /// extended system).
    pub fn auxiliary(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|i| !self.main.contains(i)).collect()
    }

    /// Checks `T_max(gen_k) = e_k` (after setting auxiliary variables to
    /// zero) and that every generator has zero constant term.
    pub fn check_leading_forms(&self) -> Result<()> {
        let fam = self.family();
        let aux = self.auxiliary();
        for (i, g) in self.generators.iter().enumerate() {
            let k = i + 1;
            let expected_degree = self.power as i32 * k as i32;
            if g.total_degree() != expected_degree {
                return Err(FloqError::LeadingTerm {
                    k,
                    detail: format!("degree {} != {expected_degree}", g.total_degree()),
                });
            }
            let top = drop_aux(&g.homogeneous_part(Degree::Max), &aux);
            if top != fam.e::<C>(k)? {
                return Err(FloqError::LeadingTerm {
                    k,
                    detail: "top-degree form is not elementary symmetric".into(),
                });
            }
            if !g.constant_term().is_zero() {
                return Err(FloqError::LeadingTerm {
                    k,
                    detail: "nonzero constant term".into(),
                });
            }
        }
        Ok(())
    }

    /// Evaluates all generators at a point given in main-variable order
    /// (auxiliary variables set to `aux_value`).
    pub fn evaluate_at(&self, point: &[C], aux_value: C) -> Result<Vec<C>>
    where
        C: crate::scalar::Field,
    {
        if point.len() != self.main.len() {
            return Err(FloqError::DimensionMismatch {
                expected: self.main.len(),
                got: point.len(),
            });
        }
        let mut values = vec![aux_value; self.vars.len()];
        for (slot, x) in self.main.iter().zip(point) {
            values[*slot] = x.clone();
        }
        self.generators.iter().map(|g| g.eval_slice(&values)).collect()
    }
}

/// Drops every term that involves an auxiliary variable.
fn drop_aux<C: Scalar>(p: &MultiPoly<C>, aux: &[usize]) -> MultiPoly<C> {
    if aux.is_empty() {
        return p.clone();
    }
    MultiPoly::from_terms(
        p.vars(),
        p.terms()
            .filter(|(e, _)| aux.iter().all(|&a| e[a] == 0))
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

/// Removes the terms free of the potential variables, i.e. subtracts the
/// zero-potential polynomial.
pub(crate) fn subtract_free_part<C: Scalar>(p: &MultiPoly<C>, potential: &[usize]) -> MultiPoly<C> {
    MultiPoly::from_terms(
        p.vars(),
        p.terms()
            .filter(|(e, _)| potential.iter().any(|&i| e[i] != 0))
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

fn sign(parity: usize) -> Rational {
    if parity % 2 == 0 {
        Rational::from_i64(1)
    } else {
        Rational::from_i64(-1)
    }
}

/// `D_V(lam) = det(L_V - lam I)` at `z = 1`, over `v1..vn, lam`.
pub fn char_poly_1d(n: usize) -> Result<MultiPoly<Rational>> {
    let m = build_floquet_1d(n, ZMode::One)?;
    let lam = lambda_index(m.vars());
    Ok(m.char_poly(lam))
}

/// `zeta_V = D_V - D_0` over `v1..vn, lam`.
pub fn zeta_1d(n: usize) -> Result<MultiPoly<Rational>> {
    let d = char_poly_1d(n)?;
    Ok(subtract_free_part(&d, &(0..n).collect::<Vec<_>>()))
}

/// Full system `p_k = (-1)^(n-k) [lam^(n-k)] zeta_V`, `k = 1..n`.
pub fn spectral_invariants(n: usize) -> Result<InvariantSystem<Rational>> {
    let zeta = zeta_1d(n)?;
    let lam = lambda_index(zeta.vars());
    let generators = (1..=n)
        .map(|k| zeta.coeff_extract(lam, (n - k) as i32).scale(&sign(n - k)))
        .collect::<Vec<_>>();
    let vars = generators[0].vars().clone();
    let sys = InvariantSystem {
        n,
        variant: Variant::Full,
        vars,
        main: (0..n).collect(),
        power: 1,
        generators,
    };
    sys.check_leading_forms()?;
    Ok(sys)
}

/// Variable table `u1..um, lam`.
fn specialized_vars(m: usize) -> Vars {
    let mut v: Vec<(String, VarKind)> = (1..=m).map(|i| (format!("u{i}"), VarKind::Ordinary)).collect();
    v.push(("lam".into(), VarKind::Ordinary));
    VariableTable::new(v).expect("distinct names")
}

/// `zeta_U` for the anti-palindromic potential
/// `(u_1, ..., u_m, [0,] -u_m, ..., -u_1)`, over `u1..um, lam`.
pub fn specialized_zeta(n: usize) -> Result<MultiPoly<Rational>> {
    if n < 4 {
        return Err(FloqError::UnsupportedPeriod(n, 4));
    }
    let m = n / 2;
    let vars = specialized_vars(m);
    let diag: Vec<MultiPoly<Rational>> = (0..n)
        .map(|j| {
            if j < m {
                MultiPoly::var(&vars, j)
            } else if n % 2 == 1 && j == m {
                MultiPoly::zero(&vars)
            } else {
                -MultiPoly::var(&vars, n - 1 - j)
            }
        })
        .collect();
    let mat = floquet_with_diagonal(&vars, diag, ZMode::One)?;
    let lam = lambda_index(&vars);
    let d = mat.char_poly(lam);
    Ok(subtract_free_part(&d, &(0..m).collect::<Vec<_>>()))
}

/// Specialized system `p'_k = (-1)^(n+k) [lam^(n-2k)] zeta_U`, `k = 1..m`.
pub fn specialized_invariants(n: usize) -> Result<InvariantSystem<Rational>> {
    let zeta = specialized_zeta(n)?;
    let m = n / 2;
    let lam = lambda_index(zeta.vars());
    let generators = (1..=m)
        .map(|k| zeta.coeff_extract(lam, (n - 2 * k) as i32).scale(&sign(n + k)))
        .collect::<Vec<_>>();
    let vars = generators[0].vars().clone();
    let sys = InvariantSystem {
        n,
        variant: Variant::Specialized,
        vars,
        main: (0..m).collect(),
        power: 2,
        generators,
    };
    sys.check_leading_forms()?;
    Ok(sys)
}

/// Extended system `h_k(v, t) = p_k(v) - p_k(t V')` over `v1..vn, t` for a
/// point `V'` with pairwise distinct coordinates.
pub fn extended_invariants<C>(n: usize, vprime: &[C]) -> Result<InvariantSystem<C>>
where
    C: Scalar,
    Rational: Embed<C>,
{
    if vprime.len() != n {
        return Err(FloqError::DimensionMismatch {
            expected: n,
            got: vprime.len(),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if vprime[i] == vprime[j] {
                return Err(FloqError::NotGeneric(i + 1, j + 1));
            }
        }
    }
    let base = spectral_invariants(n)?;
    let vars = base.vars.extended([("t", VarKind::Ordinary)])?;
    let t = vars.len() - 1;
    let images: Vec<Option<(C, ExponentVector)>> = vprime
        .iter()
        .map(|c| Some((c.clone(), ExponentVector::unit(vars.len(), t))))
        .collect();
    let generators = base
        .generators
        .iter()
        .map(|p| {
            let p: MultiPoly<C> = p.embed();
            let shifted = p.substitute_monomials(&vars, &images)?;
            Ok(&p.rebase(&vars)? - &shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    let sys = InvariantSystem {
        n,
        variant: Variant::ExtendedT,
        vars,
        main: (0..n).collect(),
        power: 1,
        generators,
    };
    sys.check_leading_forms()?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::matrix::tests::leibniz;
    use crate::poly::parse_poly;
    use crate::scalar::rational;

    #[test]
    fn constant_coefficient_of_n3() {
        let d = char_poly_1d(3).unwrap();
        let lam = lambda_index(d.vars());
        let c0 = d.coeff_extract(lam, 0);
        // setting v = 0 leaves det(L_0) = 2
        let mut v = c0;
        for i in (0..3).rev() {
            v = v.specialize(i, &rational(0, 1));
        }
        assert_eq!(v.constant_term(), rational(2, 1));
    }

    #[test]
    fn leading_lambda_coefficient_of_zeta_vanishes() {
        for n in 3..=6 {
            let z = zeta_1d(n).unwrap();
            let lam = lambda_index(z.vars());
            assert!(z.coeff_extract(lam, n as i32).is_zero());
        }
    }

    #[test]
    fn p1_is_e1() {
        for n in 3..=7 {
            let sys = spectral_invariants(n).unwrap();
            assert_eq!(sys.generators[0], sys.family().e(1).unwrap());
            assert_eq!(sys.generators[1], sys.family().e(2).unwrap());
        }
    }

    #[test]
    fn n4_generators() {
        let sys = spectral_invariants(4).unwrap();
        let e = |k| sys.family().e::<Rational>(k).unwrap();
        assert_eq!(sys.generators[2], &e(3) - &e(1).scale(&rational(2, 1)));
        let ring = parse_poly(&sys.vars, "v1*v2 + v2*v3 + v3*v4 + v1*v4").unwrap();
        assert_eq!(sys.generators[3], &e(4) - &ring);
    }

    #[test]
    fn n4_oracle_from_leibniz() {
        // rebuild p_3, p_4 from the naive determinant
        let m = build_floquet_1d(4, ZMode::One).unwrap();
        let lam = lambda_index(m.vars());
        let d = leibniz(&m.shift_diagonal(lam));
        let zeta = subtract_free_part(&d, &[0, 1, 2, 3]);
        let sys = spectral_invariants(4).unwrap();
        for k in 1..=4 {
            let pk = zeta.coeff_extract(lam, 4 - k as i32).scale(&sign(4 - k));
            assert_eq!(pk, sys.generators[k - 1]);
        }
    }

    #[test]
    fn specialized_forms() {
        for n in 4..=9 {
            let sys = specialized_invariants(n).unwrap();
            assert_eq!(sys.generators.len(), n / 2);
            let zeta = specialized_zeta(n).unwrap();
            let lam = lambda_index(zeta.vars());
            for k in 0..=n / 2 {
                if n >= 2 * k + 1 {
                    assert!(zeta.coeff_extract(lam, (n - 2 * k - 1) as i32).is_zero());
                }
            }
        }
        assert!(specialized_invariants(3).is_err());
    }

    #[test]
    fn extended_system() {
        let vp: Vec<Rational> = [1, 2, 3, 5].iter().map(|&x| rational(x, 1)).collect();
        let sys = extended_invariants(4, &vp).unwrap();
        let t = sys.vars.require("t").unwrap();
        // h_1 = e_1(v) - t e_1(V')
        let h1 = parse_poly(&sys.vars, "v1 + v2 + v3 + v4 + -11*t").unwrap();
        assert_eq!(sys.generators[0], h1);
        // h_k(v, 0) = p_k(v)
        let base = spectral_invariants(4).unwrap();
        for (h, p) in sys.generators.iter().zip(&base.generators) {
            assert_eq!(h.specialize(t, &rational(0, 1)), *p);
        }
        // h_k(t V', t) = 0 at a few t values
        for tv in [rational(1, 3), rational(-2, 1)] {
            let mut point: Vec<Rational> = vp.iter().map(|x| x * &tv).collect();
            point.push(tv.clone());
            for h in &sys.generators {
                assert_eq!(h.eval_slice(&point).unwrap(), rational(0, 1));
            }
        }
        let bad = vec![rational(1, 1), rational(1, 1), rational(2, 1), rational(3, 1)];
        assert!(matches!(extended_invariants(4, &bad), Err(FloqError::NotGeneric(1, 2))));
    }
}
