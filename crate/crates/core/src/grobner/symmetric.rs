//! Elementary and complete homogeneous symmetric polynomials, optionally in
//! squared variables (`x -> x^2`).

use crate::error::{FloqError, Result};
use crate::poly::{ExponentVector, MultiPoly, Vars};
use crate::scalar::Scalar;

/// `e_k` over the variables at `indices`, each raised to `power`.
pub fn elementary<C: Scalar>(vars: &Vars, indices: &[usize], k: usize, power: i16) -> Result<MultiPoly<C>> {
    if k > indices.len() {
        return Err(FloqError::IndexOutOfRange(format!(
            "e_{k} over {} variables",
            indices.len()
        )));
    }
    let mut out = MultiPoly::zero(vars);
    let mut chosen = Vec::with_capacity(k);
    fn rec<C: Scalar>(
        vars: &Vars,
        indices: &[usize],
        start: usize,
        k: usize,
        power: i16,
        chosen: &mut Vec<usize>,
        out: &mut MultiPoly<C>,
    ) {
        if chosen.len() == k {
            let mut e = ExponentVector::zeros(vars.len());
            for &i in chosen.iter() {
                e[i] += power;
            }
            out.add_term(e, C::one());
            return;
        }
        let need = k - chosen.len();
        for pos in start..=indices.len() - need {
            chosen.push(indices[pos]);
            rec(vars, indices, pos + 1, k, power, chosen, out);
            chosen.pop();
        }
    }
    rec(vars, indices, 0, k, power, &mut chosen, &mut out);
    Ok(out)
}

/// Complete homogeneous symmetric polynomial of degree `b` over the
/// variables at `indices`, each raised to `power`. Degree zero gives 1.
pub fn complete<C: Scalar>(vars: &Vars, indices: &[usize], b: usize, power: i16) -> MultiPoly<C> {
    let mut out = MultiPoly::zero(vars);
    let mut e = ExponentVector::zeros(vars.len());
    fn rec<C: Scalar>(
        indices: &[usize],
        start: usize,
        left: usize,
        power: i16,
        e: &mut ExponentVector,
        out: &mut MultiPoly<C>,
    ) {
        if left == 0 {
            out.add_term(e.clone(), C::one());
            return;
        }
        for pos in start..indices.len() {
            e[indices[pos]] += power;
            rec(indices, pos, left - 1, power, e, out);
            e[indices[pos]] -= power;
        }
    }
    rec(indices, 0, b, power, &mut e, &mut out);
    out
}

/// The families used by the closed-form basis, indexed from 1 over a list
/// of main variables `x_1..x_m` (`power` 1 for `v`, 2 for the squared `u`).
#[derive(Debug, Clone)]
pub struct SymmetricFamily {
    pub vars: Vars,
    pub main: Vec<usize>,
    pub power: i16,
}

impl SymmetricFamily {
    pub fn new(vars: &Vars, main: Vec<usize>, power: i16) -> Self {
        Self {
            vars: vars.clone(),
            main,
            power,
        }
    }

    pub fn len(&self) -> usize {
        self.main.len()
    }

    pub fn is_empty(&self) -> bool {
        self.main.is_empty()
    }

    /// `e_k` (or `e'_k`).
    pub fn e<C: Scalar>(&self, k: usize) -> Result<MultiPoly<C>> {
        elementary(&self.vars, &self.main, k, self.power)
    }

    /// `H(a, b)` (or `H'(a, b)`) over `x_a..x_m`, with `1 <= a <= m`.
    pub fn h<C: Scalar>(&self, a: usize, b: usize) -> Result<MultiPoly<C>> {
        let m = self.main.len();
        if a == 0 || a > m {
            return Err(FloqError::IndexOutOfRange(format!("H({a}, {b}) with m = {m}")));
        }
        Ok(complete(&self.vars, &self.main[a - 1..], b, self.power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VariableTable};
    use crate::scalar::Rational;

    type Q = MultiPoly<Rational>;

    fn family(n: usize) -> SymmetricFamily {
        let vars = VariableTable::indexed("v", n);
        SymmetricFamily::new(&vars, (0..n).collect(), 1)
    }

    #[test]
    fn complete_h22_over_three_vars() {
        let f = family(3);
        let h: Q = f.h(2, 2).unwrap();
        assert_eq!(h, parse_poly(&f.vars, "v2^2 + v2*v3 + v3^2").unwrap());
        // brute force: multisets 2 <= j1 <= j2 <= 3
        let mut count = 0;
        for j1 in 2..=3 {
            for _j2 in j1..=3 {
                count += 1;
            }
        }
        assert_eq!(h.num_terms(), count);
    }

    #[test]
    fn degree_zero_is_one() {
        let f = family(4);
        for a in 1..=4 {
            assert_eq!(f.h::<Rational>(a, 0).unwrap(), Q::one(&f.vars));
        }
    }

    #[test]
    fn elementary_e2() {
        let f = family(3);
        let e: Q = f.e(2).unwrap();
        assert_eq!(e, parse_poly(&f.vars, "v1*v2 + v1*v3 + v2*v3").unwrap());
        assert_eq!(f.e::<Rational>(0).unwrap(), Q::one(&f.vars));
    }

    #[test]
    fn out_of_range() {
        let f = family(3);
        assert!(f.e::<Rational>(4).is_err());
        assert!(f.h::<Rational>(0, 1).is_err());
        assert!(f.h::<Rational>(4, 1).is_err());
    }

    #[test]
    fn squared_variables() {
        let vars = VariableTable::indexed("u", 2);
        let f = SymmetricFamily::new(&vars, vec![0, 1], 2);
        assert_eq!(f.e::<Rational>(2).unwrap(), parse_poly(&vars, "u1^2*u2^2").unwrap());
        assert_eq!(f.h::<Rational>(1, 1).unwrap(), parse_poly(&vars, "u1^2 + u2^2").unwrap());
    }

    #[test]
    fn generating_function_identity() {
        // sum_j (-1)^j e_j H(k, k-j) over j = 0..k vanishes for k >= 2 when the
        // product telescopes to (1 - v1 x)...(1 - v_{k-1} x), which has degree k-1.
        let n = 5;
        let f = family(n);
        for k in 1..=n {
            let mut sum = Q::zero(&f.vars);
            for j in 0..=k {
                let term = &f.e::<Rational>(j).unwrap() * &f.h::<Rational>(k, k - j).unwrap();
                sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
            }
            assert!(sum.is_zero(), "k = {k}");
        }
    }
}
