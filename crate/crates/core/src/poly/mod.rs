//! Sparse multivariate (Laurent-capable) polynomials.

mod monomial;
mod text;
mod vars;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::error::{FloqError, Result};
use crate::scalar::{Embed, Field, Scalar};

pub use monomial::{grevlex_cmp, grevlex_cmp_masked, ExponentVector};
pub use text::{monomial_text, parse_poly, CoeffText};
pub use vars::{same_table, VarKind, VariableTable, Vars};

/// Which homogeneous part [`MultiPoly::homogeneous_part`] extracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Exactly(i32),
    Max,
}

/// Sparse polynomial: a map from exponent vectors to nonzero coefficients.
#[derive(Clone)]
pub struct MultiPoly<C> {
    vars: Vars,
    terms: FxHashMap<ExponentVector, C>,
}

impl<C: PartialEq> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: &Vars) -> Self {
        Self {
            vars: vars.clone(),
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        Self::monomial(vars, ExponentVector::zeros(vars.len()), c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn monomial(vars: &Vars, exps: ExponentVector, c: C) -> Self {
        debug_assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable at position `idx`.
    pub fn var(vars: &Vars, idx: usize) -> Self {
        Self::monomial(vars, ExponentVector::unit(vars.len(), idx), C::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.require(name)?))
    }

    /// Builds a polynomial from terms, summing duplicates and dropping zeros.
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (ExponentVector, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (ExponentVector, C)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&ExponentVector::zeros(self.vars.len()))
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: ExponentVector, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(FloqError::VariableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut acc: FxHashMap<ExponentVector, C> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = ca.clone() * cb.clone();
                let e = ea.add(eb);
                match acc.get_mut(&e) {
                    Some(c) => *c = c.clone() + prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    /// In-place `self += scale * x^shift * other`.
    pub fn add_scaled_shifted(&mut self, other: &Self, scale: &C, shift: &ExponentVector) {
        for (e, c) in &other.terms {
            self.add_term(e.add(shift), scale.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Total degree over the ordinary variables (`-1` for the zero polynomial).
    pub fn total_degree(&self) -> i32 {
        let mask = self.vars.ordering_mask();
        self.terms
            .keys()
            .map(|e| ordinary_degree(e, &mask))
            .max()
            .unwrap_or(-1)
    }

    /// Largest exponent of one variable.
    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms
            .keys()
            .map(|e| e[var] as i32)
            .max()
            .unwrap_or(-1)
    }

    /// `[var^k] f` as a polynomial over the remaining variables.
    pub fn coeff_extract(&self, var: usize, k: i32) -> Self {
        let vars = self.vars.without(var);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] as i32 == k)
            .map(|(e, c)| (e.without(var), c.clone()))
            .collect();
        Self { vars, terms }
    }

    /// `[var^k] f`, keeping the variable table.
    pub fn coeff_in(&self, var: usize, k: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] as i32 == k)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[var] = 0;
                (e, c.clone())
            })
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Homogeneous component of a given total degree in the ordinary
    /// variables; `Degree::Max` picks the top-degree component.
    pub fn homogeneous_part(&self, d: Degree) -> Self {
        let d = match d {
            Degree::Exactly(d) => d,
            Degree::Max => self.total_degree(),
        };
        let mask = self.vars.ordering_mask();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| ordinary_degree(e, &mask) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mask = self.vars.ordering_mask();
        let mut degs = self.terms.keys().map(|e| ordinary_degree(e, &mask));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Terms sorted by grevlex, largest first.
    pub fn sorted_terms(&self) -> Vec<(ExponentVector, C)> {
        let mask = self.vars.ordering_mask();
        let mut t: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        t.sort_by(|a, b| grevlex_cmp_masked(&b.0, &a.0, &mask));
        t
    }

    /// Grevlex-largest term.
    pub fn leading_term(&self) -> Option<(ExponentVector, C)> {
        let mask = self.vars.ordering_mask();
        self.terms
            .iter()
            .max_by(|a, b| grevlex_cmp_masked(a.0, b.0, &mask))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Same polynomial with coefficients embedded into a larger domain.
    pub fn embed<D: Scalar>(&self) -> MultiPoly<D>
    where
        C: Embed<D>,
    {
        self.map_coeffs(|c| c.embed())
    }

    /// Re-expresses the polynomial over another table that contains every
    /// variable this polynomial actually uses.
    pub fn rebase(&self, target: &Vars) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = ExponentVector::zeros(target.len());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    FloqError::UnknownVariable(self.vars.name(i).to_string())
                })?;
                ne[j] += x;
            }
            target.validate(&ne)?;
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Substitutes every variable by a scaled monomial over `target`
    /// (`None` substitutes zero). Source exponents must be non-negative for
    /// variables mapped to zero.
    pub fn substitute_monomials(
        &self,
        target: &Vars,
        images: &[Option<(C, ExponentVector)>],
    ) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(FloqError::DimensionMismatch {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let mut out = Self::zero(target);
        'terms: for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut ne = ExponentVector::zeros(target.len());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match &images[i] {
                    None => continue 'terms,
                    Some((s, m)) => {
                        if x < 0 {
                            return Err(FloqError::NegativeExponent(
                                self.vars.name(i).to_string(),
                            ));
                        }
                        for _ in 0..x {
                            coeff = coeff * s.clone();
                        }
                        for (slot, &mx) in ne.iter_mut().zip(m.iter()) {
                            *slot += mx * x;
                        }
                    }
                }
            }
            out.add_term(ne, coeff);
        }
        Ok(out)
    }

    /// General substitution of polynomials for variables (ordinary
    /// variables only; exponents must be non-negative).
    pub fn compose(&self, images: &[MultiPoly<C>]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(FloqError::DimensionMismatch {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .ok_or(FloqError::VariableMismatch)?;
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(&target), p.clone()]).collect();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x < 0 {
                    return Err(FloqError::NegativeExponent(self.vars.name(i).to_string()));
                }
                let x = x as usize;
                while powers[i].len() <= x {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                if x > 0 {
                    term = term.try_mul(&powers[i][x])?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = ExponentVector::zeros(e.len());
                for (i, &x) in e.iter().enumerate() {
                    ne[perm[i]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// `f(-x)` in the ordinary variables.
    pub fn negate_vars(&self) -> Self {
        let mask = self.vars.ordering_mask();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                if ordinary_degree(e, &mask) % 2 == 0 {
                    (e.clone(), c.clone())
                } else {
                    (e.clone(), -c.clone())
                }
            })
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl<C: Field> MultiPoly<C> {
    /// Evaluates at a full assignment of variable values (by name).
    pub fn evaluate(&self, assignment: &HashMap<String, C>) -> Result<C> {
        let values = self
            .vars
            .names()
            .iter()
            .map(|n| {
                assignment
                    .get(n)
                    .cloned()
                    .ok_or_else(|| FloqError::MissingVariable(n.clone()))
            })
            .collect::<Result<Vec<C>>>()?;
        Ok(self.eval_slice_unchecked(&values))
    }

    /// Evaluates at positional values (one per variable). Variables the
    /// polynomial does not use may be given any value.
    pub fn eval_slice(&self, values: &[C]) -> Result<C> {
        if values.len() != self.vars.len() {
            return Err(FloqError::DimensionMismatch {
                expected: self.vars.len(),
                got: values.len(),
            });
        }
        Ok(self.eval_slice_unchecked(values))
    }

    fn eval_slice_unchecked(&self, values: &[C]) -> C {
        let mut powers: Vec<Vec<C>> = values.iter().map(|v| vec![C::one(), v.clone()]).collect();
        let mut inverses: Vec<Option<C>> = vec![None; values.len()];
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let k = x.unsigned_abs() as usize;
                let base = if x > 0 {
                    &mut powers[i]
                } else {
                    let inv = inverses[i].get_or_insert_with(|| values[i].inv()).clone();
                    // negative powers are rare; compute directly
                    let mut p = C::one();
                    for _ in 0..k {
                        p = p * inv.clone();
                    }
                    t = t * p;
                    continue;
                };
                while base.len() <= k {
                    let next = base.last().unwrap().clone() * values[i].clone();
                    base.push(next);
                }
                t = t * base[k].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes a value for one variable, dropping it from the table.
    pub fn specialize(&self, var: usize, value: &C) -> Self {
        let vars = self.vars.without(var);
        let inv = if self.terms.keys().any(|e| e[var] < 0) {
            Some(value.inv())
        } else {
            None
        };
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            let x = e[var];
            let mut t = c.clone();
            let (b, k) = if x >= 0 {
                (value.clone(), x as u32)
            } else {
                (inv.clone().unwrap(), x.unsigned_abs() as u32)
            };
            for _ in 0..k {
                t = t * b.clone();
            }
            out.add_term(e.without(var), t);
        }
        out
    }
}

pub(crate) fn ordinary_degree(e: &ExponentVector, mask: &[bool]) -> i32 {
    e.iter()
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|(&x, _)| x as i32)
        .sum()
}

impl<'a, C: Scalar> Add for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.try_add(rhs).expect("variable tables must match")
    }
}

impl<'a, C: Scalar> Sub for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.try_sub(rhs).expect("variable tables must match")
    }
}

impl<'a, C: Scalar> Mul for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.try_mul(rhs).expect("variable tables must match")
    }
}

impl<C: Scalar> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        &self * &rhs
    }
}

impl<'a, C: Scalar> Neg for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

impl<C: Scalar + CoeffText> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}

impl<C: fmt::Debug> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mask = self.vars.ordering_mask();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grevlex_cmp_masked(b.0, a.0, &mask));
        f.debug_struct("MultiPoly")
            .field("vars", &self.vars.names())
            .field("terms", &terms)
            .finish()
    }
}

/// Grevlex comparison of two terms' monomials under a table.
pub fn compare_in(vars: &Vars, a: &ExponentVector, b: &ExponentVector) -> Ordering {
    grevlex_cmp_masked(a, b, &vars.ordering_mask())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, Rational};
    use proptest::prelude::*;

    type Q = MultiPoly<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn vars3() -> Vars {
        VariableTable::indexed("v", 3)
    }

    #[test]
    fn difference_of_squares() {
        let vars = vars3();
        let v1 = Q::var(&vars, 0);
        let v2 = Q::var(&vars, 1);
        let lhs = &(&v1 + &v2) * &(&v1 - &v2);
        let rhs = &(&v1 * &v1) - &(&v2 * &v2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn newton_identity_two_vars() {
        let vars = VariableTable::indexed("v", 2);
        let v1 = Q::var(&vars, 0);
        let v2 = Q::var(&vars, 1);
        let e1 = &v1 + &v2;
        let e2 = &v1 * &v2;
        let lhs = &(&e1 * &e1) - &e2.scale(&q(2));
        assert_eq!(lhs, &(&v1 * &v1) + &(&v2 * &v2));
    }

    #[test]
    fn gaussian_constant_product() {
        let vars = vars3();
        let a = MultiPoly::constant(&vars, gaussian(1, 1));
        let b = MultiPoly::constant(&vars, gaussian(1, -1));
        assert_eq!(&a * &b, MultiPoly::constant(&vars, gaussian(2, 0)));
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let a = Q::var(&vars3(), 0);
        let b = Q::var(&VariableTable::indexed("u", 3), 0);
        assert!(matches!(a.try_add(&b), Err(FloqError::VariableMismatch)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn coefficient_extraction() {
        let vars = VariableTable::ordinary(["v1", "lam"]).unwrap();
        let v1 = Q::var(&vars, 0);
        let lam = Q::var(&vars, 1);
        let f = &(&(&lam * &lam) - &lam.scale(&q(3))) + &v1;
        let c1 = f.coeff_extract(1, 1);
        assert_eq!(c1.vars().names(), &["v1".to_string()]);
        assert_eq!(c1, Q::constant(c1.vars(), q(-3)));
        assert_eq!(f.coeff_extract(1, 0), Q::var(c1.vars(), 0));
        assert!(f.coeff_extract(1, 7).is_zero());
    }

    #[test]
    fn homogeneous_parts() {
        let vars = VariableTable::indexed("v", 2);
        let v1 = Q::var(&vars, 0);
        let v2 = Q::var(&vars, 1);
        let f = &(&(&v1 * &v2) + &v1) + &Q::constant(&vars, q(3));
        assert_eq!(f.homogeneous_part(Degree::Exactly(1)), v1);
        let g = &(&(&v1 * &v1) + &(&v2 * &v2)) + &v1;
        assert_eq!(g.homogeneous_part(Degree::Exactly(2)), &(&v1 * &v1) + &(&v2 * &v2));
        assert_eq!(g.homogeneous_part(Degree::Max), g.homogeneous_part(Degree::Exactly(2)));
    }

    #[test]
    fn evaluation() {
        let vars = vars3();
        let f = &(&Q::var(&vars, 0) * &Q::var(&vars, 1)) + &Q::constant(&vars, q(5));
        let mut a = HashMap::new();
        for n in vars.names() {
            a.insert(n.clone(), q(0));
        }
        assert_eq!(f.evaluate(&a).unwrap(), q(5));
        a.remove("v3");
        assert!(matches!(f.evaluate(&a), Err(FloqError::MissingVariable(_))));
    }

    #[test]
    fn laurent_evaluation_and_leading_term_ignores_laurent() {
        let vars = VariableTable::new([("v1", VarKind::Ordinary), ("z", VarKind::Laurent)]).unwrap();
        let mut e = ExponentVector::zeros(2);
        e[1] = -1;
        let zinv = Q::monomial(&vars, e, q(1));
        let v1 = Q::var(&vars, 0);
        let f = &zinv + &v1;
        assert_eq!(f.leading_term().unwrap().0, ExponentVector::from_slice(&[1, 0]));
        assert_eq!(f.eval_slice(&[q(1), q(2)]).unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(f.specialize(1, &q(4)).constant_term(), Rational::new(1.into(), 4.into()));
    }

    fn small_poly() -> impl Strategy<Value = Vec<(Vec<i16>, i64)>> {
        proptest::collection::vec((proptest::collection::vec(0i16..3, 3), -5i64..6), 0..6)
    }

    fn build(terms: &[(Vec<i16>, i64)]) -> Q {
        Q::from_terms(
            &vars3(),
            terms
                .iter()
                .map(|(e, c)| (ExponentVector::from_slice(e), q(*c))),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            let vars = vars3();
            let (a, b, c) = (build(&a), build(&b), build(&c));
            let (a, b, c) = (a.rebase(&vars).unwrap(), b.rebase(&vars).unwrap(), c.rebase(&vars).unwrap());
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn coefficient_reassembly(a in small_poly()) {
            let f = build(&a);
            let vars = f.vars().clone();
            let x = Q::var(&vars, 1);
            let mut sum = Q::zero(&vars);
            for k in 0..=f.degree_in(1).max(0) {
                sum = &sum + &(&f.coeff_in(1, k) * &x.pow(k as u32));
            }
            prop_assert_eq!(sum, f);
        }

        #[test]
        fn homogeneous_partition(a in small_poly()) {
            let f = build(&a);
            let mut sum = Q::zero(f.vars());
            for d in 0..=f.total_degree().max(0) {
                sum = &sum + &f.homogeneous_part(Degree::Exactly(d));
            }
            prop_assert_eq!(sum, f);
        }
    }
}
