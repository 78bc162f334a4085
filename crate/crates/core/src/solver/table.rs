//! Normal forms of monomials modulo a closed-form basis, as dense
//! coordinate vectors over the standard monomials.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::grobner::GroebnerSystem;
use crate::poly::{grevlex_cmp, ExponentVector};
use crate::scalar::{Complex64, Field, GaussianRational, Rational};

/// Coefficient ring of a normal-form table.
pub trait TableRing: Clone + Send + Sync + Zero + One {
    /// `self += a * b`.
    fn mul_acc(&mut self, a: &Self, b: &Self);

    fn to_c64(&self) -> Complex64;

    /// Image modulo the prime `p`, where `i_root` squares to `-1`.
    /// `None` when a denominator vanishes mod `p` or the ring is inexact.
    fn reduce_mod(&self, p: u64, i_root: u64) -> Option<u64>;
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("reduced")
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rational_mod(x: &Rational, p: u64) -> Option<u64> {
    let d = bigint_mod(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(bigint_mod(x.numer(), p) * pow_mod(d, p - 2, p) % p)
}

impl TableRing for BigInt {
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn reduce_mod(&self, p: u64, _: u64) -> Option<u64> {
        Some(bigint_mod(self, p))
    }
}

impl TableRing for Rational {
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn to_c64(&self) -> Complex64 {
        crate::scalar::Scalar::to_c64(self)
    }

    fn reduce_mod(&self, p: u64, _: u64) -> Option<u64> {
        rational_mod(self, p)
    }
}

impl TableRing for GaussianRational {
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        self.re += &a.re * &b.re - &a.im * &b.im;
        self.im += &a.re * &b.im + &a.im * &b.re;
    }

    fn to_c64(&self) -> Complex64 {
        crate::scalar::Scalar::to_c64(self)
    }

    fn reduce_mod(&self, p: u64, i_root: u64) -> Option<u64> {
        Some((rational_mod(&self.re, p)? + rational_mod(&self.im, p)? * i_root) % p)
    }
}

impl TableRing for Complex64 {
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn reduce_mod(&self, _: u64, _: u64) -> Option<u64> {
        None
    }
}

/// Integer Gaussian coefficients, used when every tail coefficient of a
/// Gaussian-rational basis is integral.
impl TableRing for Complex<BigInt> {
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        self.re += &a.re * &b.re - &a.im * &b.im;
        self.im += &a.re * &b.im + &a.im * &b.re;
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    fn reduce_mod(&self, p: u64, i_root: u64) -> Option<u64> {
        Some((bigint_mod(&self.re, p) + bigint_mod(&self.im, p) * i_root) % p)
    }
}

/// Residue modulo [`super::modular::PRIME`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp(pub u64);

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, other: Fp) -> Fp {
        Fp((self.0 + other.0) % super::modular::PRIME)
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, other: Fp) -> Fp {
        Fp(self.0 * other.0 % super::modular::PRIME)
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl TableRing for Fp {
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(f64::NAN, 0.0)
    }

    fn reduce_mod(&self, p: u64, _: u64) -> Option<u64> {
        (p == super::modular::PRIME).then_some(self.0)
    }
}

/// Reduction rule for generator `k`: `LT(g_k) -> sum c * x^e`.
pub type Tail<T> = Vec<(ExponentVector, T)>;

/// `-(g_k - lc x^lt) / lc` for every generator.
pub fn tails<C: Field>(g: &GroebnerSystem<C>) -> Vec<Tail<C>> {
    g.generators
        .iter()
        .zip(&g.leading)
        .map(|(p, lt)| {
            let inv = p.coefficient(lt).inv();
            p.terms()
                .filter(|(e, _)| *e != lt)
                .map(|(e, c)| (e.clone(), -(c.clone() * inv.clone())))
                .collect()
        })
        .collect()
}

/// Tails in another coefficient ring; `None` if some coefficient has no
/// image.
pub fn map_tails<S, T>(t: &[Tail<S>], f: impl Fn(&S) -> Option<T>) -> Option<Vec<Tail<T>>> {
    t.iter()
        .map(|tail| tail.iter().map(|(e, c)| Some((e.clone(), f(c)?))).collect())
        .collect()
}

/// Tails with integral rational coefficients as `BigInt`.
pub fn integral_tails(t: &[Tail<Rational>]) -> Option<Vec<Tail<BigInt>>> {
    map_tails(t, |c| c.is_integer().then(|| c.to_integer()))
}

/// Tails with Gaussian-integer coefficients.
pub fn gaussian_integral_tails(t: &[Tail<GaussianRational>]) -> Option<Vec<Tail<Complex<BigInt>>>> {
    map_tails(t, |c| {
        (c.re.is_integer() && c.im.is_integer()).then(|| Complex::new(c.re.to_integer(), c.im.to_integer()))
    })
}

/// Normal forms of every monomial reachable from the border of `B`.
pub struct NormalFormTable<T> {
    pub basis: Vec<ExponentVector>,
    index: FxHashMap<ExponentVector, usize>,
    rows: FxHashMap<ExponentVector, Vec<T>>,
}

impl<T: TableRing> NormalFormTable<T> {
    /// Builds the table for the products `x_i b`, `i` a main variable and
    /// `b` a standard monomial. Monomials are reduced in ascending grevlex
    /// order, so every tail term is already tabulated or standard.
    pub fn build<C: crate::scalar::Scalar>(g: &GroebnerSystem<C>, tails: &[Tail<T>]) -> Self {
        let basis = g.standard_monomials();
        let index: FxHashMap<ExponentVector, usize> =
            basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let width = g.vars.len();

        let mut stack: Vec<ExponentVector> = Vec::new();
        let mut seen: FxHashSet<ExponentVector> = FxHashSet::default();
        for b in &basis {
            for &i in &g.main {
                let e = b.add(&ExponentVector::unit(width, i));
                if !index.contains_key(&e) && seen.insert(e.clone()) {
                    stack.push(e);
                }
            }
        }
        while let Some(m) = stack.pop() {
            let k = g.reducer(&m).expect("non-standard");
            let shift = m.checked_div(&g.leading[k]).expect("divisible");
            for (t, _) in &tails[k] {
                let e = t.add(&shift);
                if !index.contains_key(&e) && seen.insert(e.clone()) {
                    stack.push(e);
                }
            }
        }
        let mut order: Vec<ExponentVector> = seen.into_iter().collect();
        order.sort_by(|a, b| grevlex_cmp(a, b));

        let dim = basis.len();
        let chunk = (dim / rayon::current_num_threads().max(1)).clamp(16, 256);
        let mut rows: FxHashMap<ExponentVector, Vec<T>> = FxHashMap::default();
        rows.reserve(order.len());
        for m in order {
            let k = g.reducer(&m).expect("non-standard");
            let shift = m.checked_div(&g.leading[k]).expect("divisible");
            let terms: Vec<(&T, Result<&Vec<T>, usize>)> = tails[k]
                .iter()
                .map(|(t, c)| {
                    let e = t.add(&shift);
                    match index.get(&e) {
                        Some(&pos) => (c, Err(pos)),
                        None => (c, Ok(&rows[&e])),
                    }
                })
                .collect();
            let mut acc = vec![T::zero(); dim];
            acc.par_chunks_mut(chunk).enumerate().for_each(|(ci, out)| {
                let lo = ci * chunk;
                for (c, src) in &terms {
                    match src {
                        Err(pos) => {
                            if (lo..lo + out.len()).contains(pos) {
                                let x = std::mem::replace(&mut out[pos - lo], T::zero());
                                out[pos - lo] = x + (*c).clone();
                            }
                        }
                        Ok(row) => {
                            let hi = lo + out.len();
                            for (o, r) in out.iter_mut().zip(&row[lo..hi]) {
                                if !r.is_zero() {
                                    o.mul_acc(c, r);
                                }
                            }
                        }
                    }
                }
            });
            rows.insert(m, acc);
        }
        Self { basis, index, rows }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normal form of a tabulated or standard monomial.
    pub fn get(&self, e: &ExponentVector) -> Option<Vec<T>> {
        if let Some(&pos) = self.index.get(e) {
            let mut v = vec![T::zero(); self.dim()];
            v[pos] = T::one();
            return Some(v);
        }
        self.rows.get(e).cloned()
    }

    /// Columns of the multiplication operator by the variable at `slot`:
    /// column `j` holds the coordinates of `x_slot * b_j`.
    pub fn multiplication_columns(&self, slot: usize) -> Vec<Vec<T>> {
        let width = self.basis.first().map_or(0, |b| b.len());
        self.basis
            .iter()
            .map(|b| {
                self.get(&b.add(&ExponentVector::unit(width, slot)))
                    .expect("border monomial is tabulated")
            })
            .collect()
    }

    pub fn tabulated(&self) -> usize {
        self.rows.len()
    }
}
