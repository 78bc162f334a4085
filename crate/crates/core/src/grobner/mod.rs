//! Closed-form Groebner bases of ideals generated by perturbed elementary
//! symmetric polynomials.
//!
//! For generators `p_1..p_m` with `T_max(p_k) = e_k`, the polynomials
//! `g_k = -sum_{j=1..k} H(k, k-j) (-1)^j p_j` have `T_max(g_k) = H(k, k)`,
//! hence `LT(g_k) = x_k^k` in grevlex. Pairwise coprime leading monomials
//! make `{g_k}` a Groebner basis without running Buchberger.

pub mod symmetric;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{FloqError, Result};
use crate::floquet::{InvariantSystem, Variant};
use crate::poly::{grevlex_cmp, Degree, ExponentVector, MultiPoly, Vars};
use crate::scalar::{Field, Scalar};

use symmetric::SymmetricFamily;

/// Sign pattern used when combining the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `g_k = -sum H(k, k-j) (-1)^j p_j`.
    Alternating,
    /// `g_k = sum H(k, k-j) p_j`.
    Unsigned,
}

#[derive(Debug, Clone)]
pub struct GroebnerSystem<C> {
    pub n: usize,
    pub variant: Variant,
    pub vars: Vars,
    pub main: Vec<usize>,
    pub power: i16,
    pub generators: Vec<MultiPoly<C>>,
    /// The invariants the basis was built from.
    pub invariants: Vec<MultiPoly<C>>,
    pub leading: Vec<ExponentVector>,
    pub convention: SignConvention,
    /// When the unsigned form was tried first and rejected, the first `k`
    /// whose leading-term check failed.
    pub unsigned_rejected_at: Option<usize>,
}

/// JSON summary of a basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroebnerSummary {
    pub variant: Variant,
    pub n: usize,
    pub basis_size: usize,
    pub lt_list: Vec<String>,
    pub convention: SignConvention,
}

/// Combines the invariants into `g_1..g_m` with the given sign pattern.
pub fn combine<C: Scalar>(sys: &InvariantSystem<C>, convention: SignConvention) -> Result<Vec<MultiPoly<C>>> {
    let fam = sys.family();
    let m = sys.size();
    (1..=m)
        .map(|k| {
            let mut g = MultiPoly::zero(&sys.vars);
            for j in 1..=k {
                let term = &fam.h::<C>(k, k - j)? * &sys.generators[j - 1];
                g = match convention {
                    // -(-1)^j: plus for odd j
                    SignConvention::Alternating if j % 2 == 0 => &g - &term,
                    _ => &g + &term,
                };
            }
            Ok(g)
        })
        .collect()
}

fn leading_power(vars: &Vars, main: &[usize], power: i16, k: usize) -> ExponentVector {
    let mut e = ExponentVector::zeros(vars.len());
    e[main[k - 1]] = power * k as i16;
    e
}

/// Verifies `T_max(g_k) = H(k, k)` (auxiliary variables dropped) and
/// `LT(g_k) = x_k^(power k)` with unit coefficient.
pub fn check_generator<C: Scalar>(
    fam: &SymmetricFamily,
    aux: &[usize],
    k: usize,
    g: &MultiPoly<C>,
) -> Result<()> {
    let want_deg = fam.power as i32 * k as i32;
    if g.total_degree() != want_deg {
        return Err(FloqError::LeadingTerm {
            k,
            detail: format!("degree {} != {want_deg}", g.total_degree()),
        });
    }
    let top = g.homogeneous_part(Degree::Max);
    let top_main = MultiPoly::from_terms(
        top.vars(),
        top.terms()
            .filter(|(e, _)| aux.iter().all(|&a| e[a] == 0))
            .map(|(e, c)| (e.clone(), c.clone())),
    );
    if top_main != fam.h::<C>(k, k)? {
        return Err(FloqError::LeadingTerm {
            k,
            detail: "top-degree form differs from H(k, k)".into(),
        });
    }
    let (lt, lc) = g.leading_term().expect("nonzero");
    let want = leading_power(&fam.vars, &fam.main, fam.power, k);
    if lt != want || lc != C::one() {
        return Err(FloqError::LeadingTerm {
            k,
            detail: format!("leading monomial {:?}", &lt[..]),
        });
    }
    Ok(())
}

/// Builds and verifies the closed-form basis. The specialized variant tries
/// the unsigned combination first and falls back to the alternating one.
pub fn groebner_generators<C: Scalar>(sys: &InvariantSystem<C>) -> Result<GroebnerSystem<C>> {
    sys.check_leading_forms()?;
    if sys.vars.has_laurent() {
        return Err(FloqError::InvalidArgument(
            "Groebner variables must be ordinary".into(),
        ));
    }
    let fam = sys.family();
    let aux = sys.auxiliary();
    let verify = |gens: &[MultiPoly<C>]| -> Result<()> {
        for (i, g) in gens.iter().enumerate() {
            check_generator(&fam, &aux, i + 1, g)?;
        }
        Ok(())
    };

    let mut unsigned_rejected_at = None;
    let mut chosen = None;
    if sys.variant == Variant::Specialized {
        let gens = combine(sys, SignConvention::Unsigned)?;
        match verify(&gens) {
            Ok(()) => chosen = Some((gens, SignConvention::Unsigned)),
            Err(FloqError::LeadingTerm { k, .. }) => unsigned_rejected_at = Some(k),
            Err(e) => return Err(e),
        }
    }
    let (generators, convention) = match chosen {
        Some(c) => c,
        None => {
            let gens = combine(sys, SignConvention::Alternating)?;
            verify(&gens)?;
            (gens, SignConvention::Alternating)
        }
    };
    let leading = (1..=sys.size())
        .map(|k| leading_power(&sys.vars, &sys.main, sys.power, k))
        .collect();
    Ok(GroebnerSystem {
        n: sys.n,
        variant: sys.variant,
        vars: sys.vars.clone(),
        main: sys.main.clone(),
        power: sys.power,
        generators,
        invariants: sys.generators.clone(),
        leading,
        convention,
        unsigned_rejected_at,
    })
}

impl<C: Scalar> GroebnerSystem<C> {
    pub fn size(&self) -> usize {
        self.main.len()
    }

    /// Exponent bound of `x_k` in standard monomials (exclusive).
    pub fn bound(&self, k: usize) -> i16 {
        self.power * k as i16
    }

    /// Index `k` (0-based) of the first generator whose leading term
    /// divides the monomial.
    pub fn reducer(&self, e: &ExponentVector) -> Option<usize> {
        self.main
            .iter()
            .enumerate()
            .position(|(i, &slot)| e[slot] >= self.bound(i + 1))
    }

    /// Number of standard monomials in the main variables.
    pub fn basis_size(&self) -> usize {
        (1..=self.size()).map(|k| self.bound(k) as usize).product()
    }

    /// Standard monomials `x^j` with `0 <= j_k < power * k`, in ascending
    /// grevlex order.
    pub fn standard_monomials(&self) -> Vec<ExponentVector> {
        let mut out = Vec::with_capacity(self.basis_size());
        let mut e = ExponentVector::zeros(self.vars.len());
        fn rec<C: Scalar>(g: &GroebnerSystem<C>, k: usize, e: &mut ExponentVector, out: &mut Vec<ExponentVector>) {
            if k == g.size() {
                out.push(e.clone());
                return;
            }
            for j in 0..g.bound(k + 1) {
                e[g.main[k]] = j;
                rec(g, k + 1, e, out);
            }
            e[g.main[k]] = 0;
        }
        rec(self, 0, &mut e, &mut out);
        out.sort_by(|a, b| grevlex_cmp(a, b));
        out
    }

    /// Largest degree of a standard monomial.
    pub fn max_standard_degree(&self) -> usize {
        (1..=self.size()).map(|k| self.bound(k) as usize - 1).sum()
    }

    /// Affine Hilbert function: standard monomials of total degree `<= s`,
    /// counting powers of `t` for the extended system.
    pub fn hilbert_function(&self, s: usize) -> u128 {
        // degree histogram of B by convolution
        let mut hist = vec![1u128];
        for k in 1..=self.size() {
            let b = self.bound(k) as usize;
            let mut next = vec![0u128; hist.len() + b - 1];
            for (d, &c) in hist.iter().enumerate() {
                for j in 0..b {
                    next[d + j] += c;
                }
            }
            hist = next;
        }
        let extended = self.variant == Variant::ExtendedT;
        hist.iter()
            .enumerate()
            .filter(|(d, _)| *d <= s)
            .map(|(d, &c)| if extended { c * (s - d + 1) as u128 } else { c })
            .sum()
    }

    pub fn summary(&self) -> GroebnerSummary
    where
        C: crate::poly::CoeffText,
    {
        GroebnerSummary {
            variant: self.variant,
            n: self.n,
            basis_size: self.basis_size(),
            lt_list: self
                .leading
                .iter()
                .map(|e| crate::poly::monomial_text(&self.vars, e))
                .collect(),
            convention: self.convention,
        }
    }
}

impl<C: Field> GroebnerSystem<C> {
    /// Remainder of multivariate division by the basis. At every step the
    /// grevlex-greatest reducible term is reduced by the lowest-index
    /// generator whose leading term divides it.
    pub fn normal_form(&self, f: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        let f = f.rebase(&self.vars)?;
        let tails: Vec<Vec<(ExponentVector, C)>> = self
            .generators
            .iter()
            .zip(&self.leading)
            .map(|(g, lt)| {
                let lc_inv = g.coefficient(lt).inv();
                g.terms()
                    .filter(|(e, _)| *e != lt)
                    .map(|(e, c)| (e.clone(), -(c.clone() * lc_inv.clone())))
                    .collect()
            })
            .collect();

        let mut coeffs: FxHashMap<ExponentVector, C> = FxHashMap::default();
        let mut heap = BinaryHeap::new();
        for (e, c) in f.terms() {
            coeffs.insert(e.clone(), c.clone());
            heap.push(Grevlex(e.clone()));
        }
        let mut rem = MultiPoly::zero(&self.vars);
        while let Some(Grevlex(e)) = heap.pop() {
            let Some(c) = coeffs.remove(&e) else { continue };
            if c.is_zero() {
                continue;
            }
            match self.reducer(&e) {
                None => rem.add_term(e, c),
                Some(k) => {
                    let shift = e.checked_div(&self.leading[k]).expect("divisible");
                    for (te, tc) in &tails[k] {
                        let ne = te.add(&shift);
                        let add = tc.clone() * c.clone();
                        match coeffs.get_mut(&ne) {
                            Some(x) => *x = x.clone() + add,
                            None => {
                                coeffs.insert(ne.clone(), add);
                                heap.push(Grevlex(ne));
                            }
                        }
                    }
                }
            }
        }
        Ok(rem)
    }
}

/// Exponent vector ordered by unmasked grevlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Grevlex(pub ExponentVector);

impl Ord for Grevlex {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Grevlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
