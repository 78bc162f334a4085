//! Multiplication matrices of the quotient ring.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FloqError, Result};
use crate::floquet::Variant;
use crate::grobner::GroebnerSystem;
use crate::poly::ExponentVector;
use crate::scalar::{Complex64, Field, GaussianRational, Rational, Scalar};

use super::modular::ModMatrix;
use super::table::{self, NormalFormTable, TableRing};

/// Default limit on `|B|`.
pub const DEFAULT_CEILING: usize = 6000;

/// Which exact ring the normal-form table was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableProvenance {
    Integer,
    GaussianInteger,
    /// Complex doubles, with a separate table modulo a prime when every
    /// denominator is invertible there.
    Float,
}

/// The quotient ring `C[x]/I` in the standard-monomial basis.
#[derive(Debug, Clone)]
pub struct QuotientRep {
    pub n: usize,
    pub variant: Variant,
    pub basis: Vec<ExponentVector>,
    /// Multiplication by each main variable, column `j` = `x_i b_j`.
    pub matrices: Vec<DMatrix<Complex64>>,
    /// The same operators reduced modulo a prime, when the table is exact.
    pub modular: Option<Vec<ModMatrix>>,
    pub provenance: TableProvenance,
    /// Monomials whose normal form was tabulated.
    pub tabulated: usize,
}

fn convert<T: TableRing>(tab: &NormalFormTable<T>, main: &[usize]) -> (Vec<DMatrix<Complex64>>, Option<Vec<ModMatrix>>) {
    let dim = tab.dim();
    let mut floats = Vec::with_capacity(main.len());
    let mut mods = Some(Vec::with_capacity(main.len()));
    for &slot in main {
        let cols = tab.multiplication_columns(slot);
        floats.push(DMatrix::from_fn(dim, dim, |i, j| cols[j][i].to_c64()));
        if let Some(ms) = mods.as_mut() {
            match ModMatrix::from_columns(&cols) {
                Some(m) => ms.push(m),
                None => mods = None,
            }
        }
    }
    (floats, mods)
}

#[doc(hidden)]
pub struct Tabulated {
    matrices: Vec<DMatrix<Complex64>>,
    modular: Option<Vec<ModMatrix>>,
    tabulated: usize,
    provenance: TableProvenance,
}

fn tabulate<T: TableRing, C: Scalar>(g: &GroebnerSystem<C>, tails: &[table::Tail<T>], provenance: TableProvenance) -> Tabulated {
    let tab = NormalFormTable::build(g, tails);
    let (matrices, modular) = convert(&tab, &g.main);
    Tabulated {
        matrices,
        modular,
        tabulated: tab.tabulated(),
        provenance,
    }
}

/// Floating table for the matrices and, when the tails reduce modulo the
/// prime, an exact modular table for multiplicities. Exact tables over the
/// rationals are avoided: normalizing fractions dominates their cost.
fn tabulate_float<T: TableRing, C: Scalar>(g: &GroebnerSystem<C>, tails: &[table::Tail<T>]) -> Tabulated {
    let floats = table::map_tails(tails, |c| Some(c.to_c64())).expect("every coefficient has a float image");
    let tab = NormalFormTable::build(g, &floats);
    let matrices = g
        .main
        .iter()
        .map(|&slot| {
            let cols = tab.multiplication_columns(slot);
            DMatrix::from_fn(tab.dim(), tab.dim(), |i, j| cols[j][i])
        })
        .collect();
    let i_root = super::modular::sqrt_minus_one();
    let modular = table::map_tails(tails, |c| c.reduce_mod(super::modular::PRIME, i_root).map(table::Fp)).map(|mt| {
        let mtab = NormalFormTable::build(g, &mt);
        convert(&mtab, &g.main).1.expect("residues reduce")
    });
    Tabulated {
        matrices,
        modular,
        tabulated: tab.tabulated(),
        provenance: TableProvenance::Float,
    }
}

/// Coefficient domains with a normal-form table. Integral tails are
/// reduced exactly over the integers; others in floating point.
pub trait QuotientCoeff: Field {
    #[doc(hidden)]
    fn tabulate_basis(g: &GroebnerSystem<Self>) -> Tabulated;
}

impl QuotientCoeff for Rational {
    fn tabulate_basis(g: &GroebnerSystem<Self>) -> Tabulated {
        let t = table::tails(g);
        match table::integral_tails(&t) {
            Some(it) => tabulate(g, &it, TableProvenance::Integer),
            None => tabulate_float(g, &t),
        }
    }
}

impl QuotientCoeff for GaussianRational {
    fn tabulate_basis(g: &GroebnerSystem<Self>) -> Tabulated {
        let t = table::tails(g);
        match table::gaussian_integral_tails(&t) {
            Some(it) => tabulate::<Complex<BigInt>, _>(g, &it, TableProvenance::GaussianInteger),
            None => tabulate_float(g, &t),
        }
    }
}

impl QuotientCoeff for Complex64 {
    fn tabulate_basis(g: &GroebnerSystem<Self>) -> Tabulated {
        tabulate_float(g, &table::tails(g))
    }
}

/// Multiplication matrices from a floating table regardless of the
/// coefficient domain, with the exact modular image when available.
pub fn multiplication_matrices_float<C: QuotientCoeff>(g: &GroebnerSystem<C>, ceiling: usize) -> Result<QuotientRep>
where
    C: TableRing,
{
    check_size(g, ceiling)?;
    let t = tabulate_float(g, &table::tails(g));
    Ok(QuotientRep {
        n: g.n,
        variant: g.variant,
        basis: g.standard_monomials(),
        matrices: t.matrices,
        modular: t.modular,
        provenance: t.provenance,
        tabulated: t.tabulated,
    })
}

fn check_size<C: Scalar>(g: &GroebnerSystem<C>, ceiling: usize) -> Result<()> {
    if g.variant == Variant::ExtendedT {
        return Err(FloqError::InvalidArgument(
            "the extended system is one-dimensional; its quotient is infinite".into(),
        ));
    }
    let size = g.basis_size();
    if size > ceiling {
        return Err(FloqError::CeilingExceeded { size, ceiling });
    }
    Ok(())
}

/// Builds the multiplication matrices from normal forms of the border.
pub fn multiplication_matrices<C: QuotientCoeff>(g: &GroebnerSystem<C>, ceiling: usize) -> Result<QuotientRep> {
    check_size(g, ceiling)?;
    let t = C::tabulate_basis(g);
    Ok(QuotientRep {
        n: g.n,
        variant: g.variant,
        basis: g.standard_monomials(),
        matrices: t.matrices,
        modular: t.modular,
        provenance: t.provenance,
        tabulated: t.tabulated,
    })
}

impl QuotientRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum_i c_i M_i`.
    pub fn combination(&self, c: &[f64]) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        for (m, &ci) in self.matrices.iter().zip(c) {
            out += m * Complex64::new(ci, 0.0);
        }
        out
    }

    /// Relative commutator norms `|M_i M_j - M_j M_i| / (|M_i| |M_j|)`
    /// (Frobenius), for every pair `i < j`.
    pub fn commutator_norms(&self) -> Vec<((usize, usize), f64)> {
        let pairs: Vec<(usize, usize)> = (0..self.matrices.len())
            .flat_map(|i| (i + 1..self.matrices.len()).map(move |j| (i, j)))
            .collect();
        let real = self.matrices.iter().all(|m| m.iter().all(|z| z.im == 0.0));
        let re: Vec<DMatrix<f64>> = if real {
            self.matrices.iter().map(|m| m.map(|z| z.re)).collect()
        } else {
            Vec::new()
        };
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let rel = if real {
                    let (a, b) = (&re[i], &re[j]);
                    (a * b - b * a).norm() / (a.norm() * b.norm()).max(f64::MIN_POSITIVE)
                } else {
                    let (a, b) = (&self.matrices[i], &self.matrices[j]);
                    (a * b - b * a).norm() / (a.norm() * b.norm()).max(f64::MIN_POSITIVE)
                };
                ((i, j), rel)
            })
            .collect()
    }

    /// Sum of the traces of all `M_i`.
    pub fn trace_sum(&self) -> Complex64 {
        self.matrices.iter().map(|m| m.trace()).sum()
    }

    /// Exact multiplicity of the eigenvalue 0 of `sum xi_i M_i`, computed
    /// modulo a prime from the rank sequence of its powers. For generic
    /// `xi` this is the multiplicity of the origin.
    pub fn origin_multiplicity(&self, xi: &[i64]) -> Option<usize> {
        let mods = self.modular.as_ref()?;
        let m = ModMatrix::combination(mods, xi);
        Some(m.generalized_kernel_dim())
    }
}
