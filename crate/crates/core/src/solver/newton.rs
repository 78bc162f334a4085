//! Square polynomial systems in complex double precision.

use nalgebra::{DMatrix, DVector};

use crate::poly::MultiPoly;
use crate::scalar::{Complex64, Scalar};

#[derive(Debug, Clone)]
struct Term {
    coeff: Complex64,
    /// (variable position, exponent), exponents positive.
    factors: Vec<(usize, u32)>,
}

/// Generators over the main variables, compiled for fast evaluation.
#[derive(Debug, Clone)]
pub struct NumericSystem {
    pub dim: usize,
    polys: Vec<Vec<Term>>,
}

/// Result of a Newton run.
#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub point: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
    /// `max_k |f_k(x)|`.
    pub residual: f64,
    /// `max_k |f_k(x)| / max(1, sum |c| |x^e|)`.
    pub relative_residual: f64,
    /// 2-norm condition number of the Jacobian at the final point.
    pub condition: f64,
}

impl NumericSystem {
    /// Compiles generators; `main[i]` is the position in the variable table
    /// of unknown `i`. Other variables must not occur.
    pub fn new<C: Scalar>(generators: &[MultiPoly<C>], main: &[usize]) -> Self {
        let polys = generators
            .iter()
            .map(|g| {
                g.terms()
                    .map(|(e, c)| Term {
                        coeff: c.to_c64(),
                        factors: main
                            .iter()
                            .enumerate()
                            .filter(|(_, &slot)| e[slot] != 0)
                            .map(|(i, &slot)| (i, e[slot] as u32))
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        Self {
            dim: main.len(),
            polys,
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.polys
            .iter()
            .map(|p| p.iter().map(|t| t.coeff * monomial(&t.factors, x)).sum())
            .collect()
    }

    /// `sum |c| |x^e|` per generator.
    pub fn scales(&self, x: &[Complex64]) -> Vec<f64> {
        self.polys
            .iter()
            .map(|p| p.iter().map(|t| t.coeff.norm() * monomial(&t.factors, x).norm()).sum())
            .collect()
    }

    pub fn jacobian(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        let mut j = DMatrix::zeros(self.polys.len(), self.dim);
        for (k, p) in self.polys.iter().enumerate() {
            for t in p {
                for (a, &(var, pow)) in t.factors.iter().enumerate() {
                    let mut d = t.coeff * pow as f64 * x[var].powu(pow - 1);
                    for (b, &(v2, p2)) in t.factors.iter().enumerate() {
                        if a != b {
                            d *= x[v2].powu(p2);
                        }
                    }
                    j[(k, var)] += d;
                }
            }
        }
        j
    }

    pub fn residual(&self, x: &[Complex64]) -> (f64, f64) {
        let vals = self.eval(x);
        let scales = self.scales(x);
        let abs = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let rel = vals
            .iter()
            .zip(&scales)
            .map(|(v, s)| v.norm() / s.max(1.0))
            .fold(0.0, f64::max);
        (abs, rel)
    }

    pub fn condition(&self, x: &[Complex64]) -> f64 {
        let sv = self.jacobian(x).singular_values();
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Plain Newton iteration; stops once the step is below `step_tol`
    /// relative to the point's size, or after `max_iter` steps.
    pub fn newton(&self, x0: &[Complex64], max_iter: usize, step_tol: f64) -> NewtonOutcome {
        let mut x = x0.to_vec();
        let mut converged = false;
        let mut iterations = 0;
        let (mut best_rel, mut best) = (self.residual(&x).1, x.clone());
        for _ in 0..max_iter {
            iterations += 1;
            let f = DVector::from_vec(self.eval(&x));
            let Some(step) = self.jacobian(&x).lu().solve(&f) else {
                break;
            };
            let size = x.iter().map(|z| z.norm()).fold(1.0, f64::max);
            for (xi, s) in x.iter_mut().zip(step.iter()) {
                *xi -= s;
            }
            let rel = self.residual(&x).1;
            if rel < best_rel {
                best_rel = rel;
                best = x.clone();
            }
            if step.iter().map(|z| z.norm()).fold(0.0, f64::max) <= step_tol * size {
                converged = true;
                break;
            }
        }
        let (residual, relative_residual) = self.residual(&best);
        NewtonOutcome {
            condition: self.condition(&best),
            point: best,
            iterations,
            converged,
            residual,
            relative_residual,
        }
    }
}

fn monomial(factors: &[(usize, u32)], x: &[Complex64]) -> Complex64 {
    factors
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &(v, p)| acc * x[v].powu(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VariableTable};
    use crate::scalar::Rational;

    #[test]
    fn quadratic_convergence_to_simple_root() {
        let vars = VariableTable::indexed("x", 2);
        let f: Vec<MultiPoly<Rational>> = vec![
            parse_poly(&vars, "x1^2 + x2^2 + -5").unwrap(),
            parse_poly(&vars, "x1*x2 + -2").unwrap(),
        ];
        let sys = NumericSystem::new(&f, &[0, 1]);
        let out = sys.newton(&[Complex64::new(2.1, 0.0), Complex64::new(0.9, 0.0)], 20, 1e-15);
        assert!(out.converged);
        assert!((out.point[0] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!(out.relative_residual < 1e-15);
        assert!(out.condition < 10.0);
        let j = sys.jacobian(&[Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(j[(0, 0)], Complex64::new(4.0, 0.0));
        assert_eq!(j[(1, 0)], Complex64::new(1.0, 0.0));
    }
}
