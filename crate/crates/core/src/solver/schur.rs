//! Complex Schur decomposition with reordering of the diagonal.

use std::ops::Range;

use nalgebra::DMatrix;

use crate::error::{FloqError, Result};
use crate::scalar::Complex64;

/// `M = Q T Q^*` with `T` upper triangular.
///
/// `labels[p]` is the original position of the eigenvalue now at position
/// `p`; reordering keeps it current.
#[derive(Debug, Clone)]
pub struct ComplexSchur {
    pub q: DMatrix<Complex64>,
    pub t: DMatrix<Complex64>,
    pub labels: Vec<usize>,
}

impl ComplexSchur {
    pub fn new(m: &DMatrix<Complex64>) -> Result<Self> {
        let n = m.nrows();
        let s = m
            .clone()
            .try_schur(f64::EPSILON, 200 * n.max(10))
            .ok_or_else(|| FloqError::Eigensolver(format!("Schur iteration did not converge (n = {n})")))?;
        let (q, mut t) = s.unpack();
        for j in 0..n {
            for i in j + 1..n {
                t[(i, j)] = Complex64::new(0.0, 0.0);
            }
        }
        Ok(Self {
            q,
            t,
            labels: (0..n).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.t.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.t[(i, i)]).collect()
    }

    /// Swaps the adjacent diagonal entries `k` and `k + 1` by a Givens
    /// rotation, keeping `T` triangular.
    pub fn swap(&mut self, k: usize) {
        let n = self.dim();
        let t11 = self.t[(k, k)];
        let t22 = self.t[(k + 1, k + 1)];
        let (c, s) = givens(self.t[(k, k + 1)], t22 - t11);
        for j in k + 2..n {
            let (x, y) = rot(self.t[(k, j)], self.t[(k + 1, j)], c, s);
            self.t[(k, j)] = x;
            self.t[(k + 1, j)] = y;
        }
        for i in 0..k {
            let (x, y) = rot(self.t[(i, k)], self.t[(i, k + 1)], c, s.conj());
            self.t[(i, k)] = x;
            self.t[(i, k + 1)] = y;
        }
        self.t[(k, k)] = t22;
        self.t[(k + 1, k + 1)] = t11;
        for i in 0..n {
            let (x, y) = rot(self.q[(i, k)], self.q[(i, k + 1)], c, s.conj());
            self.q[(i, k)] = x;
            self.q[(i, k + 1)] = y;
        }
        self.labels.swap(k, k + 1);
    }

    /// Moves the eigenvalues with the given original labels to the leading
    /// positions and returns that block. The leading columns of `Q` then
    /// span their invariant subspace, whatever the order of the others.
    pub fn gather(&mut self, members: &[usize]) -> Range<usize> {
        let mut wanted = vec![false; self.dim()];
        for &m in members {
            wanted[m] = true;
        }
        let positions: Vec<usize> = (0..self.dim()).filter(|&p| wanted[self.labels[p]]).collect();
        for (j, &start) in positions.iter().enumerate() {
            for p in (j..start).rev() {
                self.swap(p);
            }
        }
        0..positions.len()
    }

    /// Diagonal of `Q^* M Q`.
    pub fn rayleigh_diagonal(&self, m: &DMatrix<Complex64>) -> Vec<Complex64> {
        let mq = m * &self.q;
        (0..self.dim())
            .map(|p| self.q.column(p).dotc(&mq.column(p)))
            .collect()
    }

    /// Means of the eigenvalues of each commuting matrix on the invariant
    /// subspace of the leading `k` positions: `trace(M P) / k` with `P` the
    /// spectral projector. The oblique part of `P` matters for clusters
    /// from large Jordan blocks, whose Schur vectors are ill-conditioned.
    pub fn leading_means(&self, matrices: &[DMatrix<Complex64>], k: usize) -> Vec<Complex64> {
        let n = self.dim();
        let rest = n - k;
        // T11 X - X T22 = -T12, column by column
        let mut x = DMatrix::<Complex64>::zeros(k, rest);
        let mut rhs = vec![Complex64::new(0.0, 0.0); k];
        for j in 0..rest {
            for (r, v) in rhs.iter_mut().enumerate() {
                *v = -self.t[(r, k + j)];
            }
            for l in 0..j {
                let t = self.t[(k + l, k + j)];
                for (r, v) in rhs.iter_mut().enumerate() {
                    *v += x[(r, l)] * t;
                }
            }
            let d = self.t[(k + j, k + j)];
            for r in (0..k).rev() {
                let mut acc = rhs[r];
                for c in r + 1..k {
                    acc -= self.t[(r, c)] * x[(c, j)];
                }
                x[(r, j)] = acc / (self.t[(r, r)] - d);
            }
        }
        let q1 = self.q.columns(0, k);
        let q2 = self.q.columns(k, rest);
        matrices
            .iter()
            .map(|m| {
                let mq1 = m * q1;
                let a11 = q1.adjoint() * &mq1;
                let a21 = q2.adjoint() * &mq1;
                (a11.trace() - (&x * a21).trace()) / k as f64
            })
            .collect()
    }
}

/// `(c, s)` with `[c s; -conj(s) c] [f; g] = [r; 0]`, `c` real.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let norm = f.norm().hypot(g.norm());
    let c = f.norm() / norm;
    let s = (f / f.norm()) * g.conj() / norm;
    (c, s)
}

fn rot(x: Complex64, y: Complex64, c: f64, s: Complex64) -> (Complex64, Complex64) {
    (x * c + s * y, y * c - s.conj() * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random(n: usize, seed: u64) -> DMatrix<Complex64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
    }

    fn assert_schur(s: &ComplexSchur, m: &DMatrix<Complex64>) {
        let n = m.nrows();
        let back = &s.q * &s.t * s.q.adjoint();
        assert!((back - m).norm() < 1e-12 * m.norm());
        assert!((s.q.adjoint() * &s.q - DMatrix::identity(n, n)).norm() < 1e-12);
    }

    #[test]
    fn decomposition_and_rayleigh_diagonal() {
        let m = random(12, 7);
        let s = ComplexSchur::new(&m).unwrap();
        assert_schur(&s, &m);
        for (r, e) in s.rayleigh_diagonal(&m).iter().zip(s.eigenvalues()) {
            assert!((r - e).norm() < 1e-12);
        }
        // a polynomial in m shares the Schur vectors
        let m2 = &m * &m + &m * Complex64::new(3.0, 0.0);
        for (r, e) in s.rayleigh_diagonal(&m2).iter().zip(s.eigenvalues()) {
            assert!((r - (e * e + e * 3.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn gathering_keeps_decomposition_and_labels() {
        let m = random(12, 3);
        let mut s = ComplexSchur::new(&m).unwrap();
        let before = s.eigenvalues();
        let block = s.gather(&[1, 5, 9]);
        assert_eq!(block, 0..3);
        assert_schur(&s, &m);
        assert_eq!(&s.labels[..3], &[1, 5, 9]);
        for (p, &l) in s.labels.iter().enumerate() {
            assert!((s.t[(p, p)] - before[l]).norm() < 1e-10);
        }
        // means of a commuting matrix over a gathered pair
        let m2 = &m * &m;
        let (l4, l7) = (s.labels[4], s.labels[7]);
        let lead = s.gather(&[l4, l7]);
        assert_eq!(lead, 0..2);
        let expected = (before[l4] * before[l4] + before[l7] * before[l7]) / 2.0;
        assert!((s.leading_means(&[m2], 2)[0] - expected).norm() < 1e-11);
    }
}
