//! Dense matrices over a prime field, used for exact rank computations.

use rayon::prelude::*;

use super::table::{pow_mod, TableRing};

/// NTT-friendly prime; `p = 1 mod 4`, so `-1` has a square root.
pub const PRIME: u64 = 998_244_353;

/// A square root of `-1` modulo [`PRIME`] (3 is a primitive root).
pub fn sqrt_minus_one() -> u64 {
    pow_mod(3, (PRIME - 1) / 4, PRIME)
}

/// Row-major square matrix modulo [`PRIME`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub dim: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0; dim * dim],
        }
    }

    /// From exact columns; `None` if some entry has no image mod p.
    pub fn from_columns<T: TableRing>(cols: &[Vec<T>]) -> Option<Self> {
        let dim = cols.len();
        let i_root = sqrt_minus_one();
        let mut m = Self::zeros(dim);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * dim + j] = x.reduce_mod(PRIME, i_root)?;
            }
        }
        Some(m)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.dim + j]
    }

    /// `sum_i c_i M_i` with integer weights.
    pub fn combination(ms: &[ModMatrix], c: &[i64]) -> Self {
        let dim = ms.first().map_or(0, |m| m.dim);
        let mut out = Self::zeros(dim);
        for (m, &ci) in ms.iter().zip(c) {
            let w = ci.rem_euclid(PRIME as i64) as u64;
            for (o, x) in out.data.iter_mut().zip(&m.data) {
                *o = (*o + w * x) % PRIME;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut data = vec![0u64; n * n];
        data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let mut acc = vec![0u64; n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let b = &other.data[k * n..(k + 1) * n];
                for (x, y) in acc.iter_mut().zip(b) {
                    *x = (*x + a * y) % PRIME;
                }
            }
            row.copy_from_slice(&acc);
        });
        Self { dim: n, data }
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
            }
            let inv = pow_mod(a[rank * n + col], PRIME - 2, PRIME);
            for j in col..n {
                a[rank * n + j] = a[rank * n + j] * inv % PRIME;
            }
            let pivot_row: Vec<u64> = a[rank * n..(rank + 1) * n].to_vec();
            for r in rank + 1..n {
                let f = a[r * n + col];
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = (a[r * n + j] + (PRIME - f) * pivot_row[j]) % PRIME;
                }
            }
            rank += 1;
        }
        rank
    }

    /// `dim ker(M^k)` for `k` large enough that the kernel chain has
    /// stabilized: the algebraic multiplicity of the eigenvalue 0.
    pub fn generalized_kernel_dim(&self) -> usize {
        let mut power = self.clone();
        let mut rank = power.rank();
        loop {
            if rank == 0 {
                return self.dim;
            }
            power = power.mul(&power);
            let next = power.rank();
            if next == rank {
                return self.dim - rank;
            }
            rank = next;
        }
    }
}
