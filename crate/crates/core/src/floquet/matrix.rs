use crate::error::{FloqError, Result};
use crate::poly::{ExponentVector, MultiPoly, VarKind, VariableTable, Vars};
use crate::scalar::{Rational, Scalar};

/// How the Floquet parameter `z` enters the 1-d matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMode {
    /// `z = 1` substituted.
    One,
    /// `z` kept as a Laurent variable named `z`.
    Symbolic,
}

/// Square matrix of polynomials over one variable table.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicMatrix<C> {
    vars: Vars,
    size: usize,
    entries: Vec<MultiPoly<C>>,
}

impl<C: Scalar> SymbolicMatrix<C> {
    pub fn zeros(vars: &Vars, size: usize) -> Self {
        Self {
            vars: vars.clone(),
            size,
            entries: vec![MultiPoly::zero(vars); size * size],
        }
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<MultiPoly<C>>>) -> Result<Self> {
        let size = rows.len();
        let mut m = Self::zeros(vars, size);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(FloqError::DimensionMismatch {
                    expected: size,
                    got: row.len(),
                });
            }
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e.rebase(vars)?);
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<C> {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: MultiPoly<C>) {
        debug_assert!(crate::poly::same_table(value.vars(), &self.vars));
        self.entries[i * self.size + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &MultiPoly<C>) {
        let idx = i * self.size + j;
        self.entries[idx] = &self.entries[idx] + value;
    }

    /// `M - x I` for the variable at position `var`.
    pub fn shift_diagonal(&self, var: usize) -> Self {
        let x = MultiPoly::var(&self.vars, var);
        let mut out = self.clone();
        for i in 0..self.size {
            out.set(i, i, self.get(i, i) - &x);
        }
        out
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, vars: &Vars, f: impl Fn(&MultiPoly<C>) -> Result<MultiPoly<C>>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            vars: vars.clone(),
            size: self.size,
            entries,
        })
    }

    /// True when every nonzero entry lies on the three central diagonals or
    /// in the two corners.
    pub fn is_periodic_tridiagonal(&self) -> bool {
        let n = self.size;
        if n < 3 {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                let d = (i as isize - j as isize).unsigned_abs();
                let allowed = d <= 1 || (i, j) == (0, n - 1) || (i, j) == (n - 1, 0);
                if !allowed && !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant, using the periodic-tridiagonal recurrence when the
    /// sparsity pattern allows and the subset expansion otherwise.
    pub fn determinant(&self) -> MultiPoly<C> {
        if self.is_periodic_tridiagonal() {
            self.det_periodic_tridiagonal()
        } else {
            self.det_expansion()
        }
    }

    /// Determinant of a tridiagonal matrix with corner entries:
    /// `K(1..n) - beta*gamma*K(2..n-1) + (-1)^(n-1) (gamma*prod(sup) + beta*prod(sub))`
    /// where `K` is the continuant of the path.
    pub fn det_periodic_tridiagonal(&self) -> MultiPoly<C> {
        let n = self.size;
        assert!(n >= 3, "periodic tridiagonal form needs n >= 3");
        let diag: Vec<&MultiPoly<C>> = (0..n).map(|i| self.get(i, i)).collect();
        let offprod: Vec<MultiPoly<C>> = (0..n - 1)
            .map(|i| self.get(i, i + 1) * self.get(i + 1, i))
            .collect();

        let continuant = |from: usize, to: usize| -> MultiPoly<C> {
            // K over rows from..=to
            let mut prev = MultiPoly::one(&self.vars);
            let mut cur = diag[from].clone();
            for j in from + 1..=to {
                let next = &(diag[j] * &cur) - &(&offprod[j - 1] * &prev);
                prev = cur;
                cur = next;
            }
            cur
        };

        let beta = self.get(0, n - 1);
        let gamma = self.get(n - 1, 0);
        let mut det = continuant(0, n - 1);
        let wrap = beta * gamma;
        if !wrap.is_zero() {
            det = &det - &(&wrap * &continuant(1, n - 2));
        }
        let mut forward = gamma.clone();
        let mut backward = beta.clone();
        for i in 0..n - 1 {
            forward = &forward * self.get(i, i + 1);
            backward = &backward * self.get(i + 1, i);
        }
        let cycles = &forward + &backward;
        if n % 2 == 1 {
            &det + &cycles
        } else {
            &det - &cycles
        }
    }

    /// Laplace expansion over column subsets: `O(2^n n)` polynomial products.
    pub fn det_expansion(&self) -> MultiPoly<C> {
        let n = self.size;
        assert!(n <= 20, "subset expansion is limited to n <= 20");
        let mut layer: Vec<(u32, MultiPoly<C>)> = vec![(0, MultiPoly::one(&self.vars))];
        for row in 0..n {
            let mut next: rustc_hash::FxHashMap<u32, MultiPoly<C>> = Default::default();
            for (used, acc) in &layer {
                for col in 0..n {
                    if used & (1 << col) != 0 {
                        continue;
                    }
                    let entry = self.get(row, col);
                    if entry.is_zero() {
                        continue;
                    }
                    // sign flips once per already-used column to the right
                    let inversions = (used >> (col + 1)).count_ones();
                    let mut term = acc * entry;
                    if inversions % 2 == 1 {
                        term = -term;
                    }
                    let key = used | (1 << col);
                    match next.get_mut(&key) {
                        Some(p) => *p = &*p + &term,
                        None => {
                            next.insert(key, term);
                        }
                    }
                }
            }
            layer = next.into_iter().collect();
        }
        layer
            .into_iter()
            .map(|(_, p)| p)
            .next()
            .unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    /// `det(M - x I)` for the variable at position `var`.
    pub fn char_poly(&self, var: usize) -> MultiPoly<C> {
        self.shift_diagonal(var).determinant()
    }
}

/// Variable table `v1..vn, lam` (plus Laurent `z` when requested).
pub fn floquet_vars(n: usize, z: ZMode) -> Vars {
    let mut vars: Vec<(String, VarKind)> = (1..=n).map(|i| (format!("v{i}"), VarKind::Ordinary)).collect();
    vars.push(("lam".to_string(), VarKind::Ordinary));
    if z == ZMode::Symbolic {
        vars.push(("z".to_string(), VarKind::Laurent));
    }
    VariableTable::new(vars).expect("distinct names")
}

/// Index of `lam` in [`floquet_vars`].
pub fn lambda_index(vars: &Vars) -> usize {
    vars.require("lam").expect("table has lam")
}

/// Periodic Jacobi matrix with the given diagonal, unit off-diagonals and
/// corners `z^-1` (top right) and `z` (bottom left).
pub fn floquet_with_diagonal<C: Scalar>(
    vars: &Vars,
    diagonal: Vec<MultiPoly<C>>,
    z: ZMode,
) -> Result<SymbolicMatrix<C>> {
    let n = diagonal.len();
    if n < 3 {
        return Err(FloqError::UnsupportedPeriod(n, 3));
    }
    let mut m = SymbolicMatrix::zeros(vars, n);
    let one = MultiPoly::one(vars);
    for (i, d) in diagonal.into_iter().enumerate() {
        m.set(i, i, d);
    }
    for i in 0..n - 1 {
        m.set(i, i + 1, one.clone());
        m.set(i + 1, i, one.clone());
    }
    match z {
        ZMode::One => {
            m.set(0, n - 1, one.clone());
            m.set(n - 1, 0, one);
        }
        ZMode::Symbolic => {
            let zi = vars.require("z")?;
            let mut up = ExponentVector::zeros(vars.len());
            up[zi] = -1;
            let mut down = ExponentVector::zeros(vars.len());
            down[zi] = 1;
            m.set(0, n - 1, MultiPoly::monomial(vars, up, C::one()));
            m.set(n - 1, 0, MultiPoly::monomial(vars, down, C::one()));
        }
    }
    Ok(m)
}

/// The 1-d Floquet matrix `L_V(z)` with symbolic potential `v1..vn`.
pub fn build_floquet_1d(n: usize, z: ZMode) -> Result<SymbolicMatrix<Rational>> {
    if n < 3 {
        return Err(FloqError::UnsupportedPeriod(n, 3));
    }
    let vars = floquet_vars(n, z);
    let diag = (0..n).map(|i| MultiPoly::var(&vars, i)).collect();
    floquet_with_diagonal(&vars, diag, z)
}
