use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{FloqError, Result};
use crate::poly::monomial::{grevlex_cmp_masked, ExponentVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Ordinary,
    /// May carry negative exponents; never participates in monomial ordering.
    Laurent,
}

/// Ordered list of variable names. Position defines the tie-break order:
/// earlier variables are larger (`v1 > v2 > ... > vn > t`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
    kinds: Vec<VarKind>,
}

/// Shared handle to a variable table.
pub type Vars = Arc<VariableTable>;

impl VariableTable {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, VarKind)>) -> Result<Vars> {
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        for (name, kind) in vars {
            let name = name.into();
            if names.contains(&name) {
                return Err(FloqError::DuplicateVariable(name));
            }
            names.push(name);
            kinds.push(kind);
        }
        Ok(Arc::new(Self { names, kinds }))
    }

    /// Table of ordinary variables only.
    pub fn ordinary<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Vars> {
        Self::new(names.into_iter().map(|n| (n, VarKind::Ordinary)))
    }

    /// `prefix1, ..., prefixN`.
    pub fn indexed(prefix: &str, count: usize) -> Vars {
        Self::ordinary((1..=count).map(|i| format!("{prefix}{i}"))).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn kind(&self, idx: usize) -> VarKind {
        self.kinds[idx]
    }

    pub fn is_laurent(&self, idx: usize) -> bool {
        self.kinds[idx] == VarKind::Laurent
    }

    pub fn has_laurent(&self) -> bool {
        self.kinds.contains(&VarKind::Laurent)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| FloqError::UnknownVariable(name.to_string()))
    }

    /// Copy of the table with one variable dropped.
    pub fn without(&self, idx: usize) -> Vars {
        let mut t = self.clone();
        t.names.remove(idx);
        t.kinds.remove(idx);
        Arc::new(t)
    }

    /// Copy of the table with extra variables appended.
    pub fn extended<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = (S, VarKind)>,
    ) -> Result<Vars> {
        let existing = self
            .names
            .iter()
            .cloned()
            .zip(self.kinds.iter().copied());
        let extra: Vec<(String, VarKind)> = extra.into_iter().map(|(n, k)| (n.into(), k)).collect();
        Self::new(existing.chain(extra))
    }

    pub(crate) fn ordering_mask(&self) -> Vec<bool> {
        self.kinds.iter().map(|k| *k == VarKind::Ordinary).collect()
    }

    /// Graded reverse lexicographic comparison over the ordinary variables.
    ///
    /// Total degree decides first; on a tie the rightmost nonzero entry of
    /// `a - b` being negative means `a > b`.
    pub fn grevlex_compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        if a.len() != self.len() || b.len() != self.len() {
            return Err(FloqError::VariableMismatch);
        }
        Ok(grevlex_cmp_masked(a, b, &self.ordering_mask()))
    }

    /// Checks that the exponent vector fits this table.
    pub fn validate(&self, e: &ExponentVector) -> Result<()> {
        if e.len() != self.len() {
            return Err(FloqError::DimensionMismatch {
                expected: self.len(),
                got: e.len(),
            });
        }
        for (i, &x) in e.iter().enumerate() {
            if x < 0 && !self.is_laurent(i) {
                return Err(FloqError::NegativeExponent(self.names[i].clone()));
            }
        }
        Ok(())
    }
}

pub fn same_table(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
