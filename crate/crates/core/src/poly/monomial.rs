use std::cmp::Ordering;
use std::ops::{Deref, DerefMut};

use smallvec::SmallVec;

/// Exponents of a monomial, one slot per variable of a
/// [`VariableTable`](super::VariableTable).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(SmallVec<[i16; 16]>);

impl ExponentVector {
    pub fn zeros(len: usize) -> Self {
        Self(SmallVec::from_elem(0, len))
    }

    pub fn unit(len: usize, idx: usize) -> Self {
        let mut e = Self::zeros(len);
        e[idx] = 1;
        e
    }

    pub fn from_slice(exps: &[i16]) -> Self {
        Self(SmallVec::from_slice(exps))
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&x| x as i32).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` is at most the matching
    /// exponent of `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (a, &b) in out.0.iter_mut().zip(other.iter()) {
            if *a < b {
                return None;
            }
            *a -= b;
        }
        Some(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.iter().zip(other.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn without(&self, idx: usize) -> Self {
        let mut e = self.clone();
        e.0.remove(idx);
        e
    }

    pub fn into_inner(self) -> SmallVec<[i16; 16]> {
        self.0
    }
}

impl Deref for ExponentVector {
    type Target = [i16];
    fn deref(&self) -> &[i16] {
        &self.0
    }
}

impl DerefMut for ExponentVector {
    fn deref_mut(&mut self) -> &mut [i16] {
        &mut self.0
    }
}

impl FromIterator<i16> for ExponentVector {
    fn from_iter<I: IntoIterator<Item = i16>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Grevlex over all positions.
pub fn grevlex_cmp(a: &[i16], b: &[i16]) -> Ordering {
    let da: i32 = a.iter().map(|&x| x as i32).sum();
    let db: i32 = b.iter().map(|&x| x as i32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // rightmost nonzero entry of a - b negative => a > b
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Grevlex restricted to positions where `mask` is true. Positions outside
/// the mask break remaining ties lexicographically so that the order stays
/// total on full exponent vectors.
pub fn grevlex_cmp_masked(a: &[i16], b: &[i16], mask: &[bool]) -> Ordering {
    let deg = |e: &[i16]| -> i32 {
        e.iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(&x, _)| x as i32)
            .sum()
    };
    let (da, db) = (deg(a), deg(b));
    if da != db {
        return da.cmp(&db);
    }
    for ((x, y), &m) in a.iter().zip(b).zip(mask).rev() {
        if m && x != y {
            return y.cmp(x);
        }
    }
    for ((x, y), &m) in a.iter().zip(b).zip(mask) {
        if !m && x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}
