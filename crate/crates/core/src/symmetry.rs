//! Dihedral, negation and conjugation actions on potentials.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{FloqError, Result};
use crate::scalar::{Complex64, Conjugate, GaussianRational};

/// `V -> sign * conj^c(V o pi)` where `pi` is a dihedral permutation.
///
/// The permutation sends output position `j` to input position
/// `j - rotation` (reflected first when `reflect` is set), so a rotation by
/// one maps `(1, 2, 3, 4)` to `(4, 1, 2, 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetryElement {
    pub rotation: usize,
    pub reflect: bool,
    pub negate: bool,
    pub conjugate: bool,
}

/// Groups acting on points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    /// `D_n`, order `2n`.
    Dihedral,
    /// `D_n x <-1> x <conj>`, order `8n`.
    Full,
    /// `<-1> x <conj>`, order 4: the symmetries of the specialized system.
    Signs,
}

impl std::str::FromStr for Group {
    type Err = FloqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dihedral" => Ok(Group::Dihedral),
            "full" | "all" => Ok(Group::Full),
            "signs" => Ok(Group::Signs),
            _ => Err(FloqError::Parse(format!("unknown group {s:?}"))),
        }
    }
}

/// Equality used when deduplicating points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Exact,
    /// Max-norm distance on coordinate differences.
    Abs(f64),
}

impl SymmetryElement {
    pub const IDENTITY: Self = Self {
        rotation: 0,
        reflect: false,
        negate: false,
        conjugate: false,
    };

    pub fn rotation(r: usize) -> Self {
        Self {
            rotation: r,
            ..Self::IDENTITY
        }
    }

    /// Input index read by output position `j`.
    pub fn source(&self, n: usize, j: usize) -> usize {
        let shifted = (j + n - self.rotation % n) % n;
        if self.reflect {
            n - 1 - shifted
        } else {
            shifted
        }
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &Self, n: usize) -> Self {
        // output j reads other's output at self.source(j), which reads the
        // input at other.source(self.source(j))
        let perm: Vec<usize> = (0..n).map(|j| other.source(n, self.source(n, j))).collect();
        let (rotation, reflect) = (0..n)
            .flat_map(|r| [(r, false), (r, true)])
            .find(|&(r, f)| {
                let g = Self {
                    rotation: r,
                    reflect: f,
                    ..Self::IDENTITY
                };
                (0..n).all(|j| g.source(n, j) == perm[j])
            })
            .expect("dihedral permutations are closed under composition");
        Self {
            rotation,
            reflect,
            negate: self.negate ^ other.negate,
            conjugate: self.conjugate ^ other.conjugate,
        }
    }

    pub fn apply<C: Conjugate>(&self, v: &[C]) -> Vec<C> {
        let n = v.len();
        (0..n)
            .map(|j| {
                let mut x = v[self.source(n, j)].clone();
                if self.conjugate {
                    x = x.conjugate();
                }
                if self.negate {
                    x = -x;
                }
                x
            })
            .collect()
    }
}

/// Every element of the group, in a fixed order (identity first).
pub fn elements(group: Group, n: usize) -> Vec<SymmetryElement> {
    let dihedral: Vec<(usize, bool)> = match group {
        Group::Signs => vec![(0, false)],
        _ => (0..n).flat_map(|r| [(r, false), (r, true)]).collect(),
    };
    let signs: Vec<(bool, bool)> = match group {
        Group::Dihedral => vec![(false, false)],
        _ => vec![(false, false), (true, false), (false, true), (true, true)],
    };
    signs
        .iter()
        .flat_map(|&(negate, conjugate)| {
            dihedral.iter().map(move |&(rotation, reflect)| SymmetryElement {
                rotation,
                reflect,
                negate,
                conjugate,
            })
        })
        .collect()
}

/// Coordinates with a fixed total order (real part, then imaginary part)
/// and a distance.
pub trait Coordinate: Conjugate {
    fn cmp_parts(&self, other: &Self) -> Ordering;
    fn distance(&self, other: &Self) -> f64;
}

impl Coordinate for GaussianRational {
    fn cmp_parts(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    fn distance(&self, other: &Self) -> f64 {
        crate::scalar::Scalar::magnitude(&(self.clone() - other.clone()))
    }
}

impl Coordinate for Complex64 {
    fn cmp_parts(&self, other: &Self) -> Ordering {
        self.re.total_cmp(&other.re).then_with(|| self.im.total_cmp(&other.im))
    }

    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

pub fn points_equal<C: Coordinate>(a: &[C], b: &[C], tol: Tolerance) -> bool {
    a.len() == b.len()
        && match tol {
            Tolerance::Exact => a == b,
            Tolerance::Abs(t) => max_distance(a, b) <= t,
        }
}

/// Max-norm distance between two points.
pub fn max_distance<C: Coordinate>(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.distance(y)).fold(0.0, f64::max)
}

/// Lexicographic order with ties within `tol` (per real or imaginary part).
pub fn cmp_points<C: Coordinate>(a: &[C], b: &[C], tol: Tolerance) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = match tol {
            Tolerance::Exact => x.cmp_parts(y),
            Tolerance::Abs(t) => cmp_within(x, y, t),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

fn cmp_within<C: Coordinate>(x: &C, y: &C, tol: f64) -> Ordering {
    let (a, b) = (crate::scalar::Scalar::to_c64(x), crate::scalar::Scalar::to_c64(y));
    let part = |p: f64, q: f64| {
        if (p - q).abs() <= tol {
            Ordering::Equal
        } else {
            p.total_cmp(&q)
        }
    };
    part(a.re, b.re).then_with(|| part(a.im, b.im))
}

/// Distinct images of `v` under the group, in element order.
pub fn orbit<C: Coordinate>(v: &[C], group: Group, tol: Tolerance) -> Vec<Vec<C>> {
    let mut out: Vec<Vec<C>> = Vec::new();
    for g in elements(group, v.len()) {
        let w = g.apply(v);
        if !out.iter().any(|u| points_equal(u, &w, tol)) {
            out.push(w);
        }
    }
    out
}

/// Smallest orbit element in the lexicographic (re, im) order.
pub fn canonicalize<C: Coordinate>(v: &[C], group: Group, tol: Tolerance) -> Vec<C> {
    elements(group, v.len())
        .iter()
        .map(|g| g.apply(v))
        .min_by(|a, b| cmp_points(a, b, tol))
        .unwrap_or_default()
}

/// Palindromic forms of isospectral potentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureForm {
    /// `v_j = -v_{n-j+1}`.
    C1Antipalindromic,
    /// `v_j = conj(v_{n-j+1})`.
    C2Conjpalindromic,
}

pub fn conjecture_form_check<C: Coordinate>(v: &[C], form: ConjectureForm, tol: Tolerance) -> bool {
    let n = v.len();
    (0..n).all(|j| {
        let mirror = &v[n - 1 - j];
        let target = match form {
            ConjectureForm::C1Antipalindromic => -mirror.clone(),
            ConjectureForm::C2Conjpalindromic => mirror.conjugate(),
        };
        match tol {
            Tolerance::Exact => v[j] == target,
            Tolerance::Abs(t) => v[j].distance(&target) <= t,
        }
    })
}
