//! Table rows, seed crosschecks and plot data for solution sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::floquet::Variant;
use crate::grobner::GroebnerSystem;
use crate::scalar::Complex64;
use crate::symmetry::{self, ConjectureForm, Group, Tolerance};

use super::quotient::QuotientCoeff;
use super::solve::{find_point, solve_variety, SolutionPoint, SolutionSet, SolveConfig, SolveDiagnostics};

/// One row of the solution tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub mult_at_zero: usize,
    pub mult_nonzero: usize,
    /// Distinct points, the origin included.
    pub unique: usize,
    /// `D_n` orbits, the origin included; full system only.
    pub unique_mod_dihedral: Option<usize>,
    /// Orbits under the variant's group (order `8n` for the full system,
    /// sign changes and conjugation for the specialized one), the origin
    /// included.
    pub unique_mod_all: usize,
    /// Same orbits without the origin.
    pub nonzero_orbits: usize,
    /// Orbits of points of multiplicity above one, the origin included,
    /// under `D_n` (full) or the variant's group (specialized).
    pub singular_mod_dihedral: usize,
    /// Multiplicity to number of points.
    pub mult_counts: BTreeMap<usize, usize>,
    /// Nonzero points with `v_j = conj(v_{n-j+1})` for all `j`, read on the
    /// full potential.
    pub conjecture2_count: usize,
}

/// The potential `V` of a point: itself for the full system, and
/// `(u_1..u_m, [0], -u_m..-u_1)` for the specialized one.
pub fn potential_of(variant: Variant, n: usize, coords: &[Complex64]) -> Vec<Complex64> {
    match variant {
        Variant::Specialized => {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for (j, &u) in coords.iter().enumerate() {
                v[j] = u;
                v[n - 1 - j] = -u;
            }
            v
        }
        _ => coords.to_vec(),
    }
}

/// Number of orbits among `points` under `group`, matching images within
/// `tol`. Images that match no point start orbits of their own.
pub fn orbit_count(points: &[&SolutionPoint], group: Group, tol: f64) -> usize {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let owned: Vec<SolutionPoint> = points.iter().map(|&p| p.clone()).collect();
    let dim = owned.first().map_or(0, |p| p.coords.len());
    let els = symmetry::elements(group, dim);
    for a in 0..n {
        for g in &els {
            if let Some(b) = find_point(&owned, &g.apply(&owned[a].coords), tol) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Counts for one solve.
pub fn summarize(s: &SolutionSet) -> Summary {
    let tol = s.cluster_tol;
    let all: Vec<&SolutionPoint> = s.points.iter().collect();
    let nonzero: Vec<&SolutionPoint> = s.nonzero().collect();
    let singular: Vec<&SolutionPoint> = all.iter().copied().filter(|p| p.multiplicity > 1).collect();
    let group = match s.variant {
        Variant::Specialized => Group::Signs,
        _ => Group::Full,
    };
    let local = match s.variant {
        Variant::Specialized => Group::Signs,
        _ => Group::Dihedral,
    };
    let mut mult_counts = BTreeMap::new();
    for p in &s.points {
        *mult_counts.entry(p.multiplicity).or_insert(0) += 1;
    }
    let conjecture2_count = nonzero
        .iter()
        .filter(|p| {
            let v = potential_of(s.variant, s.n, &p.coords);
            symmetry::conjecture_form_check(&v, ConjectureForm::C2Conjpalindromic, Tolerance::Abs(tol))
        })
        .count();
    Summary {
        mult_at_zero: s.origin_multiplicity(),
        mult_nonzero: nonzero.iter().map(|p| p.multiplicity).sum(),
        unique: s.points.len(),
        unique_mod_dihedral: (s.variant == Variant::Full).then(|| orbit_count(&all, Group::Dihedral, tol)),
        unique_mod_all: orbit_count(&all, group, tol),
        nonzero_orbits: orbit_count(&nonzero, group, tol),
        singular_mod_dihedral: orbit_count(&singular, local, tol),
        mult_counts,
        conjecture2_count,
    }
}

/// Agreement of the counts across seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stability {
    pub seeds: Vec<u64>,
    pub agree: bool,
    /// Summaries of the extra seeds that disagree with the first.
    pub disagreements: Vec<(u64, Summary)>,
}

/// Re-solves with `extra` seeds and compares every count with `base`.
pub fn crosscheck<C: QuotientCoeff>(
    g: &GroebnerSystem<C>,
    cfg: &SolveConfig,
    base: &Summary,
    extra: &[u64],
) -> Result<Stability> {
    let mut seeds = vec![cfg.seed];
    let mut disagreements = Vec::new();
    for &seed in extra {
        seeds.push(seed);
        let other = summarize(&solve_variety(g, &SolveConfig { seed, ..*cfg })?);
        if &other != base {
            disagreements.push((seed, other));
        }
    }
    Ok(Stability {
        seeds,
        agree: disagreements.is_empty(),
        disagreements,
    })
}

/// Serialized solve result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub n: usize,
    pub variant: Variant,
    pub seed: u64,
    pub cluster_tol: f64,
    pub residual_tol: f64,
    pub points: Vec<SolutionPoint>,
    pub summary: Summary,
    pub diagnostics: SolveDiagnostics,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stability: Option<Stability>,
}

impl SolveReport {
    pub fn new(s: SolutionSet, stability: Option<Stability>) -> Self {
        let summary = summarize(&s);
        Self {
            n: s.n,
            variant: s.variant,
            seed: s.seed,
            cluster_tol: s.cluster_tol,
            residual_tol: s.residual_tol,
            points: s.points,
            summary,
            diagnostics: s.diagnostics,
            stability,
        }
    }
}

/// A nonzero coordinate value of a nonzero point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoordinateValue {
    pub point: usize,
    pub orbit: usize,
    pub multiplicity: usize,
    /// Vertex index, 1-based, on the full potential.
    pub vertex: usize,
    pub re: f64,
    pub im: f64,
}

/// Every nonzero value taken by the potentials of the nonzero points, in
/// point order.
pub fn nonzero_values(s: &SolutionSet) -> Vec<CoordinateValue> {
    s.points
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero)
        .flat_map(|(i, p)| {
            potential_of(s.variant, s.n, &p.coords)
                .into_iter()
                .enumerate()
                .filter(|(_, z)| z.norm() > s.cluster_tol)
                .map(move |(j, z)| CoordinateValue {
                    point: i,
                    orbit: p.orbit_id,
                    multiplicity: p.multiplicity,
                    vertex: j + 1,
                    re: z.re,
                    im: z.im,
                })
        })
        .collect()
}
