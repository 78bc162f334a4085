//! Points of a zero-dimensional variety from the joint spectrum of the
//! multiplication matrices.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FloqError, Result};
use crate::floquet::Variant;
use crate::grobner::GroebnerSystem;
use crate::scalar::Complex64;
use crate::symmetry::{self, Group, Tolerance};

use super::newton::{NewtonOutcome, NumericSystem};
use super::quotient::{multiplication_matrices, QuotientCoeff, QuotientRep, DEFAULT_CEILING};
use super::schur::ComplexSchur;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub seed: u64,
    /// Points closer than this (max-norm) are identified.
    pub cluster_tol: f64,
    /// Relative residual a point must reach to be accepted.
    pub residual_tol: f64,
    pub newton_iterations: usize,
    pub ceiling: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            cluster_tol: 1e-6,
            residual_tol: 1e-8,
            newton_iterations: 30,
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl SolveConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cluster_tol > 0.0 && self.residual_tol > 0.0) {
            return Err(FloqError::InvalidArgument("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// One point of the variety.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionPoint {
    #[serde(with = "complex_pairs")]
    pub coords: Vec<Complex64>,
    pub multiplicity: usize,
    /// `max_k |p_k(point)|`.
    pub residual: f64,
    pub relative_residual: f64,
    pub is_zero: bool,
    pub orbit_id: usize,
    /// Newton converged with a well-conditioned Jacobian.
    pub refined: bool,
    /// Accepted only after every clustering scale failed the residual test.
    pub uncertain: bool,
}

/// Diagnostics of one solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    pub dimension: usize,
    /// Weights of the random combination, over 1000.
    pub xi: Vec<i64>,
    /// Multiplicity of the eigenvalue 0, computed modulo a prime.
    pub exact_origin_multiplicity: Option<usize>,
    /// Ratio of the smallest non-origin to the largest origin position
    /// norm; large values mean the origin cluster is well separated.
    pub origin_gap: Option<f64>,
    /// Largest coordinate of the projector means over the origin cluster;
    /// zero up to rounding when the cluster was identified correctly.
    pub origin_mean: Option<f64>,
    /// Weight vectors drawn before the origin cluster was consistent.
    pub weight_attempts: usize,
    pub max_commutator: Option<f64>,
    /// Images under the symmetry group not found among the points.
    pub closure_violations: usize,
    pub max_newton_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub n: usize,
    pub variant: Variant,
    pub seed: u64,
    pub cluster_tol: f64,
    pub residual_tol: f64,
    /// Group used for `orbit_id`, if any.
    pub group: Option<Group>,
    pub points: Vec<SolutionPoint>,
    pub diagnostics: SolveDiagnostics,
}

impl SolutionSet {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &SolutionPoint> {
        self.points.iter().filter(|p| !p.is_zero)
    }

    pub fn origin_multiplicity(&self) -> usize {
        self.points.iter().filter(|p| p.is_zero).map(|p| p.multiplicity).sum()
    }
}

/// Symmetry group natural to a variant.
pub fn variant_group(variant: Variant) -> Option<Group> {
    match variant {
        Variant::Full => Some(Group::Full),
        Variant::Specialized => Some(Group::Signs),
        Variant::ExtendedT | Variant::Lattice => None,
    }
}

/// Builds the quotient and solves. Points are in the main-variable order of
/// the basis (`v` for the full system, `u` for the specialized one).
pub fn solve_variety<C: QuotientCoeff>(g: &GroebnerSystem<C>, cfg: &SolveConfig) -> Result<SolutionSet> {
    cfg.validate()?;
    let q = multiplication_matrices(g, cfg.ceiling)?;
    let sys = NumericSystem::new(&g.invariants, &g.main);
    solve_quotient(&q, &sys, variant_group(g.variant), cfg)
}

/// Random integer weights in `[-1000, 1000] \ {0}`.
pub fn random_weights(seed: u64, count: usize) -> Vec<i64> {
    weight_draws(seed, count, 1).remove(0)
}

/// Successive weight vectors from one seeded stream; the first equals
/// [`random_weights`].
pub fn weight_draws(seed: u64, count: usize, draws: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..draws)
        .map(|_| {
            (0..count)
                .map(|_| loop {
                    let x: i64 = rng.random_range(-1000..=1000);
                    if x != 0 {
                        break x;
                    }
                })
                .collect()
        })
        .collect()
}

/// Weight vectors tried before accepting an inconsistent origin cluster.
const WEIGHT_ATTEMPTS: usize = 4;

/// Largest quotient for which commutators are computed during a solve.
const COMMUTATOR_LIMIT: usize = 1500;

/// Largest quotient for which the origin multiplicity is computed exactly.
const MODULAR_LIMIT: usize = 1500;

/// Jacobian condition above which a Newton limit is treated as singular.
const MAX_CONDITION: f64 = 1e8;

struct Cluster {
    members: Vec<usize>,
    center: Vec<Complex64>,
    is_zero: bool,
    uncertain: bool,
    refined: bool,
    iterations: usize,
}

/// Clusters of eigenvalue positions found with one weight vector.
struct Spectrum {
    xi: Vec<i64>,
    clusters: Vec<Cluster>,
    exact_origin: Option<usize>,
    origin_gap: Option<f64>,
    /// Norm of the projector means over the positions taken as the origin.
    origin_mean: Option<f64>,
}

impl Spectrum {
    /// The positions taken as the origin form an invariant subspace on
    /// which every coordinate vanishes.
    fn origin_consistent(&self, tol: f64) -> bool {
        self.origin_mean.is_none_or(|m| m <= tol)
    }
}

pub fn solve_quotient(
    q: &QuotientRep,
    sys: &NumericSystem,
    group: Option<Group>,
    cfg: &SolveConfig,
) -> Result<SolutionSet> {
    cfg.validate()?;
    let m = q.matrices.len();
    let draws = weight_draws(cfg.seed, m, WEIGHT_ATTEMPTS);
    let mut attempts = 0;
    let mut spectrum = None;
    for xi in draws {
        attempts += 1;
        let found = cluster_spectrum(q, sys, cfg, xi)?;
        let done = found.origin_consistent(cfg.cluster_tol);
        spectrum = Some(found);
        if done {
            break;
        }
    }
    let Spectrum {
        xi,
        clusters,
        exact_origin,
        origin_gap,
        origin_mean,
    } = spectrum.expect("at least one weight draw");

    let dim = q.dim();
    let refined: Vec<(SolutionPoint, usize)> = clusters
        .into_iter()
        .map(|cl| {
            let (residual, relative_residual) = if cl.is_zero { (0.0, 0.0) } else { sys.residual(&cl.center) };
            let point = SolutionPoint {
                is_zero: cl.is_zero || norm_of(&cl.center) <= cfg.cluster_tol,
                coords: cl.center,
                multiplicity: cl.members.len(),
                residual,
                relative_residual,
                orbit_id: 0,
                refined: cl.refined,
                uncertain: cl.uncertain,
            };
            (point, cl.iterations)
        })
        .collect();

    let max_newton_iterations = refined.iter().map(|r| r.1).max().unwrap_or(0);
    let mut points = merge_close(refined.into_iter().map(|r| r.0).collect(), cfg.cluster_tol);
    let closure_violations = assign_orbits(&mut points, group, cfg.cluster_tol);
    if let Some(group) = group {
        polish_orbits(&mut points, group, sys, cfg.cluster_tol);
    }
    let max_commutator = (dim <= COMMUTATOR_LIMIT).then(|| {
        q.commutator_norms().iter().map(|c| c.1).fold(0.0, f64::max)
    });
    sort_points(&mut points, group, cfg.cluster_tol);

    Ok(SolutionSet {
        n: q.n,
        variant: q.variant,
        seed: cfg.seed,
        cluster_tol: cfg.cluster_tol,
        residual_tol: cfg.residual_tol,
        group,
        points,
        diagnostics: SolveDiagnostics {
            dimension: dim,
            xi,
            exact_origin_multiplicity: exact_origin,
            origin_gap,
            origin_mean,
            weight_attempts: attempts,
            max_commutator,
            closure_violations,
            max_newton_iterations,
        },
    })
}

fn single_linkage(items: &[usize], pts: &[Complex64], delta: f64) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..items.len() {
        for b in a + 1..items.len() {
            if (pts[items[a]] - pts[items[b]]).norm() <= delta {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; items.len()];
    for i in 0..items.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(items[i]);
    }
    groups
}

/// Identifies points within `tol`, summing multiplicities.
fn merge_close(points: Vec<SolutionPoint>, tol: f64) -> Vec<SolutionPoint> {
    let mut out: Vec<SolutionPoint> = Vec::with_capacity(points.len());
    for p in points {
        match out
            .iter_mut()
            .find(|q| q.is_zero == p.is_zero && symmetry::max_distance(&q.coords, &p.coords) <= tol)
        {
            Some(q) => {
                if p.multiplicity > q.multiplicity {
                    q.coords = p.coords.clone();
                    q.residual = p.residual;
                    q.relative_residual = p.relative_residual;
                }
                q.multiplicity += p.multiplicity;
                q.refined = false;
                q.uncertain |= p.uncertain;
            }
            None => out.push(p),
        }
    }
    out
}

/// Index of the point within `tol` of `v`, if any.
pub fn find_point(points: &[SolutionPoint], v: &[Complex64], tol: f64) -> Option<usize> {
    points
        .iter()
        .position(|p| symmetry::max_distance(&p.coords, v) <= tol)
}

/// Sets `orbit_id` by union-find over group images; returns the number of
/// images that matched no point.
fn assign_orbits(points: &mut [SolutionPoint], group: Option<Group>, tol: f64) -> usize {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut missing = 0;
    if let Some(group) = group {
        let dim = points.first().map_or(0, |p| p.coords.len());
        let els = symmetry::elements(group, dim);
        for a in 0..n {
            for g in &els {
                let img = g.apply(&points[a].coords);
                match find_point(points, &img, tol.max(1e-9 * norm_of(&img))) {
                    Some(b) => {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        if ra != rb {
                            parent[ra.max(rb)] = ra.min(rb);
                        }
                    }
                    None => missing += 1,
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    for (p, r) in points.iter_mut().zip(roots) {
        p.orbit_id = r;
    }
    missing
}

/// Schur decomposition of one random combination, then clusters of its
/// eigenvalues: the origin first (size known exactly when the quotient has
/// a modular image), then the other points at increasing linkage scales.
fn cluster_spectrum(q: &QuotientRep, sys: &NumericSystem, cfg: &SolveConfig, xi: Vec<i64>) -> Result<Spectrum> {
    let dim = q.dim();
    let m = q.matrices.len();
    let weights: Vec<f64> = xi.iter().map(|&x| x as f64 / 1000.0).collect();
    let mut schur = ComplexSchur::new(&q.combination(&weights))?;
    let eig = schur.eigenvalues();
    // per-position estimates, accurate for simple eigenvalues
    let cols: Vec<Vec<Complex64>> = q.matrices.par_iter().map(|mi| schur.rayleigh_diagonal(mi)).collect();
    let raw: Vec<Vec<Complex64>> = (0..dim).map(|p| cols.iter().map(|c| c[p]).collect()).collect();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);

    // Newton from every position; a converged nonzero limit whose weighted
    // sum reproduces the eigenvalue explains that position as a simple point
    let singles: Vec<NewtonOutcome> = raw
        .par_iter()
        .map(|x| sys.newton(x, cfg.newton_iterations, 1e-15))
        .collect();
    let single_ok = |o: &NewtonOutcome| o.relative_residual <= cfg.residual_tol && o.condition <= MAX_CONDITION;
    let explained: Vec<bool> = (0..dim)
        .map(|p| {
            let o = &singles[p];
            let lambda: Complex64 = o.point.iter().zip(&weights).map(|(x, w)| x * w).sum();
            single_ok(o) && norm_of(&o.point) > cfg.cluster_tol && (lambda - eig[p]).norm() <= cfg.cluster_tol * scale
        })
        .collect();

    let mut blocks: HashMap<Vec<usize>, (Vec<Complex64>, f64)> = HashMap::new();
    let mut block_mean = |schur: &mut ComplexSchur, members: &[usize]| -> (Vec<Complex64>, f64) {
        blocks
            .entry(members.to_vec())
            .or_insert_with(|| {
                let block = schur.gather(members);
                let center = schur.leading_means(&q.matrices, block.len());
                let rel = sys.residual(&center).1;
                (center, rel)
            })
            .clone()
    };

    let exact_origin = if dim <= MODULAR_LIMIT { q.origin_multiplicity(&xi) } else { None };
    let origin_known = exact_origin.is_some();
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut assigned = vec![false; dim];
    let mut origin_gap = None;
    let mut origin_mean = None;
    if let Some(mu) = exact_origin.filter(|&mu| mu > 0) {
        // origin eigenvalues of a large nilpotent block spread widely, so
        // simple points are excluded before ranking by modulus
        let mut by_norm: Vec<usize> = (0..dim).filter(|&p| !explained[p]).collect();
        by_norm.sort_by(|&a, &b| eig[a].norm().total_cmp(&eig[b].norm()));
        if by_norm.len() < mu {
            return Err(FloqError::Eigensolver(format!(
                "origin multiplicity {mu} exceeds the {} positions not explained by simple points",
                by_norm.len()
            )));
        }
        if mu < by_norm.len() {
            let inner = eig[by_norm[mu - 1]].norm();
            let outer = eig[by_norm[mu]].norm();
            origin_gap = Some(outer / inner.max(f64::MIN_POSITIVE));
        }
        let members = by_norm[..mu].to_vec();
        origin_mean = Some(norm_of(&block_mean(&mut schur, &members).0));
        for &p in &members {
            assigned[p] = true;
        }
        clusters.push(Cluster {
            members,
            center: vec![Complex64::new(0.0, 0.0); m],
            is_zero: true,
            uncertain: false,
            refined: false,
            iterations: 0,
        });
    }

    let mut pending: Vec<usize> = (0..dim).filter(|&p| !assigned[p]).collect();
    let mut delta = cfg.cluster_tol * scale;
    while !pending.is_empty() {
        let last = delta > scale;
        let comps = single_linkage(&pending, &eig, delta);
        let parents = if last { Vec::new() } else { single_linkage(&pending, &eig, 10.0 * delta) };
        let mut next = Vec::new();
        for comp in comps {
            if let [p] = comp[..] {
                let out = &singles[p];
                let ok = single_ok(out);
                if ok || last {
                    let better = out.relative_residual < sys.residual(&raw[p]).1;
                    clusters.push(Cluster {
                        members: comp,
                        center: if ok || better { out.point.clone() } else { raw[p].clone() },
                        is_zero: false,
                        uncertain: !ok,
                        refined: ok,
                        iterations: out.iterations,
                    });
                } else {
                    next.push(p);
                }
                continue;
            }
            let (center, rel) = block_mean(&mut schur, &comp);
            // the origin is already accounted for when its multiplicity is
            // known; symmetric sets of points also average to it
            let spurious = origin_known && norm_of(&center) <= cfg.cluster_tol;
            let ok = rel <= cfg.residual_tol && !spurious;
            // a split multiple point can look acceptable; prefer the
            // enclosing cluster when it is the same point, evaluated better
            let defer = ok
                && !last
                && parents
                    .iter()
                    .find(|par| par.contains(&comp[0]))
                    .filter(|par| par.len() > comp.len())
                    .is_some_and(|par| {
                        let (pc, prel) = block_mean(&mut schur, par);
                        prel <= rel && symmetry::max_distance(&pc, &center) <= cfg.cluster_tol.sqrt()
                    });
            if ok && !defer {
                clusters.push(Cluster {
                    members: comp,
                    center,
                    is_zero: false,
                    uncertain: false,
                    refined: false,
                    iterations: 0,
                });
            } else if last {
                for p in comp {
                    let out = &singles[p];
                    let better = out.relative_residual < sys.residual(&raw[p]).1;
                    clusters.push(Cluster {
                        members: vec![p],
                        center: if better { out.point.clone() } else { raw[p].clone() },
                        is_zero: false,
                        uncertain: true,
                        refined: false,
                        iterations: out.iterations,
                    });
                }
            } else {
                next.extend(comp);
            }
        }
        next.sort_unstable();
        pending = next;
        delta *= 10.0;
    }

    Ok(Spectrum {
        xi,
        clusters,
        exact_origin,
        origin_gap,
        origin_mean,
    })
}

/// Replaces each point by the image of the best-residual member of its
/// orbit whenever that image evaluates better. The system is invariant
/// under the group, so images of accurate points are equally accurate.
fn polish_orbits(points: &mut [SolutionPoint], group: Group, sys: &NumericSystem, tol: f64) {
    let dim = points.first().map_or(0, |p| p.coords.len());
    let els = symmetry::elements(group, dim);
    let mut best: HashMap<usize, usize> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        best.entry(p.orbit_id)
            .and_modify(|b| {
                if p.relative_residual < points[*b].relative_residual {
                    *b = i;
                }
            })
            .or_insert(i);
    }
    let updates: Vec<(usize, Vec<Complex64>, (f64, f64))> = (0..points.len())
        .into_par_iter()
        .filter_map(|i| {
            let p = &points[i];
            let b = best[&p.orbit_id];
            if b == i || p.is_zero {
                return None;
            }
            els.iter()
                .map(|g| g.apply(&points[b].coords))
                .filter(|img| symmetry::max_distance(img, &p.coords) <= tol.max(1e-9 * norm_of(img)))
                .map(|img| {
                    let r = sys.residual(&img);
                    (i, img, r)
                })
                .min_by(|a, b| a.2 .1.total_cmp(&b.2 .1))
                .filter(|u| u.2 .1 < p.relative_residual)
        })
        .collect();
    for (i, coords, (residual, relative_residual)) in updates {
        let p = &mut points[i];
        p.coords = coords;
        p.residual = residual;
        p.relative_residual = relative_residual;
    }
}

fn norm_of(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Deterministic order: origin first, then orbits by canonical
/// representative, then points within an orbit; orbit ids renumbered
/// from 0 in that order.
fn sort_points(points: &mut [SolutionPoint], group: Option<Group>, tol: f64) {
    let tolerance = Tolerance::Abs(tol);
    let canon = |v: &[Complex64]| match group {
        Some(g) => symmetry::canonicalize(v, g, tolerance),
        None => v.to_vec(),
    };
    // canonical representative of each orbit: the smallest member canon
    let mut orbit_rep: HashMap<usize, Vec<Complex64>> = HashMap::new();
    for p in points.iter() {
        let c = canon(&p.coords);
        orbit_rep
            .entry(p.orbit_id)
            .and_modify(|r| {
                if symmetry::cmp_points(&c, r, tolerance).is_lt() {
                    *r = c.clone();
                }
            })
            .or_insert(c);
    }
    points.sort_by(|a, b| {
        b.is_zero
            .cmp(&a.is_zero)
            .then_with(|| symmetry::cmp_points(&orbit_rep[&a.orbit_id], &orbit_rep[&b.orbit_id], tolerance))
            .then_with(|| a.orbit_id.cmp(&b.orbit_id))
            .then_with(|| symmetry::cmp_points(&a.coords, &b.coords, tolerance))
    });
    let mut renumber: HashMap<usize, usize> = HashMap::new();
    for p in points.iter_mut() {
        let next = renumber.len();
        p.orbit_id = *renumber.entry(p.orbit_id).or_insert(next);
    }
}

/// Serializes complex vectors as `[[re, im], ...]`.
pub mod complex_pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::scalar::Complex64;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}
