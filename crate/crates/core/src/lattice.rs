//! Full-rank sublattices of `Z^2`: Hermite normal form, cosets, Laurent
//! Floquet matrices and numerical rigidity checks.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FloqError, Result};
use crate::floquet::invariants::subtract_free_part;
use crate::floquet::{InvariantSystem, SymbolicMatrix, Variant};
use crate::grobner::groebner_generators;
use crate::poly::{ExponentVector, MultiPoly, VarKind, VariableTable, Vars};
use crate::scalar::{format_gaussian, Complex64, Field, GaussianRational, Rational, Scalar};
use crate::solver::{solve_variety, NumericSystem, SolveConfig};

/// Unit steps of the square grid.
const STEPS: [[i64; 2]; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];

/// Hermite normal form `(a, 0), (b, c)` with `a, c > 0` and `0 <= b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hnf {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Hnf {
    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, 0], [self.b, self.c]]
    }
}

/// `Gamma = q_1 Z + q_2 Z` with its normal form and one representative per
/// coset of `Z^2 / Gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    /// Rows `q_1, q_2` as given.
    pub generators: [[i64; 2]; 2],
    pub hnf: Hnf,
    /// `|Z^2 / Gamma| = a c`.
    pub index: usize,
    pub reps: Vec<[i64; 2]>,
}

/// Normal form and the representatives `{(x, y) : 0 <= x < a, 0 <= y < c}`.
pub fn hermite_and_cosets(generators: [[i64; 2]; 2]) -> Result<LatticeBasis> {
    let [g1, g2] = generators;
    if g1[0] * g2[1] - g1[1] * g2[0] == 0 {
        return Err(FloqError::SingularLattice);
    }
    // a unimodular row combination clears the second coordinate of one row
    let eg = g1[1].extended_gcd(&g2[1]);
    let (c, r2) = (eg.gcd, [eg.x * g1[0] + eg.y * g2[0], eg.gcd]);
    let (s1, s2) = (g2[1] / c, g1[1] / c);
    let a = (s1 * g1[0] - s2 * g2[0]).abs();
    let (r2, c) = if c < 0 { ([-r2[0], -r2[1]], -c) } else { (r2, c) };
    let hnf = Hnf {
        a,
        b: r2[0].rem_euclid(a),
        c,
    };
    let reps = (0..c).flat_map(|y| (0..a).map(move |x| [x, y])).collect();
    Ok(LatticeBasis {
        generators,
        hnf,
        index: (a * c) as usize,
        reps,
    })
}

/// Parses `"a b; c d"` into generator rows.
pub fn parse_generators(text: &str) -> Result<[[i64; 2]; 2]> {
    let bad = || FloqError::Parse(format!("expected generators as \"a b; c d\", got {text:?}"));
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|row| row.split_whitespace().map(|x| x.parse::<i64>().map_err(|_| bad())).collect())
        .collect::<Result<_>>()?;
    match rows.as_slice() {
        [r1, r2] if r1.len() == 2 && r2.len() == 2 => Ok([[r1[0], r1[1]], [r2[0], r2[1]]]),
        _ => Err(bad()),
    }
}

impl LatticeBasis {
    /// The same lattice with every representative moved by a lattice
    /// vector: `k` multiples of `(a, 0)` for representative `i` and `i`
    /// multiples of `(b, c)`. The Floquet matrix changes by a diagonal
    /// similarity only.
    pub fn shifted_reps(&self, k: i64) -> Self {
        let [q1, q2] = self.hnf.rows();
        let reps = self
            .reps
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let j = i as i64 % 3 - 1;
                [r[0] + k * q1[0] + j * q2[0], r[1] + k * q1[1] + j * q2[1]]
            })
            .collect();
        Self { reps, ..self.clone() }
    }

    /// `p = canonical rep + k_1 (a, 0) + k_2 (b, c)`.
    fn canonical(&self, p: [i64; 2]) -> ([i64; 2], [i64; 2]) {
        let Hnf { a, b, c } = self.hnf;
        let k2 = p[1].div_euclid(c);
        let x = p[0] - k2 * b;
        let k1 = x.div_euclid(a);
        ([x - k1 * a, p[1] - k2 * c], [k1, k2])
    }

    /// `(s, s', k)` for every site `s` and unit step `e` with
    /// `rep_s + e = rep_s' + k_1 q_1 + k_2 q_2` in normal-form coordinates.
    pub fn hops(&self) -> Vec<(usize, usize, [i64; 2])> {
        let lookup: HashMap<[i64; 2], (usize, [i64; 2])> = self
            .reps
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let (canon, k) = self.canonical(r);
                (canon, (i, k))
            })
            .collect();
        let mut out = Vec::new();
        for (s, r) in self.reps.iter().enumerate() {
            for e in STEPS {
                let (canon, k) = self.canonical([r[0] + e[0], r[1] + e[1]]);
                let (t, kt) = lookup[&canon];
                out.push((s, t, [k[0] - kt[0], k[1] - kt[1]]));
            }
        }
        out
    }

    /// Variables `v1..vN, lam, z1, z2` with Laurent `z`.
    pub fn vars(&self) -> Vars {
        let mut v: Vec<(String, VarKind)> = (1..=self.index).map(|i| (format!("v{i}"), VarKind::Ordinary)).collect();
        v.push(("lam".into(), VarKind::Ordinary));
        v.push(("z1".into(), VarKind::Laurent));
        v.push(("z2".into(), VarKind::Laurent));
        VariableTable::new(v).expect("distinct names")
    }

    /// `L_V(z)` with symbolic potential and Laurent `z1, z2`.
    pub fn floquet_matrix(&self) -> SymbolicMatrix<Rational> {
        let vars = self.vars();
        let (z1, z2) = (self.index + 1, self.index + 2);
        let mut m = SymbolicMatrix::zeros(&vars, self.index);
        for i in 0..self.index {
            m.set(i, i, MultiPoly::var(&vars, i));
        }
        for (s, t, k) in self.hops() {
            let mut e = ExponentVector::zeros(vars.len());
            e[z1] = k[0] as i16;
            e[z2] = k[1] as i16;
            m.add_to(s, t, &MultiPoly::monomial(&vars, e, Rational::one()));
        }
        m
    }

    /// `L_V(z)` at a fixed `z`, over `v1..vN, lam`.
    pub fn floquet_matrix_at<C: Field>(&self, z: &[C; 2]) -> SymbolicMatrix<C> {
        let vars = self.vars().without(self.index + 2).without(self.index + 1);
        let power = |x: &C, k: i64| -> C {
            let base = if k < 0 { x.inv() } else { x.clone() };
            (0..k.unsigned_abs()).fold(C::one(), |acc, _| acc * base.clone())
        };
        let mut m = SymbolicMatrix::zeros(&vars, self.index);
        for i in 0..self.index {
            m.set(i, i, MultiPoly::var(&vars, i));
        }
        for (s, t, k) in self.hops() {
            let w = power(&z[0], k[0]) * power(&z[1], k[1]);
            m.add_to(s, t, &MultiPoly::constant(&vars, w));
        }
        m
    }
}

/// Point `(1 + i t) / (1 - i t)` of the unit circle, exact for rational
/// `t`; its angle is `2 atan(t)`.
pub fn cayley(t: &Rational) -> GaussianRational {
    let one = Rational::one();
    let d = &one + t * t;
    GaussianRational::new((&one - t * t) / &d, (t + t) / &d)
}

/// A torus point `(z_1, z_2)` with Gaussian-rational coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusSample {
    pub t: [Rational; 2],
}

impl TorusSample {
    pub fn z(&self) -> [GaussianRational; 2] {
        [cayley(&self.t[0]), cayley(&self.t[1])]
    }

    pub fn angles(&self) -> [f64; 2] {
        let angle = |t: &Rational| 2.0 * t.to_c64().re.atan();
        [angle(&self.t[0]), angle(&self.t[1])]
    }

    pub fn text(&self) -> [String; 2] {
        let z = self.z();
        [format_gaussian(&z[0]), format_gaussian(&z[1])]
    }
}

/// Distance from `theta` to the nearest root of unity of order at most
/// `order`, in radians.
pub fn root_of_unity_distance(theta: f64, order: usize) -> f64 {
    use std::f64::consts::TAU;
    (1..=order)
        .map(|k| {
            let step = TAU / k as f64;
            let r = theta.rem_euclid(step);
            r.min(step - r)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Seeded torus samples with uniform angles, rounded to `t = p / 64` and
/// kept at least `0.01` rad from every root of unity of order `<= 2N`.
pub fn torus_samples(seed: u64, count: usize, index: usize) -> Vec<TorusSample> {
    const DENOM: i64 = 64;
    const MARGIN: f64 = 0.01;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let theta: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let p = (DENOM as f64 * (theta / 2.0).tan()).round() as i64;
        let t = Rational::new(p.into(), DENOM.into());
        let angle = 2.0 * t.to_c64().re.atan();
        if root_of_unity_distance(angle, 2 * index) >= MARGIN {
            break t;
        }
    };
    (0..count)
        .map(|_| TorusSample {
            t: [draw(), draw()],
        })
        .collect()
}

/// `(-1)^(N-k) [lam^(N-k)] (det(L_V(z) - lam) - det(L_0(z) - lam))` for
/// `k = 1..N` at a fixed `z`, checked to have elementary-symmetric leading
/// forms.
pub fn lattice_invariants<C: Field>(lattice: &LatticeBasis, z: &[C; 2]) -> Result<InvariantSystem<C>> {
    let n = lattice.index;
    let m = lattice.floquet_matrix_at(z);
    let lam = n;
    let zeta = subtract_free_part(&m.char_poly(lam), &(0..n).collect::<Vec<_>>());
    let generators = (1..=n)
        .map(|k| {
            let s = if (n - k) % 2 == 0 { C::one() } else { -C::one() };
            zeta.coeff_extract(lam, (n - k) as i32).scale(&s)
        })
        .collect::<Vec<_>>();
    let sys = InvariantSystem {
        n,
        variant: Variant::Lattice,
        vars: generators[0].vars().clone(),
        main: (0..n).collect(),
        power: 1,
        generators,
    };
    sys.check_leading_forms()?;
    Ok(sys)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No nonzero candidate survived the extra samples.
    Rigid,
    /// Some nonzero candidate satisfied every sample within tolerance.
    Counterexample,
    /// The closed-form basis could not be built.
    Undetermined,
}

/// A nonzero candidate that passed every sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Survivor {
    #[serde(with = "crate::solver::solve::complex_pairs")]
    pub coords: Vec<Complex64>,
    pub multiplicity: usize,
    /// Relative residual at each extra sample.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub lattice: [[i64; 2]; 2],
    pub hnf: Hnf,
    pub index: usize,
    pub verdict: Verdict,
    pub survivors: Vec<Survivor>,
    /// Torus points as `[z1, z2]`; the first one defines the candidates.
    pub samples: Vec<[String; 2]>,
    /// Solution count with multiplicity at the first sample (`N!`).
    pub total_multiplicity: usize,
    pub candidates: usize,
    /// Survivors after each extra sample.
    pub survivors_by_sample: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

/// Candidates from the variety at one generic sample, filtered against
/// the invariants at `extra` further samples.
pub fn rigidity_check(lattice: &LatticeBasis, cfg: &SolveConfig, tol: f64, extra: usize) -> Result<RigidityReport> {
    const FIRST_TRIES: usize = 3;
    let n = lattice.index;
    let samples = torus_samples(cfg.seed, FIRST_TRIES + extra, n);
    let mut report = RigidityReport {
        lattice: lattice.generators,
        hnf: lattice.hnf,
        index: n,
        verdict: Verdict::Undetermined,
        survivors: Vec::new(),
        samples: Vec::new(),
        total_multiplicity: 0,
        candidates: 0,
        survivors_by_sample: Vec::new(),
        detail: None,
    };
    // a sample whose invariants lack elementary leading forms is replaced
    let mut basis = None;
    let mut failures = Vec::new();
    for (i, sample) in samples.iter().take(FIRST_TRIES).enumerate() {
        match lattice_invariants(lattice, &sample.z()).and_then(|s| groebner_generators(&s)) {
            Ok(g) => {
                basis = Some((i, g));
                break;
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let Some((first, g)) = basis else {
        report.detail = Some(failures.join("; "));
        return Ok(report);
    };
    let solution = solve_variety(&g, cfg)?;
    let checks: Vec<(TorusSample, NumericSystem)> = samples[FIRST_TRIES..]
        .iter()
        .map(|s| {
            let sys = lattice_invariants(lattice, &s.z())?;
            Ok((s.clone(), NumericSystem::new(&sys.generators, &sys.main)))
        })
        .collect::<Result<_>>()?;
    report.samples.push(samples[first].text());
    report.samples.extend(checks.iter().map(|(s, _)| s.text()));
    report.total_multiplicity = solution.total_multiplicity();
    let mut alive: Vec<Survivor> = solution
        .nonzero()
        .map(|p| Survivor {
            coords: p.coords.clone(),
            multiplicity: p.multiplicity,
            residuals: Vec::new(),
        })
        .collect();
    report.candidates = alive.len();
    for (_, sys) in &checks {
        for s in &mut alive {
            s.residuals.push(sys.residual(&s.coords).1);
        }
        alive.retain(|s| s.residuals.last().is_some_and(|&r| r <= tol));
        report.survivors_by_sample.push(alive.len());
    }
    report.verdict = if alive.is_empty() {
        Verdict::Rigid
    } else {
        Verdict::Counterexample
    };
    report.survivors = alive;
    Ok(report)
}

/// Normal forms `(a, 0), (b, c)` with `a c <= max_index`, `0 <= b < a` and
/// both `gcd(a, b)` and `c` in `{1, 2, 3}`.
pub fn small_lattices(max_index: i64) -> Vec<Hnf> {
    let small = |x: i64| (1..=3).contains(&x);
    let mut out = Vec::new();
    for c in 1..=3 {
        for a in 1..=max_index / c {
            for b in 0..a {
                if small(a.gcd(&b)) {
                    out.push(Hnf { a, b, c });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn normal_forms() {
        let l = hermite_and_cosets([[4, 0], [1, 1]]).unwrap();
        assert_eq!(l.hnf, Hnf { a: 4, b: 1, c: 1 });
        assert_eq!(l.index, 4);
        let l = hermite_and_cosets([[2, 0], [0, 3]]).unwrap();
        assert_eq!(l.hnf, Hnf { a: 2, b: 0, c: 3 });
        assert_eq!(l.index, 6);
        assert_eq!(hermite_and_cosets([[1, 0], [0, 1]]).unwrap().index, 1);
        // same lattice, other generators
        let l = hermite_and_cosets([[5, 1], [4, 1]]).unwrap();
        assert_eq!(l.hnf, Hnf { a: 1, b: 0, c: 1 });
        let l = hermite_and_cosets([[1, 1], [-3, 1]]).unwrap();
        assert_eq!(l.hnf, Hnf { a: 4, b: 1, c: 1 });
        assert!(matches!(hermite_and_cosets([[2, 4], [1, 2]]), Err(FloqError::SingularLattice)));
    }

    #[test]
    fn generator_text() {
        assert_eq!(parse_generators("4 0; 1 1").unwrap(), [[4, 0], [1, 1]]);
        assert!(parse_generators("4 0 1 1").is_err());
        assert!(parse_generators("4 x; 1 1").is_err());
    }

    #[test]
    fn cayley_points_are_on_the_circle() {
        for t in [rational(1, 3), rational(-7, 64), rational(5, 2)] {
            let z = cayley(&t);
            assert_eq!(&z.re * &z.re + &z.im * &z.im, Rational::one());
        }
        let s = torus_samples(3, 4, 6);
        assert_eq!(s, torus_samples(3, 4, 6));
        for x in &s {
            for a in x.angles() {
                assert!(root_of_unity_distance(a, 12) >= 0.01);
            }
        }
    }

    #[test]
    fn small_lattice_list() {
        let all = small_lattices(6);
        assert!(all.contains(&Hnf { a: 6, b: 1, c: 1 }));
        assert!(!all.contains(&Hnf { a: 6, b: 0, c: 1 }));
        assert!(!all.contains(&Hnf { a: 4, b: 0, c: 1 }));
        assert!(all.iter().all(|h| h.a * h.c <= 6));
    }
}
