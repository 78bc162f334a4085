use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FloqError, Result};
use crate::floquet::invariants::InvariantSystem;
use crate::scalar::{
    format_gaussian, parse_rational, Complex64, Embed, GaussianRational, Rational, Scalar,
};

/// One coordinate value in a potential file: exact text (`"p/q"`) or a
/// floating number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberText {
    Exact(String),
    Float(f64),
}

impl NumberText {
    fn exact(&self) -> Result<Rational> {
        match self {
            NumberText::Exact(s) => parse_rational(s),
            NumberText::Float(x) => Err(FloqError::Parse(format!(
                "exact mode needs rational strings, got float {x}"
            ))),
        }
    }

    fn float(&self) -> Result<f64> {
        match self {
            NumberText::Exact(s) => Ok(parse_rational(s)?.to_c64().re),
            NumberText::Float(x) => Ok(*x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialValue {
    pub re: NumberText,
    pub im: NumberText,
}

/// Potential file: `{"n": 4, "values": [{"re": "1", "im": "1"}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialFile {
    pub n: usize,
    pub values: Vec<PotentialValue>,
}

impl PotentialFile {
    pub fn from_exact(values: &[GaussianRational]) -> Self {
        Self {
            n: values.len(),
            values: values
                .iter()
                .map(|z| PotentialValue {
                    re: NumberText::Exact(crate::scalar::format_rational(&z.re)),
                    im: NumberText::Exact(crate::scalar::format_rational(&z.im)),
                })
                .collect(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(text)?;
        if f.values.len() != f.n {
            return Err(FloqError::DimensionMismatch {
                expected: f.n,
                got: f.values.len(),
            });
        }
        Ok(f)
    }

    pub fn exact_values(&self) -> Result<Vec<GaussianRational>> {
        self.values
            .iter()
            .map(|v| Ok(GaussianRational::new(v.re.exact()?, v.im.exact()?)))
            .collect()
    }

    pub fn numeric_values(&self) -> Result<Vec<Complex64>> {
        self.values
            .iter()
            .map(|v| Ok(Complex64::new(v.re.float()?, v.im.float()?)))
            .collect()
    }
}

/// Residual values in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residuals {
    /// Exact values of every generator, as `"p/q+r/s*i"`.
    Exact(Vec<String>),
    /// Magnitudes of every generator.
    Numeric(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralReport {
    pub n: usize,
    pub isospectral: bool,
    pub residuals: Residuals,
    pub max_residual: f64,
}

/// Exact check: every `p_k` vanishes at `V`.
pub fn verify_exact(sys: &InvariantSystem<Rational>, point: &[GaussianRational]) -> Result<IsospectralReport> {
    let n = sys.size();
    if point.len() != n {
        return Err(FloqError::DimensionMismatch {
            expected: n,
            got: point.len(),
        });
    }
    let values: Vec<GaussianRational> = sys
        .generators
        .iter()
        .map(|g| g.embed::<GaussianRational>().eval_slice(&pad(sys, point)))
        .collect::<Result<_>>()?;
    let isospectral = values.iter().all(|v| v.re == Rational::from_i64(0) && v.im == Rational::from_i64(0));
    let max_residual = values.iter().map(|v| v.magnitude()).fold(0.0, f64::max);
    Ok(IsospectralReport {
        n: sys.n,
        isospectral,
        residuals: Residuals::Exact(values.iter().map(format_gaussian).collect()),
        max_residual,
    })
}

/// Numeric check: `max |p_k(V)| <= tol`.
pub fn verify_numeric(sys: &InvariantSystem<Rational>, point: &[Complex64], tol: f64) -> Result<IsospectralReport> {
    let n = sys.size();
    if point.len() != n {
        return Err(FloqError::DimensionMismatch {
            expected: n,
            got: point.len(),
        });
    }
    let residuals: Vec<f64> = sys
        .generators
        .iter()
        .map(|g| Ok(g.embed::<Complex64>().eval_slice(&pad(sys, point))?.norm()))
        .collect::<Result<_>>()?;
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(IsospectralReport {
        n: sys.n,
        isospectral: max_residual <= tol,
        residuals: Residuals::Numeric(residuals),
        max_residual,
    })
}

fn pad<C: Scalar>(sys: &InvariantSystem<Rational>, point: &[C]) -> Vec<C> {
    let mut values = vec![C::zero(); sys.vars.len()];
    for (slot, x) in sys.main.iter().zip(point) {
        values[*slot] = x.clone();
    }
    values
}

/// The explicit isospectral potential for even `n = 2m`: `V(1) = 1+i`,
/// `V(2) = 1-i`, `V(m+1) = -1+i`, `V(m+2) = -1-i`, zero elsewhere.
pub fn paired_potential(n: usize) -> Result<Vec<GaussianRational>> {
    if n % 2 != 0 || n < 4 {
        return Err(FloqError::InvalidArgument(format!(
            "the paired potential needs an even period n >= 4, got {n}"
        )));
    }
    let m = n / 2;
    let mut v = vec![crate::scalar::gaussian(0, 0); n];
    v[0] = crate::scalar::gaussian(1, 1);
    v[1] = crate::scalar::gaussian(1, -1);
    v[m] = crate::scalar::gaussian(-1, 1);
    v[m + 1] = crate::scalar::gaussian(-1, -1);
    Ok(v)
}

/// Exact potential embedded as complex doubles.
pub fn to_numeric(point: &[GaussianRational]) -> Vec<Complex64> {
    point.iter().map(|z| z.embed()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::invariants::spectral_invariants;
    use crate::scalar::gaussian;

    #[test]
    fn paired_potential_n4_is_isospectral() {
        let sys = spectral_invariants(4).unwrap();
        let v = paired_potential(4).unwrap();
        assert_eq!(v, vec![gaussian(1, 1), gaussian(1, -1), gaussian(-1, 1), gaussian(-1, -1)]);
        let r = verify_exact(&sys, &v).unwrap();
        assert!(r.isospectral);
        assert_eq!(r.residuals, Residuals::Exact(vec!["0".to_string(); 4]));
    }

    #[test]
    fn zero_and_nonzero() {
        let sys = spectral_invariants(5).unwrap();
        let zero = vec![gaussian(0, 0); 5];
        assert!(verify_exact(&sys, &zero).unwrap().isospectral);
        let sys4 = spectral_invariants(4).unwrap();
        let bump = vec![gaussian(1, 0), gaussian(0, 0), gaussian(0, 0), gaussian(0, 0)];
        let r = verify_exact(&sys4, &bump).unwrap();
        assert!(!r.isospectral);
        let Residuals::Exact(vals) = r.residuals else { panic!() };
        assert_eq!(vals[0], "1");
        assert!(verify_exact(&sys4, &zero).is_err());
    }

    #[test]
    fn numeric_mode() {
        let sys = spectral_invariants(4).unwrap();
        let v = to_numeric(&paired_potential(4).unwrap());
        let r = verify_numeric(&sys, &v, 1e-12).unwrap();
        assert!(r.isospectral);
        let bump = vec![Complex64::new(1e-3, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(!verify_numeric(&sys, &bump, 1e-6).unwrap().isospectral);
    }

    #[test]
    fn potential_file_formats() {
        let text = r#"{"n": 2, "values": [{"re": "1/2", "im": "-1"}, {"re": 0.25, "im": 0}]}"#;
        let f = PotentialFile::parse(text).unwrap();
        assert!(f.exact_values().is_err());
        let num = f.numeric_values().unwrap();
        assert_eq!(num[0], Complex64::new(0.5, -1.0));
        assert_eq!(num[1], Complex64::new(0.25, 0.0));
        let exact = PotentialFile::from_exact(&paired_potential(4).unwrap());
        let back = PotentialFile::parse(&serde_json::to_string(&exact).unwrap()).unwrap();
        assert_eq!(back.exact_values().unwrap(), paired_potential(4).unwrap());
        assert!(PotentialFile::parse(r#"{"n": 3, "values": []}"#).is_err());
    }
}
