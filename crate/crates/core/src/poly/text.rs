//! Text form: terms in descending grevlex order joined by `" + "`, each
//! written `coeff*x^a*y^b`. Rational coefficients are `p/q` (or `p`);
//! complex coefficients are parenthesised, e.g. `(1/2-3*i)*v1^2`.

use crate::error::{FloqError, Result};
use crate::poly::{ExponentVector, MultiPoly, Vars};
use crate::scalar::{
    format_gaussian, format_rational, parse_gaussian, parse_rational, Complex64, GaussianRational,
    Rational, Scalar,
};

/// Coefficients that have a text form.
pub trait CoeffText: Sized {
    fn to_text(&self) -> String;
    fn from_text(text: &str) -> Result<Self>;
}

impl CoeffText for Rational {
    fn to_text(&self) -> String {
        format_rational(self)
    }
    fn from_text(text: &str) -> Result<Self> {
        parse_rational(text)
    }
}

impl CoeffText for GaussianRational {
    fn to_text(&self) -> String {
        format!("({})", format_gaussian(self))
    }
    fn from_text(text: &str) -> Result<Self> {
        parse_gaussian(text.trim().trim_start_matches('(').trim_end_matches(')'))
    }
}

impl CoeffText for Complex64 {
    fn to_text(&self) -> String {
        if self.im < 0.0 {
            format!("({:?}-{:?}*i)", self.re, -self.im)
        } else {
            format!("({:?}+{:?}*i)", self.re, self.im)
        }
    }
    fn from_text(text: &str) -> Result<Self> {
        let body = text.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || FloqError::Parse(format!("invalid complex {text:?}"));
        let Some(body) = body.strip_suffix("*i") else {
            return Ok(Complex64::new(body.parse().map_err(|_| bad())?, 0.0));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let re: f64 = body[..split].parse().map_err(|_| bad())?;
        let im: f64 = body[split..].trim_start_matches('+').parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    }
}

pub(crate) fn format_poly<C: Scalar + CoeffText>(p: &MultiPoly<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars();
    p.sorted_terms()
        .iter()
        .map(|(e, c)| {
            if e.is_constant() {
                c.to_text()
            } else if c.is_one() {
                monomial_text(vars, e)
            } else {
                format!("{}*{}", c.to_text(), monomial_text(vars, e))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `v1*v2^3`, or `1` for the constant monomial.
pub fn monomial_text(vars: &Vars, e: &ExponentVector) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { vars.name(i).to_string() } else { format!("{}^{x}", vars.name(i)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Parses the text form produced by `Display`.
pub fn parse_poly<C: Scalar + CoeffText>(vars: &Vars, text: &str) -> Result<MultiPoly<C>> {
    let text = text.trim();
    let mut p = MultiPoly::zero(vars);
    if text == "0" {
        return Ok(p);
    }
    for term in text.split(" + ") {
        let term = term.trim();
        let (coeff, rest) = if term.starts_with('(') {
            let close = term
                .find(')')
                .ok_or_else(|| FloqError::Parse(format!("unbalanced term {term:?}")))?;
            let rest = term[close + 1..].trim_start_matches('*');
            (C::from_text(&term[..=close])?, rest)
        } else {
            match term.split_once('*') {
                Some((head, tail)) => match C::from_text(head) {
                    Ok(c) => (c, tail),
                    Err(_) => (C::one(), term),
                },
                None => match C::from_text(term) {
                    Ok(c) => (c, ""),
                    Err(_) => (C::one(), term),
                },
            }
        };
        let mut e = ExponentVector::zeros(vars.len());
        if !rest.is_empty() {
            for factor in rest.split('*') {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, k)) => (
                        n,
                        k.parse::<i16>()
                            .map_err(|_| FloqError::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                e[vars.require(name)?] += exp;
            }
        }
        vars.validate(&e)?;
        p.add_term(e, coeff);
    }
    Ok(p)
}
