//! Integrand specifications and their normalization to `∫ P/(Q S^{1/k}) dx`.

use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use superint::factor::{self, Factorize};
use superint::field::{Cyclotomic, Field, NumberField};
use superint::integrate::{ratfun, Integral};
use superint::poly::{self, Poly};

use crate::error::CliError;
use crate::parse::{self, Expr, Scope};

/// The on-disk form: either `text`, or `P`, `Q`, `S` and `k`.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Minimal polynomial of an algebraic constant, e.g. `a^2-5`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

#[derive(Clone, Debug)]
enum Source {
    Text(Expr),
    Structured { p: Expr, q: Expr, s: Expr, k: usize },
}

#[derive(Clone, Debug)]
pub struct IntegrandSpec {
    source: Source,
    pub field: Option<String>,
}

impl IntegrandSpec {
    pub fn text(text: &str, field: Option<String>) -> Result<Self, CliError> {
        Ok(Self { source: Source::Text(parse::parse(text)?), field })
    }

    pub fn from_file(spec: SpecFile) -> Result<Self, CliError> {
        let source = match spec {
            SpecFile { text: Some(t), p: None, q: None, s: None, k: None, .. } => Source::Text(parse::parse(&t)?),
            SpecFile { text: None, p: Some(p), q, s: Some(s), k: Some(k), .. } => Source::Structured {
                p: parse::parse(&p)?,
                q: parse::parse(q.as_deref().unwrap_or("1"))?,
                s: parse::parse(&s)?,
                k,
            },
            _ => return Err(CliError::Input("a spec needs either `text`, or `P`, `S` and `k` (with optional `Q`)".into())),
        };
        Ok(Self { source, field: spec.field })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let raw = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let spec: SpecFile = serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_file(spec)
    }

    /// The radical index, read off the expression when given as text.
    pub fn k(&self) -> Result<usize, CliError> {
        let k = match &self.source {
            Source::Structured { k, .. } => *k,
            Source::Text(e) => {
                let mut ks = e.root_indices();
                ks.sort_unstable();
                ks.dedup();
                match ks.as_slice() {
                    [k] => *k,
                    [] => return Err(CliError::Shape("the integrand has no radical `(S)^(1/k)`".into())),
                    _ => return Err(CliError::Shape("the integrand must contain a single radical".into())),
                }
            }
        };
        if k < 2 {
            return Err(CliError::TechnicalCondition(format!("k = {k} must be at least 2")));
        }
        Ok(k)
    }

    /// The normalized integral over `b`, with `consts` naming field elements.
    pub fn integral<B: NumberField>(&self, scope: &Scope<B>) -> Result<Integral<B::Elem>, CliError> {
        let f = scope.field;
        let (p, q, s, k) = match &self.source {
            Source::Structured { p, q, s, k } => (scope.poly(p)?, scope.poly(q)?, scope.poly(s)?, *k),
            Source::Text(e) => {
                let v = scope.eval(e)?;
                match v.root {
                    Some((s, k, -1)) => (v.rat.num().clone(), v.rat.den().clone(), s, k),
                    _ => return Err(CliError::Shape("expected an integrand of the form P/(Q (S)^(1/k))".into())),
                }
            }
        };
        if q.is_zero() {
            return Err(CliError::Shape("Q is zero".into()));
        }
        normalize(f, p, q, s, k)
    }
}

/// Moves k-th powers out of the radicand and checks the technical condition.
pub fn normalize<F: Field>(f: &F, p: Poly<F::Elem>, q: Poly<F::Elem>, s: Poly<F::Elem>, k: usize) -> Result<Integral<F::Elem>, CliError> {
    if s.is_zero() {
        return Err(CliError::TechnicalCondition("S is zero".into()));
    }
    let mut q = q;
    let mut radicand = Poly::constant(s.lc().unwrap().clone());
    for (g, m) in poly::squarefree_decomposition(f, &s) {
        q = poly::mul(f, &q, &poly::pow(f, &g, m / k));
        match m % k {
            0 => {}
            1 => radicand = poly::mul(f, &radicand, &g),
            r => {
                return Err(CliError::TechnicalCondition(format!(
                    "S has a root of multiplicity {m}, leaving multiplicity {r} after removing k-th powers; roots of S must be simple"
                )))
            }
        }
    }
    let deg = radicand.degree().unwrap_or(0);
    if deg == 0 {
        return Err(CliError::TechnicalCondition("S is constant after removing k-th powers".into()));
    }
    if deg.gcd(&k) != 1 {
        return Err(CliError::TechnicalCondition(format!("deg S = {deg} is not coprime with k = {k}")));
    }
    let r = ratfun::new(f, p, q);
    Ok(Integral { p: r.num().clone(), q: r.den().clone(), s: radicand, k })
}

/// The generator name and monic minimal polynomial of a `--field` declaration.
pub fn field_modulus<F: Factorize>(
    f: &F,
    text: &str,
    consts: &[(String, F::Elem)],
    min_deg: isize,
) -> Result<(String, Poly<F::Elem>), CliError> {
    let e = parse::parse(text)?;
    let free: Vec<String> = e.identifiers().into_iter().filter(|s| !consts.iter().any(|(n, _)| n == s)).collect();
    let [name] = free.as_slice() else {
        return Err(CliError::Field(format!("`{text}` must be a polynomial in exactly one new variable")));
    };
    if name == "x" {
        return Err(CliError::Field("`x` is reserved for the integration variable".into()));
    }
    let m = Scope { field: f, var: name, consts: consts.to_vec() }.poly(&e)?;
    if m.deg() < min_deg {
        return Err(CliError::Field(format!("`{text}` must have degree at least {min_deg}")));
    }
    if !factor::is_irreducible(f, &m) {
        return Err(CliError::Field(format!("`{text}` is reducible")));
    }
    Ok((name.clone(), poly::monic(f, &m)))
}

pub fn cyclotomic_consts(c: &Cyclotomic) -> Vec<(String, Vec<num_rational::BigRational>)> {
    vec![("xi".into(), c.xi())]
}
