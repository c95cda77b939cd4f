//! Reduction of divisors to small representatives of their class.

use thiserror::Error;

use crate::curve::{Curve, CurveFunction, Fiber};
use crate::divisor::{divisor_of_function, Divisor, DivisorError};
use crate::factor::Factorize;
use crate::field::{Field, FieldElem};
use crate::linalg;
use crate::poly::{self, Poly};
use crate::series;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum JacobianError {
    #[error("interpolation requires an effective divisor")]
    NotEffective,
    #[error("no interpolating function found")]
    NoInterpolant,
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

/// The output of [`jacobian_reduce`]: `D + reduced = Σ_i (−2)^i div(chain[i])`
/// with `reduced` effective of degree at most the genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult<E: FieldElem> {
    pub chain: Vec<CurveFunction<E>>,
    pub reduced: Divisor<E>,
}

/// Monomials `x^i y^j` with weighted degree at most `bound`, by increasing
/// weighted degree. Weighted degrees are distinct since `gcd(k, deg S) = 1`.
fn monomials<F: Field>(curve: &Curve<F>, bound: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..curve.k())
        .flat_map(|j| {
            let wy = curve.monomial_wdeg(0, j);
            let imax = if wy > bound { None } else { Some((bound - wy) / curve.k()) };
            imax.into_iter().flat_map(move |m| (0..=m).map(move |i| (i, j)))
        })
        .collect();
    out.sort_by_key(|&(i, j)| curve.monomial_wdeg(i, j));
    out
}

/// The function of least weighted degree, monic in its leading monomial,
/// vanishing on the effective divisor `d`.
pub fn principal_interpolant<F: Field>(
    curve: &Curve<F>,
    d: &Divisor<F::Elem>,
) -> Result<CurveFunction<F::Elem>, JacobianError> {
    if !d.is_nonnegative() {
        return Err(JacobianError::NotEffective);
    }
    let f = curve.field();
    let n = d.height() as usize;
    let monos = monomials(curve, n + curve.genus());
    let imax = monos.iter().map(|&(i, _)| i).max().unwrap_or(0);
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    for t in d.triples() {
        let prec = *t.values.iter().max().unwrap() as usize;
        let fiber = Fiber::new(curve, &t.q, &t.r, prec);
        let xs = fiber.x_powers(imax + 1);
        let deg = t.q.degree().unwrap();
        for (l, &m) in t.values.iter().enumerate().filter(|(_, &m)| m > 0) {
            let ys: Vec<_> = (0..curve.k()).map(|j| fiber.y_power(j, l)).collect();
            let cols: Vec<_> = monos
                .iter()
                .map(|&(i, j)| series::mul(&fiber.m, &xs[i], &ys[j], m as usize))
                .collect();
            for coef in 0..m as usize {
                for c in 0..deg {
                    rows.push(cols.iter().map(|s| s[coef].get(c).cloned().unwrap_or_else(|| f.zero())).collect());
                }
            }
        }
    }
    let (last, v) = linalg::first_dependency(f, &rows, monos.len()).ok_or(JacobianError::NoInterpolant)?;
    let mut coeffs = vec![Poly::zero(); curve.k()];
    for (&(i, j), c) in monos.iter().zip(&v).take(last + 1) {
        if !c.is_zero() {
            coeffs[j] = poly::add(f, &coeffs[j], &poly::monomial(f, c.clone(), i));
        }
    }
    Ok(CurveFunction::new(coeffs, curve.k()))
}

fn reduce_inner<F: Factorize>(
    curve: &Curve<F>,
    d: &Divisor<F::Elem>,
) -> Result<ReductionResult<F::Elem>, JacobianError> {
    if d.is_zero() {
        return Ok(ReductionResult { chain: Vec::new(), reduced: Divisor::zero() });
    }
    let f = curve.field();
    let (d0, d1) = d.negabinary_split();
    let inner = reduce_inner(curve, &d1)?;
    let target = d0.add(f, &inner.reduced.scale(2));
    let g = principal_interpolant(curve, &target)?;
    let reduced = divisor_of_function(curve, &g)?.sub(f, &target);
    debug_assert!(reduced.is_nonnegative());
    let mut chain = vec![g];
    chain.extend(inner.chain);
    Ok(ReductionResult { chain, reduced })
}

/// Reduces `D` through its base −2 digits. The zero divisor yields the chain `[1]`.
pub fn jacobian_reduce<F: Factorize>(
    curve: &Curve<F>,
    d: &Divisor<F::Elem>,
) -> Result<ReductionResult<F::Elem>, JacobianError> {
    let mut out = reduce_inner(curve, d)?;
    if out.chain.is_empty() {
        out.chain.push(curve.one());
    }
    Ok(out)
}

/// Whether `D` is principal, up to divisors supported on ramification points
/// and infinity.
pub fn is_principal<F: Factorize>(curve: &Curve<F>, d: &Divisor<F::Elem>) -> Result<bool, JacobianError> {
    Ok(jacobian_reduce(curve, d)?.reduced.is_zero())
}
