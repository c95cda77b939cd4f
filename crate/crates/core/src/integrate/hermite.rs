//! Hermite reduction to an integral with simple poles and none at infinity.

use crate::field::Field;
use crate::linalg;
use crate::poly::{self, Poly};

use super::ratfun::{self, RatFun};
use super::Integral;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteResult<E: crate::field::FieldElem> {
    /// The algebraic part is `g / S^{1/k}`.
    pub g: RatFun<E>,
    pub reduced: Integral<E>,
}

/// `∫ P/(Q S^{1/k}) = G/S^{1/k} + ∫ H/(Q̂ S^{1/k})` with the remainder reduced,
/// or `None` when no such `G = T/Q̃` exists.
pub fn hermite_reduction<F: Field>(f: &F, int: &Integral<F::Elem>) -> Option<HermiteResult<F::Elem>> {
    let Integral { p, q, s, k } = int;
    let k = *k;
    let sfq = poly::squarefree_part(f, q);
    let qt = poly::quo(f, q, &sfq);
    let qh = poly::monic(f, &poly::quo(f, &sfq, &poly::gcd(f, &sfq, s)));
    let deg_s = s.deg();
    let tdeg = (p.deg() - sfq.deg() + 1).max(qt.deg() + deg_s / k as isize);
    let l = poly::lcm(f, &poly::lcm(f, q, &poly::mul(f, &qt, &qt)), &poly::mul(f, s, &qt));
    let l_q = poly::quo(f, &l, q);
    let l_qt = poly::quo(f, &l, &qt);
    let l_qt2 = poly::quo(f, &l, &poly::mul(f, &qt, &qt));
    let l_sqt = poly::quo(f, &l, &poly::mul(f, &poly::scale(f, s, &f.from_i64(k as i64)), &qt));
    let (dqt, ds) = (poly::derivative(f, &qt), poly::derivative(f, s));
    let shift = poly::add(f, &poly::mul(f, &dqt, &l_qt2), &poly::mul(f, &ds, &l_sqt));
    // Q̂ N(T) where N(T)/L is the remainder integrand times S^{1/k}
    let numer = |t: &Poly<F::Elem>, with_p: bool| {
        let mut n = poly::sub(f, &poly::mul(f, t, &shift), &poly::mul(f, &poly::derivative(f, t), &l_qt));
        if with_p {
            n = poly::add(f, &n, &poly::mul(f, p, &l_q));
        }
        poly::mul(f, &qh, &n)
    };
    // H allowed iff k deg H < k deg Q̂ + deg S − k
    let bound = k as isize * qh.deg() + deg_s - k as isize;
    let hmin = if bound <= 0 { 0 } else { ((bound + k as isize - 1) / k as isize) as usize };
    let conditions = |n: &Poly<F::Elem>| {
        let (quo, rem) = poly::divrem(f, n, &l);
        (rem, quo)
    };
    let basis: Vec<Poly<F::Elem>> = (0..=tdeg.max(-1)).map(|i| poly::monomial(f, f.one(), i as usize)).collect();
    let cols: Vec<_> = basis.iter().map(|t| conditions(&numer(t, false))).collect();
    let rhs = conditions(&numer(&Poly::zero(), true));
    let quo_len = cols.iter().chain([&rhs]).map(|(_, q)| q.coeffs().len()).max().unwrap_or(0).max(hmin);
    let rem_len = l.degree().unwrap_or(0);
    let entry = |c: &(Poly<F::Elem>, Poly<F::Elem>), row: usize| {
        if row < rem_len {
            poly::coeff_or_zero(f, &c.0, row)
        } else {
            poly::coeff_or_zero(f, &c.1, hmin + row - rem_len)
        }
    };
    let rows = rem_len + quo_len.saturating_sub(hmin);
    let a: linalg::Matrix<F::Elem> = (0..rows).map(|r| cols.iter().map(|c| entry(c, r)).collect()).collect();
    let b: Vec<F::Elem> = (0..rows).map(|r| f.neg(&entry(&rhs, r))).collect();
    let t = if cols.is_empty() {
        b.iter().all(|x| crate::field::FieldElem::is_zero(x)).then(Vec::new)?
    } else {
        linalg::solve(f, &a, &b)?
    };
    let t = Poly::new(t);
    let h = poly::quo(f, &numer(&t, true), &l);
    Some(HermiteResult { g: ratfun::new(f, t, qt), reduced: Integral { p: h, q: qh, s: s.clone(), k } })
}
