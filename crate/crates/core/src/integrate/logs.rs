//! Derivatives of `L_S(f) = Σ_i ξ^i ln f(x, ξ^i S^{1/k})`.

use crate::curve::{Curve, CurveFunction};
use crate::field::Field;
use crate::poly;

use super::ratfun::{self, RatFun};

/// `c` with `∂x L_S(f) = c / S^{1/k}`.
pub fn ls_derivative<F: Field>(curve: &Curve<F>, g: &CurveFunction<F::Elem>) -> Option<RatFun<F::Elem>> {
    if g.is_zero() {
        return None;
    }
    let f = curve.field();
    let k = curve.k();
    let s = curve.s();
    let ds = poly::derivative(f, s);
    // S ∂x g, using ∂x y = S' y / (k S)
    let sdg = CurveFunction::new(
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(j, q)| {
                let jk = f.div(&f.from_i64(j as i64), &f.from_i64(k as i64));
                poly::add(f, &poly::mul(f, s, &poly::derivative(f, q)), &poly::scale(f, &poly::mul(f, &ds, q), &jk))
            })
            .collect(),
        k,
    );
    let conj: Vec<_> = (0..k as i64).map(|i| curve.conjugate(g, i)).collect();
    let mut acc = CurveFunction::new(Vec::new(), k);
    for i in 0..k {
        let term = (0..k)
            .filter(|&l| l != i)
            .fold(curve.conjugate(&sdg, i as i64), |t, l| curve.mul(&t, &conj[l]));
        let term = term.map(|c| f.mul(c, curve.xi_pow(i as i64)));
        acc = CurveFunction::new(
            (0..k).map(|j| poly::add(f, acc.coeff(j), term.coeff(j))).collect(),
            k,
        );
    }
    debug_assert!((0..k - 1).all(|j| acc.coeff(j).is_zero()));
    // A y^{k−1} / (S N) = A / (N y)
    Some(ratfun::new(f, acc.coeff(k - 1).clone(), curve.norm(g)))
}
