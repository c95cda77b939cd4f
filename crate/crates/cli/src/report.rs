//! JSON encodings: polynomials are coefficient strings from the leading term down.

use serde_json::{json, Value};
use superint::curve::CurveFunction;
use superint::divisor::{Divisor, Triple};
use superint::field::{Ext, Field, NumberField};
use superint::integrate::{Integral, RatFun};
use superint::poly::{self, fmt_poly, Poly};
use superint::torsion::TorsionCertificate;

pub fn elem<F: Field>(f: &F, a: &F::Elem) -> Value {
    Value::String(f.fmt_elem(a))
}

pub fn poly<F: Field>(f: &F, a: &Poly<F::Elem>) -> Value {
    if a.is_zero() {
        return json!(["0"]);
    }
    Value::Array(a.coeffs().iter().rev().map(|c| elem(f, c)).collect())
}

pub fn ratfun<F: Field>(f: &F, a: &RatFun<F::Elem>) -> Value {
    json!({ "num": poly(f, a.num()), "den": poly(f, a.den()) })
}

/// Coefficients of `y^0, y^1, …`.
pub fn function<F: Field>(f: &F, a: &CurveFunction<F::Elem>) -> Value {
    Value::Array(a.coeffs().iter().map(|c| poly(f, c)).collect())
}

/// The ordinate `ξ^s R mod Q` and values rotated so that `v_0` is the first
/// nonzero value; the same points with the same multiplicities.
pub fn leading_ordinate<F: Field>(f: &F, xi: &F::Elem, t: &Triple<F::Elem>) -> (Poly<F::Elem>, Vec<i64>) {
    let s = t.values.iter().position(|&v| v != 0).unwrap_or(0);
    let r = poly::rem(f, &poly::scale(f, &t.r, &f.pow_u64(xi, s as u64)), &t.q);
    let mut values = t.values.clone();
    values.rotate_left(s);
    (r, values)
}

/// `[[Q], [R], [v_0, …, v_{k−1}]]` per triple.
pub fn divisor<F: Field>(f: &F, xi: &F::Elem, d: &Divisor<F::Elem>) -> Value {
    let triples = d.triples().iter().map(|t| {
        let (r, values) = leading_ordinate(f, xi, t);
        json!([poly(f, &t.q), poly(f, &r), values])
    });
    Value::Array(triples.collect())
}

pub fn fmt_divisor<F: Field>(f: &F, xi: &F::Elem, d: &Divisor<F::Elem>) -> String {
    if d.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = d
        .triples()
        .iter()
        .map(|t| {
            let (r, values) = leading_ordinate(f, xi, t);
            format!("[{}, {}, {values:?}]", fmt_poly(f, &t.q, "x"), fmt_poly(f, &r, "x"))
        })
        .collect();
    parts.join(" + ")
}

pub fn certificate(c: &TorsionCertificate) -> Value {
    json!({ "N": c.n, "primes": c.primes, "orders": c.orders })
}

pub fn integral<F: Field>(f: &F, int: &Integral<F::Elem>) -> Value {
    json!({ "P": poly(f, &int.p), "Q": poly(f, &int.q), "S": poly(f, &int.s), "k": int.k })
}

/// The residue extension `B[name]/(modulus)`.
pub fn extension<B: NumberField>(w: &Ext<B>) -> Value {
    json!({ "name": w.name(), "modulus": poly(w.base(), w.modulus()) })
}
