//! Rational functions in x, kept with monic denominator in lowest terms.

use crate::field::{Field, FieldElem};
use crate::poly::{self, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun<E: FieldElem> {
    num: Poly<E>,
    den: Poly<E>,
}

impl<E: FieldElem> RatFun<E> {
    pub fn num(&self) -> &Poly<E> {
        &self.num
    }

    pub fn den(&self) -> &Poly<E> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn map<G: FieldElem>(&self, mut f: impl FnMut(&E) -> G) -> RatFun<G> {
        RatFun { num: self.num.map(&mut f), den: self.den.map(&mut f) }
    }
}

pub fn new<F: Field>(f: &F, num: Poly<F::Elem>, den: Poly<F::Elem>) -> RatFun<F::Elem> {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return RatFun { num, den: poly::one(f) };
    }
    let g = poly::gcd(f, &num, &den);
    let (num, den) = (poly::quo(f, &num, &g), poly::quo(f, &den, &g));
    let lc = f.inv(den.lc().unwrap()).unwrap();
    RatFun { num: poly::scale(f, &num, &lc), den: poly::scale(f, &den, &lc) }
}

pub fn from_poly<F: Field>(f: &F, a: Poly<F::Elem>) -> RatFun<F::Elem> {
    RatFun { num: a, den: poly::one(f) }
}

pub fn zero<F: Field>(f: &F) -> RatFun<F::Elem> {
    from_poly(f, Poly::zero())
}

pub fn add<F: Field>(f: &F, a: &RatFun<F::Elem>, b: &RatFun<F::Elem>) -> RatFun<F::Elem> {
    let num = poly::add(f, &poly::mul(f, &a.num, &b.den), &poly::mul(f, &b.num, &a.den));
    new(f, num, poly::mul(f, &a.den, &b.den))
}

pub fn neg<F: Field>(f: &F, a: &RatFun<F::Elem>) -> RatFun<F::Elem> {
    RatFun { num: poly::neg(f, &a.num), den: a.den.clone() }
}

pub fn sub<F: Field>(f: &F, a: &RatFun<F::Elem>, b: &RatFun<F::Elem>) -> RatFun<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn mul<F: Field>(f: &F, a: &RatFun<F::Elem>, b: &RatFun<F::Elem>) -> RatFun<F::Elem> {
    new(f, poly::mul(f, &a.num, &b.num), poly::mul(f, &a.den, &b.den))
}

pub fn scale<F: Field>(f: &F, a: &RatFun<F::Elem>, c: &F::Elem) -> RatFun<F::Elem> {
    new(f, poly::scale(f, &a.num, c), a.den.clone())
}

pub fn derivative<F: Field>(f: &F, a: &RatFun<F::Elem>) -> RatFun<F::Elem> {
    let num = poly::sub(
        f,
        &poly::mul(f, &poly::derivative(f, &a.num), &a.den),
        &poly::mul(f, &a.num, &poly::derivative(f, &a.den)),
    );
    new(f, num, poly::mul(f, &a.den, &a.den))
}

/// `∂x(a / S^{1/k}) = b / S^{1/k}`; returns `b`.
pub fn derivative_over_root<F: Field>(f: &F, a: &RatFun<F::Elem>, s: &Poly<F::Elem>, k: usize) -> RatFun<F::Elem> {
    let ds = new(f, poly::derivative(f, s), poly::scale(f, s, &f.from_i64(k as i64)));
    sub(f, &derivative(f, a), &mul(f, a, &ds))
}

/// The value at `t`, or `None` at a pole.
pub fn eval<F: Field>(f: &F, a: &RatFun<F::Elem>, t: &F::Elem) -> Option<F::Elem> {
    let d = poly::eval(f, &a.den, t);
    f.inv(&d).map(|di| f.mul(&poly::eval(f, &a.num, t), &di))
}

pub fn fmt_ratfun<F: Field>(f: &F, a: &RatFun<F::Elem>, var: &str) -> String {
    let num = poly::fmt_poly(f, &a.num, var);
    if a.is_polynomial() {
        num
    } else {
        format!("({num})/({})", poly::fmt_poly(f, &a.den, var))
    }
}
