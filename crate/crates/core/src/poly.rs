//! Dense univariate polynomials over a [`Field`], stored low degree first.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::field::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: FieldElem> Poly<E> {
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: E) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial at −1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn map<G: FieldElem>(&self, f: impl FnMut(&E) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: FieldElem>(&self, f: impl FnMut(&E) -> Option<G>) -> Option<Poly<G>> {
        self.coeffs
            .iter()
            .map(f)
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }
}

pub fn coeff_or_zero<F: Field>(f: &F, a: &Poly<F::Elem>, i: usize) -> F::Elem {
    a.coeff(i).cloned().unwrap_or_else(|| f.zero())
}

pub fn constant<F: Field>(_f: &F, c: F::Elem) -> Poly<F::Elem> {
    Poly::constant(c)
}

pub fn one<F: Field>(f: &F) -> Poly<F::Elem> {
    Poly::constant(f.one())
}

pub fn x<F: Field>(f: &F) -> Poly<F::Elem> {
    Poly::new(vec![f.zero(), f.one()])
}

pub fn monomial<F: Field>(f: &F, c: F::Elem, d: usize) -> Poly<F::Elem> {
    let mut v = vec![f.zero(); d];
    v.push(c);
    Poly::new(v)
}

pub fn from_ints<F: Field>(f: &F, cs: &[i64]) -> Poly<F::Elem> {
    Poly::new(cs.iter().map(|&c| f.from_i64(c)).collect())
}

pub fn add<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
    let mut v = long.coeffs.clone();
    for (x, y) in v.iter_mut().zip(&short.coeffs) {
        *x = f.add(x, y);
    }
    Poly::new(v)
}

pub fn neg<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    Poly::new(a.coeffs.iter().map(|c| f.neg(c)).collect())
}

pub fn sub<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let v = (0..n)
        .map(|i| match (a.coeff(i), b.coeff(i)) {
            (Some(x), Some(y)) => f.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => f.neg(y),
            (None, None) => unreachable!(),
        })
        .collect();
    Poly::new(v)
}

pub fn mul<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut v = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                v[i + j] = f.add(&v[i + j], &f.mul(x, y));
            }
        }
    }
    Poly::new(v)
}

pub fn scale<F: Field>(f: &F, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
    if c.is_zero() {
        return Poly::zero();
    }
    Poly::new(a.coeffs.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul_xn<F: Field>(f: &F, a: &Poly<F::Elem>, n: usize) -> Poly<F::Elem> {
    if a.is_zero() {
        return Poly::zero();
    }
    let mut v = vec![f.zero(); n];
    v.extend(a.coeffs.iter().cloned());
    Poly::new(v)
}

pub fn pow<F: Field>(f: &F, a: &Poly<F::Elem>, e: usize) -> Poly<F::Elem> {
    let mut acc = one(f);
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

pub fn divrem<F: Field>(
    f: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let db = b.degree().expect("polynomial division by zero");
    if a.deg() < db as isize {
        return (Poly::zero(), a.clone());
    }
    let inv_lc = f.inv(b.lc().unwrap()).expect("leading coefficient invertible");
    let mut r = a.coeffs.clone();
    let mut q = vec![f.zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db];
        if c.is_zero() {
            continue;
        }
        let c = f.mul(c, &inv_lc);
        for (j, bj) in b.coeffs.iter().enumerate().take(db) {
            if !bj.is_zero() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, bj));
            }
        }
        r[i + db] = f.zero();
        q[i] = c;
    }
    r.truncate(db);
    (Poly::new(q), Poly::new(r))
}

pub fn rem<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

pub fn quo<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    divrem(f, a, b).0
}

/// Quotient of an exact division; panics if the remainder is nonzero.
pub fn div_exact<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let (q, r) = divrem(f, a, b);
    assert!(r.is_zero(), "inexact polynomial division");
    q
}

pub fn divides<F: Field>(f: &F, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
    rem(f, a, b).is_zero()
}

pub fn monic<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    match a.lc() {
        None => Poly::zero(),
        Some(c) if f.is_one(c) => a.clone(),
        Some(c) => scale(f, a, &f.inv(c).unwrap()),
    }
}

pub fn is_monic<F: Field>(f: &F, a: &Poly<F::Elem>) -> bool {
    a.lc().is_some_and(|c| f.is_one(c))
}

/// Monic greatest common divisor (zero only when both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let (mut r0, mut r1) = (monic(f, a), monic(f, b));
    while !r1.is_zero() {
        let r = monic(f, &rem(f, &r0, &r1));
        r0 = r1;
        r1 = r;
    }
    r0
}

/// Returns `(g, s, t)` with `s a + t b = g` and `g` monic.
pub fn xgcd<F: Field>(
    f: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one(f), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), one(f));
    while !r1.is_zero() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match r0.lc().cloned() {
        None => (r0, s0, t0),
        Some(c) => {
            let ci = f.inv(&c).unwrap();
            (scale(f, &r0, &ci), scale(f, &s0, &ci), scale(f, &t0, &ci))
        }
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod<F: Field>(f: &F, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
    let (g, s, _) = xgcd(f, &rem(f, a, m), m);
    (g.degree() == Some(0)).then(|| rem(f, &s, m))
}

pub fn lcm<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(f, a, b);
    monic(f, &mul(f, &div_exact(f, a, &g), b))
}

pub fn derivative<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    Poly::new(
        a.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect(),
    )
}

pub fn eval<F: Field>(f: &F, a: &Poly<F::Elem>, t: &F::Elem) -> F::Elem {
    a.coeffs
        .iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, t), c))
}

/// `a(b(x))`.
pub fn compose<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    a.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
        add(f, &mul(f, &acc, b), &Poly::constant(c.clone()))
    })
}

/// `a(x + c)`.
pub fn shift<F: Field>(f: &F, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
    let n = a.coeffs.len();
    let mut v = a.coeffs.clone();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = f.mul(&v[j + 1], c);
            v[j] = f.add(&v[j], &t);
        }
    }
    Poly::new(v)
}

/// `a(c x)`.
pub fn scale_var<F: Field>(f: &F, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
    let mut pw = f.one();
    let mut v = Vec::with_capacity(a.coeffs.len());
    for x in &a.coeffs {
        v.push(f.mul(x, &pw));
        pw = f.mul(&pw, c);
    }
    Poly::new(v)
}

/// `a(x^k)`.
pub fn inflate<F: Field>(f: &F, a: &Poly<F::Elem>, k: usize) -> Poly<F::Elem> {
    if a.is_zero() {
        return Poly::zero();
    }
    let mut v = vec![f.zero(); (a.coeffs.len() - 1) * k + 1];
    for (i, c) in a.coeffs.iter().enumerate() {
        v[i * k] = c.clone();
    }
    Poly::new(v)
}

pub fn pow_mod<F: Field>(
    f: &F,
    a: &Poly<F::Elem>,
    e: &BigUint,
    m: &Poly<F::Elem>,
) -> Poly<F::Elem> {
    let base = rem(f, a, m);
    let mut acc = rem(f, &one(f), m);
    for i in (0..e.bits()).rev() {
        acc = rem(f, &mul(f, &acc, &acc), m);
        if e.bit(i) {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
    }
    acc
}

/// `Res(a, b) = lc(a)^deg b · Π b(roots of a)`, by the Euclidean algorithm.
pub fn resultant<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
    assert!(!(a.is_zero() && b.is_zero()), "resultant of two zero polynomials");
    if a.is_zero() || b.is_zero() {
        return f.zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = f.one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if db == 0 {
            return f.mul(&acc, &f.pow_u64(b.lc().unwrap(), da as u64));
        }
        if da == 0 {
            return f.mul(&acc, &f.pow_u64(a.lc().unwrap(), db as u64));
        }
        // Res(a, b) = (−1)^(da db) Res(b, a) and Res(b, a) = lc(b)^(da − dr) Res(b, a mod b)
        let r = rem(f, &a, &b);
        if r.is_zero() {
            return f.zero();
        }
        let dr = r.degree().unwrap();
        let mut factor = f.pow_u64(b.lc().unwrap(), (da - dr) as u64);
        if (da * db) % 2 == 1 {
            factor = f.neg(&factor);
        }
        acc = f.mul(&acc, &factor);
        a = b;
        b = r;
    }
}

/// Squarefree decomposition: pairs `(g_i, i)` with `a = lc · Π g_i^i`, each `g_i` monic squarefree.
pub fn squarefree_decomposition<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    assert!(!a.is_zero(), "squarefree decomposition of zero");
    let a = monic(f, a);
    if f.characteristic() == 0 {
        yun(f, &a)
    } else {
        squarefree_char_p(f, &a)
    }
}

fn yun<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out = Vec::new();
    if a.is_constant() {
        return out;
    }
    let da = derivative(f, a);
    let g = gcd(f, a, &da);
    let mut b = div_exact(f, a, &g);
    let mut c = div_exact(f, &da, &g);
    let mut d = sub(f, &c, &derivative(f, &b));
    let mut i = 1;
    while !b.is_constant() {
        let gi = gcd(f, &b, &d);
        b = div_exact(f, &b, &gi);
        c = div_exact(f, &d, &gi);
        d = sub(f, &c, &derivative(f, &b));
        if !gi.is_constant() {
            out.push((monic(f, &gi), i));
        }
        i += 1;
    }
    out
}

fn squarefree_char_p<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let p = f.characteristic() as usize;
    let mut out: Vec<(Poly<F::Elem>, usize)> = Vec::new();
    if a.is_constant() {
        return out;
    }
    let da = derivative(f, a);
    if da.is_zero() {
        // a(x) = b(x)^p
        let b = Poly::new(a.coeffs.iter().step_by(p).map(|c| f.pth_root(c)).collect());
        return squarefree_char_p(f, &b)
            .into_iter()
            .map(|(g, m)| (g, m * p))
            .collect();
    }
    let mut c = gcd(f, a, &da);
    let mut w = div_exact(f, a, &c);
    let mut i = 1;
    while !w.is_constant() {
        let y = gcd(f, &w, &c);
        let z = div_exact(f, &w, &y);
        if !z.is_constant() {
            out.push((monic(f, &z), i));
        }
        i += 1;
        w = y;
        c = div_exact(f, &c, &w);
    }
    if !c.is_constant() {
        let b = Poly::new(c.coeffs.iter().step_by(p).map(|x| f.pth_root(x)).collect());
        for (g, m) in squarefree_char_p(f, &b) {
            out.push((g, m * p));
        }
    }
    merge_multiplicities(f, out)
}

fn merge_multiplicities<F: Field>(
    f: &F,
    items: Vec<(Poly<F::Elem>, usize)>,
) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out: Vec<(Poly<F::Elem>, usize)> = Vec::new();
    for (g, m) in items {
        match out.iter_mut().find(|(_, n)| *n == m) {
            Some(slot) => slot.0 = mul(f, &slot.0, &g),
            None => out.push((g, m)),
        }
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

/// Product of the distinct monic irreducible factors.
pub fn squarefree_part<F: Field>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    assert!(!a.is_zero(), "squarefree part of zero");
    if f.characteristic() == 0 {
        let g = gcd(f, a, &derivative(f, a));
        return monic(f, &div_exact(f, a, &g));
    }
    squarefree_decomposition(f, a)
        .into_iter()
        .fold(one(f), |acc, (g, _)| mul(f, &acc, &g))
}

pub fn is_squarefree<F: Field>(f: &F, a: &Poly<F::Elem>) -> bool {
    let da = derivative(f, a);
    !da.is_zero() && gcd(f, a, &da).is_constant() || a.is_constant()
}

/// Degree first, then coefficients from the constant term upward.
pub fn cmp_poly<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| f.cmp_elem(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate<F: Field>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Poly<F::Elem> {
    let n = xs.len();
    let mut dd: Vec<F::Elem> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&dd[i], &dd[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            dd[i] = f.div(&num, &den);
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::new(vec![f.neg(&xs[i]), f.one()]);
        acc = add(f, &mul(f, &acc, &lin), &Poly::constant(dd[i].clone()));
    }
    acc
}

pub fn fmt_poly<F: Field>(f: &F, a: &Poly<F::Elem>, var: &str) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = a
        .coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let cs = f.fmt_elem(c);
            let cs = if cs.contains(['+', ' ']) || cs[1..].contains('-') {
                format!("({cs})")
            } else {
                cs
            };
            match i {
                0 => cs,
                _ => {
                    let v = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if f.is_one(c) {
                        v
                    } else if cs == "-1" {
                        format!("-{v}")
                    } else {
                        format!("{cs}*{v}")
                    }
                }
            }
        })
        .collect();
    terms.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, QQ};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn resultant_examples() {
        let f = QQ::new();
        let a = from_ints(&f, &[-2, 1]);
        let b = from_ints(&f, &[1, 0, 1]);
        assert_eq!(resultant(&f, &a, &b), q(5));
        let a = from_ints(&f, &[-1, 0, 1]);
        let b = from_ints(&f, &[-4, 0, 1]);
        assert_eq!(resultant(&f, &a, &b), q(9));
    }

    #[test]
    fn squarefree_examples() {
        let f = QQ::new();
        let x2 = from_ints(&f, &[0, 0, 1]);
        assert_eq!(squarefree_part(&f, &x2), from_ints(&f, &[0, 1]));
        let a = mul(
            &f,
            &pow(&f, &from_ints(&f, &[-1, 1]), 3),
            &from_ints(&f, &[2, 1]),
        );
        assert_eq!(squarefree_part(&f, &a), from_ints(&f, &[-2, 1, 1]));
        let dec = squarefree_decomposition(&f, &a);
        assert_eq!(dec, vec![(from_ints(&f, &[2, 1]), 1), (from_ints(&f, &[-1, 1]), 3)]);
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f = Fp::new(3);
        // (x+1)^3 (x+2)^2 x
        let a = mul(
            &f,
            &mul(&f, &pow(&f, &from_ints(&f, &[1, 1]), 3), &pow(&f, &from_ints(&f, &[2, 1]), 2)),
            &x(&f),
        );
        let dec = squarefree_decomposition(&f, &a);
        assert_eq!(
            dec,
            vec![
                (x(&f), 1),
                (from_ints(&f, &[2, 1]), 2),
                (from_ints(&f, &[1, 1]), 3)
            ]
        );
    }

    #[test]
    fn shift_and_compose_agree() {
        let f = QQ::new();
        let a = from_ints(&f, &[3, -1, 4, 2]);
        let c = q(5);
        let lin = Poly::new(vec![c.clone(), q(1)]);
        assert_eq!(shift(&f, &a, &c), compose(&f, &a, &lin));
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = QQ::new();
        let a = from_ints(&f, &[7, 0, -3, 1]);
        let xs: Vec<_> = (0..4).map(q).collect();
        let ys: Vec<_> = xs.iter().map(|t| eval(&f, &a, t)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), a);
    }
}
