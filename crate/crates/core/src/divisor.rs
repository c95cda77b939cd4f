//! Divisors on superelliptic curves, modulo divisors supported on ramification
//! points and infinity.
//!
//! A triple `(Q, R, [v_0, …, v_{k−1}])` carries the value `v_l` at every point
//! `(x̄, ξ^l R(x̄))` with `Q(x̄) = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::curve::{kth_root_in_quotient, Curve, CurveFunction, Fiber};
use crate::factor::{self, Factorize};
use crate::field::{is_prime, Cyclotomic, Ext, Field, FieldElem, NumberField};
use crate::poly::{self, Poly};
use crate::series;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DivisorError {
    #[error("abscissa polynomial must have positive degree")]
    ConstantAbscissa,
    #[error("value vector has length {got}, expected {k}")]
    WrongLength { got: usize, k: usize },
    #[error("ordinate is not a k-th root of S modulo the abscissa polynomial")]
    NotOrdinate,
    #[error("abscissa polynomial shares a root with S")]
    Ramified,
    #[error("values are not equivariant under the branch shift")]
    NonEquivariant,
    #[error("untwisted value {0} is not an integer")]
    NonIntegral(String),
    #[error("residue {0} is not in Z[xi]")]
    ResidueNotIntegral(String),
    #[error("the zero function has no divisor")]
    ZeroFunction,
    #[error("a fiber has no rational ordinate and k = {0} is composite")]
    CompositeFiber(usize),
    #[error("vanishing orders do not add up to the norm multiplicity")]
    OrderMismatch,
    #[error("value overflow")]
    Overflow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple<E: FieldElem> {
    pub q: Poly<E>,
    pub r: Poly<E>,
    pub values: Vec<i64>,
}

/// An integer divisor in canonical form: monic pairwise distinct abscissa
/// polynomials sorted by [`poly::cmp_poly`], ordinates normalized by
/// [`Curve::canonical_ordinate`], no all-zero triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor<E: FieldElem> {
    triples: Vec<Triple<E>>,
}

impl<E: FieldElem> Default for Divisor<E> {
    fn default() -> Self {
        Self { triples: Vec::new() }
    }
}

impl<E: FieldElem> Divisor<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[Triple<E>] {
        &self.triples
    }

    /// `Σ |D(z)|` over all points.
    pub fn height(&self) -> u64 {
        self.triples
            .iter()
            .map(|t| t.q.degree().unwrap() as u64 * t.values.iter().map(|v| v.unsigned_abs()).sum::<u64>())
            .sum()
    }

    /// `Σ D(z)` over all points.
    pub fn degree(&self) -> i64 {
        self.triples
            .iter()
            .map(|t| t.q.degree().unwrap() as i64 * t.values.iter().sum::<i64>())
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.triples.iter().all(|t| t.values.iter().all(|&v| v >= 0))
    }

    /// Number of points in the support.
    pub fn support_size(&self) -> usize {
        self.triples
            .iter()
            .map(|t| t.q.degree().unwrap() * t.values.iter().filter(|&&v| v != 0).count())
            .sum()
    }

    pub fn map_values(&self, mut g: impl FnMut(i64) -> i64) -> Self {
        let triples = self
            .triples
            .iter()
            .map(|t| Triple { q: t.q.clone(), r: t.r.clone(), values: t.values.iter().map(|&v| g(v)).collect() })
            .filter(|t| t.values.iter().any(|&v| v != 0))
            .collect();
        Self { triples }
    }

    pub fn scale(&self, n: i64) -> Self {
        self.map_values(|v| v.checked_mul(n).expect("divisor value overflow"))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// `D = D0 − 2 D1` with `D0` valued in {0, 1}.
    pub fn negabinary_split(&self) -> (Self, Self) {
        let d0 = self.map_values(|v| v.rem_euclid(2));
        let d1 = self.map_values(|v| (v.rem_euclid(2) - v) / 2);
        (d0, d1)
    }

    /// Sum of canonical divisors.
    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut triples = self.triples.clone();
        for t in &other.triples {
            match triples.iter_mut().find(|s| s.q == t.q) {
                Some(s) => {
                    debug_assert_eq!(s.r, t.r);
                    for (a, b) in s.values.iter_mut().zip(&t.values) {
                        *a = a.checked_add(*b).expect("divisor value overflow");
                    }
                }
                None => triples.push(t.clone()),
            }
        }
        triples.retain(|t| t.values.iter().any(|&v| v != 0));
        triples.sort_by(|a, b| poly::cmp_poly(f, &a.q, &b.q));
        Self { triples }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg())
    }
}

/// `d ↦ (d mod 2, (d mod 2 − d)/2)` iterated: the base −2 digits of `n`.
pub fn negabinary_digits(n: i64) -> Vec<u8> {
    let mut digits = Vec::new();
    let mut n = n;
    while n != 0 {
        let d = n.rem_euclid(2);
        digits.push(d as u8);
        n = (d - n) / 2;
    }
    digits
}

impl<F: Field> Curve<F> {
    /// Canonical divisor from arbitrary triples over irreducible abscissas.
    pub fn divisor(&self, triples: Vec<Triple<F::Elem>>) -> Result<Divisor<F::Elem>, DivisorError> {
        let f = self.field();
        let mut out = Divisor::zero();
        for t in triples {
            if t.values.len() != self.k() {
                return Err(DivisorError::WrongLength { got: t.values.len(), k: self.k() });
            }
            if t.q.deg() < 1 {
                return Err(DivisorError::ConstantAbscissa);
            }
            let q = poly::monic(f, &t.q);
            if poly::rem(f, self.s(), &q).is_zero() || !poly::gcd(f, self.s(), &q).is_constant() {
                return Err(DivisorError::Ramified);
            }
            let r = poly::rem(f, &t.r, &q);
            if !self.is_ordinate(&q, &r) {
                return Err(DivisorError::NotOrdinate);
            }
            let (r, s) = self.canonical_ordinate(&q, &r);
            let values = rotate(&t.values, s);
            if values.iter().all(|&v| v == 0) {
                continue;
            }
            out = out.add(f, &Divisor { triples: vec![Triple { q, r, values }] });
        }
        Ok(out)
    }
}

/// Values attached to the ordinate `ξ^s R` when `values` belong to `R`.
fn rotate<T: Clone>(values: &[T], s: usize) -> Vec<T> {
    let k = values.len();
    (0..k).map(|l| values[(l + s) % k].clone()).collect()
}

/// The zero divisor of `f` on unramified affine points. Fibers over which `f`
/// vanishes without a rational ordinate are whole fibers, hence principal, and
/// are dropped when k is prime.
pub fn divisor_of_function<F: Factorize>(
    curve: &Curve<F>,
    g: &CurveFunction<F::Elem>,
) -> Result<Divisor<F::Elem>, DivisorError> {
    if g.is_zero() {
        return Err(DivisorError::ZeroFunction);
    }
    let f = curve.field();
    let norm = curve.norm(g);
    if norm.is_constant() {
        return Ok(Divisor::zero());
    }
    let mut triples = Vec::new();
    for (q, m) in factor::factor(f, &norm).factors {
        if poly::rem(f, curve.s(), &q).is_zero() {
            continue;
        }
        let Some(r) = kth_root_in_quotient(curve, &q) else {
            if is_prime(curve.k() as u64) {
                continue;
            }
            return Err(DivisorError::CompositeFiber(curve.k()));
        };
        let fiber = Fiber::new(curve, &q, &r, m + 1);
        let values: Vec<i64> = (0..curve.k())
            .map(|l| series::order(&fiber.expand(g, l)).unwrap_or(m + 1) as i64)
            .collect();
        if values.iter().sum::<i64>() != m as i64 {
            return Err(DivisorError::OrderMismatch);
        }
        triples.push(Triple { q, r, values });
    }
    curve.divisor(triples)
}

/// A `Z[ξ]`-valued divisor with `D(z_{l+1}) = ξ^{-1} D(z_l)` along each fiber,
/// where `z_l = (x̄, ξ^l R(x̄))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperellipticDivisor<E: FieldElem> {
    pub triples: Vec<(Poly<E>, Poly<E>, Vec<Vec<BigRational>>)>,
}

impl<E: FieldElem> SuperellipticDivisor<E> {
    /// The equivariant divisor with value `v0` at `(x̄, R(x̄))` on each fiber.
    pub fn from_base_values(cyc: &Cyclotomic, fibers: Vec<(Poly<E>, Poly<E>, Vec<BigRational>)>) -> Self {
        let k = cyc.k();
        let triples = fibers
            .into_iter()
            .map(|(q, r, v0)| {
                let values = (0..k).map(|l| cyc.mul(&v0, &cyc.xi_pow(-(l as i64)))).collect();
                (q, r, values)
            })
            .collect();
        Self { triples }
    }

    pub fn is_equivariant(&self, cyc: &Cyclotomic) -> bool {
        let xinv = cyc.xi_pow(-1);
        self.triples.iter().all(|(_, _, vs)| {
            vs.len() == cyc.k() && (0..vs.len()).all(|l| vs[(l + 1) % vs.len()] == cyc.mul(&vs[l], &xinv))
        })
    }

    /// The integer divisor `D̃` with `k D(z) = Σ_i ξ^i D̃(σ^i z)` and
    /// `Σ_i D̃(σ^i z) ξ^{ij} = 0` whenever `gcd(j, k) ≠ 1`. Its value at `z_l`
    /// is `Tr_{Q(ξ)/Q}(D(z_l))`.
    pub fn untwist<F: Field<Elem = E>>(&self, curve: &Curve<F>, cyc: &Cyclotomic) -> Result<Divisor<E>, DivisorError> {
        if !self.is_equivariant(cyc) {
            return Err(DivisorError::NonEquivariant);
        }
        let mut triples = Vec::new();
        for (q, r, vs) in &self.triples {
            let values = vs
                .iter()
                .map(|v| {
                    let t = cyc.trace_q(v);
                    if !t.is_integer() {
                        return Err(DivisorError::NonIntegral(t.to_string()));
                    }
                    t.to_integer().to_i64().ok_or(DivisorError::Overflow)
                })
                .collect::<Result<Vec<_>, _>>()?;
            triples.push(Triple { q: q.clone(), r: r.clone(), values });
        }
        curve.divisor(triples)
    }

    /// `D(z) = (1/k) Σ_i ξ^i D̃(σ^i z)` for an integer divisor `D̃`.
    pub fn twist(d: &Divisor<E>, cyc: &Cyclotomic) -> Self {
        let k = cyc.k();
        let kinv = cyc.from_rational(&BigRational::new(1.into(), BigInt::from(k))).unwrap();
        let triples = d
            .triples()
            .iter()
            .map(|t| {
                let values = (0..k)
                    .map(|l| {
                        let s = (0..k).fold(cyc.zero(), |acc, i| {
                            let c = cyc.from_i64(t.values[(l + i) % k]);
                            cyc.add(&acc, &cyc.mul(&c, &cyc.xi_pow(i as i64)))
                        });
                        cyc.mul(&s, &kinv)
                    })
                    .collect();
                (t.q.clone(), t.r.clone(), values)
            })
            .collect();
        Self { triples }
    }
}

/// `Σ_i d_i ξ^{ij} = 0` for every j with `gcd(j, k) ≠ 1`, on every fiber.
pub fn satisfies_untwist_constraint<E: FieldElem>(d: &Divisor<E>, cyc: &Cyclotomic) -> bool {
    use num_integer::Integer;
    let k = cyc.k();
    d.triples().iter().all(|t| {
        (0..k).filter(|j| j.gcd(&k) != 1).all(|j| {
            (0..k)
                .fold(cyc.zero(), |acc, i| {
                    cyc.add(&acc, &cyc.mul(&cyc.from_i64(t.values[i]), &cyc.xi_pow((i * j) as i64)))
                })
                .iter()
                .all(Zero::is_zero)
        })
    })
}

/// The residue divisor of `P/(Q S^{1/k})` on the given fibers `(Q_i, R_i)`,
/// with `Q_i` the factors of `Q` carrying an ordinate.
pub fn superelliptic_divisor_on<F: NumberField>(
    curve: &Curve<F>,
    p: &Poly<F::Elem>,
    q: &Poly<F::Elem>,
    fibers: &[(Poly<F::Elem>, Poly<F::Elem>)],
) -> Result<SuperellipticDivisor<F::Elem>, DivisorError> {
    let f = curve.field();
    let cyc = f.cyclotomic();
    let dq = poly::derivative(f, q);
    let mut out = Vec::new();
    for (qi, ri) in fibers {
        let m = Ext::new(f.clone(), qi, "x");
        let den = m.mul(&m.from_poly(&dq), &m.from_poly(ri));
        let res = m.div(&m.from_poly(p), &den);
        let v0 = m
            .in_base(&res)
            .and_then(|b| f.project_cyclotomic(&b))
            .filter(|v| cyc.is_integral(v))
            .ok_or_else(|| DivisorError::ResidueNotIntegral(m.fmt_elem(&res)))?;
        if v0.iter().all(Zero::is_zero) {
            continue;
        }
        out.push((qi.clone(), ri.clone(), v0));
    }
    Ok(SuperellipticDivisor::from_base_values(cyc, out))
}

/// The residue divisor of a reduced integrand `P/(Q S^{1/k})`: factors `Q`
/// and keeps the factors carrying an ordinate.
pub fn superelliptic_divisor<F: NumberField>(
    curve: &Curve<F>,
    p: &Poly<F::Elem>,
    q: &Poly<F::Elem>,
) -> Result<SuperellipticDivisor<F::Elem>, DivisorError> {
    let fibers: Vec<_> = factor::irreducible_factors(curve.field(), q)
        .into_iter()
        .filter_map(|qi| kth_root_in_quotient(curve, &qi).map(|r| (qi, r)))
        .collect();
    superelliptic_divisor_on(curve, p, q, &fibers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn i3_curve() -> Curve<Cyclotomic> {
        let c = Cyclotomic::new(2);
        let s = poly::from_ints(&c, &[8, 0, 0, 1]);
        Curve::over_number_field(c, s).unwrap()
    }

    #[test]
    fn residue_divisor_of_simple_pole() {
        let c = i3_curve();
        let f = c.field();
        let d = superelliptic_divisor(&c, &poly::from_ints(f, &[3]), &poly::from_ints(f, &[-1, 1])).unwrap();
        let dt = d.untwist(&c, f.cyclotomic()).unwrap();
        assert_eq!(dt.triples().len(), 1);
        let t = &dt.triples()[0];
        assert_eq!(t.r, poly::from_ints(f, &[-3]));
        assert_eq!(t.values, vec![-1, 1]);
        assert_eq!(dt.height(), 2);
    }

    #[test]
    fn rotation_follows_ordinate() {
        let c = i3_curve();
        let f = c.field();
        let d = c
            .divisor(vec![Triple { q: poly::from_ints(f, &[-1, 1]), r: poly::from_ints(f, &[3]), values: vec![5, 2] }])
            .unwrap();
        assert_eq!(d.triples()[0].r, poly::from_ints(f, &[-3]));
        assert_eq!(d.triples()[0].values, vec![2, 5]);
    }

    #[test]
    fn negabinary_examples() {
        assert_eq!(negabinary_digits(3), vec![1, 1, 1]);
        assert_eq!(negabinary_digits(0), Vec::<u8>::new());
        assert_eq!(negabinary_digits(-2), vec![0, 1]);
        let c = i3_curve();
        let f = c.field();
        let d = c
            .divisor(vec![Triple { q: poly::from_ints(f, &[-1, 1]), r: poly::from_ints(f, &[-3]), values: vec![3, -2] }])
            .unwrap();
        let (d0, d1) = d.negabinary_split();
        assert_eq!(d0.triples()[0].values, vec![1, 0]);
        assert_eq!(d1.triples()[0].values, vec![-1, 1]);
    }

    #[test]
    fn divisor_of_functions() {
        let c = i3_curve();
        let f = c.field();
        // x − 1 vanishes simply at (1, ±3)
        let d = divisor_of_function(&c, &CurveFunction::from_x(poly::from_ints(f, &[-1, 1]), 2)).unwrap();
        assert_eq!(d.triples().len(), 1);
        assert_eq!(d.triples()[0].values, vec![1, 1]);
        // y vanishes only at ramification points
        assert!(divisor_of_function(&c, &c.monomial(0, 1)).unwrap().is_zero());
        // y − x vanishes on x³ − x² + 8 = 0, simply
        let g = CurveFunction::new(vec![poly::from_ints(f, &[0, -1]), poly::one(f)], 2);
        let d = divisor_of_function(&c, &g).unwrap();
        assert_eq!(d.degree(), 3);
        assert!(d.triples().iter().all(|t| t.values.iter().all(|&v| v <= 1)));
    }

    #[test]
    fn untwist_k3_unit_value() {
        let cyc = Cyclotomic::new(3);
        let s = poly::from_ints(&cyc, &[118, 0, 1]);
        let c = Curve::over_number_field(cyc.clone(), s).unwrap();
        let f = c.field();
        // S(15) = 343 = 7^3
        let q = poly::from_ints(f, &[-15, 1]);
        let r = poly::from_ints(f, &[7]);
        let d = SuperellipticDivisor::from_base_values(&cyc, vec![(q, r, cyc.one())]);
        let dt = d.untwist(&c, &cyc).unwrap();
        let mut sorted = dt.triples()[0].values.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-1, -1, 2]);
        assert!(satisfies_untwist_constraint(&dt, &cyc));
        let back = SuperellipticDivisor::twist(&dt, &cyc);
        assert!(back.is_equivariant(&cyc));
        assert_eq!(back.untwist(&c, &cyc).unwrap(), dt);
    }

    #[test]
    fn height_and_degree() {
        assert_eq!(Divisor::<BigRational>::zero().height(), 0);
        let c = i3_curve();
        let f = c.field();
        let d = c
            .divisor(vec![Triple { q: poly::from_ints(f, &[-1, 1]), r: poly::from_ints(f, &[-3]), values: vec![-1, 1] }])
            .unwrap();
        assert_eq!(d.height(), 2);
        assert_eq!(d.degree(), 0);
        assert!(d.add(f, &d.neg()).is_zero());
    }

    proptest! {
        #[test]
        fn negabinary_roundtrip(n in -100_000i64..100_000) {
            let digits = negabinary_digits(n);
            let back: i64 = digits.iter().rev().fold(0, |acc, &d| acc * -2 + d as i64);
            prop_assert_eq!(back, n);
            let bound = if n == 0 { 0 } else { (64 - n.unsigned_abs().leading_zeros()) as usize + 2 };
            prop_assert!(digits.len() <= bound);
        }
    }
}
