//! Superelliptic curves `y^k = S(x)` and polynomial functions on them.

use std::cmp::Ordering;

use num_integer::Integer;
use thiserror::Error;

use crate::factor::{self, Factorize};
use crate::field::{is_prime, Ext, Field, FieldElem, NumberField};
use crate::poly::{self, Poly};
use crate::series;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("the radicand must be nonconstant")]
    ConstantRadicand,
    #[error("the radicand has a repeated root")]
    NonSquarefreeS,
    #[error("deg S = {deg} is not coprime with k = {k}")]
    DegreeNotCoprime { deg: usize, k: usize },
    #[error("the given root of unity is not a primitive {0}-th root")]
    NotPrimitive(usize),
}

/// `(k − 1)(deg S − 1)/2`.
pub fn genus(k: usize, deg_s: usize) -> usize {
    (k - 1) * deg_s.saturating_sub(1) / 2
}

/// The curve `y^k = S(x)` over a field containing a primitive k-th root of unity ξ.
#[derive(Clone, Debug)]
pub struct Curve<F: Field> {
    field: F,
    k: usize,
    s: Poly<F::Elem>,
    xi_pows: Vec<F::Elem>,
}

impl<F: Field> Curve<F> {
    pub fn new(field: F, k: usize, s: Poly<F::Elem>, xi: F::Elem) -> Result<Self, CurveError> {
        if k < 2 {
            return Err(CurveError::KTooSmall(k));
        }
        let deg = match s.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(CurveError::ConstantRadicand),
        };
        if !poly::is_squarefree(&field, &s) {
            return Err(CurveError::NonSquarefreeS);
        }
        if deg.gcd(&k) != 1 {
            return Err(CurveError::DegreeNotCoprime { deg, k });
        }
        let xi_pows: Vec<F::Elem> = (0..k).map(|i| field.pow_u64(&xi, i as u64)).collect();
        if !field.is_one(&field.mul(&xi_pows[k - 1], &xi)) || xi_pows[1..].iter().any(|x| field.is_one(x)) {
            return Err(CurveError::NotPrimitive(k));
        }
        Ok(Self { field, k, s, xi_pows })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> &Poly<F::Elem> {
        &self.s
    }

    pub fn deg_s(&self) -> usize {
        self.s.degree().unwrap()
    }

    pub fn genus(&self) -> usize {
        genus(self.k, self.deg_s())
    }

    /// ξ^i for any integer i.
    pub fn xi_pow(&self, i: i64) -> &F::Elem {
        &self.xi_pows[i.rem_euclid(self.k as i64) as usize]
    }

    /// `wdeg(x^i y^j) = k i + (deg S) j`.
    pub fn monomial_wdeg(&self, i: usize, j: usize) -> usize {
        self.k * i + self.deg_s() * j
    }

    pub fn wdeg(&self, f: &CurveFunction<F::Elem>) -> Option<usize> {
        f.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, q)| q.degree().map(|i| self.monomial_wdeg(i, j)))
            .max()
    }

    pub fn one(&self) -> CurveFunction<F::Elem> {
        CurveFunction::from_x(poly::one(&self.field), self.k)
    }

    pub fn mul(&self, a: &CurveFunction<F::Elem>, b: &CurveFunction<F::Elem>) -> CurveFunction<F::Elem> {
        let f = &self.field;
        let k = self.k;
        let mut out = vec![Poly::zero(); k];
        for (i, ai) in a.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, bj) in b.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let mut prod = poly::mul(f, ai, bj);
                let mut idx = i + j;
                if idx >= k {
                    prod = poly::mul(f, &prod, &self.s);
                    idx -= k;
                }
                out[idx] = poly::add(f, &out[idx], &prod);
            }
        }
        CurveFunction { coeffs: out }
    }

    /// `f(x, ξ^i y)`.
    pub fn conjugate(&self, a: &CurveFunction<F::Elem>, i: i64) -> CurveFunction<F::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, q)| poly::scale(&self.field, q, self.xi_pow(i * j as i64)))
            .collect();
        CurveFunction { coeffs }
    }

    /// `Π_i f(x, ξ^i y) = Res_y(f, y^k − S)` up to sign.
    pub fn norm(&self, a: &CurveFunction<F::Elem>) -> Poly<F::Elem> {
        let prod = (1..self.k as i64).fold(a.clone(), |acc, i| self.mul(&acc, &self.conjugate(a, i)));
        debug_assert!(prod.coeffs[1..].iter().all(Poly::is_zero));
        prod.coeffs.into_iter().next().unwrap()
    }

    /// `x^i y^j` as a function.
    pub fn monomial(&self, i: usize, j: usize) -> CurveFunction<F::Elem> {
        let mut coeffs = vec![Poly::zero(); self.k];
        coeffs[j] = poly::monomial(&self.field, self.field.one(), i);
        CurveFunction { coeffs }
    }

    /// The ξ-multiple of `r` modulo `q` that is smallest under
    /// [`poly::cmp_poly`], with the exponent s such that it equals `ξ^s r`.
    pub fn canonical_ordinate(&self, q: &Poly<F::Elem>, r: &Poly<F::Elem>) -> (Poly<F::Elem>, usize) {
        let f = &self.field;
        (0..self.k)
            .map(|s| (poly::rem(f, &poly::scale(f, r, self.xi_pow(s as i64)), q), s))
            .min_by(|(a, _), (b, _)| poly::cmp_poly(f, a, b))
            .unwrap()
    }

    /// Whether `r^k ≡ S mod q`.
    pub fn is_ordinate(&self, q: &Poly<F::Elem>, r: &Poly<F::Elem>) -> bool {
        let f = &self.field;
        let rk = poly::pow_mod(f, r, &num_bigint::BigUint::from(self.k), q);
        poly::rem(f, &poly::sub(f, &rk, &self.s), q).is_zero()
    }
}

impl<F: NumberField> Curve<F> {
    /// The curve over a number field, with ξ taken from its cyclotomic subfield.
    pub fn over_number_field(field: F, s: Poly<F::Elem>) -> Result<Self, CurveError> {
        let k = field.cyclotomic().k();
        let xi = field.xi_pow(1);
        Self::new(field, k, s, xi)
    }
}

/// `f = Σ_j Q_j(x) y^j` with exactly k coefficient slots, reduced modulo `y^k − S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunction<E: FieldElem> {
    coeffs: Vec<Poly<E>>,
}

impl<E: FieldElem> CurveFunction<E> {
    pub fn new(mut coeffs: Vec<Poly<E>>, k: usize) -> Self {
        assert!(coeffs.len() <= k, "a curve function has at most k coefficients");
        coeffs.resize(k, Poly::zero());
        Self { coeffs }
    }

    pub fn from_x(q: Poly<E>, k: usize) -> Self {
        Self::new(vec![q], k)
    }

    pub fn coeffs(&self) -> &[Poly<E>] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Poly<E> {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Whether the function does not involve y.
    pub fn in_x(&self) -> bool {
        self.coeffs[1..].iter().all(Poly::is_zero)
    }

    pub fn map<G: FieldElem>(&self, f: impl FnMut(&E) -> G + Clone) -> CurveFunction<G> {
        CurveFunction { coeffs: self.coeffs.iter().map(|q| q.map(f.clone())).collect() }
    }

    pub fn try_map<G: FieldElem>(&self, f: impl FnMut(&E) -> Option<G> + Clone) -> Option<CurveFunction<G>> {
        let coeffs = self.coeffs.iter().map(|q| q.try_map(f.clone())).collect::<Option<Vec<_>>>()?;
        Some(CurveFunction { coeffs })
    }
}

pub fn fmt_function<F: Field>(f: &F, a: &CurveFunction<F::Elem>) -> String {
    let terms: Vec<String> = a
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(j, q)| {
            let qs = poly::fmt_poly(f, q, "x");
            match j {
                0 => qs,
                1 => format!("({qs})*y"),
                _ => format!("({qs})*y^{j}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Local expansions at the points `(x̄, ξ^l R(x̄))` above the roots x̄ of an
/// irreducible `q`, in the parameter `u = x − x̄` over `F[x]/(q)`.
pub(crate) struct Fiber<F: Field> {
    pub m: Ext<F>,
    xbar: Vec<F::Elem>,
    prec: usize,
    /// `y(u)^j` on the branch through `R(x̄)`, for `j < k`.
    ypows: Vec<Vec<Vec<F::Elem>>>,
    xi: Vec<Vec<F::Elem>>,
}

impl<F: Field> Fiber<F> {
    pub fn new(curve: &Curve<F>, q: &Poly<F::Elem>, r: &Poly<F::Elem>, prec: usize) -> Self {
        let m = Ext::new(curve.field().clone(), q, "x");
        let xbar = m.generator();
        let y0 = m.from_poly(r);
        let s_local = series::resize(&m, poly::shift(&m, &m.embed_poly(curve.s()), &xbar).into_coeffs(), prec);
        let y = series::kth_root(&m, &s_local, curve.k(), &y0, prec);
        let mut ypows = vec![series::resize(&m, vec![m.one()], prec)];
        for j in 1..curve.k() {
            ypows.push(series::mul(&m, &ypows[j - 1], &y, prec));
        }
        let xi = (0..curve.k()).map(|l| m.embed(curve.xi_pow(l as i64))).collect();
        Self { m, xbar, prec, ypows, xi }
    }

    /// `Q(x̄ + u)` for a polynomial over the base.
    pub fn expand_x(&self, q: &Poly<F::Elem>) -> Vec<Vec<F::Elem>> {
        series::resize(&self.m, poly::shift(&self.m, &self.m.embed_poly(q), &self.xbar).into_coeffs(), self.prec)
    }

    /// `(x̄ + u)^i`, for `i < count`.
    pub fn x_powers(&self, count: usize) -> Vec<Vec<Vec<F::Elem>>> {
        let lin = series::resize(&self.m, vec![self.xbar.clone(), self.m.one()], self.prec);
        let mut out = vec![series::resize(&self.m, vec![self.m.one()], self.prec)];
        for i in 1..count {
            out.push(series::mul(&self.m, &out[i - 1], &lin, self.prec));
        }
        out.truncate(count);
        out
    }

    /// `y^j` on branch l.
    pub fn y_power(&self, j: usize, l: usize) -> Vec<Vec<F::Elem>> {
        let k = self.xi.len();
        series::scale(&self.m, &self.ypows[j], &self.xi[(l * j) % k])
    }

    /// The expansion of `f` on branch l.
    pub fn expand(&self, f: &CurveFunction<F::Elem>, l: usize) -> Vec<Vec<F::Elem>> {
        let mut acc = series::resize(&self.m, Vec::new(), self.prec);
        for (j, q) in f.coeffs().iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            let term = series::mul(&self.m, &self.expand_x(q), &self.y_power(j, l), self.prec);
            acc = series::add(&self.m, &acc, &term);
        }
        acc
    }
}

/// Whether `c` is provably not a k-th power in the number field `m`: its image
/// under some degree-one prime with `p ≡ 1 mod k` is not a k-th power.
fn provably_not_kth_power<F: Field>(m: &Ext<F>, c: &[F::Elem], k: usize) -> bool {
    let mut tested = 0;
    let mut p = 1000u64;
    while tested < 12 && p < 200_000 {
        p += 1;
        if p % k as u64 != 1 || !is_prime(p) {
            continue;
        }
        let Some(chain) = m.residue_chains(p).into_iter().next() else {
            continue;
        };
        let Some(cbar) = m.reduce_mod(&chain, p, &c.to_vec()) else {
            continue;
        };
        if cbar == 0 {
            continue;
        }
        tested += 1;
        let fp = crate::field::Fp::new(p);
        if !fp.is_one(&fp.pow_u64(&cbar, (p - 1) / k as u64)) {
            return true;
        }
    }
    false
}

/// Whether no irreducible factor `Q_i` of the squarefree `q` admits a k-th
/// root of `S` in `F[x]/(Q_i)`, certified by some degree-one prime modulo which
/// `S` is not a k-th power above any factor of `q`.
pub fn provably_no_factor_has_kth_root<F: Field>(curve: &Curve<F>, q: &Poly<F::Elem>) -> bool {
    let f = curve.field();
    let k = curve.k() as u64;
    let mut tested = 0;
    let mut p = 1000u64;
    while tested < 12 && p < 200_000 {
        p += 1;
        if k % p == 0 || !is_prime(p) {
            continue;
        }
        let Some(chain) = f.residue_chains(p).into_iter().next() else {
            continue;
        };
        let red = |a: &Poly<F::Elem>| a.try_map(|c| f.reduce_mod(&chain, p, c));
        let (Some(qb), Some(sb)) = (red(q), red(curve.s())) else {
            continue;
        };
        let fp = crate::field::Fp::new(p);
        if qb.degree() != q.degree() || !poly::is_squarefree(&fp, &qb) || !poly::gcd(&fp, &qb, &sb).is_constant() {
            continue;
        }
        tested += 1;
        let all_fail = factor::irreducible_factors(&fp, &qb).iter().all(|g| {
            let order = num_bigint::BigUint::from(p).pow(g.degree().unwrap() as u32) - 1u32;
            let e = &order / order.gcd(&k.into());
            poly::pow_mod(&fp, &sb, &e, g) != poly::one(&fp)
        });
        if all_fail {
            return true;
        }
    }
    false
}

/// A k-th root of `S` in `F[x]/(q)` for monic irreducible `q` coprime to `S`,
/// normalized by [`Curve::canonical_ordinate`]; `None` when `z^k − S` has no
/// root there. Candidate roots in `hints` are tried before factoring.
pub fn kth_root_in_quotient_with_hints<F: Factorize>(
    curve: &Curve<F>,
    q: &Poly<F::Elem>,
    hints: &[Poly<F::Elem>],
) -> Option<Poly<F::Elem>> {
    let f = curve.field();
    if let Some(r) = hints.iter().find(|r| curve.is_ordinate(q, r)) {
        return Some(curve.canonical_ordinate(q, &poly::rem(f, r, q)).0);
    }
    let m = Ext::new(f.clone(), q, "x");
    let c = m.from_poly(curve.s());
    if c.is_zero() {
        return None;
    }
    let k = curve.k();
    if !m.is_finite() && provably_not_kth_power(&m, &c, k) {
        return None;
    }
    let mut zk = vec![m.neg(&c)];
    zk.resize(k, m.zero());
    zk.push(m.one());
    let root = factor::roots(&m, &Poly::new(zk)).into_iter().next()?;
    Some(curve.canonical_ordinate(q, &m.to_poly(&root)).0)
}

pub fn kth_root_in_quotient<F: Factorize>(curve: &Curve<F>, q: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
    kth_root_in_quotient_with_hints(curve, q, &[])
}

/// Orders curve functions for deterministic output: by weighted degree, then
/// coefficientwise.
pub fn cmp_function<F: Field>(curve: &Curve<F>, a: &CurveFunction<F::Elem>, b: &CurveFunction<F::Elem>) -> Ordering {
    curve.wdeg(a).cmp(&curve.wdeg(b)).then_with(|| {
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(p, q)| poly::cmp_poly(curve.field(), p, q))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}
