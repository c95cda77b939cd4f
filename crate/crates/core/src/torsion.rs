//! Torsion orders of divisor classes, from their orders modulo good primes.

use thiserror::Error;

use crate::curve::Curve;
use crate::divisor::{Divisor, DivisorError, Triple};
use crate::factor;
use crate::field::{is_prime, Field, Fp};
use crate::jacobian::{jacobian_reduce, JacobianError};
use crate::poly::{self, Poly};

pub const DEFAULT_SCAN_CAP: u64 = 10_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TorsionError {
    #[error("no {wanted} good primes in [{min_p}, {cap}] (found {found:?})")]
    SearchExhausted { wanted: usize, min_p: u64, cap: u64, found: Vec<u64> },
    #[error("divisor does not reduce modulo {0}")]
    BadReduction(u64),
    #[error("order modulo {p} exceeds the Hasse-Weil bound {bound}")]
    HasseWeilViolation { p: u64, bound: u64 },
    #[error("order modulo {p} exceeds the torsion limit {limit}")]
    TorsionLimit { p: u64, limit: u64 },
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
}

/// The data that must survive reduction: the curve, the poles of the
/// integrand, and the divisor itself.
#[derive(Clone, Debug)]
pub struct ReductionContext<'a, F: Field> {
    pub curve: &'a Curve<F>,
    pub poles: Poly<F::Elem>,
    pub divisor: &'a Divisor<F::Elem>,
}

/// A residue-degree-one reduction of the ground field modulo `p`.
#[derive(Clone, Debug)]
pub struct GoodReduction {
    pub p: u64,
    /// Images of the generators of the field tower.
    pub chain: Vec<u64>,
    pub field: Fp,
    pub curve: Curve<Fp>,
    pub checks: Vec<&'static str>,
}

impl GoodReduction {
    pub fn reduce_elem<F: Field>(&self, f: &F, a: &F::Elem) -> Option<u64> {
        f.reduce_mod(&self.chain, self.p, a)
    }

    pub fn reduce_poly<F: Field>(&self, f: &F, a: &Poly<F::Elem>) -> Option<Poly<u64>> {
        a.try_map(|c| self.reduce_elem(f, c))
    }
}

/// `N = 0` means the divisor is not torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub n: u64,
    pub primes: Vec<u64>,
    pub orders: Vec<u64>,
}

fn try_reduction<F: Field>(ctx: &ReductionContext<F>, p: u64) -> Option<GoodReduction> {
    let curve = ctx.curve;
    let f = curve.field();
    if curve.k() as u64 % p == 0 {
        return None;
    }
    let mut checks = vec!["p does not divide k"];
    let chain = f.residue_chains(p).into_iter().next()?;
    checks.push("residue degree one");
    let field = Fp::with_seed(p, f.seed());
    let red = |a: &Poly<F::Elem>| a.try_map(|c| f.reduce_mod(&chain, p, c));
    let xi = f.reduce_mod(&chain, p, curve.xi_pow(1))?;
    let s = red(curve.s())?;
    let poles = red(&ctx.poles)?;
    let mut support = poly::one(f);
    for t in ctx.divisor.triples() {
        red(&t.q)?;
        red(&t.r)?;
        support = poly::lcm(f, &support, &t.q);
    }
    checks.push("data is p-integral");
    let all = poly::lcm(f, &support, &poly::squarefree_part(f, &ctx.poles));
    let all_bar = red(&all)?;
    if s.degree() != curve.s().degree() || all_bar.degree() != all.degree() || poles.degree() != ctx.poles.degree() {
        return None;
    }
    checks.push("degrees are preserved");
    if !poly::is_squarefree(&field, &poly::mul(&field, &all_bar, &s)) {
        return None;
    }
    checks.push("poles and branch points stay distinct");
    let curve = Curve::new(field.clone(), curve.k(), s, xi).ok()?;
    Some(GoodReduction { p, chain, field, curve, checks })
}

/// The `count` smallest good primes `p ≥ min_p`, scanning up to `cap`.
pub fn find_good_reductions<F: Field>(
    ctx: &ReductionContext<F>,
    count: usize,
    min_p: u64,
    cap: u64,
) -> Result<Vec<GoodReduction>, TorsionError> {
    let mut out = Vec::with_capacity(count);
    for p in (min_p.max(2)..=cap).filter(|&p| is_prime(p)) {
        if let Some(gr) = try_reduction(ctx, p) {
            out.push(gr);
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(TorsionError::SearchExhausted { wanted: count, min_p, cap, found: out.iter().map(|g| g.p).collect() })
}

/// The image of `D` modulo the reduction, refactored and canonicalized.
pub fn reduce_divisor_mod<F: Field>(
    gr: &GoodReduction,
    f: &F,
    d: &Divisor<F::Elem>,
) -> Result<Divisor<u64>, TorsionError> {
    let bad = || TorsionError::BadReduction(gr.p);
    let fp = &gr.field;
    let mut triples = Vec::new();
    for t in d.triples() {
        let q = gr.reduce_poly(f, &t.q).ok_or_else(bad)?;
        let r = gr.reduce_poly(f, &t.r).ok_or_else(bad)?;
        if q.degree() != t.q.degree() {
            return Err(bad());
        }
        for g in factor::irreducible_factors(fp, &q) {
            let rg = poly::rem(fp, &r, &g);
            triples.push(Triple { q: g, r: rg, values: t.values.clone() });
        }
    }
    gr.curve.divisor(triples).map_err(|e: DivisorError| match e {
        DivisorError::Ramified | DivisorError::NotOrdinate => bad(),
        e => TorsionError::Jacobian(e.into()),
    })
}

/// `⌊(1 + √p)^{2g}⌋`, the largest possible order of a class over `F_p`.
pub fn hasse_weil_bound(p: u64, genus: usize) -> u64 {
    let b = (1.0 + (p as f64).sqrt()).powi(2 * genus as i32);
    if b >= u64::MAX as f64 {
        u64::MAX
    } else {
        b.floor() as u64
    }
}

/// The least `n ≥ 1` with `n·D` principal over `F_p`.
pub fn order_mod(gr: &GoodReduction, d: &Divisor<u64>, limit: Option<u64>) -> Result<u64, TorsionError> {
    let bound = hasse_weil_bound(gr.p, gr.curve.genus());
    let f = &gr.field;
    // a_n is the reduced representative of the class of −n·D
    let mut a = Divisor::zero();
    let mut n = 0u64;
    loop {
        n += 1;
        if n > bound {
            return Err(TorsionError::HasseWeilViolation { p: gr.p, bound });
        }
        if limit.is_some_and(|l| n > l) {
            return Err(TorsionError::TorsionLimit { p: gr.p, limit: limit.unwrap() });
        }
        a = jacobian_reduce(&gr.curve, &d.sub(f, &a))?.reduced;
        if a.is_zero() {
            return Ok(n);
        }
    }
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The solution `N = n p1^u = m p2^v` with `u, v ≥ 0`, if any.
pub fn solve_two_prime(n: u64, p1: u64, m: u64, p2: u64) -> Option<u64> {
    let u = valuation(m, p1).checked_sub(valuation(n, p1))?;
    let v = valuation(n, p2).checked_sub(valuation(m, p2))?;
    let lhs = n.checked_mul(p1.checked_pow(u)?)?;
    let rhs = m.checked_mul(p2.checked_pow(v)?)?;
    (lhs == rhs).then_some(lhs)
}

#[derive(Clone, Debug)]
pub struct TorsionOptions {
    /// The confirming prime exceeds `1/epsilon`.
    pub epsilon: f64,
    pub min_p: u64,
    pub scan_cap: u64,
    pub max_torsion: Option<u64>,
}

impl Default for TorsionOptions {
    fn default() -> Self {
        Self { epsilon: 1.0, min_p: 2, scan_cap: DEFAULT_SCAN_CAP, max_torsion: None }
    }
}

/// The torsion order of the class of `D`, or 0 when it is not torsion.
pub fn torsion_order<F: Field>(
    ctx: &ReductionContext<F>,
    opts: &TorsionOptions,
) -> Result<TorsionCertificate, TorsionError> {
    let d = ctx.divisor;
    if d.is_zero() {
        return Ok(TorsionCertificate { n: 1, primes: Vec::new(), orders: Vec::new() });
    }
    let f = ctx.curve.field();
    let grs = find_good_reductions(ctx, 2, opts.min_p, opts.scan_cap)?;
    let (d1, d2) = (reduce_divisor_mod(&grs[0], f, d)?, reduce_divisor_mod(&grs[1], f, d)?);
    let (n, m) = std::thread::scope(|s| {
        let h = s.spawn(|| order_mod(&grs[1], &d2, opts.max_torsion));
        let n = order_mod(&grs[0], &d1, opts.max_torsion);
        (n, h.join().expect("order search panicked"))
    });
    let (n, m) = (n?, m?);
    let (p1, p2) = (grs[0].p, grs[1].p);
    let Some(big_n) = solve_two_prime(n, p1, m, p2) else {
        return Ok(TorsionCertificate { n: 0, primes: vec![p1, p2], orders: vec![n, m] });
    };
    let min_p3 = ((1.0 / opts.epsilon).floor() as u64 + 1).max(p2 + 1);
    let gr3 = find_good_reductions(ctx, 1, min_p3, opts.scan_cap.max(min_p3))?.remove(0);
    let d3 = reduce_divisor_mod(&gr3, f, d)?.scale(i64::try_from(big_n).expect("torsion order overflow"));
    let confirmed = jacobian_reduce(&gr3.curve, &d3)?.reduced.is_zero();
    Ok(TorsionCertificate { n: if confirmed { big_n } else { 0 }, primes: vec![p1, p2, gr3.p], orders: vec![n, m] })
}
