//! Elementary integration of superelliptic integrals `∫ P/(Q S^{1/k}) dx`.

pub mod hermite;
pub mod logs;
pub mod ratfun;
pub mod residues;
pub mod trace;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::curve::{Curve, CurveError, CurveFunction};
use crate::divisor::{superelliptic_divisor_on, Divisor, DivisorError};
use crate::field::{Ext, Field, FieldElem, NumberField};
use crate::jacobian::{jacobian_reduce, JacobianError};
use crate::linalg;
use crate::poly::{self, Poly};
use crate::torsion::{torsion_order, ReductionContext, TorsionCertificate, TorsionError, TorsionOptions};

pub use hermite::{hermite_reduction, HermiteResult};
pub use logs::ls_derivative;
pub use ratfun::RatFun;
pub use residues::{residue_polynomial, residues};
pub use trace::{trace_integrals, TraceIntegral, WElem};

/// `∫ P/(Q S^{1/k}) dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral<E: FieldElem> {
    pub p: Poly<E>,
    pub q: Poly<E>,
    pub s: Poly<E>,
    pub k: usize,
}

impl<E: FieldElem> Integral<E> {
    /// `P/Q`, the integrand times `S^{1/k}`.
    pub fn integrand<F: Field<Elem = E>>(&self, f: &F) -> RatFun<E> {
        ratfun::new(f, self.p.clone(), self.q.clone())
    }

    /// `Q` squarefree and coprime to `S`, and no pole at infinity.
    pub fn is_reduced<F: Field<Elem = E>>(&self, f: &F) -> bool {
        let degree_ok = self.p.is_zero()
            || (self.k as isize * self.p.deg()) < self.k as isize * self.q.deg() + self.s.deg() - self.k as isize;
        degree_ok && poly::is_squarefree(f, &self.q) && poly::gcd(f, &self.q, &self.s).is_constant()
    }

    /// `original = ∂x(g / S^{1/k}) + self`, exactly.
    pub fn check_hermite<F: Field<Elem = E>>(&self, f: &F, original: &Integral<E>, g: &RatFun<E>) -> bool {
        let lhs = original.integrand(f);
        let rhs = ratfun::add(f, &ratfun::derivative_over_root(f, g, &self.s, self.k), &self.integrand(f));
        lhs == rhs
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IntegrateError {
    #[error("invalid curve: {0}")]
    Curve(CurveError),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("a residue trace does not lie in the cyclotomic field")]
    TraceOutsideCyclotomic,
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error("internal check failed: {0}")]
    Internal(String),
}

#[derive(Clone, Debug, Default)]
pub struct IntegrateOptions {
    pub torsion: TorsionOptions,
}

/// `Σ_{α : W.modulus(α) = 0} C(α)/(k N) · Σ_r (−2)^r L_S(chain[r])`.
#[derive(Clone, Debug)]
pub struct LogGroup<B: NumberField> {
    pub field: Ext<B>,
    /// Index of the trace integral within its extension.
    pub j: usize,
    pub coefficient: Poly<B::Elem>,
    pub torsion: TorsionCertificate,
    pub divisor: Divisor<WElem<B>>,
    pub chain: Vec<CurveFunction<WElem<B>>>,
}

impl<B: NumberField> LogGroup<B> {
    pub fn n(&self) -> u64 {
        self.torsion.n
    }
}

/// `algebraic / S^{1/k} + Σ logs`.
#[derive(Clone, Debug)]
pub struct ElementaryExpression<B: NumberField> {
    pub k: usize,
    pub algebraic: RatFun<B::Elem>,
    pub logs: Vec<LogGroup<B>>,
}

impl<B: NumberField> ElementaryExpression<B> {
    /// `c` with `∂x(expression) = c / S^{1/k}` at `x0`, or `None` at a pole.
    pub fn derivative_at(&self, b: &B, s: &Poly<B::Elem>, x0: &B::Elem) -> Result<Option<B::Elem>, IntegrateError> {
        let alg = ratfun::derivative_over_root(b, &self.algebraic, s, self.k);
        let Some(mut acc) = ratfun::eval(b, &alg, x0) else {
            return Ok(None);
        };
        for g in &self.logs {
            let w = &g.field;
            let curve = Curve::over_number_field(w.clone(), s.map(|c| w.embed(c))).map_err(IntegrateError::Curve)?;
            let d = log_part_derivative(&curve, g.n(), &g.chain)?;
            let Some(v) = ratfun::eval(w, &d, &w.embed(x0)) else {
                return Ok(None);
            };
            acc = b.add(&acc, &w.trace(&w.mul(&w.from_poly(&g.coefficient), &v)));
        }
        Ok(Some(acc))
    }
}

#[derive(Clone, Debug)]
pub enum Obstruction<B: NumberField> {
    HermiteFail,
    NotTorsion { field: Ext<B>, j: usize, divisor: Divisor<WElem<B>>, certificate: TorsionCertificate },
    NonPrincipal { field: Ext<B>, j: usize, n: u64, reduced: Divisor<WElem<B>> },
    NonzeroFirstKindRemainder(Poly<B::Elem>),
}

#[derive(Clone, Debug)]
pub enum Verdict<B: NumberField> {
    Elementary(ElementaryExpression<B>),
    NotElementary(Obstruction<B>),
    NotHandled(String),
}

#[derive(Clone, Debug)]
pub struct Report<B: NumberField> {
    pub verdict: Verdict<B>,
    pub hermite: Option<HermiteResult<B::Elem>>,
    pub residues: Vec<Poly<B::Elem>>,
    pub timings: Vec<(&'static str, Duration)>,
}

#[derive(Default)]
struct Timings(Vec<(&'static str, Duration)>);

impl Timings {
    fn time<T>(&mut self, stage: &'static str, run: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = run();
        let dt = start.elapsed();
        match self.0.iter_mut().find(|(s, _)| *s == stage) {
            Some((_, acc)) => *acc += dt,
            None => self.0.push((stage, dt)),
        }
        out
    }
}

/// A certified torsion trace integral with its reduction chain.
struct Candidate<B: NumberField> {
    group: usize,
    ti: TraceIntegral<B>,
    torsion: TorsionCertificate,
    divisor: Divisor<WElem<B>>,
    chain: Vec<CurveFunction<WElem<B>>>,
}

/// The extensions to take traces over: one trivial extension for all rational
/// residues, and `B[z]/(L)` for every other residue factor `L`. Each comes with
/// candidate residues used as hints.
fn trace_fields<B: NumberField>(b: &B, factors: &[Poly<B::Elem>]) -> Vec<(Ext<B>, Vec<WElem<B>>)> {
    let mut out = Vec::new();
    let linear: Vec<_> = factors.iter().filter(|l| l.deg() == 1).collect();
    if !linear.is_empty() {
        let w = Ext::new(b.clone(), &poly::x(b), "alpha");
        let hints = linear.iter().map(|l| w.embed(&b.neg(&poly::coeff_or_zero(b, l, 0)))).collect();
        out.push((w, hints));
    }
    for l in factors.iter().filter(|l| l.deg() > 1) {
        let w = Ext::new(b.clone(), l, "alpha");
        let hints = vec![w.generator()];
        out.push((w, hints));
    }
    out
}

fn trace_poly<B: NumberField>(w: &Ext<B>, a: &Poly<WElem<B>>) -> Poly<B::Elem> {
    Poly::new(a.coeffs().iter().map(|c| w.trace(c)).collect())
}

/// `(1/(k N)) Σ_r (−2)^r ∂x L_S(f_r)`, as `c` in `c / S^{1/k}`.
pub fn log_part_derivative<F: Field>(
    curve: &Curve<F>,
    n: u64,
    chain: &[CurveFunction<F::Elem>],
) -> Result<RatFun<F::Elem>, IntegrateError> {
    let f = curve.field();
    let mut acc = ratfun::zero(f);
    let mut w = f.one();
    let m2 = f.from_i64(-2);
    for g in chain {
        let d = ls_derivative(curve, g).ok_or(IntegrateError::Divisor(DivisorError::ZeroFunction))?;
        acc = ratfun::add(f, &acc, &ratfun::scale(f, &d, &w));
        w = f.mul(&w, &m2);
    }
    let knv = f.inv(&f.from_i64((curve.k() as u64 * n) as i64)).unwrap();
    Ok(ratfun::scale(f, &acc, &knv))
}

fn untwisted_divisor<B: NumberField>(
    b: &B,
    curve_w: &Curve<Ext<B>>,
    ti: &TraceIntegral<B>,
) -> Result<Divisor<WElem<B>>, IntegrateError> {
    let sd = superelliptic_divisor_on(curve_w, &ti.p, &ti.q, &ti.fibers)?;
    Ok(sd.untwist(curve_w, b.cyclotomic())?)
}

/// The untwisted divisor of one nonzero trace integral.
#[derive(Clone, Debug)]
pub struct TraceDivisor<B: NumberField> {
    pub field: Ext<B>,
    pub curve: Curve<Ext<B>>,
    pub poles: Poly<WElem<B>>,
    pub integral: TraceIntegral<B>,
    pub divisor: Divisor<WElem<B>>,
}

/// The divisors whose torsion decides elementarity, over every residue
/// extension, or `None` when Hermite reduction fails.
pub fn trace_divisors<B: NumberField>(b: &B, int: &Integral<B::Elem>) -> Result<Option<Vec<TraceDivisor<B>>>, IntegrateError> {
    Curve::over_number_field(b.clone(), int.s.clone()).map_err(IntegrateError::Curve)?;
    let Some(hr) = hermite_reduction(b, int) else {
        return Ok(None);
    };
    let red = hr.reduced;
    let factors = if red.p.is_zero() { Vec::new() } else { residues(b, &red) };
    let mut out = Vec::new();
    for (w, hints) in trace_fields(b, &factors) {
        let (curve, tis) = trace_integrals(b, &red, &w, &hints)?;
        let poles = red.q.map(|c| w.embed(c));
        for ti in tis.into_iter().filter(|ti| !ti.p.is_zero()) {
            let divisor = untwisted_divisor(b, &curve, &ti)?;
            out.push(TraceDivisor { field: w.clone(), curve: curve.clone(), poles: poles.clone(), integral: ti, divisor });
        }
    }
    Ok(Some(out))
}

/// Decides whether `∫ P/(Q S^{1/k}) dx` is elementary, returning a verified
/// antiderivative when it is.
pub fn elementary_integrate<B: NumberField>(
    b: &B,
    int: &Integral<B::Elem>,
    opts: &IntegrateOptions,
) -> Result<Report<B>, IntegrateError> {
    Curve::over_number_field(b.clone(), int.s.clone()).map_err(IntegrateError::Curve)?;
    if int.q.is_zero() {
        return Err(IntegrateError::ZeroDenominator);
    }
    let mut tm = Timings::default();
    let report = |verdict, hermite, residues, tm: Timings| Report { verdict, hermite, residues, timings: tm.0 };

    let Some(hr) = tm.time("hermite", || hermite_reduction(b, int)) else {
        return Ok(report(Verdict::NotElementary(Obstruction::HermiteFail), None, Vec::new(), tm));
    };
    if !hr.reduced.check_hermite(b, int, &hr.g) || !hr.reduced.is_reduced(b) {
        return Err(IntegrateError::Internal("Hermite reduction identity".into()));
    }
    let red = hr.reduced.clone();
    let factors = if red.p.is_zero() { Vec::new() } else { tm.time("residues", || residues(b, &red)) };

    let fields = trace_fields(b, &factors);
    let mut candidates: Vec<Candidate<B>> = Vec::new();
    let mut curves = Vec::new();
    for (group, (w, hints)) in fields.iter().enumerate() {
        let traced = tm.time("trace_integrals", || trace_integrals(b, &red, w, hints));
        let (curve_w, tis) = match traced {
            Err(IntegrateError::TraceOutsideCyclotomic) => {
                let msg = "a residue trace lies outside the cyclotomic field".to_string();
                return Ok(report(Verdict::NotHandled(msg), Some(hr), factors, tm));
            }
            r => r?,
        };
        let poles = red.q.map(|c| w.embed(c));
        for ti in tis.into_iter().filter(|ti| !ti.p.is_zero()) {
            let divisor = tm.time("divisor", || untwisted_divisor(b, &curve_w, &ti))?;
            let ctx = ReductionContext { curve: &curve_w, poles: poles.clone(), divisor: &divisor };
            let cert = match tm.time("torsion", || torsion_order(&ctx, &opts.torsion)) {
                Err(TorsionError::TorsionLimit { p, limit }) => {
                    let msg = format!("torsion order modulo {p} exceeds the limit {limit}");
                    return Ok(report(Verdict::NotHandled(msg), Some(hr), factors, tm));
                }
                r => r?,
            };
            if cert.n == 0 {
                let ob = Obstruction::NotTorsion { field: w.clone(), j: ti.j, divisor, certificate: cert };
                return Ok(report(Verdict::NotElementary(ob), Some(hr), factors, tm));
            }
            let scaled = divisor.scale(i64::try_from(cert.n).map_err(|_| IntegrateError::Internal("torsion order overflow".into()))?);
            let res = tm.time("reduction", || jacobian_reduce(&curve_w, &scaled))?;
            if !res.reduced.is_zero() {
                let ob = Obstruction::NonPrincipal { field: w.clone(), j: ti.j, n: cert.n, reduced: res.reduced };
                return Ok(report(Verdict::NotElementary(ob), Some(hr), factors, tm));
            }
            candidates.push(Candidate { group, ti, torsion: cert, divisor, chain: res.chain });
        }
        curves.push(curve_w);
    }

    // Ĩ as a B-combination of the conjugate sums Σ_α α^s T and of x^i / S^{1/k}
    let first_kind = int.s.degree().unwrap() / int.k;
    let solution = tm.time("solve", || {
        let mut cols: Vec<Poly<B::Elem>> = Vec::new();
        for c in &candidates {
            let w = &fields[c.group].0;
            let qw_emb = red.q.map(|x| w.embed(x));
            let base = poly::mul(w, &c.ti.p, &poly::quo(w, &qw_emb, &c.ti.q));
            let mut alpha_s = w.one();
            for _ in 0..w.degree() {
                cols.push(trace_poly(w, &poly::scale(w, &base, &alpha_s)));
                alpha_s = w.mul(&alpha_s, &w.generator());
            }
        }
        for i in 0..=first_kind {
            cols.push(poly::mul_xn(b, &red.q, i));
        }
        let rows = cols.iter().chain([&red.p]).map(|c| c.coeffs().len()).max().unwrap_or(0);
        let a: linalg::Matrix<B::Elem> =
            (0..rows).map(|r| cols.iter().map(|c| poly::coeff_or_zero(b, c, r)).collect()).collect();
        let rhs: Vec<B::Elem> = (0..rows).map(|r| poly::coeff_or_zero(b, &red.p, r)).collect();
        linalg::solve(b, &a, &rhs)
    });
    let Some(sol) = solution else {
        let msg = "the reduced integral is not a combination of trace integrals and first-kind integrals".to_string();
        return Ok(report(Verdict::NotHandled(msg), Some(hr), factors, tm));
    };

    let verified = tm.time("verify", || -> Result<_, IntegrateError> {
        let mut idx = 0;
        let mut remainder = Poly::zero();
        let mut logs = Vec::new();
        for c in candidates {
            let (w, _) = &fields[c.group];
            let coeffs: Vec<B::Elem> = sol[idx..idx + w.degree()].to_vec();
            idx += w.degree();
            let curve_w = &curves[c.group];
            let dlog = log_part_derivative(curve_w, c.torsion.n, &c.chain)?;
            let omega = ratfun::sub(w, &ratfun::new(w, c.ti.p.clone(), c.ti.q.clone()), &dlog);
            if !omega.is_polynomial() {
                return Err(IntegrateError::Internal("trace integral minus its logarithms has poles".into()));
            }
            let coefficient = Poly::new(coeffs);
            let cw = w.from_poly(&coefficient);
            let omega = poly::scale(w, &poly::scale(w, omega.num(), &w.inv(&omega.den().coeffs()[0]).unwrap()), &cw);
            remainder = poly::add(b, &remainder, &trace_poly(w, &omega));
            if !coefficient.is_zero() {
                logs.push(LogGroup {
                    field: w.clone(),
                    j: c.ti.j,
                    coefficient,
                    torsion: c.torsion,
                    divisor: c.divisor,
                    chain: c.chain,
                });
            }
        }
        let fk = Poly::new(sol[idx..].to_vec());
        remainder = poly::add(b, &remainder, &fk);
        Ok((remainder, logs))
    })?;
    let (remainder, logs) = verified;
    let verdict = if remainder.is_zero() {
        Verdict::Elementary(ElementaryExpression { k: int.k, algebraic: hr.g.clone(), logs })
    } else {
        Verdict::NotElementary(Obstruction::NonzeroFirstKindRemainder(remainder))
    };
    Ok(report(verdict, Some(hr), factors, tm))
}

/// The integral whose antiderivative is `g / S^{1/k} + Σ_i c_i L_S(f_i)`.
pub fn integrand_of<F: Field>(
    curve: &Curve<F>,
    g: &RatFun<F::Elem>,
    terms: &[(F::Elem, CurveFunction<F::Elem>)],
) -> Option<Integral<F::Elem>> {
    let f = curve.field();
    let mut acc = ratfun::derivative_over_root(f, g, curve.s(), curve.k());
    for (c, h) in terms {
        acc = ratfun::add(f, &acc, &ratfun::scale(f, &ls_derivative(curve, h)?, c));
    }
    Some(Integral { p: acc.num().clone(), q: acc.den().clone(), s: curve.s().clone(), k: curve.k() })
}
