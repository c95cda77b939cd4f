//! Trace integrals: integrals over `K(α)` whose residues are the `α^j`
//! coordinates of the traces of the residues of a reduced integral.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::curve::{kth_root_in_quotient_with_hints, provably_no_factor_has_kth_root, Curve};
use crate::factor;
use crate::field::{Ext, Field, FieldElem, NumberField};
use crate::poly::{self, Poly};

use super::{Integral, IntegrateError};

pub type WElem<B> = Vec<<B as Field>::Elem>;

/// `P/(Q S^{1/k})` over `W = B(α)`, with residues `d · coeff_{α^j} tr(res)`.
#[derive(Clone, Debug)]
pub struct TraceIntegral<B: NumberField> {
    pub j: usize,
    pub d: BigInt,
    pub p: Poly<WElem<B>>,
    pub q: Poly<WElem<B>>,
    /// The factors `Q_i` of `q` with their ordinates.
    pub fibers: Vec<(Poly<WElem<B>>, Poly<WElem<B>>)>,
}

/// Irreducible factors of `q` over `w` that may carry an ordinate. Poles with
/// residue `ξ^j λ` for a hint λ are split off by a gcd; the rest is factored
/// only when no modular certificate rules out ordinates on all of it.
fn candidate_factors<B: NumberField>(
    curve: &Curve<Ext<B>>,
    p: &Poly<WElem<B>>,
    q: &Poly<WElem<B>>,
    dq: &Poly<WElem<B>>,
    hints: &[WElem<B>],
) -> Vec<Poly<WElem<B>>> {
    let w = curve.field();
    let k = curve.k() as u64;
    let mut rest = poly::monic(w, q);
    let mut out = Vec::new();
    for l in hints.iter().filter(|l| !l.is_zero()) {
        if rest.deg() < 1 {
            break;
        }
        let e = (k as u32).into();
        let rhs = poly::scale(w, &poly::mul(w, &poly::pow_mod(w, dq, &e, &rest), curve.s()), &w.pow_u64(l, k));
        let h = poly::sub(w, &poly::pow_mod(w, p, &e, &rest), &rhs);
        let g = poly::gcd(w, &rest, &poly::rem(w, &h, &rest));
        if g.deg() >= 1 {
            out.extend(factor::irreducible_factors(w, &g));
            rest = poly::quo(w, &rest, &g);
        }
    }
    if rest.deg() >= 1 && !provably_no_factor_has_kth_root(curve, &rest) {
        out.extend(factor::irreducible_factors(w, &rest));
    }
    out.sort_by(|a, b| poly::cmp_poly(w, a, b));
    out
}

/// The trace integrals of a reduced integral over `w`, together with the curve
/// over `w`. `residue_hints` are candidate residues in `w`, used to guess
/// ordinates `y = P/(Q' λ)` before factoring.
#[allow(clippy::type_complexity)]
pub fn trace_integrals<B: NumberField>(
    b: &B,
    int: &Integral<B::Elem>,
    w: &Ext<B>,
    residue_hints: &[WElem<B>],
) -> Result<(Curve<Ext<B>>, Vec<TraceIntegral<B>>), IntegrateError> {
    let cyc = b.cyclotomic();
    let emb = |p: &Poly<B::Elem>| p.map(|c| w.embed(c));
    let curve = Curve::over_number_field(w.clone(), emb(&int.s)).map_err(IntegrateError::Curve)?;
    let (p, q) = (emb(&int.p), emb(&int.q));
    let dq = poly::derivative(w, &q);
    let e = w.degree();
    let mut ds = vec![BigInt::one(); e];
    let mut fibers = Vec::new();
    let mut traces = Vec::new();
    for qi in candidate_factors(&curve, &p, &q, &dq, residue_hints) {
        let dq_inv = poly::inv_mod(w, &poly::rem(w, &dq, &qi), &qi).expect("Q is squarefree");
        let p_dq = poly::rem(w, &poly::mul(w, &p, &dq_inv), &qi);
        let hints: Vec<_> = residue_hints
            .iter()
            .filter(|l| !l.is_zero())
            .flat_map(|l| {
                (0..curve.k() as i64).map(move |j| w.inv(&w.mul(l, &w.xi_pow(j))).unwrap())
            })
            .map(|c| poly::scale(w, &p_dq, &c))
            .collect();
        let Some(y) = kth_root_in_quotient_with_hints(&curve, &qi, &hints) else {
            continue;
        };
        let m = Ext::new(w.clone(), &qi, "x");
        let beta = m.mul(&m.from_poly(&p_dq), &m.inv(&m.from_poly(&y)).unwrap());
        let tr = m.normalized_trace(&beta);
        let coords: Vec<Vec<BigRational>> = tr
            .iter()
            .map(|t| b.project_cyclotomic(t).ok_or(IntegrateError::TraceOutsideCyclotomic))
            .collect::<Result<_, _>>()?;
        for (d, t) in ds.iter_mut().zip(&coords) {
            *d = d.lcm(&cyc.integerize(t).0);
        }
        let dqi_y = poly::rem(w, &poly::mul(w, &poly::derivative(w, &qi), &y), &qi);
        traces.push((qi.clone(), dqi_y, coords));
        fibers.push((qi, y));
    }
    let qw = fibers.iter().fold(poly::one(w), |acc, (qi, _)| poly::mul(w, &acc, qi));
    let out = (0..e)
        .map(|j| {
            let dj = b.from_int(&ds[j]);
            let pj = traces.iter().fold(Poly::zero(), |acc, (qi, dqi_y, t)| {
                let c = w.embed(&b.mul(&b.embed_cyclotomic(&t[j]), &dj));
                let rij = poly::scale(w, dqi_y, &c);
                poly::add(w, &acc, &poly::mul(w, &rij, &poly::quo(w, &qw, qi)))
            });
            TraceIntegral { j, d: ds[j].clone(), p: pj, q: qw.clone(), fibers: fibers.clone() }
        })
        .collect();
    Ok((curve, out))
}
