//! Factorization over algebraic extensions of characteristic zero by norms.

use crate::field::{is_prime, Ext, Field, Fp};
use crate::poly::{self, Poly};

use super::Factorize;

/// `Norm_{L/F}(g)` for monic `g ∈ L[x]`, by evaluation and interpolation.
pub(crate) fn norm_poly<F: Field>(l: &Ext<F>, g: &Poly<Vec<F::Elem>>) -> Poly<F::Elem> {
    let b = l.base();
    let d = g.degree().unwrap() * l.degree();
    let xs: Vec<F::Elem> = (0..d).map(|i| b.from_i64(i as i64)).collect();
    let ys: Vec<F::Elem> = xs
        .iter()
        .map(|t| {
            let v = poly::eval(l, g, &l.embed(t));
            b.sub(&l.norm(&v), &b.pow_u64(t, d as u64))
        })
        .collect();
    poly::add(b, &poly::interpolate(b, &xs, &ys), &poly::monomial(b, b.one(), d))
}

/// A modular certificate that `a` is squarefree: its image under some
/// degree-one prime keeps its degree and is squarefree. A `false` answer only
/// means no certificate was found.
pub(crate) fn certify_squarefree<F: Field>(f: &F, a: &Poly<F::Elem>) -> bool {
    if f.characteristic() != 0 {
        return poly::is_squarefree(f, a);
    }
    let mut attempts = 0;
    let mut p = 1000u64;
    for _ in 0..2000 {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let Some(chain) = f.residue_chains(p).into_iter().next() else {
            continue;
        };
        let Some(img) = a.try_map(|c| f.reduce_mod(&chain, p, c)) else {
            continue;
        };
        if img.degree() != a.degree() {
            continue;
        }
        if poly::is_squarefree(&Fp::new(p), &img) {
            return true;
        }
        attempts += 1;
        if attempts >= 3 {
            return false;
        }
    }
    poly::is_squarefree(f, a)
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 })
}

/// Monic irreducible factors of a monic squarefree polynomial over `l`.
pub(crate) fn factor_squarefree<F: Factorize>(
    l: &Ext<F>,
    a: &Poly<Vec<F::Elem>>,
) -> Vec<Poly<Vec<F::Elem>>> {
    if a.degree() == Some(1) {
        return vec![a.clone()];
    }
    let theta = l.generator();
    for s in shifts().take(200) {
        let st = l.mul(&theta, &l.from_i64(s));
        let g = poly::shift(l, a, &l.neg(&st));
        let norm = norm_poly(l, &g);
        if !certify_squarefree(l.base(), &norm) {
            continue;
        }
        let parts = l.base().factor_squarefree(&norm);
        if parts.len() == 1 {
            return vec![a.clone()];
        }
        let mut out: Vec<_> = parts
            .iter()
            .map(|h| {
                let gi = poly::gcd(l, &g, &l.embed_poly(h));
                poly::monic(l, &poly::shift(l, &gi, &st))
            })
            .collect();
        out.sort_by(|u, v| poly::cmp_poly(l, u, v));
        return out;
    }
    panic!("no squarefree norm found after 200 shifts");
}
