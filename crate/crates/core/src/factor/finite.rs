//! Cantor–Zassenhaus factorization over finite fields.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::poly::{self, Poly};

fn rng_for<F: Field>(f: &F, a: &Poly<F::Elem>) -> ChaCha8Rng {
    let tag = (a.deg() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    ChaCha8Rng::seed_from_u64(f.seed() ^ tag)
}

fn order<F: Field>(f: &F) -> BigUint {
    f.order().expect("finite field")
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub(crate) fn distinct_degree<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let q = order(f);
    let x = poly::x(f);
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = poly::rem(f, &x, &rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d as isize + 1) {
        d += 1;
        h = poly::pow_mod(f, &h, &q, &rest);
        let g = poly::gcd(f, &poly::sub(f, &h, &x), &rest);
        if !g.is_constant() {
            rest = poly::div_exact(f, &rest, &g);
            h = poly::rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly<F: Field>(f: &F, deg: usize, rng: &mut ChaCha8Rng) -> Poly<F::Elem> {
    Poly::new((0..deg).map(|_| f.random_elem(rng)).collect())
}

/// Splits a product of distinct irreducibles of equal degree `d`.
fn equal_degree<F: Field>(
    f: &F,
    g: &Poly<F::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly<F::Elem>>,
) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.clone());
        return;
    }
    let q = order(f);
    let qd = q.pow(d as u32);
    let odd = q.is_odd();
    let exponent = (&qd - BigUint::one()) >> 1;
    loop {
        let a = random_poly(f, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if odd {
            poly::sub(f, &poly::pow_mod(f, &a, &exponent, g), &poly::one(f))
        } else {
            // trace map a + a^2 + … + a^(2^(m−1)) with q^d = 2^m
            let m = qd.bits() - 1;
            let mut t = poly::rem(f, &a, g);
            let mut acc = t.clone();
            for _ in 1..m {
                t = poly::rem(f, &poly::mul(f, &t, &t), g);
                acc = poly::add(f, &acc, &t);
            }
            acc
        };
        let h = poly::gcd(f, &b, g);
        if h.deg() > 0 && h.deg() < n as isize {
            let other = poly::div_exact(f, g, &h);
            equal_degree(f, &h, d, rng, out);
            equal_degree(f, &other, d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub(crate) fn factor_squarefree<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<Poly<F::Elem>> {
    let mut rng = rng_for(f, a);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, a) {
        equal_degree(f, &g, d, &mut rng, &mut out);
    }
    out.sort_by(|u, v| poly::cmp_poly(f, u, v));
    out
}

/// Roots in the field, ascending.
pub(crate) fn roots<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<F::Elem> {
    if a.deg() < 1 {
        return Vec::new();
    }
    let a = poly::monic(f, a);
    let x = poly::x(f);
    let xq = poly::pow_mod(f, &x, &order(f), &a);
    let g = poly::gcd(f, &poly::sub(f, &xq, &x), &a);
    if g.is_constant() {
        return Vec::new();
    }
    let mut rng = rng_for(f, &g);
    let mut lin = Vec::new();
    equal_degree(f, &g, 1, &mut rng, &mut lin);
    let mut rs: Vec<F::Elem> = lin.iter().map(|l| f.neg(&l.coeffs()[0])).collect();
    rs.sort_by(|u, v| f.cmp_elem(u, v));
    rs
}
