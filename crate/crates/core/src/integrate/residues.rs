//! Residue polynomials of reduced integrals.

use std::cmp::Ordering;

use crate::factor;
use crate::field::{Field, NumberField};
use crate::linalg;
use crate::poly::{self, Poly};

use super::Integral;

/// `c = P^k / (Q'^k S) mod Q`, whose values at the roots of `Q` are the k-th
/// powers of the residues.
fn residue_power<F: Field>(f: &F, int: &Integral<F::Elem>) -> Poly<F::Elem> {
    let q = &int.q;
    let dq = poly::derivative(f, q);
    let den = poly::rem(f, &poly::mul(f, &poly::pow_mod(f, &dq, &(int.k as u64).into(), q), &int.s), q);
    let inv = poly::inv_mod(f, &den, q).expect("reduced integrals have Q coprime to Q'S");
    poly::rem(f, &poly::mul(f, &poly::pow_mod(f, &int.p, &(int.k as u64).into(), q), &inv), q)
}

/// The characteristic polynomial of multiplication by `c` modulo `Q`, so that
/// `R(λ) = χ(λ^k)` vanishes exactly at the residues.
fn residue_charpoly<F: Field>(f: &F, int: &Integral<F::Elem>) -> Poly<F::Elem> {
    let q = &int.q;
    let n = q.degree().unwrap_or(0);
    let c = residue_power(f, int);
    let mut cols = Vec::with_capacity(n);
    let mut cur = c;
    for _ in 0..n {
        cols.push(cur.clone());
        cur = poly::rem(f, &poly::mul_xn(f, &cur, 1), q);
    }
    let m: linalg::Matrix<F::Elem> = (0..n).map(|r| cols.iter().map(|c| poly::coeff_or_zero(f, c, r)).collect()).collect();
    linalg::charpoly(f, &m)
}

/// `R(λ)`, monic, of degree `k deg Q`.
pub fn residue_polynomial<F: Field>(f: &F, int: &Integral<F::Elem>) -> Poly<F::Elem> {
    poly::inflate(f, &residue_charpoly(f, int), int.k)
}

/// The representative of `g` under `λ ↦ ξ^j λ` that is least for [`poly::cmp_poly`].
pub fn orbit_representative<F: NumberField>(f: &F, g: &Poly<F::Elem>) -> Poly<F::Elem> {
    let k = f.cyclotomic().k() as i64;
    (0..k)
        .map(|j| poly::monic(f, &poly::scale_var(f, g, &f.xi_pow(j))))
        .min_by(|a, b| poly::cmp_poly(f, a, b))
        .unwrap()
}

/// Irreducible factors of `R`, one per orbit under `λ ↦ ξλ`, sorted.
pub fn residues<F: NumberField>(f: &F, int: &Integral<F::Elem>) -> Vec<Poly<F::Elem>> {
    if int.q.deg() < 1 {
        return Vec::new();
    }
    let mut out: Vec<Poly<F::Elem>> = Vec::new();
    for h in factor::irreducible_factors(f, &residue_charpoly(f, int)) {
        for g in factor::irreducible_factors(f, &poly::inflate(f, &h, int.k)) {
            let rep = orbit_representative(f, &g);
            if !out.contains(&rep) {
                out.push(rep);
            }
        }
    }
    out.sort_by(|a, b| poly::cmp_poly(f, a, b));
    out
}

/// Whether `g` and `h` agree up to `λ ↦ ξ^j λ` and scaling.
pub fn same_orbit<F: NumberField>(f: &F, g: &Poly<F::Elem>, h: &Poly<F::Elem>) -> bool {
    poly::cmp_poly(f, &orbit_representative(f, g), &orbit_representative(f, h)) == Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Cyclotomic;

    #[test]
    fn simple_pole_residues() {
        let c = Cyclotomic::new(2);
        let i = Integral { p: poly::from_ints(&c, &[3]), q: poly::from_ints(&c, &[-1, 1]), s: poly::from_ints(&c, &[8, 0, 0, 1]), k: 2 };
        assert_eq!(residue_polynomial(&c, &i), poly::from_ints(&c, &[-1, 0, 1]));
        let rs = residues(&c, &i);
        assert_eq!(rs, vec![poly::from_ints(&c, &[-1, 1])]);
    }

    #[test]
    fn constant_denominator_has_no_residues() {
        let c = Cyclotomic::new(3);
        let i = Integral { p: poly::from_ints(&c, &[1]), q: poly::from_ints(&c, &[2]), s: poly::from_ints(&c, &[1, 0, 1]), k: 3 };
        assert!(residues(&c, &i).is_empty());
    }
}
