//! Factorization into irreducibles over every field of the tower.

mod finite;
mod numberfield;
mod zassenhaus;


use crate::field::{Cyclotomic, Ext, Field, Fp, QQ};
use crate::poly::{self, Poly};

pub trait Factorize: Field {
    /// Monic irreducible factors of a monic squarefree polynomial of positive
    /// degree, sorted by [`poly::cmp_poly`].
    fn factor_squarefree(&self, a: &Poly<Self::Elem>) -> Vec<Poly<Self::Elem>>;
}

impl Factorize for QQ {
    fn factor_squarefree(&self, a: &Poly<Self::Elem>) -> Vec<Poly<Self::Elem>> {
        zassenhaus::factor_squarefree(a)
    }
}

impl Factorize for Fp {
    fn factor_squarefree(&self, a: &Poly<Self::Elem>) -> Vec<Poly<Self::Elem>> {
        finite::factor_squarefree(self, a)
    }
}

impl Factorize for Cyclotomic {
    fn factor_squarefree(&self, a: &Poly<Self::Elem>) -> Vec<Poly<Self::Elem>> {
        self.as_ext().factor_squarefree(a)
    }
}

impl<F: Factorize> Factorize for Ext<F> {
    fn factor_squarefree(&self, a: &Poly<Self::Elem>) -> Vec<Poly<Self::Elem>> {
        if self.degree() == 1 {
            let down = a.map(|c| c[0].clone());
            return self
                .base()
                .factor_squarefree(&down)
                .iter()
                .map(|g| self.embed_poly(g))
                .collect();
        }
        if self.is_finite() {
            finite::factor_squarefree(self, a)
        } else {
            numberfield::factor_squarefree(self, a)
        }
    }
}

/// A complete factorization `unit · Π g_i^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, usize)>,
}

pub fn factor<F: Factorize>(f: &F, a: &Poly<F::Elem>) -> Factorization<F::Elem> {
    assert!(!a.is_zero(), "cannot factor the zero polynomial");
    let unit = a.lc().unwrap().clone();
    let mut factors: Vec<(Poly<F::Elem>, usize)> = poly::squarefree_decomposition(f, a)
        .into_iter()
        .flat_map(|(g, m)| f.factor_squarefree(&g).into_iter().map(move |h| (h, m)))
        .collect();
    factors.sort_by(|(u, _), (v, _)| poly::cmp_poly(f, u, v));
    Factorization { unit, factors }
}

/// Distinct monic irreducible factors.
pub fn irreducible_factors<F: Factorize>(f: &F, a: &Poly<F::Elem>) -> Vec<Poly<F::Elem>> {
    if a.is_constant() {
        return Vec::new();
    }
    let sf = poly::squarefree_part(f, a);
    f.factor_squarefree(&sf)
}

pub fn is_irreducible<F: Factorize>(f: &F, a: &Poly<F::Elem>) -> bool {
    a.deg() >= 1 && poly::is_squarefree(f, a) && f.factor_squarefree(&poly::monic(f, a)).len() == 1
}

/// Roots in the field, sorted by [`Field::cmp_elem`].
pub fn roots<F: Field>(f: &F, a: &Poly<F::Elem>) -> Vec<F::Elem>
where
    F: Factorize,
{
    if a.deg() < 1 {
        return Vec::new();
    }
    if f.is_finite() {
        return finite::roots(f, &poly::squarefree_part(f, a));
    }
    let mut rs: Vec<F::Elem> = irreducible_factors(f, a)
        .into_iter()
        .filter(|g| g.degree() == Some(1))
        .map(|g| f.neg(&g.coeffs()[0]))
        .collect();
    rs.sort_by(|u, v| f.cmp_elem(u, v));
    rs
}
