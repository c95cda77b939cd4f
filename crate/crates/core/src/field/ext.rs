use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::RngCore;

use super::{Field, FieldElem};
use crate::linalg::{self, Matrix};
use crate::poly::{self, Poly};

/// A simple extension `F[t]/(m)` with `m` monic irreducible; elements are
/// coordinate vectors in the power basis of the generator.
pub struct Ext<F: Field> {
    inner: Arc<ExtInner<F>>,
}

struct ExtInner<F: Field> {
    base: F,
    modulus: Poly<F::Elem>,
    name: String,
}

impl<F: Field> Clone for Ext<F> {
    fn clone(&self) -> Self {
        Self { inner: Arc::clone(&self.inner) }
    }
}

impl<F: Field> fmt::Debug for Ext<F> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            fm,
            "Ext({} : {})",
            self.inner.name,
            poly::fmt_poly(&self.inner.base, &self.inner.modulus, &self.inner.name)
        )
    }
}

impl<F: Field> Ext<F> {
    /// `modulus` must be irreducible of positive degree; it is made monic.
    pub fn new(base: F, modulus: &Poly<F::Elem>, name: &str) -> Self {
        assert!(modulus.deg() >= 1, "extension modulus must have positive degree");
        let modulus = poly::monic(&base, modulus);
        Self {
            inner: Arc::new(ExtInner { base, modulus, name: name.to_string() }),
        }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.inner.modulus
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.degree().unwrap()
    }

    pub fn embed(&self, b: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base().zero(); self.degree()];
        v[0] = b.clone();
        v
    }

    pub fn generator(&self) -> Vec<F::Elem> {
        self.from_poly(&poly::x(self.base()))
    }

    pub fn from_poly(&self, p: &Poly<F::Elem>) -> Vec<F::Elem> {
        let r = if p.deg() < self.degree() as isize {
            p.clone()
        } else {
            poly::rem(self.base(), p, self.modulus())
        };
        let mut v = r.into_coeffs();
        v.resize(self.degree(), self.base().zero());
        v
    }

    pub fn to_poly(&self, e: &[F::Elem]) -> Poly<F::Elem> {
        Poly::new(e.to_vec())
    }

    /// The element as a base-field element, if it lies there.
    pub fn in_base(&self, e: &[F::Elem]) -> Option<F::Elem> {
        e[1..].iter().all(FieldElem::is_zero).then(|| e[0].clone())
    }

    pub fn embed_poly(&self, p: &Poly<F::Elem>) -> Poly<Vec<F::Elem>> {
        p.map(|c| self.embed(c))
    }

    /// Columns are the coordinates of `e · t^i`.
    pub fn mul_matrix(&self, e: &[F::Elem]) -> Matrix<F::Elem> {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = e.to_vec();
        let t = self.generator();
        for _ in 0..n {
            cols.push(cur.clone());
            cur = self.mul(&cur, &t);
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self, e: &[F::Elem]) -> F::Elem {
        linalg::det(self.base(), &self.mul_matrix(e))
    }

    pub fn trace(&self, e: &[F::Elem]) -> F::Elem {
        let m = self.mul_matrix(e);
        let b = self.base();
        (0..m.len()).fold(b.zero(), |acc, i| b.add(&acc, &m[i][i]))
    }

    pub fn charpoly(&self, e: &[F::Elem]) -> Poly<F::Elem> {
        linalg::charpoly(self.base(), &self.mul_matrix(e))
    }

    /// Monic minimal polynomial over the base (the radical of the characteristic polynomial).
    pub fn minimal_polynomial(&self, e: &[F::Elem]) -> Poly<F::Elem> {
        poly::squarefree_part(self.base(), &self.charpoly(e))
    }

    /// `Tr(e) / [self : base]`, which equals minus the subleading coefficient
    /// of the minimal polynomial divided by its degree.
    pub fn normalized_trace(&self, e: &[F::Elem]) -> F::Elem {
        let b = self.base();
        let n = b.from_i64(self.degree() as i64);
        b.div(&self.trace(e), &n)
    }

    /// Evaluates a base-field polynomial at an extension element.
    pub fn eval_base_poly(&self, p: &Poly<F::Elem>, at: &[F::Elem]) -> Vec<F::Elem> {
        p.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, &at.to_vec()), &self.embed(c)))
    }

    fn reduce_product(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let b = self.base();
        let n = self.degree();
        let m = self.modulus().coeffs();
        for i in (n..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[i], b.zero());
            for j in 0..n {
                if !m[j].is_zero() {
                    let t = b.mul(&c, &m[j]);
                    v[i - n + j] = b.sub(&v[i - n + j], &t);
                }
            }
        }
        v.truncate(n);
        v
    }
}

impl<F: Field> Field for Ext<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base().one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = self.base();
        let n = self.degree();
        if n == 1 {
            return vec![f.mul(&a[0], &b[0])];
        }
        let mut v = vec![f.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = f.add(&v[i + j], &f.mul(x, y));
                }
            }
        }
        self.reduce_product(v)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        if self.degree() == 1 {
            return self.base().inv(&a[0]).map(|x| vec![x]);
        }
        let s = poly::inv_mod(self.base(), &self.to_poly(a), self.modulus())?;
        Some(self.from_poly(&s))
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.base().from_int(n))
    }

    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.base().from_rational(q).map(|b| self.embed(&b))
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn order(&self) -> Option<BigUint> {
        self.base().order().map(|q| q.pow(self.degree() as u32))
    }

    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base().cmp_elem(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem {
        (0..self.degree()).map(|_| self.base().random_elem(rng)).collect()
    }

    fn seed(&self) -> u64 {
        self.base().seed()
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        if self.degree() == 1 {
            return self.base().fmt_elem(&a[0]);
        }
        poly::fmt_poly(self.base(), &self.to_poly(a), self.name())
    }

    fn as_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        self.in_base(a).and_then(|b| self.base().as_rational(&b))
    }

    fn absolute_degree(&self) -> usize {
        self.degree() * self.base().absolute_degree()
    }

    fn residue_chains(&self, p: u64) -> Vec<Vec<u64>> {
        let fp = super::Fp::new(p);
        let mut out = Vec::new();
        for chain in self.base().residue_chains(p) {
            let Some(m) = self
                .modulus()
                .try_map(|c| self.base().reduce_mod(&chain, p, c))
            else {
                continue;
            };
            if m.degree() != Some(self.degree()) || !poly::is_squarefree(&fp, &m) {
                continue;
            }
            for r in crate::factor::roots(&fp, &m) {
                let mut c = chain.clone();
                c.push(r);
                out.push(c);
            }
        }
        out
    }

    fn reduce_mod(&self, chain: &[u64], p: u64, a: &Self::Elem) -> Option<u64> {
        let (r, base_chain) = chain.split_last()?;
        let fp = super::Fp::new(p);
        let mut acc = 0u64;
        for c in a.iter().rev() {
            let v = self.base().reduce_mod(base_chain, p, c)?;
            acc = fp.add(&fp.mul(&acc, r), &v);
        }
        Some(acc)
    }

    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let q = self.order().expect("p-th root only in finite fields");
        let p = BigUint::from(self.characteristic());
        self.pow(a, &(q / p))
    }
}
