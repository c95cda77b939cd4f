use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::RngCore;

use super::rational::denominator_lcm;
use super::{Ext, Field, QQ};
use crate::poly::{self, Poly};

/// Φ_k over the rationals.
pub fn cyclotomic_polynomial(k: usize) -> Poly<BigRational> {
    let q = QQ::new();
    let mut acc = poly::sub(&q, &poly::monomial(&q, q.one(), k), &poly::one(&q));
    for d in (1..k).filter(|d| k % d == 0) {
        acc = poly::div_exact(&q, &acc, &cyclotomic_polynomial(d));
    }
    acc
}

/// The cyclotomic field `Q(ξ)` with ξ a primitive k-th root of unity, in the
/// power basis modulo Φ_k. For k = 2 it is `Q` itself with ξ = −1.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    k: usize,
    ext: Ext<QQ>,
}

impl Cyclotomic {
    pub fn new(k: usize) -> Self {
        Self::with_seed(k, super::DEFAULT_SEED)
    }

    pub fn with_seed(k: usize, seed: u64) -> Self {
        assert!(k >= 2, "cyclotomic index must be at least 2");
        let ext = Ext::new(QQ::with_seed(seed), &cyclotomic_polynomial(k), "xi");
        Self { k, ext }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn phi(&self) -> usize {
        self.ext.degree()
    }

    pub fn as_ext(&self) -> &Ext<QQ> {
        &self.ext
    }

    pub fn from_coords(&self, mut coords: Vec<BigRational>) -> Vec<BigRational> {
        coords.resize(self.phi(), BigRational::from_integer(0.into()));
        self.ext.from_poly(&Poly::new(coords))
    }

    /// ξ^i for any integer i.
    pub fn xi_pow(&self, i: i64) -> Vec<BigRational> {
        let e = i.rem_euclid(self.k as i64) as usize;
        self.ext
            .from_poly(&poly::monomial(&QQ::new(), BigRational::one(), e))
    }

    pub fn xi(&self) -> Vec<BigRational> {
        self.xi_pow(1)
    }

    /// The Galois automorphism ξ ↦ ξ^j (j coprime to k).
    pub fn galois(&self, j: usize, a: &[BigRational]) -> Vec<BigRational> {
        a.iter().enumerate().fold(self.zero(), |acc, (i, c)| {
            let term = self.ext.embed(c);
            self.add(&acc, &self.mul(&term, &self.xi_pow((i * j) as i64)))
        })
    }

    /// Membership in ℤ[ξ], the ring of integers.
    pub fn is_integral(&self, a: &[BigRational]) -> bool {
        a.iter().all(super::rational_is_integral)
    }

    /// Least `d > 0` with `d a ∈ ℤ[ξ]`, and `d a`.
    pub fn integerize(&self, a: &[BigRational]) -> (BigInt, Vec<BigRational>) {
        let d = denominator_lcm(a);
        let da = a.iter().map(|c| c * BigRational::from_integer(d.clone())).collect();
        (d, da)
    }

    /// `Tr_{K/Q}(a)`.
    pub fn trace_q(&self, a: &[BigRational]) -> BigRational {
        self.ext.trace(a)
    }
}

impl Field for Cyclotomic {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Self::Elem {
        self.ext.zero()
    }
    fn one(&self) -> Self::Elem {
        self.ext.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ext.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.ext.inv(a)
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.ext.from_int(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.ext.from_rational(q)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<BigUint> {
        None
    }
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.ext.cmp_elem(a, b)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem {
        self.ext.random_elem(rng)
    }
    fn seed(&self) -> u64 {
        self.ext.seed()
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.ext.fmt_elem(a)
    }
    fn as_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        self.ext.as_rational(a)
    }
    fn absolute_degree(&self) -> usize {
        self.phi()
    }
    fn residue_chains(&self, p: u64) -> Vec<Vec<u64>> {
        if self.k as u64 % p == 0 {
            return Vec::new();
        }
        self.ext.residue_chains(p)
    }
    fn reduce_mod(&self, chain: &[u64], p: u64, a: &Self::Elem) -> Option<u64> {
        self.ext.reduce_mod(chain, p, a)
    }
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }
}
