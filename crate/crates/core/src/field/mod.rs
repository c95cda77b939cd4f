//! Exact scalar fields: rationals, prime fields and simple algebraic extensions.

mod cyclotomic;
mod ext;
mod fp;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use ext::Ext;
pub use fp::Fp;
pub use fp::is_prime;
pub use rational::QQ;
pub(crate) use rational::denominator_lcm;

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

pub const DEFAULT_SEED: u64 = 0x5eed_1e55;

/// Elements carry enough structure to be tested for zero without their field.
pub trait FieldElem: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
}

impl FieldElem for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl FieldElem for u64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl<E: FieldElem> FieldElem for Vec<E> {
    fn is_zero(&self) -> bool {
        self.iter().all(FieldElem::is_zero)
    }
}

/// A field given as a context object; elements are plain values.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: FieldElem;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// `None` when the denominator is not invertible in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// Number of elements of a finite field.
    fn order(&self) -> Option<BigUint>;
    /// Total order used for every deterministic tie-break.
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn seed(&self) -> u64;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// The element as a rational, when it lies in the prime field of a char-0 field.
    fn as_rational(&self, a: &Self::Elem) -> Option<BigRational>;
    /// Degree over the prime field.
    fn absolute_degree(&self) -> usize;
    /// Ring homomorphisms into F_p given by chains of generator images,
    /// listed in ascending lexicographic order.
    fn residue_chains(&self, p: u64) -> Vec<Vec<u64>>;
    /// Image of `a` under the homomorphism described by `chain`, if `a` is p-integral.
    fn reduce_mod(&self, chain: &[u64], p: u64, a: &Self::Elem) -> Option<u64>;
    /// The p-th root of a finite-field element.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(e))
    }

    fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub(crate) fn rational_is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Characteristic-zero fields of the tower, each containing `Q(ξ_k)`.
pub trait NumberField: crate::factor::Factorize {
    fn cyclotomic(&self) -> &Cyclotomic;
    fn embed_cyclotomic(&self, a: &[BigRational]) -> Self::Elem;
    /// The element as a cyclotomic number, when it lies in `Q(ξ_k)`.
    fn project_cyclotomic(&self, a: &Self::Elem) -> Option<Vec<BigRational>>;

    fn xi_pow(&self, i: i64) -> Self::Elem {
        self.embed_cyclotomic(&self.cyclotomic().xi_pow(i))
    }
}

impl NumberField for Cyclotomic {
    fn cyclotomic(&self) -> &Cyclotomic {
        self
    }

    fn embed_cyclotomic(&self, a: &[BigRational]) -> Self::Elem {
        a.to_vec()
    }

    fn project_cyclotomic(&self, a: &Self::Elem) -> Option<Vec<BigRational>> {
        Some(a.clone())
    }
}

impl<F: NumberField> NumberField for Ext<F> {
    fn cyclotomic(&self) -> &Cyclotomic {
        self.base().cyclotomic()
    }

    fn embed_cyclotomic(&self, a: &[BigRational]) -> Self::Elem {
        self.embed(&self.base().embed_cyclotomic(a))
    }

    fn project_cyclotomic(&self, a: &Self::Elem) -> Option<Vec<BigRational>> {
        self.in_base(a).and_then(|b| self.base().project_cyclotomic(&b))
    }
}
