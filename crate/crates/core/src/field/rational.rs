use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::{Field, DEFAULT_SEED};

/// The rational numbers.
#[derive(Clone, Debug)]
pub struct QQ {
    seed: u64,
}

impl Default for QQ {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED }
    }
}

impl QQ {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_seed(seed: u64) -> Self {
        Self { seed }
    }
}

pub(crate) fn rational_mod_p(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let inv = super::fp::inv_mod(den, p)?;
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

impl Field for QQ {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<BigUint> {
        None
    }

    fn cmp_elem(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-20i64..=20)))
    }

    fn seed(&self) -> u64 {
        self.seed
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn absolute_degree(&self) -> usize {
        1
    }

    fn residue_chains(&self, _p: u64) -> Vec<Vec<u64>> {
        vec![vec![]]
    }

    fn reduce_mod(&self, _chain: &[u64], p: u64, a: &BigRational) -> Option<u64> {
        rational_mod_p(a, p)
    }

    fn pth_root(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Least common multiple of the denominators.
pub(crate) fn denominator_lcm<'a, I: IntoIterator<Item = &'a BigRational>>(items: I) -> BigInt {
    items
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
