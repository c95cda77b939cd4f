use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::{Field, DEFAULT_SEED};

/// The prime field F_p for p < 2^63.
#[derive(Clone, Debug)]
pub struct Fp {
    p: u64,
    seed: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Self::with_seed(p, DEFAULT_SEED)
    }

    pub fn with_seed(p: u64, seed: u64) -> Self {
        assert!(p >= 2 && p < (1 << 62), "prime out of range");
        Self { p, seed }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i128) as u64)
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced")
    }

    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        super::rational::rational_mod_p(q, self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }

    fn cmp_elem(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn seed(&self) -> u64 {
        self.seed
    }

    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn as_rational(&self, _a: &u64) -> Option<BigRational> {
        None
    }

    fn absolute_degree(&self) -> usize {
        1
    }

    fn residue_chains(&self, p: u64) -> Vec<Vec<u64>> {
        if p == self.p {
            vec![vec![]]
        } else {
            vec![]
        }
    }

    fn reduce_mod(&self, _chain: &[u64], p: u64, a: &u64) -> Option<u64> {
        (p == self.p).then_some(*a)
    }

    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}
