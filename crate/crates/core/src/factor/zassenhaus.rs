//! Factorization over the rationals: modular factorization, Hensel lifting
//! and recombination of lifted factors.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::finite;
use crate::field::{is_prime, Field, Fp, QQ};
use crate::poly::{self, Poly};

type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zmod(v: &[BigInt], m: &BigInt) -> ZPoly {
    trim(v.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsym(v: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        v.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

fn zmulmod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zmod(&zmul(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r: ZPoly = zmod(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i + j] = (&r[i + j] - &c * &b[j]).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

/// Exact division over ℤ; `None` if `b` does not divide `a`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rest) = r[i + db].div_rem(lb);
        if !rest.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i + j] -= &c * &b[j];
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    let sign = if a.last().is_some_and(|l| l.sign() == Sign::Minus) { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|x| x / &c * &sign).collect()
}

fn to_fp(fp: &Fp, a: &[BigInt]) -> Poly<u64> {
    Poly::new(a.iter().map(|c| fp.from_int(c)).collect())
}

fn from_fp(a: &Poly<u64>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step for `f ≡ g h (mod m)` with `h` monic and
/// `s g + t h ≡ 1 (mod m)`, producing the same data modulo `m2` (`m | m2 | m²`).
fn hensel_step(
    f: &[BigInt],
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = zmod(&zsub(f, &zmul(g, h)), m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, m2);
    let g1 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), m2);
    let h1 = zmod(&zadd(h, &r), m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]), m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, m2);
    let s1 = zmod(&zsub(s, &d), m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), m2);
    (g1, h1, s1, t1)
}

/// Lifts `f ≡ lc(f) Π g_i (mod p)` to modulus `pa = p^a`; lifted factors are monic.
fn hensel_lift(f: &[BigInt], gs: &[Poly<u64>], fp: &Fp, pa: &BigInt) -> Vec<ZPoly> {
    let p = BigInt::from(fp.p());
    let mut target = zmod(f, pa);
    let mut out = Vec::with_capacity(gs.len());
    for (i, gi) in gs.iter().enumerate().take(gs.len() - 1) {
        // rest ≡ lc · Π_{j>i} g_j (mod p)
        let lc = fp.from_int(target.last().unwrap());
        let rest_fp = gs[i + 1..]
            .iter()
            .fold(Poly::constant(lc), |acc, g| poly::mul(fp, &acc, g));
        let (one, s0, t0) = poly::xgcd(fp, &rest_fp, gi);
        debug_assert!(one.degree() == Some(0));
        let (qq, s_fp) = poly::divrem(fp, &s0, gi);
        let t_fp = poly::add(fp, &t0, &poly::mul(fp, &qq, &rest_fp));
        let (mut g, mut h, mut s, mut t) = (from_fp(&rest_fp), from_fp(gi), from_fp(&s_fp), from_fp(&t_fp));
        let mut m = p.clone();
        while &m < pa {
            let m2 = (&m * &m).min(pa.clone());
            (g, h, s, t) = hensel_step(&target, &g, &h, &s, &t, &m2);
            m = m2;
        }
        out.push(h);
        target = g;
    }
    // the last factor carries the leading coefficient
    let lc_inv = target.last().unwrap().modinv(pa).expect("leading coefficient invertible");
    out.push(zmod(&target.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), pa));
    out
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = idx.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    })
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient and nonzero constant term.
fn factor_primitive(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // choose a prime with few modular factors, and intersect degree patterns
    let mut feasible = vec![true; n + 1];
    let mut best: Option<(usize, Fp)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p += 1;
        if !is_prime(p) || (&lc % p).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let fbar = poly::monic(&fp, &to_fp(&fp, f));
        if !poly::is_squarefree(&fp, &fbar) {
            continue;
        }
        tried += 1;
        let ddf = finite::distinct_degree(&fp, &fbar);
        let degrees: Vec<usize> = ddf
            .iter()
            .flat_map(|(g, d)| std::iter::repeat(*d).take(g.degree().unwrap() / d))
            .collect();
        let reach = subset_sums(&degrees, n);
        for (slot, r) in feasible.iter_mut().zip(&reach) {
            *slot &= *r;
        }
        if (1..n).all(|d| !feasible[d]) {
            return vec![f.to_vec()];
        }
        if best.as_ref().map_or(true, |(c, _)| degrees.len() < *c) {
            best = Some((degrees.len(), fp));
        }
    }
    let (_, fp) = best.unwrap();
    let fbar = poly::monic(&fp, &to_fp(&fp, f));
    let gs = finite::factor_squarefree(&fp, &fbar);
    if gs.len() == 1 {
        return vec![f.to_vec()];
    }
    // coefficient bound for any factor, times the leading coefficient, doubled
    let norm2 = f.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1;
    let bound = (BigInt::one() << n) * norm2 * &lc * &lc * 2;
    let p_big = BigInt::from(fp.p());
    let mut pa = p_big.clone();
    while pa <= bound {
        pa *= &p_big;
    }
    let lifted = hensel_lift(f, &gs, &fp, &pa);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = None;
        for combo in combinations(remaining.len(), size) {
            let picked: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
            let deg: usize = picked.iter().map(|&i| lifted[i].len() - 1).sum();
            if !feasible[deg] || deg >= rest.len() - 1 {
                continue;
            }
            let lc_rest = rest.last().unwrap().clone();
            let prod = picked
                .iter()
                .fold(vec![lc_rest.clone()], |acc, &i| zmulmod(&acc, &lifted[i], &pa));
            let cand = primitive(&zsym(&prod, &pa));
            if !cand[0].is_zero() && !(&rest[0] % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = zdiv_exact(&rest, &cand) {
                found = Some((picked, cand, q));
                break;
            }
        }
        match found {
            Some((picked, cand, q)) => {
                remaining.retain(|i| !picked.contains(i));
                out.push(cand);
                rest = q;
            }
            None => size += 1,
        }
    }
    out.push(primitive(&rest));
    out
}

/// Monic irreducible factors of a monic squarefree rational polynomial.
pub(crate) fn factor_squarefree(a: &Poly<BigRational>) -> Vec<Poly<BigRational>> {
    let q = QQ::new();
    let n = a.degree().expect("nonzero");
    if n <= 1 {
        return vec![a.clone()];
    }
    if a.coeffs()[0].is_zero() {
        let x = poly::x(&q);
        let mut out = vec![x.clone()];
        out.extend(factor_squarefree(&poly::div_exact(&q, a, &x)));
        out.sort_by(|u, v| poly::cmp_poly(&q, u, v));
        return out;
    }
    let den = crate::field::denominator_lcm(a.coeffs());
    let ints: ZPoly = a
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let f = primitive(&ints);
    let mut out: Vec<Poly<BigRational>> = factor_primitive(&f)
        .into_iter()
        .map(|g| {
            let p = Poly::new(g.into_iter().map(BigRational::from_integer).collect());
            poly::monic(&q, &p)
        })
        .collect();
    out.sort_by(|u, v| poly::cmp_poly(&q, u, v));
    out
}
