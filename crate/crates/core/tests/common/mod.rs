//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superint::curve::{Curve, CurveFunction};
use superint::divisor::{divisor_of_function, negabinary_digits, Divisor, SuperellipticDivisor, Triple};
use superint::factor;
use superint::field::{Cyclotomic, Ext, Field, FieldElem, Fp, NumberField};
use superint::integrate::{
    elementary_integrate, hermite_reduction, integrand_of, ratfun, ElementaryExpression, Integral, IntegrateOptions, RatFun,
    Verdict,
};
use superint::poly::{self, Poly};

pub type Cyc = Vec<BigRational>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_ints(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

fn random_cyc(rng: &mut ChaCha8Rng, c: &Cyclotomic, bound: i64) -> Cyc {
    c.from_coords(random_ints(rng, c.phi(), bound).into_iter().map(|n| rat(n, 1)).collect())
}

/// A random monic radicand satisfying the technical condition.
fn random_curve(rng: &mut ChaCha8Rng, c: &Cyclotomic, deg: usize) -> Curve<Cyclotomic> {
    loop {
        let mut cs = random_ints(rng, deg, 3);
        cs.push(1);
        if let Ok(curve) = Curve::over_number_field(c.clone(), poly::from_ints(c, &cs)) {
            return curve;
        }
    }
}

// ---------------------------------------------------------------------------
// fixtures

pub fn cyc(c: &Cyclotomic, a: i64, b: i64, d: i64) -> Cyc {
    c.from_coords(vec![rat(a, d), rat(b, d)])
}

pub fn i4(c: &Cyclotomic) -> Integral<Cyc> {
    Integral {
        p: poly::scale(c, &poly::from_ints(c, &[-10240, 2688, 267, 5]), &c.from_rational(&rat(8, 29)).unwrap()),
        q: poly::from_ints(c, &[512, 40, 1]),
        s: poly::from_ints(c, &[4194304, 1048576, 102400, 4864, 113, 1]),
        k: 2,
    }
}

pub fn i1(c: &Cyclotomic) -> Integral<Cyc> {
    Integral {
        p: poly::from_ints(c, &[535423]),
        q: poly::mul(c, &poly::from_ints(c, &[12964, -880, 236, -8, 1]), &poly::from_ints(c, &[-15, 1])),
        s: poly::from_ints(c, &[118, 0, 1]),
        k: 3,
    }
}

pub fn i3(c: &Cyclotomic) -> Integral<Cyc> {
    Integral { p: poly::from_ints(c, &[3]), q: poly::from_ints(c, &[-1, 1]), s: poly::from_ints(c, &[8, 0, 0, 1]), k: 2 }
}

pub fn family(c: &Cyclotomic, n: usize) -> Integral<Cyc> {
    let mut qc = vec![0i64; n + 1];
    qc[0] = -3;
    qc[1] += 1;
    qc[n] += 1;
    Integral { p: poly::from_ints(c, &[1]), q: poly::from_ints(c, &qc), s: poly::from_ints(c, &[118, 0, 1]), k: 3 }
}

pub fn sqrt5() -> Ext<Cyclotomic> {
    let c = Cyclotomic::new(2);
    Ext::new(c.clone(), &poly::from_ints(&c, &[-5, 0, 1]), "a")
}

/// `u + v √5` over `Q(√5)`.
pub fn q5(b: &Ext<Cyclotomic>, u: i64, v: i64) -> Vec<Cyc> {
    b.add(&b.from_i64(u), &b.mul(&b.from_i64(v), &b.generator()))
}

pub fn i2(b: &Ext<Cyclotomic>) -> Integral<Vec<Cyc>> {
    Integral {
        p: Poly::new(vec![b.mul(&b.from_i64(8), &q5(b, -15, 7))]),
        q: Poly::new(vec![q5(b, -20, 8), b.one()]),
        s: Poly::new(vec![b.from_i64(80), b.from_i64(-40), b.from_i64(5), b.one()]),
        k: 2,
    }
}

/// Recursion depth for a divisor with values `±m`.
pub fn negabinary_len(m: i64) -> usize {
    negabinary_digits(m).len().max(negabinary_digits(-m).len())
}

pub fn max_digit_run(s: &str) -> usize {
    s.split(|ch: char| !ch.is_ascii_digit()).map(str::len).max().unwrap_or(0)
}

pub fn fmt_divisor<F: Field>(f: &F, d: &Divisor<F::Elem>) -> String {
    d.triples()
        .iter()
        .map(|t| format!("[{}, {}, {:?}]", poly::fmt_poly(f, &t.q, "x"), poly::fmt_poly(f, &t.r, "x"), t.values))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Compares the derivative of `expr` with the integrand at sample points.
pub fn derivative_matches<B: NumberField>(b: &B, int: &Integral<B::Elem>, expr: &ElementaryExpression<B>) -> Result<usize, String> {
    let integrand = int.integrand(b);
    let mut checked = 0;
    for x0 in [3i64, -7, 10, 13, 21] {
        let x0 = b.from_i64(x0);
        let got = expr.derivative_at(b, &int.s, &x0).map_err(|e| e.to_string())?;
        if let (Some(want), Some(got)) = (ratfun::eval(b, &integrand, &x0), got) {
            if want != got {
                return Err(format!("derivative differs at {}", b.fmt_elem(&x0)));
            }
            checked += 1;
        }
    }
    if checked < 3 {
        return Err("too few sample points".into());
    }
    Ok(checked)
}

const SHAPES: [(usize, usize); 3] = [(2, 3), (2, 5), (3, 2)];

// ---------------------------------------------------------------------------
// principality over F_p

/// A divisor on rational points `(x0, ξ^l y0)` of a curve over `F_p`.
pub struct FpCase {
    pub curve: Curve<Fp>,
    pub points: Vec<(u64, u64, Vec<i64>)>,
}

impl FpCase {
    pub fn divisor(&self) -> Divisor<u64> {
        let f = self.curve.field();
        let triples = self
            .points
            .iter()
            .map(|(x0, y0, v)| Triple { q: Poly::new(vec![f.neg(x0), 1]), r: Poly::new(vec![*y0]), values: v.clone() })
            .collect();
        self.curve.divisor(triples).unwrap()
    }

    pub fn height(&self) -> i64 {
        self.points.iter().flat_map(|(_, _, v)| v).map(|a| a.abs()).sum()
    }
}

fn root_of_unity(f: &Fp, k: usize) -> u64 {
    (2..f.p()).find(|g| f.pow_u64(g, k as u64) == 1 && (1..k).all(|e| f.pow_u64(g, e as u64) != 1)).unwrap()
}

fn kth_root(f: &Fp, a: u64, k: usize) -> Option<u64> {
    (1..f.p()).find(|y| f.pow_u64(y, k as u64) == a)
}

fn fp_curve(rng: &mut ChaCha8Rng) -> Curve<Fp> {
    let p = *[31u64, 37, 43].choose(rng).unwrap();
    let f = Fp::new(p);
    let (k, d) = *SHAPES.choose(rng).unwrap();
    let xi = root_of_unity(&f, k);
    loop {
        let mut cs: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        cs.push(1);
        if let Ok(c) = Curve::new(f.clone(), k, Poly::new(cs), xi) {
            return c;
        }
    }
}

/// Random divisors of height at most 8, half of them built from divisors of
/// functions so that principal classes are well represented.
pub fn random_fp_case(seed: u64) -> FpCase {
    let mut rng = rng(seed);
    let curve = fp_curve(&mut rng);
    let f = curve.field().clone();
    let k = curve.k();
    let rational: Vec<(u64, u64)> = (0..f.p())
        .filter_map(|x| {
            let s = poly::eval(&f, curve.s(), &x);
            (s != 0).then(|| kth_root(&f, s, k)).flatten().map(|y| (x, y))
        })
        .collect();
    if rng.gen_bool(0.5) {
        for _ in 0..200 {
            let g = CurveFunction::new(
                vec![Poly::new((0..2).map(|_| rng.gen_range(0..f.p())).collect()), Poly::new(vec![1])],
                k,
            );
            let d = divisor_of_function(&curve, &g).unwrap();
            if d.height() > 8 || d.triples().iter().any(|t| t.q.deg() != 1) {
                continue;
            }
            let mut points: Vec<_> = d
                .triples()
                .iter()
                .map(|t| (f.neg(&t.q.coeffs()[0]), t.r.coeffs()[0], t.values.clone()))
                .collect();
            // shift by the principal fiber divisor of x − x0
            if let Some(pt) = points.first_mut() {
                let shift: i64 = rng.gen_range(-1..=0);
                pt.2.iter_mut().for_each(|v| *v += shift);
            }
            points.retain(|p| p.2.iter().any(|&v| v != 0));
            let case = FpCase { curve: curve.clone(), points };
            if case.height() <= 8 {
                return case;
            }
        }
    }
    loop {
        let mut pts = rational.clone();
        pts.shuffle(&mut rng);
        let count = rng.gen_range(1..=3.min(pts.len()));
        let points: Vec<_> = pts[..count]
            .iter()
            .map(|&(x, y)| (x, y, (0..k).map(|_| rng.gen_range(-2..=2)).collect::<Vec<i64>>()))
            .filter(|p| p.2.iter().any(|&v| v != 0))
            .collect();
        let case = FpCase { curve: curve.clone(), points };
        if (1..=8).contains(&case.height()) {
            return case;
        }
    }
}

fn rank_mod_p(f: &Fp, mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(&rows[r][c]).unwrap();
        let pr: Vec<u64> = rows[r].iter().map(|a| f.mul(a, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let t = row[c];
                for (a, b) in row.iter_mut().zip(&pr) {
                    *a = f.sub(a, &f.mul(&t, b));
                }
            }
        }
        rows[r] = pr;
        r += 1;
    }
    r
}

/// Whether `L(n∞ − E) ≠ 0` for effective `E` of degree `n`: vanishing orders at
/// unramified points via iterates of the derivation `S ∂x`, and at the place
/// over a factor `s` of `S` via `s | Q_j` for `j < ρ`.
fn has_section(curve: &Curve<Fp>, e: &[(u64, u64, Vec<u64>)], ram: &[Poly<u64>], rho: &[usize]) -> bool {
    let f = curve.field();
    let (k, d) = (curve.k(), curve.deg_s());
    let n = e.iter().flat_map(|p| &p.2).sum::<u64>() as usize
        + ram.iter().zip(rho).map(|(s, r)| r * s.deg() as usize).sum::<usize>();
    let monos: Vec<(usize, usize)> =
        (0..k).flat_map(|j| (0..).take_while(move |i| k * i + d * j <= n).map(move |i| (i, j))).collect();
    if monos.is_empty() {
        return false;
    }
    let s = curve.s();
    let ds = poly::derivative(f, s);
    let kinv = f.inv(&f.from_i64(k as i64)).unwrap();
    let mut rows = Vec::new();
    for (x0, y0, vals) in e {
        let mmax = *vals.iter().max().unwrap() as usize;
        // (S ∂x)^t (x^i y^j) = Q_t y^j
        let iterates: Vec<Vec<u64>> = monos
            .iter()
            .map(|&(i, j)| {
                let jk = f.mul(&f.from_i64(j as i64), &kinv);
                let mut q = poly::monomial(f, 1, i);
                (0..mmax)
                    .map(|_| {
                        let v = poly::eval(f, &q, x0);
                        q = poly::add(f, &poly::mul(f, s, &poly::derivative(f, &q)), &poly::scale(f, &poly::mul(f, &ds, &q), &jk));
                        v
                    })
                    .collect()
            })
            .collect();
        for (l, &m) in vals.iter().enumerate() {
            let y = f.mul(y0, &f.pow_u64(curve.xi_pow(1), l as u64));
            for t in 0..m as usize {
                rows.push(monos.iter().zip(&iterates).map(|(&(_, j), it)| f.mul(&it[t], &f.pow_u64(&y, j as u64))).collect());
            }
        }
    }
    for (sf, &r) in ram.iter().zip(rho) {
        for j in 0..r {
            for c in 0..sf.deg() as usize {
                rows.push(
                    monos
                        .iter()
                        .map(|&(i, jj)| {
                            if jj != j {
                                return 0;
                            }
                            poly::coeff_or_zero(f, &poly::rem(f, &poly::monomial(f, 1, i), sf), c)
                        })
                        .collect(),
                );
            }
        }
    }
    rank_mod_p(f, rows, monos.len()) < monos.len()
}

/// Principality modulo ramification points and infinity by direct linear
/// solves: `D` is principal iff for `E = D + Σ M div(x − x0)` effective and
/// some ramification offset `ρ` with entries below `k`, the space
/// `L(deg(E + ρ)∞ − E − ρ)` is nonzero.
pub fn oracle_is_principal(case: &FpCase) -> bool {
    let curve = &case.curve;
    let f = curve.field();
    let e: Vec<(u64, u64, Vec<u64>)> = case
        .points
        .iter()
        .map(|(x0, y0, v)| {
            let m = -(*v.iter().min().unwrap()).min(0);
            (*x0, *y0, v.iter().map(|a| (a + m) as u64).collect())
        })
        .collect();
    let ram = factor::irreducible_factors(f, curve.s());
    let mut rho = vec![0usize; ram.len()];
    loop {
        if has_section(curve, &e, &ram, &rho) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == rho.len() {
                return false;
            }
            rho[i] += 1;
            if rho[i] < curve.k() {
                break;
            }
            rho[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// untwisting

pub struct UntwistCase {
    pub cyc: Cyclotomic,
    pub curve: Curve<Cyclotomic>,
    pub divisor: SuperellipticDivisor<Cyc>,
}

/// An equivariant divisor with random `Z[ξ]` values on rational points of a
/// curve through those points.
pub fn random_untwist_case(seed: u64) -> UntwistCase {
    let mut rng = rng(seed);
    let k = rng.gen_range(2..=6usize);
    let degs: Vec<usize> = (1..=5).filter(|d| d.gcd(&k) == 1).collect();
    let d = *degs.choose(&mut rng).unwrap();
    let c = Cyclotomic::new(k);
    loop {
        let m = rng.gen_range(1..=d.min(3));
        let mut xs: Vec<i64> = (-5..=5).collect();
        xs.shuffle(&mut rng);
        xs.truncate(m);
        let ys: Vec<i64> = (0..m).map(|_| *[-3i64, -2, -1, 1, 2, 3].choose(&mut rng).unwrap()).collect();
        let xe: Vec<Cyc> = xs.iter().map(|&x| c.from_i64(x)).collect();
        let ye: Vec<Cyc> = xs.iter().zip(&ys).map(|(&x, &y)| c.from_i64(y.pow(k as u32) - x.pow(d as u32))).collect();
        let s = poly::add(&c, &poly::monomial(&c, c.one(), d), &poly::interpolate(&c, &xe, &ye));
        let Ok(curve) = Curve::over_number_field(c.clone(), s) else {
            continue;
        };
        let fibers = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| (poly::from_ints(&c, &[-x, 1]), poly::from_ints(&c, &[y]), random_cyc(&mut rng, &c, 20)))
            .filter(|fib| fib.2.iter().any(|v| v != &rat(0, 1)))
            .collect();
        let divisor = SuperellipticDivisor::from_base_values(&c, fibers);
        return UntwistCase { cyc: c, curve, divisor };
    }
}

/// Checks `k D(z) = Σ_i ξ^i D̃(σ^i z)` pointwise and `Σ_l D̃(z_l) ξ^{jl} = 0`
/// for `gcd(j, k) ≠ 1`, matching ordinates up to the rotation chosen by the
/// canonical form.
pub fn untwist_identities_hold(case: &UntwistCase) -> Result<(), String> {
    let (c, curve) = (&case.cyc, &case.curve);
    let k = c.k();
    let dt = case.divisor.untwist(curve, c).map_err(|e| e.to_string())?;
    if dt.triples().len() != case.divisor.triples.len() {
        return Err("support changed".into());
    }
    for (q, r, vs) in &case.divisor.triples {
        let t = dt.triples().iter().find(|t| &t.q == q).ok_or("missing fiber")?;
        let shift = (0..k)
            .find(|&s| poly::divides(c, q, &poly::sub(c, &poly::scale(c, r, &c.xi_pow(s as i64)), &t.r)))
            .ok_or("ordinate mismatch")?;
        let dv = |l: usize| c.from_i64(t.values[(l + k - shift) % k]);
        for (l, v) in vs.iter().enumerate() {
            let rhs = (0..k).fold(c.zero(), |acc, i| c.add(&acc, &c.mul(&c.xi_pow(i as i64), &dv(l + i))));
            if rhs != c.mul(&c.from_i64(k as i64), v) {
                return Err(format!("reconstruction fails at index {l}"));
            }
        }
        for j in (0..k).filter(|j| j.gcd(&k) != 1) {
            let u = (0..k).fold(c.zero(), |acc, l| c.add(&acc, &c.mul(&dv(l), &c.xi_pow((j * l) as i64))));
            if !u.is_zero() {
                return Err(format!("constraint fails for j = {j}"));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Hermite reduction

pub fn random_hermite_case(seed: u64) -> (Cyclotomic, Integral<Cyc>) {
    let mut rng = rng(seed);
    let (k, d) = *[(2usize, 1usize), (2, 3), (2, 5), (3, 1), (3, 2), (3, 4)].choose(&mut rng).unwrap();
    let c = Cyclotomic::new(k);
    let curve = random_curve(&mut rng, &c, d);
    let mut q = poly::one(&c);
    for _ in 0..rng.gen_range(1..=3) {
        let fdeg = rng.gen_range(1..=2);
        let mut cs = random_ints(&mut rng, fdeg, 4);
        cs.push(1);
        q = poly::mul(&c, &q, &poly::pow(&c, &poly::from_ints(&c, &cs), rng.gen_range(1..=3)));
    }
    if rng.gen_bool(0.25) {
        q = poly::mul(&c, &q, &poly::pow(&c, curve.s(), rng.gen_range(1..=2)));
    }
    let p = loop {
        let n = rng.gen_range(1..=6);
        let p = poly::from_ints(&c, &random_ints(&mut rng, n, 5));
        if !p.is_zero() {
            break p;
        }
    };
    (c, Integral { p, q, s: curve.s().clone(), k })
}

/// `Some(true)` when the reduction succeeds and is sound, `None` on FAIL.
pub fn hermite_is_sound(c: &Cyclotomic, int: &Integral<Cyc>) -> Option<Result<(), String>> {
    let hr = hermite_reduction(c, int)?;
    // ∂x(g S^{-1/k}) = (g' S − g S'/k) / S · S^{-1/k}
    let s = ratfun::from_poly(c, int.s.clone());
    let ds = ratfun::from_poly(c, poly::derivative(c, &int.s));
    let kinv = c.inv(&c.from_i64(int.k as i64)).unwrap();
    let dg = ratfun::derivative(c, &hr.g);
    let num = ratfun::sub(c, &ratfun::mul(c, &dg, &s), &ratfun::scale(c, &ratfun::mul(c, &hr.g, &ds), &kinv));
    let alg = ratfun::mul(c, &num, &ratfun::new(c, poly::one(c), int.s.clone()));
    let rhs = ratfun::add(c, &alg, &ratfun::new(c, hr.reduced.p.clone(), hr.reduced.q.clone()));
    if rhs != ratfun::new(c, int.p.clone(), int.q.clone()) {
        return Some(Err("identity fails".into()));
    }
    let red = &hr.reduced;
    let degree_ok = red.p.is_zero() || (int.k as isize) * red.p.deg() < (int.k as isize) * red.q.deg() + red.s.deg() - int.k as isize;
    let coprime = poly::gcd(c, &red.q, &red.s).is_constant();
    if !(degree_ok && poly::is_squarefree(c, &red.q) && coprime) {
        return Some(Err("remainder is not reduced".into()));
    }
    Some(Ok(()))
}

// ---------------------------------------------------------------------------
// round-trip synthesis

pub struct Synthetic {
    pub cyc: Cyclotomic,
    pub curve: Curve<Cyclotomic>,
    pub g: RatFun<Cyc>,
    pub terms: Vec<(Cyc, CurveFunction<Cyc>)>,
    pub int: Integral<Cyc>,
}

pub fn random_synthetic(seed: u64) -> Synthetic {
    let mut rng = rng(seed);
    let (k, d) = *[(2usize, 3usize), (2, 5), (3, 2), (3, 4)].choose(&mut rng).unwrap();
    let c = Cyclotomic::new(k);
    let curve = random_curve(&mut rng, &c, d);
    let gn = rng.gen_range(0..=3);
    let mut g = ratfun::from_poly(&c, poly::from_ints(&c, &random_ints(&mut rng, gn, 3)));
    if rng.gen_bool(0.3) {
        let a = loop {
            let a = rng.gen_range(-3i64..=3);
            if !poly::eval(&c, curve.s(), &c.from_i64(a)).is_zero() {
                break a;
            }
        };
        let den = poly::pow(&c, &poly::from_ints(&c, &[-a, 1]), rng.gen_range(1..=2));
        g = ratfun::new(&c, g.num().clone(), den);
    }
    let terms = (0..rng.gen_range(1..=2))
        .map(|_| {
            let coef = loop {
                let v = random_cyc(&mut rng, &c, 2);
                if !v.is_zero() {
                    break v;
                }
            };
            // a(x) + b y
            let b = *[-2i64, -1, 1, 2].choose(&mut rng).unwrap();
            let f = CurveFunction::new(vec![poly::from_ints(&c, &random_ints(&mut rng, 2, 3)), poly::from_ints(&c, &[b])], k);
            (coef, f)
        })
        .collect::<Vec<_>>();
    let int = integrand_of(&curve, &g, &terms).unwrap();
    Synthetic { cyc: c, curve, g, terms, int }
}

/// Integrates and checks the answer by differentiation at sample points.
pub fn round_trip(syn: &Synthetic) -> Result<(), String> {
    let c = &syn.cyc;
    let report = elementary_integrate(c, &syn.int, &IntegrateOptions::default()).map_err(|e| e.to_string())?;
    let Verdict::Elementary(expr) = &report.verdict else {
        return Err(format!("verdict {:?}", report.verdict));
    };
    let integrand = syn.int.integrand(c);
    let mut checked = 0;
    for x0 in [2i64, -3, 5, 7, -11, 13, 17] {
        let x0 = c.from_i64(x0);
        let (Some(want), Some(got)) =
            (ratfun::eval(c, &integrand, &x0), expr.derivative_at(c, &syn.int.s, &x0).map_err(|e| e.to_string())?)
        else {
            continue;
        };
        if want != got {
            return Err("derivative mismatch".into());
        }
        checked += 1;
    }
    if checked < 3 {
        return Err("too few sample points".into());
    }
    Ok(())
}
