//! Truncated power series in one variable, stored low to high with a fixed length.

use crate::field::{Field, FieldElem};

pub(crate) fn resize<F: Field>(f: &F, mut a: Vec<F::Elem>, n: usize) -> Vec<F::Elem> {
    a.resize(n, f.zero());
    a
}

pub(crate) fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub(crate) fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub(crate) fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub(crate) fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
    }
    out
}

/// Inverse of a series with invertible constant term.
pub(crate) fn inv<F: Field>(f: &F, a: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let b0 = f.inv(&a[0]).expect("series constant term must be invertible");
    let mut b = Vec::with_capacity(n);
    b.push(b0.clone());
    for m in 1..n {
        let acc = (1..=m.min(a.len() - 1))
            .filter(|&i| !a[i].is_zero())
            .fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&a[i], &b[m - i])));
        b.push(f.neg(&f.mul(&b0, &acc)));
    }
    b
}

pub(crate) fn pow<F: Field>(f: &F, a: &[F::Elem], e: usize, n: usize) -> Vec<F::Elem> {
    let mut acc = resize(f, vec![f.one()], n);
    let mut base = resize(f, a.to_vec(), n);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base, n);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base, n);
        }
    }
    acc
}

/// The unique `y` with `y^k = s` and `y(0) = y0`, given `y0^k = s(0) ≠ 0` and
/// `k` invertible in the field.
pub(crate) fn kth_root<F: Field>(
    f: &F,
    s: &[F::Elem],
    k: usize,
    y0: &F::Elem,
    n: usize,
) -> Vec<F::Elem> {
    let kk = f.from_i64(k as i64);
    let mut y = vec![y0.clone()];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        y = resize(f, y, prec);
        let yk1 = pow(f, &y, k - 1, prec);
        let yk = mul(f, &yk1, &y, prec);
        let target = resize(f, s.to_vec(), prec);
        let num = sub(f, &yk, &target);
        let den = scale(f, &yk1, &kk);
        let step = mul(f, &num, &inv(f, &den, prec), prec);
        y = sub(f, &y, &step);
    }
    resize(f, y, n)
}

/// Index of the first nonzero coefficient within the stored precision.
pub(crate) fn order<E: FieldElem>(a: &[E]) -> Option<usize> {
    a.iter().position(|c| !c.is_zero())
}
