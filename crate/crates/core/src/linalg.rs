//! Dense linear algebra over a [`Field`].

use crate::field::{Field, FieldElem};
use crate::poly::Poly;

pub type Matrix<E> = Vec<Vec<E>>;

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return f.zero();
        };
        if piv != col {
            a.swap(piv, col);
            acc = f.neg(&acc);
        }
        let pv = a[col][col].clone();
        acc = f.mul(&acc, &pv);
        let inv = f.inv(&pv).unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = f.mul(&a[r][col], &inv);
            for c in col..n {
                let t = f.mul(&factor, &a[col][c]);
                a[r][c] = f.sub(&a[r][c], &t);
            }
        }
    }
    acc
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let inv = f.inv(&m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..cols {
                if m[r][j].is_zero() {
                    continue;
                }
                let t = f.mul(&factor, &m[r][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The first column that depends on earlier ones, with the unique kernel vector
/// supported on columns up to it whose entry there is 1.
pub fn first_dependency<F: Field>(
    f: &F,
    m: &Matrix<F::Elem>,
    cols: usize,
) -> Option<(usize, Vec<F::Elem>)> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![f.zero(); cols];
    v[free] = f.one();
    for (row, &pc) in pivots.iter().enumerate() {
        if pc < free {
            v[pc] = f.neg(&a[row][free]);
        }
    }
    Some((free, v))
}

/// Some solution of `A x = b` (free variables set to zero).
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Characteristic polynomial `det(z I − M)` via reduction to Hessenberg form.
pub fn charpoly<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Poly<F::Elem> {
    let n = m.len();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&r| !h[r][col].is_zero()) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = f.inv(&h[col + 1][col]).unwrap();
        for r in col + 2..n {
            if h[r][col].is_zero() {
                continue;
            }
            let u = f.mul(&h[r][col], &inv);
            for c in 0..n {
                let t = f.mul(&u, &h[col + 1][c]);
                h[r][c] = f.sub(&h[r][c], &t);
            }
            for row in h.iter_mut() {
                let t = f.mul(&u, &row[r]);
                row[col + 1] = f.add(&row[col + 1], &t);
            }
        }
    }
    // p_0 = 1, p_j = (z − h_jj) p_{j−1} − Σ_{i<j} h_ij (Π_{l=i+1}^{j} h_{l,l−1}) p_{i−1}
    let mut ps: Vec<Poly<F::Elem>> = vec![Poly::constant(f.one())];
    for j in 0..n {
        let lin = Poly::new(vec![f.neg(&h[j][j]), f.one()]);
        let mut pj = crate::poly::mul(f, &lin, &ps[j]);
        let mut prod = f.one();
        for i in (0..j).rev() {
            prod = f.mul(&prod, &h[i + 1][i]);
            if prod.is_zero() {
                break;
            }
            let c = f.mul(&h[i][j], &prod);
            pj = crate::poly::sub(f, &pj, &crate::poly::scale(f, &ps[i], &c));
        }
        ps.push(pj);
    }
    ps.pop().unwrap()
}
