use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{primitive_integer, RatMatrix};
use crate::Rational;

/// Row echelon form over ℤ: rows after elimination plus the pivot column of
/// each nonzero row.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| if x.is_zero() { acc } else { acc.gcd(x) });
    if g > BigInt::from(1) {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

/// Fraction-free elimination. The pivot in each column is the entry of least
/// magnitude; rows are kept primitive so entries stay small on the sparse
/// systems built from Lie brackets.
pub(crate) fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    for r in rows.iter_mut() {
        remove_content(r);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].magnitude().cmp(rows[b][c].magnitude()));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let pv = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let f_row = pv / &g;
            let f_piv = &row[c] / &g;
            if f_row != BigInt::from(1) {
                for x in row[c + 1..].iter_mut() {
                    if !x.is_zero() {
                        *x *= &f_row;
                    }
                }
            }
            for &j in &support {
                row[j] -= &f_piv * &pivot_row[j];
            }
            row[c] = BigInt::zero();
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank(m: &RatMatrix) -> usize {
    echelon(m.integer_rows(), m.cols()).pivots.len()
}

pub fn rank_int(rows: &[Vec<BigInt>], cols: usize) -> usize {
    echelon(rows.to_vec(), cols).pivots.len()
}

/// Basis of the right kernel, each vector primitive integral with a positive
/// leading entry. Vectors are ordered by their free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    kernel_from_echelon(echelon(m.integer_rows(), m.cols()), m.cols())
}

pub fn kernel_basis_int(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    kernel_from_echelon(echelon(rows.to_vec(), cols), cols)
}

fn kernel_from_echelon(e: Echelon, cols: usize) -> Vec<Vec<BigInt>> {
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::from_integer(BigInt::from(1));
        for (row, &p) in e.rows.iter().zip(&e.pivots).rev() {
            let mut s = Rational::zero();
            for j in p + 1..cols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    s += &v[j] * Rational::from_integer(row[j].clone());
                }
            }
            if !s.is_zero() {
                v[p] = -s / Rational::from_integer(row[p].clone());
            }
        }
        out.push(primitive_integer(&v));
    }
    out
}
