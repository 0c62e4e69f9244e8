use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`; its first `rank` rows span the saturation of the row space.
    pub v_inv: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i -= q · row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let (src, dst) = if i < t {
                let (lo, hi) = m.split_at_mut(t);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[t], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
    }

    /// col_j -= q · col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            let s = r[t].clone();
            if !s.is_zero() {
                r[j] -= q * s;
            }
        }
        // v ← v·E with E = I - q e_t e_jᵀ, so v⁻¹ ← (I + q e_t e_jᵀ) v⁻¹.
        let row_j = self.v_inv[j].clone();
        for (d, s) in self.v_inv[t].iter_mut().zip(&row_j) {
            if !s.is_zero() {
                *d += q * s;
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut().chain(self.u[t].iter_mut()) {
            *x = -&*x;
        }
    }
}

fn to_matrix(cols: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
    IntMatrix::from_rows(cols, &rows)
}

/// Smith normal form by gcd-reduction pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let id = |n: usize| IntMatrix::identity(n).to_rows();
    let mut w = Work { a: m.to_rows(), u: id(rows), v: id(cols), v_inv: id(cols) };

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude() < w.a[bi][bj].magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_sub(i, t, &q);
                    if !w.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_sub(j, t, &q);
                    if !w.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // A remainder smaller than the pivot is left; move it in.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].magnitude() < w.a[best.0][best.1].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].magnitude() < w.a[best.0][best.1].magnitude() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_sub(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }

    SnfResult {
        d: to_matrix(cols, w.a),
        u: to_matrix(rows, w.u),
        v: to_matrix(cols, w.v),
        v_inv: to_matrix(cols, w.v_inv),
    }
}

/// Structure of ℤⁿ modulo a row span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// ℤⁿ / (row span of `rows`): free rank and the elementary divisors above 1.
pub fn quotient_invariants(rows: &[Vec<BigInt>], ambient_rank: usize) -> QuotientInvariants {
    let snf = smith_normal_form(&IntMatrix::from_rows(ambient_rank, rows));
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    QuotientInvariants {
        free_rank: ambient_rank - rank,
        torsion: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
    }
}

/// ℤ-basis of (ℚ-span of `rows`) ∩ ℤⁿ.
pub fn saturation(rows: &[Vec<BigInt>], ambient_rank: usize) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(&IntMatrix::from_rows(ambient_rank, rows));
    (0..snf.rank()).map(|i| snf.v_inv.row(i).to_vec()).collect()
}
