//! Elimination over ℤ/p, an independent route for ranks and kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn reduce(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = num_bigint::BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().expect("fits")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

/// Reduced row echelon form over ℤ/p; returns the pivot columns.
fn rref_mod(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn reduce_rows(rows: &[Vec<BigInt>], p: u64) -> Vec<Vec<u64>> {
    rows.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect()).collect()
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod(rows: &[Vec<BigInt>], cols: usize, p: u64) -> Result<usize> {
    check_prime(p)?;
    let mut m = reduce_rows(rows, p);
    Ok(rref_mod(&mut m, cols, p).len())
}

/// Right kernel over ℤ/p, one vector per free column with that entry 1.
pub fn kernel_mod(rows: &[Vec<BigInt>], cols: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    check_prime(p)?;
    let mut m = reduce_rows(rows, p);
    let pivots = rref_mod(&mut m, cols, p);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &c) in m.iter().zip(&pivots) {
            v[c] = (p - row[free]) % p;
        }
        out.push(v);
    }
    Ok(out)
}

/// True when every entry is divisible by `m`.
pub fn divisible_by(v: &[BigInt], m: u64) -> bool {
    let m = BigInt::from(m);
    v.iter().all(|x| x.is_zero() || x.is_multiple_of(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_drops_at_dividing_prime() {
        let m = ints(&[&[2, 4], &[6, 8]]);
        assert_eq!(rank_mod(&m, 2, 3).unwrap(), 2);
        assert_eq!(rank_mod(&m, 2, 2).unwrap(), 0);
        assert!(rank_mod(&m, 2, 4).is_err());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ints(&[&[2, 1, 3], &[0, 1, 1]]);
        let p = 101;
        let k = kernel_mod(&m, 3, p).unwrap();
        assert_eq!(k.len(), 1);
        for row in &m {
            let s: u64 = row.iter().zip(&k[0]).map(|(a, b)| mul_mod(reduce(a, p), *b, p)).sum();
            assert_eq!(s % p, 0);
        }
    }

    #[test]
    fn divisibility() {
        let v: Vec<BigInt> = [0, 691, -1382].iter().map(|&x| BigInt::from(x)).collect();
        assert!(divisible_by(&v, 691));
        assert!(!divisible_by(&v, 5));
        assert!(is_prime(691) && !is_prime(1) && !is_prime(91));
    }
}
