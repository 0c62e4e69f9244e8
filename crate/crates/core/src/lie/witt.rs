//! Dimension counts for graded free Lie algebras.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::alphabet::GradedAlphabet;
use super::word::lyndon_basis;
use crate::error::{Error, Result};

/// Upper bound on words visited before [`weighted_witt_dims`] skips the
/// enumeration cross-check.
pub const ENUMERATION_LIMIT: u128 = 2_000_000;

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn overflow() -> Error {
    Error::Unsupported("dimension does not fit in 128 bits".into())
}

/// Necklace formula `(1/n) Σ_{d|n} μ(d) k^{n/d}`.
pub fn witt_dim(num_letters: u64, degree: u32) -> Result<u128> {
    if num_letters == 0 || degree == 0 {
        return Err(Error::InvalidArgument("witt_dim needs positive arguments".into()));
    }
    let n = u64::from(degree);
    let mut sum = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(d);
        if mu != 0 {
            sum += BigInt::from(mu) * num_traits::pow(BigInt::from(num_letters), (n / d) as usize);
        }
    }
    let q = sum / BigInt::from(n);
    q.to_u128().ok_or_else(overflow)
}

/// Dimensions of the free Lie algebra with one generator per listed degree,
/// for degrees `1..=max_degree`. Uses the PBW identity and, when the word
/// count is small enough, confirms every value by Lyndon enumeration.
pub fn weighted_witt_dims(generator_degrees: &[u32], max_degree: u32) -> Result<BTreeMap<u32, u128>> {
    let pbw = pbw_dims(generator_degrees, max_degree)?;
    if enumeration_feasible(generator_degrees, max_degree)? {
        let enumerated = enumerated_dims(generator_degrees, max_degree)?;
        if enumerated != pbw {
            return Err(Error::Internal(format!("Lyndon enumeration {enumerated:?} disagrees with PBW {pbw:?}")));
        }
    }
    Ok(pbw)
}

/// Number of words of degree `n` over the generators: coefficients of `1/(1 - g(t))`.
fn word_counts(generator_degrees: &[u32], max_degree: u32) -> Result<Vec<BigInt>> {
    if generator_degrees.contains(&0) {
        return Err(Error::InvalidArgument("generator degrees must be positive".into()));
    }
    let max = max_degree as usize;
    let mut g = vec![BigInt::zero(); max + 1];
    for &d in generator_degrees {
        if (d as usize) <= max {
            g[d as usize] += 1;
        }
    }
    let mut h = vec![BigInt::zero(); max + 1];
    h[0] = BigInt::one();
    for n in 1..=max {
        let mut acc = BigInt::zero();
        for d in 1..=n {
            if !g[d].is_zero() {
                acc += &g[d] * &h[n - d];
            }
        }
        h[n] = acc;
    }
    Ok(h)
}

fn enumeration_feasible(generator_degrees: &[u32], max_degree: u32) -> Result<bool> {
    if generator_degrees.len() > 256 {
        return Ok(false);
    }
    let h = word_counts(generator_degrees, max_degree)?;
    let total: BigInt = h.iter().skip(1).sum();
    Ok(total <= BigInt::from(ENUMERATION_LIMIT))
}

/// Solves `∏ₙ (1 - tⁿ)^{-aₙ} = 1/(1 - g(t))` for the `aₙ`, degree by degree.
pub fn pbw_dims(generator_degrees: &[u32], max_degree: u32) -> Result<BTreeMap<u32, u128>> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be >= 1".into()));
    }
    let max = max_degree as usize;
    let h = word_counts(generator_degrees, max_degree)?;
    // Running product ∏_{n<N} (1 - tⁿ)^{-aₙ}, truncated.
    let mut prod = vec![BigInt::zero(); max + 1];
    prod[0] = BigInt::one();
    let mut out = BTreeMap::new();
    for n in 1..=max {
        let a = &h[n] - &prod[n];
        if a < BigInt::zero() {
            return Err(Error::Internal(format!("negative PBW dimension in degree {n}")));
        }
        out.insert(n as u32, a.to_u128().ok_or_else(overflow)?);
        if a.is_zero() {
            continue;
        }
        // (1 - tⁿ)^{-a} = Σ_j C(a + j - 1, j) t^{nj}
        let mut factor = vec![BigInt::zero(); max + 1];
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while n * j <= max {
            factor[n * j] = binom.clone();
            j += 1;
            binom = binom * (&a + BigInt::from(j - 1)) / BigInt::from(j);
        }
        let mut next = vec![BigInt::zero(); max + 1];
        for (i, p) in prod.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (k, f) in factor.iter().enumerate().take(max + 1 - i) {
                if !f.is_zero() {
                    next[i + k] += p * f;
                }
            }
        }
        prod = next;
    }
    Ok(out)
}

/// Counts Lyndon words of each degree over a weighted alphabet with one
/// letter per generator.
pub fn enumerated_dims(generator_degrees: &[u32], max_degree: u32) -> Result<BTreeMap<u32, u128>> {
    if generator_degrees.is_empty() {
        return Ok((1..=max_degree).map(|n| (n, 0)).collect());
    }
    let alphabet = GradedAlphabet::weighted(generator_degrees)?;
    Ok((1..=max_degree).map(|n| (n, lyndon_basis(&alphabet, n).len() as u128)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_dim(2, 1).unwrap(), 2);
        assert_eq!(witt_dim(2, 6).unwrap(), 9);
        assert_eq!(witt_dim(2, 12).unwrap(), 335);
        assert!(witt_dim(0, 3).is_err());
    }

    #[test]
    fn witt_matches_lyndon_count() {
        let xy = GradedAlphabet::xy();
        for n in 1..=12 {
            assert_eq!(witt_dim(2, n).unwrap(), lyndon_basis(&xy, n).len() as u128);
        }
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted_witt_dims(&[3], 3).unwrap()[&3], 1);
        let odd = [3, 5, 7, 9, 11];
        let d = weighted_witt_dims(&odd, 12).unwrap();
        assert_eq!(d[&6], 0);
        assert_eq!(d[&8], 1);
        assert_eq!(d[&11], 2);
        assert_eq!(d[&12], 2);
    }

    #[test]
    fn uniform_weighted_reproduces_witt() {
        for k in 1..=4u64 {
            let degs = vec![1; k as usize];
            let d = weighted_witt_dims(&degs, 9).unwrap();
            for n in 1..=9 {
                assert_eq!(d[&n], witt_dim(k, n).unwrap(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn large_profiles_skip_enumeration() {
        let degs = vec![1; 6];
        assert!(!enumeration_feasible(&degs, 20).unwrap());
        let d = weighted_witt_dims(&degs, 20).unwrap();
        assert_eq!(d[&20], witt_dim(6, 20).unwrap());
    }
}
