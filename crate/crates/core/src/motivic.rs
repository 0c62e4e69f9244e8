//! Graded dimension data for weighted completions of Galois groups of
//! number fields: the numbers `dₙ`, Ext groups of mixed Tate modules, and
//! the free Lie models built from them. Degree `n` carries weight `-2n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::weighted_witt_dims;

/// Archimedean data of a number field `F` and the size of a set `S` of
/// primes containing those over `ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumberFieldProfile {
    pub r1: u32,
    pub r2: u32,
    pub s_size: u32,
}

impl NumberFieldProfile {
    pub fn new(r1: u32, r2: u32, s_size: u32) -> Result<Self> {
        if r1 + 2 * r2 == 0 {
            return Err(Error::InvalidArgument("r1 + 2*r2 must be at least 1".into()));
        }
        if s_size == 0 {
            return Err(Error::InvalidArgument("#S must be positive".into()));
        }
        Ok(NumberFieldProfile { r1, r2, s_size })
    }

    /// `ℚ` with `S = {ℓ}`.
    pub fn rationals() -> Self {
        NumberFieldProfile { r1: 1, r2: 0, s_size: 1 }
    }
}

/// `r₁ + r₂ + #S - 1` for `n = 1`, `r₁ + r₂` for odd `n > 1`, `r₂` for even `n`.
pub fn dn(profile: &NumberFieldProfile, n: u32) -> Result<u64> {
    let NumberFieldProfile { r1, r2, s_size } = *profile;
    let (r1, r2, s) = (u64::from(r1), u64::from(r2), u64::from(s_size));
    match n {
        0 => Err(Error::InvalidArgument("dn needs n >= 1".into())),
        1 => Ok(r1 + r2 + s - 1),
        n if n % 2 == 1 => Ok(r1 + r2),
        _ => Ok(r2),
    }
}

/// `dim Extⁱ(ℚ_ℓ(0), ℚ_ℓ(n))` in the category of mixed Tate modules.
pub fn ext_dim(profile: &NumberFieldProfile, i: u32, n: i64) -> u64 {
    match (i, n) {
        (0, 0) => 1,
        (1, n) if n > 0 => dn(profile, n as u32).expect("n >= 1"),
        _ => 0,
    }
}

/// Dimensions of the free Lie algebra with `dₙ` generators in each degree `n`.
pub fn k_graded_dims(profile: &NumberFieldProfile, max_degree: u32) -> Result<BTreeMap<u32, u128>> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be >= 1".into()));
    }
    let mut gens = Vec::new();
    for n in 1..=max_degree {
        let k = dn(profile, n)?;
        gens.extend(std::iter::repeat_n(n, k as usize));
    }
    free_dims(&gens, max_degree)
}

/// Dimensions of the free Lie algebra on one generator in each odd degree `>= 3`.
pub fn image_model_dims(max_degree: u32) -> Result<BTreeMap<u32, u128>> {
    if max_degree < 3 {
        return Err(Error::InvalidArgument("image_model_dims needs max_degree >= 3".into()));
    }
    let gens: Vec<u32> = (3..=max_degree).step_by(2).collect();
    free_dims(&gens, max_degree)
}

fn free_dims(gens: &[u32], max_degree: u32) -> Result<BTreeMap<u32, u128>> {
    if gens.is_empty() {
        return Ok((1..=max_degree).map(|n| (n, 0)).collect());
    }
    weighted_witt_dims(gens, max_degree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnRow {
    pub n: u32,
    pub d_n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnTable {
    pub profile: NumberFieldProfile,
    pub rows: Vec<DnRow>,
}

pub fn dn_table(profile: &NumberFieldProfile, max_n: u32) -> Result<DnTable> {
    let rows = (1..=max_n).map(|n| Ok(DnRow { n, d_n: dn(profile, n)? })).collect::<Result<_>>()?;
    Ok(DnTable { profile: *profile, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtRow {
    pub i: u32,
    pub n: i64,
    pub ext: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub rows: Vec<ExtRow>,
}

/// All `(i, n)` with `0 <= i <= max_i` and `0 <= n <= max_n`.
pub fn ext_table(profile: &NumberFieldProfile, max_i: u32, max_n: i64) -> ExtTable {
    let mut rows = Vec::new();
    for i in 0..=max_i {
        for n in 0..=max_n {
            rows.push(ExtRow { i, n, ext: ext_dim(profile, i, n) });
        }
    }
    ExtTable { rows }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub degree: u32,
    pub weight: i64,
    #[serde(serialize_with = "u128_as_u64_or_string")]
    pub dim: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub rows: Vec<DimRow>,
}

impl From<BTreeMap<u32, u128>> for DimTable {
    fn from(m: BTreeMap<u32, u128>) -> Self {
        DimTable {
            rows: m
                .into_iter()
                .map(|(degree, dim)| DimRow { degree, weight: crate::lie::weight_of_degree(degree), dim })
                .collect(),
        }
    }
}

fn u128_as_u64_or_string<S: serde::Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dn_cases() {
        let q = NumberFieldProfile::rationals();
        assert_eq!(dn(&q, 1).unwrap(), 1);
        assert_eq!(dn(&q, 4).unwrap(), 0);
        assert_eq!(dn(&q, 7).unwrap(), 1);
        let p = NumberFieldProfile::new(0, 1, 3).unwrap();
        assert_eq!(dn(&p, 1).unwrap(), 3);
        assert_eq!(dn(&p, 2).unwrap(), 1);
        assert!(dn(&q, 0).is_err());
    }

    #[test]
    fn profile_invariants() {
        assert!(NumberFieldProfile::new(0, 0, 1).is_err());
        assert!(NumberFieldProfile::new(1, 0, 0).is_err());
    }

    #[test]
    fn ext_cases() {
        let q = NumberFieldProfile::rationals();
        assert_eq!(ext_dim(&q, 0, 0), 1);
        assert_eq!(ext_dim(&q, 1, 3), 1);
        assert_eq!(ext_dim(&q, 2, 5), 0);
        assert_eq!(ext_dim(&q, 1, 0), 0);
        assert_eq!(ext_dim(&q, 0, 2), 0);
        assert_eq!(ext_dim(&q, 1, -3), 0);
    }

    #[test]
    fn free_models() {
        let q = NumberFieldProfile::rationals();
        let k = k_graded_dims(&q, 4).unwrap();
        assert_eq!(k, BTreeMap::from([(1, 1), (2, 0), (3, 1), (4, 1)]));
        let m = image_model_dims(12).unwrap();
        assert_eq!((m[&3], m[&6], m[&8], m[&12]), (1, 0, 1, 2));
        assert!(image_model_dims(2).is_err());
    }
}
