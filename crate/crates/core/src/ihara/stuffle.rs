//! Regularized harmonic (stuffle) relations on special elements.
//!
//! With `ψ(x, y) := f(x, -y)` and a word `x^(s₁-1) y ⋯ x^(s_k-1) y` read as the
//! composition `(s₁, …, s_k)`, put
//! `ψ_* = Σ (ψ | word(s)) · s + ((-1)^(n-1) / n) (ψ | x^(n-1) y) · (1, …, 1)`.
//! The relations say that `ψ_*` pairs to zero with every harmonic product
//! `u * v` of nonempty compositions.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::lie::{expand_word, lyndon_basis, GradedAlphabet, Letter};

type Composition = Vec<u32>;

pub(crate) fn compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut c = Vec::with_capacity(rest.len() + 1);
            c.push(first);
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

type Products = HashMap<(Composition, Composition), Arc<HashMap<Composition, i64>>>;

/// Harmonic product `u * v`.
pub(crate) fn harmonic_product(u: &[u32], v: &[u32], memo: &mut Products) -> Arc<HashMap<Composition, i64>> {
    if u.is_empty() || v.is_empty() {
        let w = if u.is_empty() { v } else { u };
        return Arc::new(HashMap::from([(w.to_vec(), 1)]));
    }
    let key = (u.to_vec(), v.to_vec());
    if let Some(r) = memo.get(&key) {
        return Arc::clone(r);
    }
    let mut out: HashMap<Composition, i64> = HashMap::new();
    let parts = [
        (u[0], harmonic_product(&u[1..], v, memo)),
        (v[0], harmonic_product(u, &v[1..], memo)),
        (u[0] + v[0], harmonic_product(&u[1..], &v[1..], memo)),
    ];
    for (head, tail) in parts {
        for (w, c) in tail.iter() {
            let mut k = Vec::with_capacity(w.len() + 1);
            k.push(head);
            k.extend_from_slice(w);
            *out.entry(k).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    let out = Arc::new(out);
    memo.insert(key, Arc::clone(&out));
    out
}

/// `(s₁, …, s_k) ↦ x^(s₁-1) y ⋯ x^(s_k-1) y`.
pub(crate) fn composition_word(s: &[u32]) -> Vec<Letter> {
    let mut out = Vec::new();
    for &k in s {
        out.extend(std::iter::repeat_n(0, k as usize - 1));
        out.push(1);
    }
    out
}

type Rows = Arc<Vec<Vec<BigInt>>>;

static MATRICES: Lazy<RwLock<HashMap<u32, Rows>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// The relations in degree `n` as rows over Lyndon coordinates of `f`,
/// each primitive, deduplicated.
pub fn stuffle_rows(n: u32) -> Arc<Vec<Vec<BigInt>>> {
    if let Some(m) = MATRICES.read().get(&n) {
        return Arc::clone(m);
    }
    let a = GradedAlphabet::xy();
    let basis = lyndon_basis(&a, n);
    let dim = basis.len();

    // word ↦ [(column, coefficient of ψ on that word)]
    let mut by_word: HashMap<Vec<Letter>, Vec<(usize, i64)>> = HashMap::new();
    for (j, w) in basis.words.iter().enumerate() {
        for (word, c) in expand_word(w).iter() {
            let ys = word.iter().filter(|&&l| l == 1).count();
            let c = if ys % 2 == 0 { *c } else { -*c };
            by_word.entry(word.clone()).or_default().push((j, c));
        }
    }
    let mut lead = vec![0; n as usize - 1];
    lead.push(1);
    let lead_cols = by_word.get(&lead).cloned().unwrap_or_default();
    let ones = vec![1u32; n as usize];
    let sign: i128 = if n % 2 == 1 { 1 } else { -1 };
    let scale = i128::from(n);

    let mut memo = Products::new();
    let mut rows: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for wu in 1..=n / 2 {
        let left = compositions(wu);
        let right = compositions(n - wu);
        for u in &left {
            for v in &right {
                if wu == n - wu && u > v {
                    continue;
                }
                let prod = harmonic_product(u, v, &mut memo);
                let mut acc = vec![0i128; dim];
                for (w, c) in prod.iter() {
                    let c = i128::from(*c);
                    if let Some(cols) = by_word.get(&composition_word(w)) {
                        for &(j, e) in cols {
                            acc[j] += c * scale * i128::from(e);
                        }
                    }
                    if *w == ones {
                        for &(j, e) in &lead_cols {
                            acc[j] += c * sign * i128::from(e);
                        }
                    }
                }
                if acc.iter().all(|x| *x == 0) {
                    continue;
                }
                rows.insert(primitive_row(acc));
            }
        }
    }
    let rows = Arc::new(rows.into_iter().collect::<Vec<_>>());
    MATRICES.write().insert(n, Arc::clone(&rows));
    rows
}

fn primitive_row(v: Vec<i128>) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if lead_negative {
            *x = -&*x;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(u: &[u32], v: &[u32]) -> HashMap<Composition, i64> {
        (*harmonic_product(u, v, &mut Products::new())).clone()
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(prod(&[1], &[1]), HashMap::from([(vec![1, 1], 2), (vec![2], 1)]));
        assert_eq!(prod(&[2], &[3]), HashMap::from([(vec![2, 3], 1), (vec![3, 2], 1), (vec![5], 1)]));
        assert_eq!(compositions(4).len(), 8);
    }

    #[test]
    fn word_encoding() {
        assert_eq!(composition_word(&[3, 1]), vec![0, 0, 1, 1]);
    }
}
