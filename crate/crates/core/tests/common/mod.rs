//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use grt_core::lie::{expand_assoc, lyndon_basis, AssocPoly, GradedAlphabet, Letter, LieElement};
use grt_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_0691;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

pub fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

/// Homogeneous element of degree `n` with a few random small coefficients.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, a: &GradedAlphabet, n: u32, max_terms: usize) -> LieElement {
    let basis = lyndon_basis(a, n);
    let mut e = LieElement::zero(a);
    if basis.is_empty() {
        return e;
    }
    for _ in 0..rng.gen_range(1..=max_terms) {
        let w = basis.words[rng.gen_range(0..basis.len())].clone();
        let num = rng.gen_range(-5..=5);
        let den = if rng.gen_bool(0.25) { rng.gen_range(1..=3) } else { 1 };
        e.add_term(w, q(num, den));
    }
    e
}

/// Element with components in degrees `1..=max_degree`.
pub fn random_element(rng: &mut ChaCha8Rng, a: &GradedAlphabet, max_degree: u32) -> LieElement {
    let mut e = LieElement::zero(a);
    for d in 1..=max_degree {
        if rng.gen_bool(0.7) {
            e = e.checked_add(&random_homogeneous(rng, a, d, 3)).unwrap();
        }
    }
    e
}

/// Rank over ℚ by plain Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn tensor_coords(p: &AssocPoly, words: &[Vec<Letter>]) -> Vec<Rational> {
    words.iter().map(|w| p.coefficient(w)).collect()
}

fn all_words(k: u8, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// `[y, f] ∈ [z, 𝔭ₙ]`, decided in tensor-algebra coordinates.
pub fn special_oracle(f: &LieElement, n: u32) -> bool {
    let a = GradedAlphabet::xy();
    let x = LieElement::letter(&a, 0);
    let y = LieElement::letter(&a, 1);
    let z = -(&x + &y);
    let words = all_words(2, n as usize + 1);
    let zp = expand_assoc(&z);
    let mut rows: Vec<Vec<Rational>> = lyndon_basis(&a, n)
        .words
        .iter()
        .map(|w| {
            let s = expand_assoc(&LieElement::basis(&a, w.clone()));
            tensor_coords(&zp.commutator(&s), &words)
        })
        .collect();
    let base = rational_rank(rows.clone());
    let target = expand_assoc(&y).commutator(&expand_assoc(f));
    rows.push(tensor_coords(&target, &words));
    rational_rank(rows) == base
}

fn harmonic(u: &[u32], v: &[u32]) -> BTreeMap<Vec<u32>, i64> {
    if u.is_empty() || v.is_empty() {
        let w = if u.is_empty() { v } else { u };
        return BTreeMap::from([(w.to_vec(), 1)]);
    }
    let mut out = BTreeMap::new();
    for (head, tail) in
        [(u[0], harmonic(&u[1..], v)), (v[0], harmonic(u, &v[1..])), (u[0] + v[0], harmonic(&u[1..], &v[1..]))]
    {
        for (w, c) in tail {
            let mut k = vec![head];
            k.extend(w);
            *out.entry(k).or_insert(0) += c;
        }
    }
    out
}

fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|k| {
            compositions(n - k).into_iter().map(move |mut r| {
                r.insert(0, k);
                r
            })
        })
        .collect()
}

/// Regularized harmonic relations for `ψ(x, y) = f(x, -y)`, from the tensor
/// expansion of `f`.
pub fn stuffle_oracle(f: &LieElement, n: u32) -> bool {
    let a = GradedAlphabet::xy();
    let x = LieElement::letter(&a, 0);
    let y = LieElement::letter(&a, 1);
    let psi = expand_assoc(&f.substitute(&[x, -&y], None).unwrap());
    let word_of = |s: &[u32]| -> Vec<Letter> {
        s.iter().flat_map(|&k| std::iter::repeat_n(0, k as usize - 1).chain([1])).collect()
    };
    let mut psi_star: HashMap<Vec<u32>, Rational> = HashMap::new();
    for s in compositions(n) {
        psi_star.insert(s.clone(), psi.coefficient(&word_of(&s)));
    }
    let mut lead = vec![0; n as usize - 1];
    lead.push(1);
    let correction = psi.coefficient(&lead) * q(if n % 2 == 1 { 1 } else { -1 }, n as i64);
    *psi_star.get_mut(&vec![1; n as usize]).unwrap() += correction;
    for k in 1..n {
        for u in compositions(k) {
            for v in compositions(n - k) {
                let mut pairing = Rational::zero();
                for (w, c) in harmonic(&u, &v) {
                    pairing += &psi_star[&w] * int(c);
                }
                if !pairing.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// `log(exp X · exp Y)` through degree `class`, in the tensor algebra.
pub fn tensor_bch(class: u32) -> AssocPoly {
    let a = GradedAlphabet::xy();
    let cap = Some(class);
    let exp = |letter: Letter| {
        let g = AssocPoly::monomial(&a, vec![letter], Rational::one());
        let mut term = AssocPoly::one(&a);
        let mut sum = AssocPoly::one(&a);
        for k in 1..=class {
            term = term.mul_capped(&g, cap).scale(&q(1, k as i64));
            sum = sum.add(&term);
        }
        sum
    };
    let u = exp(0).mul_capped(&exp(1), cap).sub(&AssocPoly::one(&a));
    let mut power = AssocPoly::one(&a);
    let mut log = AssocPoly::zero(&a);
    for k in 1..=class {
        power = power.mul_capped(&u, cap);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        log = log.add(&power.scale(&q(sign, k as i64)));
    }
    log
}
