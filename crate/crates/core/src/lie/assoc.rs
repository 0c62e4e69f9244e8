use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::alphabet::{GradedAlphabet, Letter};
use super::element::{format_rational, LieElement};
use super::word::{is_lyndon, spell, LyndonWord};
use crate::error::{Error, Result};
use crate::Rational;

/// A noncommutative polynomial: rational combination of arbitrary words.
#[derive(Clone, PartialEq, Eq)]
pub struct AssocPoly {
    alphabet: GradedAlphabet,
    terms: BTreeMap<Vec<Letter>, Rational>,
}

impl AssocPoly {
    pub fn zero(alphabet: &GradedAlphabet) -> Self {
        AssocPoly { alphabet: alphabet.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &GradedAlphabet) -> Self {
        Self::monomial(alphabet, Vec::new(), Rational::one())
    }

    pub fn monomial(alphabet: &GradedAlphabet, word: Vec<Letter>, c: Rational) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(word, c);
        p
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Letter>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[Letter]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, word: Vec<Letter>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alphabet);
        }
        AssocPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Concatenation product, optionally dropping words of degree above `cap`.
    pub fn mul_capped(&self, other: &Self, cap: Option<u32>) -> Self {
        let mut acc: HashMap<Vec<Letter>, Rational> = HashMap::new();
        for (a, ca) in &self.terms {
            let da = self.alphabet.word_degree(a);
            for (b, cb) in &other.terms {
                if let Some(cap) = cap {
                    if da + self.alphabet.word_degree(b) > cap {
                        continue;
                    }
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                *acc.entry(w).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        AssocPoly { alphabet: self.alphabet.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_capped(other, None)
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn truncate(&self, cap: u32) -> Self {
        AssocPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| self.alphabet.word_degree(w) <= cap)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            self.alphabet.word_degree(a).cmp(&self.alphabet.word_degree(b)).then_with(|| a.cmp(b))
        });
        for (i, (w, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            if w.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&spell(w, &self.alphabet))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AssocPoly({self})")
    }
}

type WordExpansion = Arc<Vec<(Vec<Letter>, i64)>>;

static EXPANSIONS: Lazy<RwLock<HashMap<LyndonWord, WordExpansion>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// σ(w) expanded as iterated commutators in the tensor algebra.
pub fn expand_word(w: &LyndonWord) -> WordExpansion {
    if let Some(e) = EXPANSIONS.read().get(w) {
        return Arc::clone(e);
    }
    let result = if w.is_letter() {
        vec![(w.letters().to_vec(), 1)]
    } else {
        let (u, v) = w.standard_factorization().expect("length >= 2");
        let eu = expand_word(&u);
        let ev = expand_word(&v);
        let mut acc: HashMap<Vec<Letter>, i64> = HashMap::new();
        for (a, ca) in eu.iter() {
            for (b, cb) in ev.iter() {
                let c = ca * cb;
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                *acc.entry(ab).or_insert(0) += c;
                let mut ba = b.clone();
                ba.extend_from_slice(a);
                *acc.entry(ba).or_insert(0) -= c;
            }
        }
        let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort();
        out
    };
    let result = Arc::new(result);
    EXPANSIONS.write().insert(w.clone(), Arc::clone(&result));
    result
}

/// Image of a Lie element in the tensor algebra.
pub fn expand_assoc(a: &LieElement) -> AssocPoly {
    let mut acc: HashMap<Vec<Letter>, Rational> = HashMap::new();
    for (w, c) in a.terms() {
        for (word, k) in expand_word(w).iter() {
            *acc.entry(word.clone()).or_insert_with(Rational::zero) += c * Rational::from_integer(BigInt::from(*k));
        }
    }
    AssocPoly { alphabet: a.alphabet().clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

/// Recovers the Lie element whose expansion is `p`, by repeatedly cancelling
/// the lexicographically least word (σ(w) = w + larger words).
pub fn project_lyndon(p: &AssocPoly) -> Result<LieElement> {
    let mut rest = p.terms.clone();
    let mut out = LieElement::zero(&p.alphabet);
    while let Some((word, c)) = rest.pop_first() {
        if !is_lyndon(&word) {
            return Err(Error::NotALiePolynomial(spell(&word, &p.alphabet)));
        }
        let lw = LyndonWord::new_unchecked(&word);
        for (other, k) in expand_word(&lw).iter().skip(1) {
            let e = rest.entry(other.clone()).or_insert_with(Rational::zero);
            *e -= &c * Rational::from_integer(BigInt::from(*k));
            if e.is_zero() {
                rest.remove(other);
            }
        }
        out.add_term(lw, c);
    }
    Ok(out)
}
