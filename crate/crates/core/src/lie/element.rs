use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::alphabet::{GradedAlphabet, Letter};
use super::word::{LyndonBasis, LyndonWord};
use crate::error::{Error, Result};
use crate::Rational;

/// Weight of a degree-`n` graded piece: degree `n` sits in weight `-2n`.
pub fn weight_of_degree(n: u32) -> i64 {
    -2 * i64::from(n)
}

/// A finite rational combination of Lyndon basis elements σ(w).
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    alphabet: GradedAlphabet,
    terms: BTreeMap<LyndonWord, Rational>,
}

impl LieElement {
    pub fn zero(alphabet: &GradedAlphabet) -> Self {
        LieElement { alphabet: alphabet.clone(), terms: BTreeMap::new() }
    }

    /// σ(w) for a Lyndon word `w`.
    pub fn basis(alphabet: &GradedAlphabet, w: LyndonWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rational::one());
        LieElement { alphabet: alphabet.clone(), terms }
    }

    pub fn generator(alphabet: &GradedAlphabet, name: &str) -> Result<Self> {
        let l = alphabet.letter(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        Ok(Self::basis(alphabet, LyndonWord::letter(l)))
    }

    pub fn letter(alphabet: &GradedAlphabet, l: Letter) -> Self {
        Self::basis(alphabet, LyndonWord::letter(l))
    }

    pub fn from_terms(alphabet: &GradedAlphabet, terms: impl IntoIterator<Item = (LyndonWord, Rational)>) -> Self {
        let mut e = Self::zero(alphabet);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    /// Element with the given coordinates in a Lyndon basis.
    pub fn from_coords(alphabet: &GradedAlphabet, basis: &LyndonBasis, coords: &[Rational]) -> Self {
        assert_eq!(basis.len(), coords.len(), "coordinate vector length");
        Self::from_terms(alphabet, basis.words.iter().cloned().zip(coords.iter().cloned()))
    }

    pub fn from_int_coords(alphabet: &GradedAlphabet, basis: &LyndonBasis, coords: &[BigInt]) -> Self {
        let rat: Vec<Rational> = coords.iter().map(|c| Rational::from_integer(c.clone())).collect();
        Self::from_coords(alphabet, basis, &rat)
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<LyndonWord, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, w: &LyndonWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: LyndonWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alphabet);
        }
        LieElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Degrees present, in increasing order.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|w| w.degree(&self.alphabet)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Decomposition into homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, LieElement> {
        let mut out: BTreeMap<u32, LieElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree(&self.alphabet))
                .or_insert_with(|| Self::zero(&self.alphabet))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    pub fn component(&self, degree: u32) -> LieElement {
        LieElement {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree(&self.alphabet) == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Ok(None)` for zero, `Ok(Some(n))` when homogeneous of degree `n`.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        match self.degrees().as_slice() {
            [] => Ok(None),
            [d] => Ok(Some(*d)),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Drops every component of degree above `cap`.
    pub fn truncate(&self, cap: u32) -> Self {
        LieElement {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree(&self.alphabet) <= cap)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates in the given basis. Fails if any term is outside it.
    pub fn coords(&self, basis: &LyndonBasis) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (w, c) in &self.terms {
            let i = basis
                .position(w)
                .ok_or(Error::MixedDegrees { expected: basis.degree, found: w.degree(&self.alphabet) })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Integer coordinates; fails on non-integral coefficients.
    pub fn int_coords(&self, basis: &LyndonBasis) -> Result<Vec<BigInt>> {
        self.coords(basis)?
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::InvalidArgument(format!("non-integral coefficient {c}")))
                }
            })
            .collect()
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.bracket_capped(other, None)
    }

    /// Bracket with every output component above `cap` dropped.
    pub fn bracket_capped(&self, other: &Self, cap: Option<u32>) -> Result<Self> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut acc: HashMap<LyndonWord, Rational> = HashMap::new();
        for (u, a) in &self.terms {
            let du = u.degree(&self.alphabet);
            for (v, b) in &other.terms {
                if let Some(cap) = cap {
                    if du + v.degree(&self.alphabet) > cap {
                        continue;
                    }
                }
                let expansion = bracket_words(u, v);
                if expansion.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (w, k) in expansion.iter() {
                    let term = &ab * Rational::from_integer(BigInt::from(*k));
                    *acc.entry(w.clone()).or_insert_with(Rational::zero) += term;
                }
            }
        }
        Ok(LieElement {
            alphabet: self.alphabet.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Image under the Lie homomorphism sending letter `i` to `images[i]`,
    /// optionally dropping components above `cap`.
    pub fn substitute(&self, images: &[LieElement], cap: Option<u32>) -> Result<LieElement> {
        if images.len() != self.alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.alphabet.len(),
                images.len()
            )));
        }
        let target = images.first().map(|e| e.alphabet.clone()).expect("alphabets are nonempty");
        for e in images {
            e.alphabet.check_same(&target)?;
        }
        let mut memo: HashMap<LyndonWord, LieElement> = HashMap::new();
        let mut out = LieElement::zero(&target);
        for (w, c) in &self.terms {
            let img = substitute_word(w, images, cap, &mut memo)?;
            out = out.checked_add(&img.scale(c))?;
        }
        Ok(out)
    }

    /// Terms ordered for printing: by degree, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&LyndonWord, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| a.degree(&self.alphabet).cmp(&b.degree(&self.alphabet)).then_with(|| a.cmp(b)));
        ts
    }

    /// Canonical text form, parseable by [`crate::lie::parse_lie`].
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&w.bracketing(&self.alphabet));
        }
        out
    }
}

fn substitute_word(
    w: &LyndonWord,
    images: &[LieElement],
    cap: Option<u32>,
    memo: &mut HashMap<LyndonWord, LieElement>,
) -> Result<LieElement> {
    if let Some(v) = memo.get(w) {
        return Ok(v.clone());
    }
    let result = if w.is_letter() {
        let img = &images[usize::from(w[0])];
        match cap {
            Some(c) => img.truncate(c),
            None => img.clone(),
        }
    } else {
        let (u, v) = w.standard_factorization()?;
        let a = substitute_word(&u, images, cap, memo)?;
        let b = substitute_word(&v, images, cap, memo)?;
        a.bracket_capped(&b, cap)?
    };
    memo.insert(w.clone(), result.clone());
    Ok(result)
}

pub(crate) fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({})", self.to_canonical_string())
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        LieElement { alphabet: self.alphabet.clone(), terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

/// Panics on alphabet mismatch; use [`LieElement::checked_add`] for a fallible sum.
impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        self.checked_add(rhs).expect("alphabet mismatch in LieElement addition")
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self.checked_sub(rhs).expect("alphabet mismatch in LieElement subtraction")
    }
}

type Expansion = Arc<Vec<(LyndonWord, i64)>>;

// [σ(u), σ(v)] in the Lyndon basis depends only on the letter indices, so one
// cache serves every alphabet.
static BRACKETS: Lazy<RwLock<HashMap<(LyndonWord, LyndonWord), Expansion>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `[σ(u), σ(v)]` expressed in the Lyndon basis, with integer coefficients.
pub fn bracket_words(u: &LyndonWord, v: &LyndonWord) -> Expansion {
    use std::cmp::Ordering;
    match u.cmp(v) {
        Ordering::Equal => return Arc::new(Vec::new()),
        Ordering::Greater => {
            let e = bracket_words(v, u);
            return Arc::new(e.iter().map(|(w, c)| (w.clone(), -c)).collect());
        }
        Ordering::Less => {}
    }
    let key = (u.clone(), v.clone());
    if let Some(e) = BRACKETS.read().get(&key) {
        return Arc::clone(e);
    }
    let result = Arc::new(rewrite_ordered(u, v));
    BRACKETS.write().insert(key, Arc::clone(&result));
    result
}

// Requires u < v.
fn rewrite_ordered(u: &LyndonWord, v: &LyndonWord) -> Vec<(LyndonWord, i64)> {
    let concat = |a: &LyndonWord, b: &LyndonWord| {
        let mut letters: Vec<Letter> = a.letters().to_vec();
        letters.extend_from_slice(b.letters());
        LyndonWord::new_unchecked(&letters)
    };
    if u.is_letter() {
        return vec![(concat(u, v), 1)];
    }
    let (u1, u2) = u.standard_factorization().expect("length >= 2");
    if u2 >= *v {
        return vec![(concat(u, v), 1)];
    }
    // [[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]
    let mut acc: HashMap<LyndonWord, i64> = HashMap::new();
    let mut push = |w: &LyndonWord, c: i64| {
        let e = acc.entry(w.clone()).or_insert(0);
        *e = e.checked_add(c).expect("bracket coefficient overflow");
    };
    for (w, c) in bracket_words(&u2, v).iter() {
        for (w2, c2) in bracket_words(&u1, w).iter() {
            push(w2, c.checked_mul(*c2).expect("bracket coefficient overflow"));
        }
    }
    for (w, c) in bracket_words(&u1, v).iter() {
        for (w2, c2) in bracket_words(w, &u2).iter() {
            push(w2, c.checked_mul(*c2).expect("bracket coefficient overflow"));
        }
    }
    let mut out: Vec<(LyndonWord, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort();
    out
}
