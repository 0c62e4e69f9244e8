//! Truncated Malcev completions: free nilpotent Lie algebras of class `c`
//! with the Baker–Campbell–Hausdorff group law, free-group words, and the
//! lower central series versus its torsion-saturated refinement.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::lie::{GradedAlphabet, Letter, LieElement};
use crate::Rational;

mod filtration;
mod word;

pub use filtration::{filtration_report, FilteredGroupSpec, FiltrationReport, FiltrationRow};
pub use word::word_to_group;

/// Largest class for which the BCH series is tabulated.
pub const MAX_CLASS: u32 = 10;

/// An element of the class-`c` quotient of a free Lie algebra, read as a
/// group element through exp/log coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct NilpotentElement {
    value: LieElement,
    class: u32,
}

impl NilpotentElement {
    /// Fails if `value` has a component above `class`.
    pub fn new(value: LieElement, class: u32) -> Result<Self> {
        check_class(class)?;
        if value.degrees().last().is_some_and(|&d| d > class) {
            return Err(Error::InvalidArgument(format!("{value} has components above class {class}")));
        }
        Ok(NilpotentElement { value, class })
    }

    /// Drops every component above `class`.
    pub fn truncated(value: &LieElement, class: u32) -> Result<Self> {
        check_class(class)?;
        Ok(NilpotentElement { value: value.truncate(class), class })
    }

    pub fn identity(alphabet: &GradedAlphabet, class: u32) -> Result<Self> {
        Self::new(LieElement::zero(alphabet), class)
    }

    pub fn generator(alphabet: &GradedAlphabet, letter: Letter, class: u32) -> Result<Self> {
        Self::truncated(&LieElement::letter(alphabet, letter), class)
    }

    pub fn value(&self) -> &LieElement {
        &self.value
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        self.value.alphabet()
    }

    pub fn is_identity(&self) -> bool {
        self.value.is_zero()
    }

    /// `exp(k·log g)`.
    pub fn pow(&self, k: i64) -> Self {
        NilpotentElement { value: self.value.scale(&Rational::from_integer(k.into())), class: self.class }
    }

    pub fn inverse(&self) -> Self {
        NilpotentElement { value: -&self.value, class: self.class }
    }
}

impl fmt::Display for NilpotentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl fmt::Debug for NilpotentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilpotentElement(class {}, {})", self.class, self.value)
    }
}

fn check_class(class: u32) -> Result<()> {
    if class == 0 || class > MAX_CLASS {
        return Err(Error::InvalidArgument(format!("class must be in 1..={MAX_CLASS}, got {class}")));
    }
    Ok(())
}

fn check_compatible(a: &NilpotentElement, b: &NilpotentElement) -> Result<()> {
    if a.class != b.class {
        return Err(Error::ClassMismatch(a.class, b.class));
    }
    a.alphabet().check_same(b.alphabet())
}

static SERIES: Lazy<RwLock<HashMap<u32, Arc<LieElement>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `log(exp X · exp Y)` through degree `class`, on the alphabet `{x, y}`,
/// from Dynkin's formula.
pub fn bch_series(class: u32) -> Result<Arc<LieElement>> {
    check_class(class)?;
    if let Some(s) = SERIES.read().get(&class) {
        return Ok(Arc::clone(s));
    }
    // word ↦ total Dynkin coefficient of its right-nested bracket
    let mut words: BTreeMap<Vec<Letter>, Rational> = BTreeMap::new();
    let mut blocks = Vec::new();
    dynkin_terms(class, &mut blocks, &mut words);

    let a = GradedAlphabet::xy();
    let mut series = LieElement::zero(&a);
    let mut memo: HashMap<Vec<Letter>, LieElement> = HashMap::new();
    for (w, c) in &words {
        if c.is_zero() {
            continue;
        }
        let b = right_nested(&a, w, &mut memo)?;
        series = series.checked_add(&b.scale(c))?;
    }
    let series = Arc::new(series);
    SERIES.write().insert(class, Arc::clone(&series));
    Ok(series)
}

/// Accumulates `(-1)^(n-1)/n · 1/(N · Π rᵢ! sᵢ!)` over all block sequences
/// `((r₁,s₁),…,(rₙ,sₙ))` with `rᵢ + sᵢ >= 1` and total `N <= class`.
fn dynkin_terms(class: u32, blocks: &mut Vec<(u32, u32)>, out: &mut BTreeMap<Vec<Letter>, Rational>) {
    let total: u32 = blocks.iter().map(|(r, s)| r + s).sum();
    if !blocks.is_empty() {
        let n = blocks.len() as i64;
        let mut denom = BigInt::from(n) * BigInt::from(total);
        for &(r, s) in blocks.iter() {
            denom *= factorial(r) * factorial(s);
        }
        let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let mut w = Vec::with_capacity(total as usize);
        for &(r, s) in blocks.iter() {
            w.extend(std::iter::repeat_n(0, r as usize));
            w.extend(std::iter::repeat_n(1, s as usize));
        }
        // Right-nested brackets vanish when the last two letters agree.
        if w.len() == 1 || w[w.len() - 1] != w[w.len() - 2] {
            *out.entry(w).or_insert_with(Rational::zero) += Rational::new(sign, denom);
        }
    }
    for k in 1..=class - total {
        for r in 0..=k {
            blocks.push((r, k - r));
            dynkin_terms(class, blocks, out);
            blocks.pop();
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `[w₁, [w₂, … [w_{k-1}, w_k]]]`.
fn right_nested(a: &GradedAlphabet, w: &[Letter], memo: &mut HashMap<Vec<Letter>, LieElement>) -> Result<LieElement> {
    if let Some(e) = memo.get(w) {
        return Ok(e.clone());
    }
    let e = if w.len() == 1 {
        LieElement::letter(a, w[0])
    } else {
        LieElement::letter(a, w[0]).bracket(&right_nested(a, &w[1..], memo)?)?
    };
    memo.insert(w.to_vec(), e.clone());
    Ok(e)
}

/// The group law: `log(exp a · exp b)` truncated at the class.
pub fn bch(a: &NilpotentElement, b: &NilpotentElement) -> Result<NilpotentElement> {
    check_compatible(a, b)?;
    if a.is_identity() {
        return Ok(b.clone());
    }
    if b.is_identity() {
        return Ok(a.clone());
    }
    let series = bch_series(a.class)?;
    let value = series.substitute(&[a.value.clone(), b.value.clone()], Some(a.class))?;
    Ok(NilpotentElement { value, class: a.class })
}

pub fn inverse(a: &NilpotentElement) -> NilpotentElement {
    a.inverse()
}

/// `a · b · a⁻¹ · b⁻¹`.
pub fn group_commutator(a: &NilpotentElement, b: &NilpotentElement) -> Result<NilpotentElement> {
    check_compatible(a, b)?;
    let ab = bch(a, b)?;
    let aba = bch(&ab, &a.inverse())?;
    bch(&aba, &b.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parse_lie;

    fn el(s: &str, class: u32) -> NilpotentElement {
        NilpotentElement::new(parse_lie(s, &GradedAlphabet::xy()).unwrap(), class).unwrap()
    }

    #[test]
    fn low_class_series() {
        let a = GradedAlphabet::xy();
        assert_eq!(*bch_series(1).unwrap(), parse_lie("x + y", &a).unwrap());
        assert_eq!(*bch_series(2).unwrap(), parse_lie("x + y + 1/2*[x,y]", &a).unwrap());
        assert_eq!(
            *bch_series(3).unwrap(),
            parse_lie("x + y + 1/2*[x,y] + 1/12*[x,[x,y]] + 1/12*[[x,y],y]", &a).unwrap()
        );
        assert!(bch_series(4).unwrap().component(4) == parse_lie("1/24*[x,[[x,y],y]]", &a).unwrap());
    }

    #[test]
    fn identities() {
        let x = el("x", 3);
        let zero = NilpotentElement::identity(&GradedAlphabet::xy(), 3).unwrap();
        assert_eq!(bch(&x, &zero).unwrap(), x);
        assert!(bch(&x, &x.inverse()).unwrap().is_identity());
        assert!(matches!(bch(&x, &el("y", 2)), Err(Error::ClassMismatch(3, 2))));
        assert!(NilpotentElement::new(parse_lie("[x,y]", &GradedAlphabet::xy()).unwrap(), 1).is_err());
    }

    #[test]
    fn commutator_class_two() {
        let c = group_commutator(&el("x", 2), &el("y", 2)).unwrap();
        assert_eq!(c, el("[x,y]", 2));
        assert!(group_commutator(&el("x + [x,y]", 3), &el("x + [x,y]", 3)).unwrap().is_identity());
    }
}
