use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Deref;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::alphabet::{GradedAlphabet, Letter};
use crate::error::{Error, Result};

/// A Lyndon word: strictly smaller than each of its proper rotations.
///
/// Ordering is plain lexicographic on letter indices, with a proper prefix
/// ordered before its extensions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LyndonWord(Arc<[Letter]>);

impl LyndonWord {
    pub fn new(letters: &[Letter]) -> Result<Self> {
        if is_lyndon(letters) {
            Ok(LyndonWord(letters.into()))
        } else {
            Err(Error::InvalidArgument(format!("{letters:?} is not a Lyndon word")))
        }
    }

    pub(crate) fn new_unchecked(letters: &[Letter]) -> Self {
        debug_assert!(is_lyndon(letters));
        LyndonWord(letters.into())
    }

    pub fn letter(l: Letter) -> Self {
        LyndonWord(Arc::from([l].as_slice()))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_letter(&self) -> bool {
        self.0.len() == 1
    }

    pub fn degree(&self, alphabet: &GradedAlphabet) -> u32 {
        alphabet.word_degree(&self.0)
    }

    /// Splits `w = uv` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Result<(LyndonWord, LyndonWord)> {
        if self.0.len() < 2 {
            return Err(Error::AtomicWord);
        }
        let split = (1..self.0.len()).find(|&i| is_lyndon(&self.0[i..])).expect("last letter is always Lyndon");
        Ok((LyndonWord::new_unchecked(&self.0[..split]), LyndonWord::new_unchecked(&self.0[split..])))
    }

    /// The word spelled with generator names, e.g. `xxy`.
    pub fn spell(&self, alphabet: &GradedAlphabet) -> String {
        spell(&self.0, alphabet)
    }

    /// The standard bracketing, e.g. `[x,[x,y]]`.
    pub fn bracketing(&self, alphabet: &GradedAlphabet) -> String {
        let mut out = String::new();
        self.write_bracketing(alphabet, &mut out);
        out
    }

    fn write_bracketing(&self, alphabet: &GradedAlphabet, out: &mut String) {
        if self.is_letter() {
            out.push_str(alphabet.name(self.0[0]));
        } else {
            let (u, v) = self.standard_factorization().expect("length >= 2");
            out.push('[');
            u.write_bracketing(alphabet, out);
            out.push(',');
            v.write_bracketing(alphabet, out);
            out.push(']');
        }
    }
}

impl Deref for LyndonWord {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

pub(crate) fn spell(word: &[Letter], alphabet: &GradedAlphabet) -> String {
    let multi_char = alphabet.letters().any(|l| alphabet.name(l).len() > 1);
    let mut out = String::new();
    for (i, &l) in word.iter().enumerate() {
        if multi_char && i > 0 {
            out.push('.');
        }
        let _ = write!(out, "{}", alphabet.name(l));
    }
    out
}

/// Duval-style scan: true iff `w` is nonempty and strictly smaller than all
/// of its proper rotations.
pub fn is_lyndon(w: &[Letter]) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut i = 0;
    for j in 1..w.len() {
        if w[i] < w[j] {
            i = 0;
        } else if w[i] == w[j] {
            i += 1;
        } else {
            return false;
        }
    }
    i == 0
}

/// Lyndon words of one degree in lexicographic order, with an index for
/// coordinate lookups.
#[derive(Debug)]
pub struct LyndonBasis {
    pub degree: u32,
    pub words: Vec<LyndonWord>,
    index: HashMap<LyndonWord, usize>,
}

impl LyndonBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &LyndonWord) -> Option<usize> {
        self.index.get(w).copied()
    }
}

type BasisKey = (Vec<u32>, u32);
static BASES: Lazy<RwLock<HashMap<BasisKey, Arc<LyndonBasis>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// The cached Lyndon basis of the given degree.
pub fn lyndon_basis(alphabet: &GradedAlphabet, degree: u32) -> Arc<LyndonBasis> {
    let key = (alphabet.degrees().to_vec(), degree);
    if let Some(b) = BASES.read().get(&key) {
        return Arc::clone(b);
    }
    let words = enumerate(alphabet.degrees(), degree);
    let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let basis = Arc::new(LyndonBasis { degree, words, index });
    Arc::clone(BASES.write().entry(key).or_insert(basis))
}

/// All Lyndon words of total degree `degree`, in lexicographic order.
pub fn lyndon_words(alphabet: &GradedAlphabet, degree: u32) -> Vec<LyndonWord> {
    lyndon_basis(alphabet, degree).words.clone()
}

/// Depth-first search over prenecklaces; a branch is cut as soon as the
/// Duval scan rejects it.
fn enumerate(degrees: &[u32], target: u32) -> Vec<LyndonWord> {
    struct Search<'a> {
        degrees: &'a [u32],
        target: u32,
        word: Vec<Letter>,
        // Duval comparison index after each prefix length.
        state: Vec<usize>,
        out: Vec<LyndonWord>,
    }

    impl Search<'_> {
        fn go(&mut self, remaining: u32) {
            if remaining == 0 {
                if *self.state.last().unwrap_or(&1) == 0 {
                    self.out.push(LyndonWord::new_unchecked(&self.word));
                }
                return;
            }
            for l in 0..self.degrees.len() {
                let d = self.degrees[l];
                if d > remaining {
                    continue;
                }
                let letter = l as Letter;
                let next = if self.word.is_empty() {
                    0
                } else {
                    let i = *self.state.last().expect("nonempty");
                    let cmp = self.word[i];
                    if cmp < letter {
                        0
                    } else if cmp == letter {
                        i + 1
                    } else {
                        continue;
                    }
                };
                self.word.push(letter);
                self.state.push(next);
                self.go(remaining - d);
                self.word.pop();
                self.state.pop();
            }
        }
    }

    if target == 0 {
        return Vec::new();
    }
    let mut s = Search { degrees, target, word: Vec::new(), state: Vec::new(), out: Vec::new() };
    s.go(s.target);
    s.out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(k: u8, n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let total = (k as usize).pow(n as u32);
        for code in 0..total {
            let mut w = vec![0u8; n];
            let mut c = code;
            for slot in w.iter_mut().rev() {
                *slot = (c % k as usize) as u8;
                c /= k as usize;
            }
            let smaller_than_rotations = (1..n).all(|r| {
                let rot: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
                w < rot
            });
            if smaller_than_rotations {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_rotation_brute_force() {
        let xy = GradedAlphabet::xy();
        for n in 1..=10 {
            let got: Vec<Vec<u8>> = lyndon_words(&xy, n).iter().map(|w| w.letters().to_vec()).collect();
            assert_eq!(got, brute_force(2, n as usize), "degree {n}");
        }
        let abc = GradedAlphabet::uniform(3).unwrap();
        for n in 1..=6 {
            let got: Vec<Vec<u8>> = lyndon_words(&abc, n).iter().map(|w| w.letters().to_vec()).collect();
            assert_eq!(got, brute_force(3, n as usize));
        }
    }

    #[test]
    fn small_degrees() {
        let xy = GradedAlphabet::xy();
        let spelled = |n| lyndon_words(&xy, n).iter().map(|w| w.spell(&xy)).collect::<Vec<_>>();
        assert_eq!(spelled(1), ["x", "y"]);
        assert_eq!(spelled(2), ["xy"]);
        assert_eq!(spelled(3), ["xxy", "xyy"]);
    }

    #[test]
    fn standard_factorizations() {
        let xy = GradedAlphabet::xy();
        let f = |s: &[u8]| {
            let (u, v) = LyndonWord::new(s).unwrap().standard_factorization().unwrap();
            (u.spell(&xy), v.spell(&xy))
        };
        assert_eq!(f(&[0, 1]), ("x".into(), "y".into()));
        assert_eq!(f(&[0, 0, 1]), ("x".into(), "xy".into()));
        assert_eq!(f(&[0, 1, 1]), ("xy".into(), "y".into()));
        assert_eq!(LyndonWord::letter(0).standard_factorization(), Err(Error::AtomicWord));
    }

    #[test]
    fn weighted_enumeration_has_gaps() {
        let a = GradedAlphabet::weighted(&[3, 5, 7, 9, 11]).unwrap();
        assert!(lyndon_words(&a, 6).is_empty());
        let w12: Vec<String> = lyndon_words(&a, 12).iter().map(|w| w.spell(&a)).collect();
        assert_eq!(w12, ["a3.a9", "a5.a7"]);
    }

    #[test]
    fn bracketing_strings() {
        let xy = GradedAlphabet::xy();
        assert_eq!(LyndonWord::new(&[0, 0, 1]).unwrap().bracketing(&xy), "[x,[x,y]]");
        assert_eq!(LyndonWord::new(&[0, 1, 1]).unwrap().bracketing(&xy), "[[x,y],y]");
    }
}
