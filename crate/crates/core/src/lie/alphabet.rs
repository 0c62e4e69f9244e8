use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Letter index into a [`GradedAlphabet`]; the total order on letters is the
/// order of these indices.
pub type Letter = u8;

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    names: Vec<String>,
    degrees: Vec<u32>,
}

/// An ordered set of named generators, each carrying a positive degree.
///
/// Cloning is cheap; two alphabets compare equal when their names and
/// degrees agree letter by letter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedAlphabet(Arc<Inner>);

impl GradedAlphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (name, degree) in letters {
            let name = name.into();
            if !is_ident(&name) {
                return Err(Error::InvalidArgument(format!("bad generator name `{name}`")));
            }
            if names.contains(&name) {
                return Err(Error::InvalidArgument(format!("duplicate generator `{name}`")));
            }
            if degree == 0 {
                return Err(Error::InvalidArgument(format!("generator `{name}` has degree 0")));
            }
            names.push(name);
            degrees.push(degree);
        }
        if names.is_empty() {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        if names.len() > usize::from(Letter::MAX) + 1 {
            return Err(Error::InvalidArgument("too many generators".into()));
        }
        Ok(GradedAlphabet(Arc::new(Inner { names, degrees })))
    }

    /// The alphabet `x < y`, both of degree 1: the generators of 𝔭.
    pub fn xy() -> Self {
        Self::new([("x", 1), ("y", 1)]).expect("valid alphabet")
    }

    /// `k` letters of degree 1 named `x1, x2, ...` (or `x, y` when `k == 2`).
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 2 {
            return Ok(Self::xy());
        }
        Self::new((1..=k).map(|i| (format!("x{i}"), 1)))
    }

    /// One letter per listed degree, named `a<degree>` with a suffix for repeats.
    pub fn weighted(degrees: &[u32]) -> Result<Self> {
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable();
        let mut letters = Vec::with_capacity(sorted.len());
        let mut i = 0;
        while i < sorted.len() {
            let d = sorted[i];
            let run = sorted[i..].iter().take_while(|&&e| e == d).count();
            for r in 0..run {
                let name = if run == 1 { format!("a{d}") } else { format!("a{d}_{}", r + 1) };
                letters.push((name, d));
            }
            i += run;
        }
        Self::new(letters)
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.0.names[usize::from(letter)]
    }

    pub fn degree(&self, letter: Letter) -> u32 {
        self.0.degrees[usize::from(letter)]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0.degrees
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.0.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| i as Letter)
    }

    pub fn word_degree(&self, word: &[Letter]) -> u32 {
        word.iter().map(|&l| self.degree(l)).sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.0.degrees.iter().all(|&d| d == 1)
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.ptr_eq(other) || self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Parses `x,y` or `a:3,b:5` (degree defaults to 1).
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, degree) = match part.split_once(':') {
                Some((n, d)) => {
                    let d = d
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidArgument(format!("bad degree in `{part}`")))?;
                    (n.trim().to_string(), d)
                }
                None => (part.to_string(), 1),
            };
            letters.push((name, degree));
        }
        Self::new(letters)
    }
}

impl fmt::Debug for GradedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for l in self.letters() {
            list.entry(&format_args!("{}:{}", self.name(l), self.degree(l)));
        }
        list.finish()
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
