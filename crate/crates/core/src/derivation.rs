//! Graded derivations of a free Lie algebra, stored by the images of the
//! generators. A derivation of degree `d` sends each generator of degree `k`
//! to an element of degree `k + d`; in the weight grading it has weight `-2d`.

use std::collections::HashMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lie::{lyndon_basis, parse_lie, witt_dim, GradedAlphabet, LieElement, LyndonWord};
use crate::linalg::{kernel_basis, rank, RatMatrix};
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    alphabet: GradedAlphabet,
    images: Vec<LieElement>,
    degree: u32,
}

impl Derivation {
    /// One image per letter, in alphabet order. Each image must be zero or
    /// homogeneous of degree `deg(letter) + degree`.
    pub fn new(alphabet: &GradedAlphabet, images: Vec<LieElement>, degree: u32) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} generator images, got {}",
                alphabet.len(),
                images.len()
            )));
        }
        for (l, img) in alphabet.letters().zip(&images) {
            img.alphabet().check_same(alphabet)?;
            let expected = alphabet.degree(l) + degree;
            match img.homogeneous_degree()? {
                None => {}
                Some(d) if d == expected => {}
                Some(d) => return Err(Error::MixedDegrees { expected, found: d }),
            }
        }
        Ok(Derivation { alphabet: alphabet.clone(), images, degree })
    }

    /// Two-generator form `x ↦ image_x`, `y ↦ image_y`.
    pub fn from_xy(image_x: LieElement, image_y: LieElement, degree: u32) -> Result<Self> {
        let alphabet = image_x.alphabet().clone();
        if alphabet.len() != 2 {
            return Err(Error::InvalidArgument("from_xy needs a two-letter alphabet".into()));
        }
        Self::new(&alphabet, vec![image_x, image_y], degree)
    }

    pub fn zero(alphabet: &GradedAlphabet, degree: u32) -> Self {
        let images = alphabet.letters().map(|_| LieElement::zero(alphabet)).collect();
        Derivation { alphabet: alphabet.clone(), images, degree }
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        &self.alphabet
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        crate::lie::weight_of_degree(self.degree)
    }

    pub fn images(&self) -> &[LieElement] {
        &self.images
    }

    pub fn image_x(&self) -> &LieElement {
        &self.images[0]
    }

    pub fn image_y(&self) -> &LieElement {
        &self.images[1]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(LieElement::is_zero)
    }

    /// Extends to brackets by the Leibniz rule.
    pub fn apply(&self, e: &LieElement) -> Result<LieElement> {
        self.apply_capped(e, None)
    }

    pub fn apply_capped(&self, e: &LieElement, cap: Option<u32>) -> Result<LieElement> {
        self.alphabet.check_same(e.alphabet())?;
        let mut memo = HashMap::new();
        let mut out = LieElement::zero(&self.alphabet);
        for (w, c) in e.terms() {
            let img = self.apply_word(w, cap, &mut memo)?;
            out = out.checked_add(&img.scale(c))?;
        }
        Ok(out)
    }

    fn apply_word(
        &self,
        w: &LyndonWord,
        cap: Option<u32>,
        memo: &mut HashMap<LyndonWord, LieElement>,
    ) -> Result<LieElement> {
        if let Some(v) = memo.get(w) {
            return Ok(v.clone());
        }
        let result = if w.is_letter() {
            let img = &self.images[usize::from(w[0])];
            match cap {
                Some(c) => img.truncate(c),
                None => img.clone(),
            }
        } else {
            let (u, v) = w.standard_factorization()?;
            let su = LieElement::basis(&self.alphabet, u.clone());
            let sv = LieElement::basis(&self.alphabet, v.clone());
            let du = self.apply_word(&u, cap, memo)?;
            let dv = self.apply_word(&v, cap, memo)?;
            du.bracket_capped(&sv, cap)?.checked_add(&su.bracket_capped(&dv, cap)?)?
        };
        memo.insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Image of every generator, concatenated in Lyndon coordinates.
    pub fn coords(&self) -> Result<Vec<Rational>> {
        let mut v = Vec::new();
        for l in self.alphabet.letters() {
            let basis = lyndon_basis(&self.alphabet, self.alphabet.degree(l) + self.degree);
            v.extend(self.images[usize::from(l)].coords(&basis)?);
        }
        Ok(v)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.alphabet.check_same(&other.alphabet)?;
        if self.degree != other.degree {
            return Err(Error::MixedDegrees { expected: self.degree, found: other.degree });
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?;
        Ok(Derivation { alphabet: self.alphabet.clone(), images, degree: self.degree })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Derivation {
            alphabet: self.alphabet.clone(),
            images: self.images.iter().map(|e| e.scale(c)).collect(),
            degree: self.degree,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("degree".into(), Value::from(self.degree));
        for l in self.alphabet.letters() {
            m.insert(
                format!("image_{}", self.alphabet.name(l)),
                Value::from(self.images[usize::from(l)].to_canonical_string()),
            );
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value, alphabet: &GradedAlphabet) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("derivation JSON: {what}"));
        let degree = v.get("degree").and_then(Value::as_u64).ok_or_else(|| bad("missing degree"))?;
        let degree = u32::try_from(degree).map_err(|_| bad("degree out of range"))?;
        let mut images = Vec::new();
        for l in alphabet.letters() {
            let key = format!("image_{}", alphabet.name(l));
            let text = v.get(&key).and_then(Value::as_str).ok_or_else(|| bad(&key))?;
            images.push(parse_lie(text, alphabet)?);
        }
        Self::new(alphabet, images, degree)
    }
}

/// `[d1, d2] = d1∘d2 - d2∘d1`, of degree `deg d1 + deg d2`.
pub fn der_bracket(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    d1.alphabet.check_same(&d2.alphabet)?;
    let mut images = Vec::with_capacity(d1.images.len());
    for l in d1.alphabet.letters() {
        let i = usize::from(l);
        let a = d1.apply(&d2.images[i])?;
        let b = d2.apply(&d1.images[i])?;
        images.push(a.checked_sub(&b)?);
    }
    Derivation::new(&d1.alphabet, images, d1.degree + d2.degree)
}

/// The adjoint derivation `ad_v = [v, -]`.
pub fn inner(v: &LieElement) -> Result<Derivation> {
    let degree =
        v.homogeneous_degree()?.ok_or_else(|| Error::InvalidArgument("inner derivation of 0 has no degree".into()))?;
    let alphabet = v.alphabet();
    let images = alphabet.letters().map(|l| v.bracket(&LieElement::letter(alphabet, l))).collect::<Result<_>>()?;
    Derivation::new(alphabet, images, degree)
}

/// Matrix of `ad: 𝔭_degree → Der_degree` in Lyndon coordinates, one column
/// per basis word of the source.
pub fn inner_matrix(alphabet: &GradedAlphabet, degree: u32) -> Result<RatMatrix> {
    let target: usize = alphabet.letters().map(|l| lyndon_basis(alphabet, alphabet.degree(l) + degree).len()).sum();
    let source = lyndon_basis(alphabet, degree);
    let columns = source
        .words
        .iter()
        .map(|w| inner(&LieElement::basis(alphabet, w.clone()))?.coords())
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_columns(target, &columns))
}

/// Dimension of the space of all degree-`degree` derivations.
pub fn der_dim(alphabet: &GradedAlphabet, degree: u32) -> usize {
    alphabet.letters().map(|l| lyndon_basis(alphabet, alphabet.degree(l) + degree).len()).sum()
}

/// `dim Der_d - rank(ad)` for the free Lie algebra on `x, y`, computed from
/// the explicit matrix of the inner map.
pub fn outder_dim(degree: u32) -> Result<usize> {
    if degree == 0 {
        return Err(Error::InvalidArgument("outder_dim needs degree >= 1".into()));
    }
    let xy = GradedAlphabet::xy();
    let m = inner_matrix(&xy, degree)?;
    Ok(der_dim(&xy, degree) - rank(&m))
}

/// Counting formula `2·W(2, d+1) - W(2, d)`.
pub fn outder_dim_formula(degree: u32) -> Result<u128> {
    Ok(2 * witt_dim(2, degree + 1)? - witt_dim(2, degree)?)
}

/// Dimension of the kernel of `ad` in the given degree.
pub fn inner_kernel_dim(alphabet: &GradedAlphabet, degree: u32) -> Result<usize> {
    Ok(kernel_basis(&inner_matrix(alphabet, degree)?).len())
}

/// True when `d = ad_v` for some `v` of the same degree.
pub fn is_inner(d: &Derivation) -> Result<bool> {
    if d.is_zero() {
        return Ok(true);
    }
    let m = inner_matrix(&d.alphabet, d.degree)?;
    let target = d.coords()?;
    let mut rows = Vec::with_capacity(m.rows());
    for (i, t) in target.into_iter().enumerate() {
        let mut r = m.row(i).to_vec();
        r.push(t);
        rows.push(r);
    }
    let augmented = RatMatrix::from_rows(m.cols() + 1, &rows);
    Ok(rank(&augmented) == rank(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> GradedAlphabet {
        GradedAlphabet::xy()
    }

    fn p(s: &str) -> LieElement {
        parse_lie(s, &xy()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let ad_x = inner(&p("x")).unwrap();
        assert_eq!(ad_x.apply(&p("y")).unwrap(), p("[x,y]"));
        let d = Derivation::from_xy(p("0"), p("[x,y]"), 1).unwrap();
        assert_eq!(d.apply(&p("[x,y]")).unwrap(), p("[x,[x,y]]"));
        assert!(d.apply(&p("0")).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let d = Derivation::from_xy(p("[x,y]"), p("0"), 1).unwrap();
        assert!(der_bracket(&d, &d).unwrap().is_zero());
        let b = der_bracket(&inner(&p("x")).unwrap(), &inner(&p("y")).unwrap()).unwrap();
        assert_eq!(b, inner(&p("[x,y]")).unwrap());
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&p("x")).unwrap().image_y(), &p("[x,y]"));
        assert_eq!(inner(&p("[x,y]")).unwrap().image_x(), &-p("[x,[x,y]]"));
        assert!(inner(&p("x + [x,y]")).is_err());
    }

    #[test]
    fn outder_examples() {
        assert_eq!(outder_dim(1).unwrap(), 0);
        assert_eq!(outder_dim(2).unwrap(), 3);
        assert_eq!(outder_dim(3).unwrap(), 4);
        for d in 1..=6 {
            assert_eq!(outder_dim(d).unwrap() as u128, outder_dim_formula(d).unwrap());
            assert_eq!(inner_kernel_dim(&xy(), d).unwrap(), 0);
        }
    }

    #[test]
    fn degree_checks() {
        assert!(matches!(Derivation::from_xy(p("[x,y]"), p("y"), 1), Err(Error::MixedDegrees { .. })));
        let d = Derivation::from_xy(p("[x,y]"), p("0"), 1).unwrap();
        assert_eq!(d.weight(), -2);
    }

    #[test]
    fn inner_detection() {
        assert!(is_inner(&inner(&p("[x,[x,y]]")).unwrap()).unwrap());
        let d = Derivation::from_xy(p("0"), p("[x,y]"), 1).unwrap();
        // Every degree-1 derivation is inner (the outer quotient vanishes there).
        assert!(is_inner(&d).unwrap());
        let d = Derivation::from_xy(p("0"), p("[x,[x,y]]"), 2).unwrap();
        assert!(!is_inner(&d).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = Derivation::from_xy(p("-[x,[x,y]]"), p("[[x,y],y]"), 2).unwrap();
        let j = d.to_json();
        assert_eq!(j["image_x"], "-[x,[x,y]]");
        assert_eq!(Derivation::from_json(&j, &xy()).unwrap(), d);
    }
}
