//! Ihara's stable derivation algebra, computed degree by degree.
//!
//! An element `f ∈ 𝔭ₙ` (the free Lie algebra on `x, y`) is *special* when the
//! derivation `D_f : x ↦ 0, y ↦ [y, f]` also sends `z = -x - y` into
//! `[z, 𝔭]`, i.e. when `[y, f] ∈ [z, 𝔭ₙ]`. In degrees 5 and up the special
//! elements alone form a larger algebra, so `𝒟ₙ` is cut out by the special
//! condition together with the regularized stuffle relations of [`stuffle`].
//! The bracket `⟨f, g⟩ = D_f(g) - D_g(f) + [f, g]` satisfies
//! `D_⟨f,g⟩ = [D_f, D_g]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::Serialize;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::lie::{lyndon_basis, weighted_witt_dims, GradedAlphabet, LieElement, LyndonWord};
use crate::linalg::modular::{divisible_by, kernel_mod, rank_mod};
use crate::linalg::{kernel_basis_int, primitive_integer, rank_int};
use crate::Rational;

pub mod stuffle;

pub use stuffle::stuffle_rows;

/// Default cap on degrees handled by table-style computations.
pub const DEFAULT_MAX_DEGREE: u32 = 12;

/// A special element `f`, standing for the derivation `D_f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IharaElement {
    f: LieElement,
    degree: u32,
}

impl IharaElement {
    /// Checks homogeneity, degree `>= 2` and membership in `𝒟`.
    pub fn new(f: LieElement) -> Result<Self> {
        if f.alphabet() != &GradedAlphabet::xy() {
            return Err(Error::AlphabetMismatch);
        }
        let degree = f
            .homogeneous_degree()?
            .ok_or_else(|| Error::InvalidArgument("zero has no degree; use IharaElement::zero".into()))?;
        if degree < 2 {
            return Err(Error::InvalidArgument("special elements start in degree 2".into()));
        }
        if !in_stable_algebra(&f, degree)? {
            return Err(Error::InvalidArgument(format!("{f} is not in the stable derivation algebra")));
        }
        Ok(IharaElement { f, degree })
    }

    pub fn zero(degree: u32) -> Self {
        IharaElement { f: LieElement::zero(&GradedAlphabet::xy()), degree }
    }

    pub fn f(&self) -> &LieElement {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// `D_f : x ↦ 0, y ↦ [y, f]`.
    pub fn derivation(&self) -> Derivation {
        let xy = GradedAlphabet::xy();
        let y = LieElement::letter(&xy, 1);
        let image_y = y.bracket(&self.f).expect("same alphabet");
        Derivation::from_xy(LieElement::zero(&xy), image_y, self.degree).expect("degrees match")
    }

    /// Integer Lyndon coordinates of `f`.
    pub fn int_coords(&self) -> Result<Vec<BigInt>> {
        self.f.int_coords(&lyndon_basis(self.f.alphabet(), self.degree))
    }
}

fn xy() -> GradedAlphabet {
    GradedAlphabet::xy()
}

fn z() -> LieElement {
    let a = xy();
    -(&LieElement::letter(&a, 0) + &LieElement::letter(&a, 1))
}

/// The homogeneous linear system `[y, f] + [x + y, g] = 0` on `(f, g) ∈ 𝔭ₙ²`,
/// one row per Lyndon word of degree `n + 1`.
pub fn special_system(n: u32) -> Result<(Vec<Vec<BigInt>>, usize)> {
    let a = xy();
    let source = lyndon_basis(&a, n);
    let target = lyndon_basis(&a, n + 1);
    let y = LieElement::letter(&a, 1);
    let minus_z = -z();
    let dim = source.len();
    let mut rows = vec![vec![BigInt::zero(); 2 * dim]; target.len()];
    for (j, w) in source.words.iter().enumerate() {
        let s = LieElement::basis(&a, w.clone());
        let fy = y.bracket(&s)?;
        let gz = minus_z.bracket(&s)?;
        for (col, e) in [(j, fy), (dim + j, gz)] {
            for (i, c) in e.int_coords(&target)?.into_iter().enumerate() {
                rows[i][col] = c;
            }
        }
    }
    Ok((rows, 2 * dim))
}

/// True when `[y, f] ∈ [z, 𝔭ₙ]`.
pub fn is_special(f: &LieElement, n: u32) -> Result<bool> {
    let a = xy();
    let source = lyndon_basis(&a, n);
    let target = lyndon_basis(&a, n + 1);
    let y = LieElement::letter(&a, 1);
    let zz = z();
    let mut columns = Vec::with_capacity(source.len() + 1);
    for w in &source.words {
        columns.push(zz.bracket(&LieElement::basis(&a, w.clone()))?.coords(&target)?);
    }
    let base_rank = rank_of_columns(&columns, target.len());
    columns.push(y.bracket(f)?.coords(&target)?);
    Ok(rank_of_columns(&columns, target.len()) == base_rank)
}

/// True when `f` satisfies the regularized stuffle relations of degree `n`.
pub fn satisfies_stuffle(f: &LieElement, n: u32) -> Result<bool> {
    let coords = f.coords(&lyndon_basis(&xy(), n))?;
    let coords = primitive_integer(&coords);
    Ok(stuffle_rows(n).iter().all(|row| dot(row, &coords).is_zero()))
}

/// Membership in `𝒟ₙ`: special and satisfying the stuffle relations.
pub fn in_stable_algebra(f: &LieElement, n: u32) -> Result<bool> {
    Ok(is_special(f, n)? && satisfies_stuffle(f, n)?)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Dimension of the space cut out by the special condition alone.
pub fn special_condition_dim(n: u32) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument("special_condition_dim needs n >= 2".into()));
    }
    Ok(special_kernel(n)?.len())
}

fn special_kernel(n: u32) -> Result<Vec<Vec<BigInt>>> {
    let (rows, cols) = special_system(n)?;
    let dim = cols / 2;
    let f_parts: Vec<Vec<BigInt>> = kernel_basis_int(&rows, cols).into_iter().map(|v| v[..dim].to_vec()).collect();
    Ok(canonical_basis(&f_parts, dim))
}

fn rank_of_columns(columns: &[Vec<Rational>], rows: usize) -> usize {
    // Rank is transpose-invariant; columns are used as rows directly.
    let int_rows: Vec<Vec<BigInt>> = columns.iter().map(|c| primitive_integer(c)).collect();
    rank_int(&int_rows, rows)
}

static BASES: Lazy<RwLock<HashMap<u32, Arc<Vec<IharaElement>>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Basis of `𝒟ₙ` as primitive integral Lyndon vectors, in reduced echelon
/// order.
pub fn special_basis(n: u32) -> Result<Arc<Vec<IharaElement>>> {
    if n < 2 {
        return Err(Error::InvalidArgument("special_basis needs n >= 2".into()));
    }
    if let Some(b) = BASES.read().get(&n) {
        return Ok(Arc::clone(b));
    }
    let special = special_kernel(n)?;
    let dim = lyndon_basis(&xy(), n).len();
    let relations = stuffle_rows(n);
    // Restrict the relations to the special subspace and solve there.
    let restricted: Vec<Vec<BigInt>> = relations.iter().map(|r| special.iter().map(|k| dot(r, k)).collect()).collect();
    let combos = kernel_basis_int(&restricted, special.len());
    let f_parts: Vec<Vec<BigInt>> = combos
        .iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); dim];
            for (ci, k) in c.iter().zip(&special) {
                if !ci.is_zero() {
                    for (x, y) in v.iter_mut().zip(k) {
                        *x += ci * y;
                    }
                }
            }
            v
        })
        .collect();
    let a = xy();
    let basis = lyndon_basis(&a, n);
    let elements: Vec<IharaElement> = canonical_basis(&f_parts, dim)
        .into_iter()
        .map(|v| IharaElement { f: LieElement::from_int_coords(&a, &basis, &v), degree: n })
        .collect();
    let elements = Arc::new(elements);
    BASES.write().insert(n, Arc::clone(&elements));
    Ok(elements)
}

/// Reduced row echelon basis of the span of `vectors`, each row primitive.
fn canonical_basis(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<Rational>> =
        vectors.iter().map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::from_integer(BigInt::from(1)) / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.iter().map(|v| primitive_integer(v)).collect()
}

/// `dim 𝒟ₙ` with every kernel computed over `ℤ/p`.
pub fn special_dim_mod(n: u32, p: u64) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument("special_dim_mod needs n >= 2".into()));
    }
    let (rows, cols) = special_system(n)?;
    let dim = cols / 2;
    // (f, g) ↦ f is injective on the solution space for n >= 2.
    let special: Vec<Vec<u64>> = kernel_mod(&rows, cols, p)?.into_iter().map(|v| v[..dim].to_vec()).collect();
    let m = BigInt::from(p);
    let restricted: Vec<Vec<BigInt>> = stuffle_rows(n)
        .iter()
        .map(|r| {
            special
                .iter()
                .map(|k| {
                    let k: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
                    dot(r, &k).mod_floor(&m)
                })
                .collect()
        })
        .collect();
    Ok(special.len() - rank_mod(&restricted, special.len(), p)?)
}

/// The Lyndon word `x^(m-1) y`, whose bracketing is `ad(x)^(m-1)(y)`.
pub fn leading_word(m: u32) -> LyndonWord {
    let mut letters = vec![0u8; m as usize - 1];
    letters.push(1);
    LyndonWord::new(&letters).expect("x^k y is Lyndon")
}

/// The normalized generator `f_m` of the one-dimensional space `𝒟_m`, `m` odd:
/// primitive integral with positive coefficient on `ad(x)^(m-1)(y)`.
pub fn soule_generator(m: u32) -> Result<IharaElement> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("soule_generator needs odd m >= 3, got {m}")));
    }
    let basis = special_basis(m)?;
    if basis.len() != 1 {
        return Err(Error::NotOneDimensional { degree: m, dim: basis.len() });
    }
    let f = basis[0].clone();
    let lead = f.f.coefficient(&leading_word(m));
    if lead.is_zero() {
        return Err(Error::DegenerateLeadingTerm(m - 1));
    }
    if lead.is_negative() {
        Ok(IharaElement { f: -f.f, degree: m })
    } else {
        Ok(f)
    }
}

/// `D_f(g) - D_g(f) + [f, g]` for arbitrary `f, g ∈ 𝔭`, with no membership
/// checks.
pub fn ihara_formula(f: &LieElement, g: &LieElement) -> Result<LieElement> {
    let y = LieElement::letter(&xy(), 1);
    let d = |h: &LieElement| -> Result<Derivation> {
        let image_y = y.bracket(h)?;
        let degree = h.homogeneous_degree()?.unwrap_or(1);
        Derivation::from_xy(LieElement::zero(&xy()), image_y, degree)
    };
    if f.is_zero() || g.is_zero() {
        return Ok(LieElement::zero(&xy()));
    }
    d(f)?.apply(g)?.checked_sub(&d(g)?.apply(f)?)?.checked_add(&f.bracket(g)?)
}

/// `⟨f, g⟩ = D_f(g) - D_g(f) + [f, g]`.
pub fn ihara_bracket(f: &IharaElement, g: &IharaElement) -> Result<IharaElement> {
    let degree = f.degree + g.degree;
    if f.is_zero() || g.is_zero() {
        return Ok(IharaElement::zero(degree));
    }
    let h = ihara_formula(&f.f, &g.f)?;
    if !h.is_zero() && !in_stable_algebra(&h, degree)? {
        return Err(Error::Internal(format!(
            "Ihara bracket of degrees {} and {} left the stable derivation algebra",
            f.degree, g.degree
        )));
    }
    Ok(IharaElement { f: h, degree })
}

/// Outcome of reducing an integer combination modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub modulus: u64,
    pub degree: u32,
    pub divisible: bool,
    /// Every nonzero Lyndon coefficient of the combination.
    pub coefficients: Vec<WordCoefficient>,
    /// The coefficients not divisible by the modulus.
    pub nondivisible_coefficients: Vec<WordCoefficient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordCoefficient {
    pub word: String,
    pub bracketing: String,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Reduces `Σ cᵢ·eᵢ` modulo `modulus` in integer Lyndon coordinates.
pub fn check_congruence(combo: &[(BigInt, IharaElement)], modulus: u64) -> Result<CongruenceReport> {
    if modulus < 2 {
        return Err(Error::InvalidArgument("modulus must be >= 2".into()));
    }
    let a = xy();
    let Some(degree) = combo.first().map(|(_, e)| e.degree) else {
        return Ok(CongruenceReport {
            modulus,
            degree: 0,
            divisible: true,
            coefficients: vec![],
            nondivisible_coefficients: vec![],
        });
    };
    let mut sum = LieElement::zero(&a);
    for (c, e) in combo {
        if e.degree != degree {
            return Err(Error::MixedDegrees { expected: degree, found: e.degree });
        }
        sum = sum.checked_add(&e.f.scale(&Rational::from_integer(c.clone())))?;
    }
    let basis = lyndon_basis(&a, degree);
    let coords = sum.int_coords(&basis)?;
    let m = BigInt::from(modulus);
    let mut coefficients = Vec::new();
    let mut nondivisible = Vec::new();
    for (w, v) in basis.words.iter().zip(&coords) {
        if v.is_zero() {
            continue;
        }
        let wc = WordCoefficient { word: w.spell(&a), bracketing: w.bracketing(&a), value: v.clone() };
        if !v.is_multiple_of(&m) {
            nondivisible.push(wc.clone());
        }
        coefficients.push(wc);
    }
    Ok(CongruenceReport {
        modulus,
        degree,
        divisible: divisible_by(&coords, modulus),
        coefficients,
        nondivisible_coefficients: nondivisible,
    })
}

/// The combination `2⟨f₃, f₉⟩ - 27⟨f₅, f₇⟩` in degree 12.
pub fn congruence_combination() -> Result<Vec<(BigInt, IharaElement)>> {
    let f3 = soule_generator(3)?;
    let f5 = soule_generator(5)?;
    let f7 = soule_generator(7)?;
    let f9 = soule_generator(9)?;
    Ok(vec![(BigInt::from(2), ihara_bracket(&f3, &f9)?), (BigInt::from(-27), ihara_bracket(&f5, &f7)?)])
}

/// Which scalings of the generators make the combination vanish modulo `p`.
///
/// Returned when the congruence fails in the computed normalization: with
/// `fₘ = λₘ·Dₘ`, the combination `2⟨D₃,D₉⟩ - 27⟨D₅,D₇⟩` is
/// `(2/(λ₃λ₉))⟨f₃,f₉⟩ - (27/(λ₅λ₇))⟨f₅,f₇⟩`, so only the ratio
/// `r = λ₅λ₇ / (λ₃λ₉)` matters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeDiscrepancy {
    pub modulus: u64,
    /// Leading `ad(x)^(m-1)(y)` coefficient of each computed generator.
    pub leading_coefficients: BTreeMap<u32, String>,
    /// Residues `r mod p` for which `2r⟨f₃,f₉⟩ - 27⟨f₅,f₇⟩ ≡ 0`, if any.
    pub ratios_mod_p: Vec<u64>,
}

pub fn lattice_discrepancy(modulus: u64) -> Result<LatticeDiscrepancy> {
    let gens: Vec<IharaElement> = [3, 5, 7, 9].iter().map(|&m| soule_generator(m)).collect::<Result<_>>()?;
    let leading_coefficients =
        gens.iter().map(|g| (g.degree, g.f.coefficient(&leading_word(g.degree)).to_string())).collect();
    let b39 = ihara_bracket(&gens[0], &gens[3])?.int_coords()?;
    let b57 = ihara_bracket(&gens[1], &gens[2])?.int_coords()?;
    let m = BigInt::from(modulus);
    let reduce = |x: &BigInt| x.mod_floor(&m);
    let mut ratios = Vec::new();
    // Solve 2r·b39 ≡ 27·b57 coordinatewise; r ranges over ℤ/p.
    let pivot = b39.iter().position(|x| !reduce(x).is_zero());
    if let Some(i) = pivot {
        if crate::linalg::modular::is_prime(modulus) {
            let two_b = reduce(&(BigInt::from(2) * &b39[i]));
            let inv = two_b.extended_gcd(&m).x.mod_floor(&m);
            let r = reduce(&(BigInt::from(27) * &b57[i] * inv));
            let ok =
                b39.iter().zip(&b57).all(|(a, b)| reduce(&(BigInt::from(2) * &r * a - BigInt::from(27) * b)).is_zero());
            if ok {
                ratios.push(num_traits::ToPrimitive::to_u64(&r).expect("residue fits"));
            }
        }
    }
    Ok(LatticeDiscrepancy { modulus, leading_coefficients, ratios_mod_p: ratios })
}

/// One row of the comparison between `dim 𝒟ₙ` and the free model on one
/// generator in each odd degree `>= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessRow {
    pub n: u32,
    pub dim_d: usize,
    /// Dimension under the special condition alone.
    pub dim_special_only: usize,
    pub free_model: u128,
    pub matches: bool,
}

pub fn freeness_table(max_degree: u32) -> Result<Vec<FreenessRow>> {
    if max_degree < 2 {
        return Ok(Vec::new());
    }
    let gens: Vec<u32> = (3..=max_degree).filter(|d| d % 2 == 1).collect();
    let model = weighted_witt_dims(&gens, max_degree)?;
    let dims: Vec<Result<(usize, usize)>> =
        (2..=max_degree).into_par_iter().map(|n| Ok((special_basis(n)?.len(), special_condition_dim(n)?))).collect();
    (2..=max_degree)
        .zip(dims)
        .map(|(n, dim)| {
            let (dim_d, dim_special_only) = dim?;
            let free_model = model[&n];
            Ok(FreenessRow { n, dim_d, dim_special_only, free_model, matches: dim_d as u128 == free_model })
        })
        .collect()
}
