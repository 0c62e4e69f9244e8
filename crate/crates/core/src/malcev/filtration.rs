use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{lyndon_basis, GradedAlphabet};
use crate::linalg::{quotient_invariants, rank_int, saturation};

use super::{group_commutator, NilpotentElement};

/// A finitely generated group whose lower central series is analysed.
#[derive(Clone, Debug)]
pub enum FilteredGroupSpec {
    /// Free group on `k` generators, seen in its class-`class` quotient.
    FreeGroup { k: u32, class: u32 },
    /// `ℤ^rank × ℤ/torsion`.
    LatticeTimesCyclic { rank: u32, torsion: u64 },
    /// The subgroup generated by the given elements of a free nilpotent group.
    SubgroupOfNilpotent { generators: Vec<NilpotentElement> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationRow {
    pub m: u32,
    /// Rank of `Gr_Lᵐ`.
    pub rank: usize,
    /// Torsion of `Gr_Dᵐ`.
    pub torsion: Vec<u64>,
    /// Invariants of `Dᵐ / Lᵐ`.
    pub d_mod_l: Vec<u64>,
    /// Torsion of `Gr_Lᵐ`.
    pub gr_l_torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub family: String,
    /// `"lower-central"`, or `"induced-graded"` when the lattices are those
    /// of the filtration induced from an ambient group.
    pub filtration: String,
    pub rows: Vec<FiltrationRow>,
}

pub fn filtration_report(spec: &FilteredGroupSpec, max_m: u32) -> Result<FiltrationReport> {
    if max_m == 0 {
        return Err(Error::InvalidArgument("max_m must be >= 1".into()));
    }
    match spec {
        FilteredGroupSpec::FreeGroup { k, class } => {
            if *k == 0 {
                return Err(Error::Unsupported("free group needs k >= 1".into()));
            }
            let alphabet = GradedAlphabet::uniform(*k as usize)?;
            let gens =
                (0..*k).map(|l| NilpotentElement::generator(&alphabet, l as u8, *class)).collect::<Result<Vec<_>>>()?;
            let rows = lattice_rows(&alphabet, &gens, *class, max_m)?;
            Ok(FiltrationReport {
                family: format!("FreeGroup({k}, class {class})"),
                filtration: "lower-central".into(),
                rows,
            })
        }
        FilteredGroupSpec::SubgroupOfNilpotent { generators } => {
            let Some(first) = generators.first() else {
                return Err(Error::Unsupported("subgroup needs at least one generator".into()));
            };
            let alphabet = first.alphabet().clone();
            for g in generators {
                alphabet.check_same(g.alphabet())?;
                if g.class() != first.class() {
                    return Err(Error::ClassMismatch(first.class(), g.class()));
                }
            }
            let rows = lattice_rows(&alphabet, generators, first.class(), max_m)?;
            Ok(FiltrationReport {
                family: format!("SubgroupOfNilpotent({} generators, class {})", generators.len(), first.class()),
                filtration: "induced-graded".into(),
                rows,
            })
        }
        FilteredGroupSpec::LatticeTimesCyclic { rank, torsion } => {
            if *torsion == 0 {
                return Err(Error::Unsupported("torsion order must be positive".into()));
            }
            Ok(FiltrationReport {
                family: format!("LatticeTimesCyclic({rank}, {torsion})"),
                filtration: "lower-central".into(),
                rows: abelian_rows(*rank, *torsion, max_m)?,
            })
        }
    }
}

/// Rows from the degree-`m` lattices spanned by `m`-fold commutators.
fn lattice_rows(
    alphabet: &GradedAlphabet,
    gens: &[NilpotentElement],
    class: u32,
    max_m: u32,
) -> Result<Vec<FiltrationRow>> {
    if max_m > class + 1 {
        return Err(Error::Unsupported(format!("max_m {max_m} exceeds class + 1 = {}", class + 1)));
    }
    let mut level: Vec<NilpotentElement> = gens.to_vec();
    let mut rows = Vec::new();
    for m in 1..=max_m {
        if m > 1 {
            let mut next = Vec::with_capacity(level.len() * gens.len());
            for c in &level {
                for g in gens {
                    next.push(group_commutator(c, g)?);
                }
            }
            level = next;
        }
        let basis = lyndon_basis(alphabet, m);
        let mut lattice = Vec::new();
        for e in &level {
            let v = e.value().component(m).coords(&basis)?;
            if v.iter().any(|c| !c.is_integer()) {
                return Err(Error::Unsupported(format!("degree-{m} lattice is not integral in the Lyndon basis")));
            }
            let v: Vec<BigInt> = v.into_iter().map(|c| c.to_integer()).collect();
            if v.iter().any(|c| !c.is_zero()) {
                lattice.push(v);
            }
        }
        let n = basis.len();
        let rank = rank_int(&lattice, n);
        let saturated = saturation(&lattice, n);
        rows.push(FiltrationRow {
            m,
            rank,
            torsion: small(&quotient_invariants(&saturated, n).torsion)?,
            // ℤⁿ/D is free, so the torsion of ℤⁿ/L is D/L.
            d_mod_l: small(&quotient_invariants(&lattice, n).torsion)?,
            gr_l_torsion: Vec::new(),
        });
    }
    Ok(rows)
}

/// `Γ = ℤ^r × ℤ/t` is abelian: `L² = 1` and every `Dᵐ` with `m >= 2` is the
/// torsion subgroup.
fn abelian_rows(rank: u32, torsion: u64, max_m: u32) -> Result<Vec<FiltrationRow>> {
    let n = rank as usize + 1;
    let mut relation = vec![BigInt::zero(); n];
    relation[rank as usize] = BigInt::from(torsion);
    let gamma = quotient_invariants(&[relation], n);
    let torsion_subgroup = small(&gamma.torsion)?;
    let mut rows = vec![FiltrationRow {
        m: 1,
        rank: gamma.free_rank,
        torsion: Vec::new(),
        d_mod_l: Vec::new(),
        gr_l_torsion: torsion_subgroup.clone(),
    }];
    for m in 2..=max_m {
        rows.push(FiltrationRow {
            m,
            rank: 0,
            torsion: Vec::new(),
            d_mod_l: torsion_subgroup.clone(),
            gr_l_torsion: Vec::new(),
        });
    }
    Ok(rows)
}

fn small(v: &[BigInt]) -> Result<Vec<u64>> {
    v.iter().map(|x| x.to_u64().ok_or_else(|| Error::Unsupported(format!("invariant {x} exceeds u64")))).collect()
}
