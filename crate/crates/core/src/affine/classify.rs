//! Maximal non-2-transitive and maximal rank-4 one-dimensional affine groups,
//! and the minimal nontrivial one-dimensional affine schemes.

use serde::Serialize;

use crate::affine::field::FiniteField;
use crate::affine::iso::{scheme_isomorphic, IsoVerdict};
use crate::affine::scheme::{gamma_l1, AssociationScheme};
use crate::error::Result;
use crate::group::AmbientGroup;
use crate::lattice::ClassifiedSubgroup;
use crate::normal_form::to_normal_form;
use crate::numtheory::{mult_order, prime_divisors};
use crate::orbits::orbit_multiset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffineMode {
    Maximal,
    Rank4,
    MinimalSchemes,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeSummary {
    pub group: ClassifiedSubgroup,
    pub rank: usize,
    pub valencies: Vec<usize>,
    pub coherent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub left: usize,
    pub right: usize,
    pub verdict: IsoVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalSchemesReport {
    pub q: u64,
    pub schemes: Vec<SchemeSummary>,
    pub pairs: Vec<PairVerdict>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AffineReport {
    Groups(Vec<ClassifiedSubgroup>),
    Schemes(MinimalSchemesReport),
}

/// `<a^s w^e, w^m>` in `ΓL_1(q)`, in normal form.
fn subgroup(g: &AmbientGroup, s: u64, e: u64, m: u64, family: &str, params: Vec<u64>) -> Result<ClassifiedSubgroup> {
    let h = g.canonical_presentation(&[g.element_reduced(s, e), g.element_reduced(0, m)])?;
    let h = to_normal_form(g, &h)?.0;
    Ok(ClassifiedSubgroup {
        orbit_multiset: orbit_multiset(g, &h)?,
        presentation: h,
        family: family.to_string(),
        params,
    })
}

/// Zero stabilizers of the maximal non-2-transitive one-dimensional affine
/// groups on `F_q`.
pub fn affine_maximal(field: &FiniteField) -> Result<Vec<ClassifiedSubgroup>> {
    let g = gamma_l1(field);
    let (p, d) = (field.p, field.d);
    let n = g.n();
    let mut out = Vec::new();
    for r in prime_divisors(n) {
        out.push(subgroup(&g, 1, 0, r, "M", vec![r])?);
    }
    if p % 4 == 3 && d % 2 == 0 {
        out.push(subgroup(&g, 1, 1, 4, "P", vec![])?);
    }
    Ok(out)
}

/// Zero stabilizers of the maximal rank-4 one-dimensional affine groups.
pub fn affine_rank_four(field: &FiniteField) -> Result<Vec<ClassifiedSubgroup>> {
    let g = gamma_l1(field);
    let p = field.p;
    let n = g.n();
    let ord = |m: u64| mult_order(p % m, m).expect("p is a unit");
    let primes = prime_divisors(n);
    let mut out = Vec::new();
    for &r in &primes {
        if r % 2 == 1 && 2 * ord(r) == r - 1 {
            out.push(subgroup(&g, 1, 0, r, "R1", vec![r])?);
        }
    }
    for &r in &primes {
        if r != 2 && ord(r) == r - 1 {
            out.push(subgroup(&g, 2, 0, r, "R2", vec![r])?);
        }
    }
    for &r in &primes {
        if n % (r * r) == 0 && ord(r * r) == r * r - r {
            out.push(subgroup(&g, 1, 0, r * r, "R3", vec![r])?);
        }
    }
    if p % 2 == 1 {
        for &r in &primes {
            if r != 2 && ord(r) == r - 1 {
                out.push(subgroup(&g, 1, r, 2 * r, "R4", vec![r])?);
            }
        }
    }
    Ok(out)
}

/// Schemes of the maximal groups with pairwise isomorphism verdicts.
pub fn minimal_schemes(field: &FiniteField) -> Result<MinimalSchemesReport> {
    let groups = affine_maximal(field)?;
    let mut built = Vec::new();
    for group in groups {
        let scheme = AssociationScheme::from_stabilizer(field, &group.presentation)?;
        built.push((group, scheme));
    }
    let mut pairs = Vec::new();
    for a in 0..built.len() {
        for b in a + 1..built.len() {
            let verdict = scheme_isomorphic(&built[a].1, &built[b].1)?;
            pairs.push(PairVerdict { left: a, right: b, verdict });
        }
    }
    let schemes = built
        .into_iter()
        .map(|(group, s)| SchemeSummary {
            coherent: s.is_coherent(),
            rank: s.rank,
            valencies: s.valencies,
            group,
        })
        .collect();
    Ok(MinimalSchemesReport { q: field.order(), schemes, pairs })
}

pub fn affine_classify(field: &FiniteField, mode: AffineMode) -> Result<AffineReport> {
    Ok(match mode {
        AffineMode::Maximal => AffineReport::Groups(affine_maximal(field)?),
        AffineMode::Rank4 => AffineReport::Groups(affine_rank_four(field)?),
        AffineMode::MinimalSchemes => AffineReport::Schemes(minimal_schemes(field)?),
    })
}
