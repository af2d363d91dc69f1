//! Isomorphism of association schemes by individualization-refinement.
//!
//! Colour bijections are enumerated first (valency- and transpose-preserving,
//! fixing the diagonal). For each one, both coloured complete digraphs are
//! refined jointly to equitable partitions, a vertex of the first graph is
//! individualized against every candidate of the second, and the search
//! backtracks on any count mismatch. The search is exhaustive, so a negative
//! answer is a certificate.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::affine::scheme::AssociationScheme;
use crate::error::{Error, Result};

/// Largest point count on which a negative verdict is certified.
pub const ISO_BOUND: usize = 81;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoVerdict {
    Isomorphic {
        /// `points[u]` is the image of `u`.
        points: Vec<usize>,
        /// `colors[c]` is the image of colour `c`.
        colors: Vec<u16>,
    },
    NonIsomorphic,
    /// Beyond [`ISO_BOUND`] and not separated by cheap invariants.
    Unverified,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }
}

/// Checks `color2(f(u), f(v)) = g(color1(u, v))` for all pairs.
pub fn is_isomorphism(
    s1: &AssociationScheme,
    s2: &AssociationScheme,
    points: &[usize],
    colors: &[u16],
) -> bool {
    let q = s1.point_count;
    if q != s2.point_count || points.len() != q || colors.len() != s1.rank {
        return false;
    }
    let mut seen = vec![false; q];
    for &p in points {
        if p >= q || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    (0..q).all(|u| (0..q).all(|v| s2.color(points[u], points[v]) == colors[s1.color(u, v) as usize]))
}

fn colour_bijections(s1: &AssociationScheme, s2: &AssociationScheme) -> Vec<Vec<u16>> {
    let (Some(t1), Some(t2)) = (s1.transpose_map(), s2.transpose_map()) else {
        return Vec::new();
    };
    let r = s1.rank;
    let mut out = Vec::new();
    let mut map = vec![u16::MAX; r];
    let mut used = vec![false; r];
    map[0] = 0;
    used[0] = true;

    fn extend(
        c: usize,
        map: &mut Vec<u16>,
        used: &mut Vec<bool>,
        s1: &AssociationScheme,
        s2: &AssociationScheme,
        t1: &[u16],
        t2: &[u16],
        out: &mut Vec<Vec<u16>>,
    ) {
        if c == map.len() {
            out.push(map.clone());
            return;
        }
        for d in 1..map.len() {
            if used[d] || s1.valencies[c] != s2.valencies[d] {
                continue;
            }
            // the transpose must follow; only check once both ends are placed
            let tc = t1[c] as usize;
            if (tc == c) != (t2[d] as usize == d) {
                continue;
            }
            if tc < c && t2[map[tc] as usize] as usize != d {
                continue;
            }
            map[c] = d as u16;
            used[d] = true;
            extend(c + 1, map, used, s1, s2, t1, t2, out);
            used[d] = false;
            map[c] = u16::MAX;
        }
    }
    extend(1, &mut map, &mut used, s1, s2, &t1, &t2, &mut out);
    out
}

struct Pair<'a> {
    /// First scheme recoloured into the palette of the second.
    left: Vec<u16>,
    right: &'a AssociationScheme,
    q: usize,
    rank: usize,
}

impl Pair<'_> {
    fn colour(&self, side: usize, u: usize, v: usize) -> usize {
        if side == 0 {
            self.left[u * self.q + v] as usize
        } else {
            self.right.color(u, v) as usize
        }
    }

    /// Joint refinement to an equitable partition; `None` on a mismatch.
    fn refine(&self, mut cells: [Vec<u32>; 2]) -> Option<[Vec<u32>; 2]> {
        let mut count = 1 + *cells[0].iter().max()? as usize;
        loop {
            let mut sigs: [Vec<Vec<u32>>; 2] = [Vec::new(), Vec::new()];
            for side in 0..2 {
                for v in 0..self.q {
                    let mut sig = vec![0u32; 1 + count * self.rank];
                    sig[0] = cells[side][v];
                    for u in 0..self.q {
                        sig[1 + cells[side][u] as usize * self.rank + self.colour(side, v, u)] += 1;
                    }
                    sigs[side].push(sig);
                }
            }
            let mut classes: BTreeMap<&[u32], [usize; 2]> = BTreeMap::new();
            for side in 0..2 {
                for sig in &sigs[side] {
                    classes.entry(sig.as_slice()).or_default()[side] += 1;
                }
            }
            if classes.values().any(|c| c[0] != c[1]) {
                return None;
            }
            let ids: BTreeMap<&[u32], u32> =
                classes.keys().enumerate().map(|(idx, &k)| (k, idx as u32)).collect();
            let next: [Vec<u32>; 2] =
                [0, 1].map(|side| sigs[side].iter().map(|s| ids[s.as_slice()]).collect());
            let stable = ids.len() == count;
            cells = next;
            count = ids.len();
            if stable {
                return Some(cells);
            }
        }
    }

    fn search(&self, cells: [Vec<u32>; 2]) -> Option<Vec<usize>> {
        let cells = self.refine(cells)?;
        let count = 1 + *cells[0].iter().max().unwrap() as usize;
        if count == self.q {
            let mut inverse = vec![0; self.q];
            for v in 0..self.q {
                inverse[cells[1][v] as usize] = v;
            }
            let points: Vec<usize> = (0..self.q).map(|u| inverse[cells[0][u] as usize]).collect();
            let ok = (0..self.q)
                .all(|u| (0..self.q).all(|v| self.right.color(points[u], points[v]) as usize == self.colour(0, u, v)));
            return ok.then_some(points);
        }
        let mut sizes = vec![0usize; count];
        for &c in &cells[0] {
            sizes[c as usize] += 1;
        }
        let target = (0..count).filter(|&c| sizes[c] > 1).min_by_key(|&c| sizes[c])? as u32;
        let v1 = cells[0].iter().position(|&c| c == target)?;
        for v2 in (0..self.q).filter(|&v| cells[1][v] == target) {
            let mut next = cells.clone();
            next[0][v1] = count as u32;
            next[1][v2] = count as u32;
            if let Some(points) = self.search(next) {
                return Some(points);
            }
        }
        None
    }
}

fn search_all(s1: &AssociationScheme, s2: &AssociationScheme, fix_origin: bool) -> Option<(Vec<usize>, Vec<u16>)> {
    let q = s1.point_count;
    for colors in colour_bijections(s1, s2) {
        let left = s1.colors.iter().map(|&c| colors[c as usize]).collect();
        let pair = Pair { left, right: s2, q, rank: s1.rank };
        let mut start = [vec![0u32; q], vec![0u32; q]];
        if fix_origin && q > 1 {
            start[0][0] = 1;
            start[1][0] = 1;
        }
        if let Some(points) = pair.search(start) {
            return Some((points, colors));
        }
    }
    None
}

fn cheap_invariants_differ(s1: &AssociationScheme, s2: &AssociationScheme) -> bool {
    let mut v1 = s1.valencies.clone();
    let mut v2 = s2.valencies.clone();
    v1.sort_unstable();
    v2.sort_unstable();
    s1.rank != s2.rank || v1 != v2
}

/// Decides isomorphism of two schemes on the same number of points.
pub fn scheme_isomorphic(s1: &AssociationScheme, s2: &AssociationScheme) -> Result<IsoVerdict> {
    decide(s1, s2, false)
}

/// Same as [`scheme_isomorphic`] for schemes whose automorphism groups are
/// transitive (e.g. containing all translations of a field): any isomorphism
/// can then be composed with an automorphism so that it fixes point 0.
pub fn scheme_isomorphic_transitive(s1: &AssociationScheme, s2: &AssociationScheme) -> Result<IsoVerdict> {
    decide(s1, s2, true)
}

fn decide(s1: &AssociationScheme, s2: &AssociationScheme, fix_origin: bool) -> Result<IsoVerdict> {
    if s1.point_count != s2.point_count {
        return Err(Error::invalid(format!(
            "point counts differ: {} vs {}",
            s1.point_count, s2.point_count
        )));
    }
    if cheap_invariants_differ(s1, s2) {
        return Ok(IsoVerdict::NonIsomorphic);
    }
    if s1.point_count > ISO_BOUND {
        return Ok(IsoVerdict::Unverified);
    }
    Ok(match search_all(s1, s2, fix_origin) {
        Some((points, colors)) => {
            debug_assert!(is_isomorphism(s1, s2, &points, &colors));
            IsoVerdict::Isomorphic { points, colors }
        }
        None => IsoVerdict::NonIsomorphic,
    })
}
