//! Definition-level brute force on `Z_n`.
//!
//! Nothing here calls the formula path: group arithmetic is redone from `n`
//! and `alpha` alone, subgroups are element sets, and closure, radicals and
//! maximality are read off orbit partitions. Only `AmbientGroup`'s accessors
//! for `n` and `alpha` and the plain data types are shared.

use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AmbientGroup, GroupElement};

/// Largest `|G|` the oracle will enumerate.
pub const ORDER_BOUND: u64 = 100_000;
/// Default bound on `n` for whole-lattice enumeration.
pub const DEFAULT_N_BOUND: u64 = 60;

/// Own copy of the group law, indexed as `k * n + e`.
#[derive(Debug, Clone)]
pub struct OracleGroup {
    pub n: u64,
    pub alpha: u64,
    /// `alpha^k mod n` for `k < |a|`.
    powers: Vec<u64>,
}

impl OracleGroup {
    pub fn new(g: &AmbientGroup) -> Result<Self> {
        let (n, alpha) = (g.n(), g.alpha());
        let mut powers = vec![1 % n];
        let mut cur = alpha % n;
        while cur != 1 % n {
            powers.push(cur);
            cur = cur * alpha % n;
        }
        let og = OracleGroup { n, alpha, powers };
        if og.order() > ORDER_BOUND {
            return Err(Error::ResourceLimit(format!(
                "|G| = {} exceeds the oracle bound {ORDER_BOUND}",
                og.order()
            )));
        }
        Ok(og)
    }

    pub fn a_ord(&self) -> u64 {
        self.powers.len() as u64
    }

    pub fn order(&self) -> u64 {
        self.n * self.a_ord()
    }

    pub fn index(&self, x: GroupElement) -> usize {
        ((x.k % self.a_ord()) * self.n + x.e % self.n) as usize
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        GroupElement::new(idx as u64 / self.n, idx as u64 % self.n)
    }

    pub fn mul(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        // apply x then y: v -> (v alpha^kx + ex) alpha^ky + ey
        let k = (x.k + y.k) % self.a_ord();
        let e = (x.e * self.powers[y.k as usize] + y.e) % self.n;
        GroupElement::new(k, e)
    }

    pub fn act(&self, x: GroupElement, v: u64) -> u64 {
        (v * self.powers[x.k as usize] + x.e) % self.n
    }

    /// Conjugate of `x` by the affine map `v -> c v + t`.
    pub fn conjugate_affine(&self, x: GroupElement, c: u64, t: u64) -> GroupElement {
        let n = self.n;
        let fix = (1 + n - self.powers[x.k as usize]) % n;
        GroupElement::new(x.k, (x.e * c + t * fix) % n)
    }

    /// Units of `Z_n`.
    pub fn units(&self) -> Vec<u64> {
        (1..=self.n).map(|c| c % self.n).filter(|&c| num_integer::gcd(c, self.n) == 1).collect()
    }

    pub fn whole(&self) -> ElementSet {
        ElementSet { bits: vec![true; self.order() as usize] }
    }
}

/// A subgroup as the indicator of its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: Vec<bool>,
}

impl ElementSet {
    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, og: &OracleGroup, x: GroupElement) -> bool {
        self.bits[og.index(x)]
    }

    /// Elements in increasing `(k, e)` order.
    pub fn elements(&self, og: &OracleGroup) -> Vec<GroupElement> {
        self.indices().map(|i| og.element(i)).collect()
    }

    fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn conjugate_affine(&self, og: &OracleGroup, c: u64, t: u64) -> ElementSet {
        let mut bits = vec![false; self.bits.len()];
        for i in self.indices() {
            bits[og.index(og.conjugate_affine(og.element(i), c, t))] = true;
        }
        ElementSet { bits }
    }
}

/// `<gens>` by breadth-first closure; the empty list generates the identity.
pub fn oracle_generate(og: &OracleGroup, gens: &[GroupElement]) -> ElementSet {
    let mut bits = vec![false; og.order() as usize];
    let id = GroupElement::new(0, 0);
    bits[og.index(id)] = true;
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = og.mul(x, g);
            let idx = og.index(y);
            if !bits[idx] {
                bits[idx] = true;
                queue.push_back(y);
            }
        }
    }
    ElementSet { bits }
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// One subgroup per element set, with the triple that generated it.
#[derive(Debug, Clone)]
pub struct EnumeratedSubgroup {
    /// `(k, i, j)` with the subgroup equal to `<a^k w^i, w^j>`.
    pub triple: (u64, u64, u64),
    pub elements: ElementSet,
}

/// Every subgroup of `G` exactly once, from `<a^k w^i, w^j>` with `k | |a|`,
/// `j | n` and `0 <= i < n`.
pub fn oracle_all_subgroups(og: &OracleGroup, n_bound: u64) -> Result<Vec<EnumeratedSubgroup>> {
    if og.n > n_bound {
        return Err(Error::ResourceLimit(format!("n = {} exceeds the bound {n_bound}", og.n)));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in divisors(og.a_ord()) {
        for j in divisors(og.n) {
            for i in 0..og.n {
                let gens = [GroupElement::new(k % og.a_ord(), i), GroupElement::new(0, j % og.n)];
                let elements = oracle_generate(og, &gens);
                if seen.insert(elements.clone()) {
                    out.push(EnumeratedSubgroup { triple: (k, i, j), elements });
                }
            }
        }
    }
    Ok(out)
}

/// Orbits as labels `0, 1, ...` in order of least point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    pub labels: Vec<u32>,
}

impl Partition {
    fn from_roots(roots: impl Iterator<Item = usize>) -> Self {
        let mut map = HashMap::new();
        let labels = roots
            .map(|r| {
                let next = map.len() as u32;
                *map.entry(r).or_insert(next)
            })
            .collect();
        Partition { labels }
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn block_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0; self.block_count()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![u32::MAX; self.block_count()];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let slot = &mut image[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// Image under `v -> c v + t`.
    pub fn map_affine(&self, c: u64, t: u64) -> Partition {
        let n = self.labels.len() as u64;
        let mut moved = vec![0u32; n as usize];
        for v in 0..n {
            moved[((c * v + t) % n) as usize] = self.labels[v as usize];
        }
        Partition::from_roots(moved.into_iter().map(|l| l as usize))
    }

    /// `g` maps every block onto itself.
    pub fn preserved_by(&self, og: &OracleGroup, x: GroupElement) -> bool {
        (0..og.n).all(|v| self.labels[og.act(x, v) as usize] == self.labels[v as usize])
    }
}

pub fn orbit_partition_of_generators(og: &OracleGroup, gens: &[GroupElement]) -> Partition {
    let n = og.n as usize;
    let mut uf = UnionFind::<usize>::new(n);
    for v in 0..n {
        for &g in gens {
            uf.union(v, og.act(g, v as u64) as usize);
        }
    }
    Partition::from_roots((0..n).map(|v| uf.find(v)))
}

pub fn orbit_partition(og: &OracleGroup, h: &ElementSet) -> Partition {
    orbit_partition_of_generators(og, &h.elements(og))
}

/// The largest subgroup with the same orbits as `h`.
pub fn oracle_closure(og: &OracleGroup, h: &ElementSet) -> ElementSet {
    stabilizer_of_partition(og, &orbit_partition(og, h))
}

pub fn stabilizer_of_partition(og: &OracleGroup, p: &Partition) -> ElementSet {
    let bits = (0..og.order() as usize).map(|i| p.preserved_by(og, og.element(i))).collect();
    ElementSet { bits }
}

pub fn oracle_is_closed(og: &OracleGroup, h: &ElementSet) -> bool {
    let p = orbit_partition(og, h);
    (0..og.order() as usize).all(|i| h.bits[i] || !p.preserved_by(og, og.element(i)))
}

/// Least positive `c` with every orbit invariant under `+c`; `n` if only `0`.
pub fn oracle_radical(og: &OracleGroup, h: &ElementSet) -> u64 {
    radical_of_partition(&orbit_partition(og, h))
}

pub fn radical_of_partition(p: &Partition) -> u64 {
    let n = p.labels.len() as u64;
    (1..=n)
        .find(|&c| (0..n).all(|v| p.labels[((v + c) % n) as usize] == p.labels[v as usize]))
        .unwrap_or(n)
}

/// Maximal elements of the closed proper subgroups of `h`.
pub fn oracle_maximal_closed(og: &OracleGroup, h: &ElementSet) -> Vec<ElementSet> {
    let top = orbit_partition(og, h);
    let below: Vec<Partition> = all_orbit_partitions(og)
        .into_iter()
        .filter(|p| p.refines(&top) && *p != top)
        .collect();
    coarsest(&below).into_iter().map(|p| stabilizer_of_partition(og, &p)).collect()
}

/// Orbit partitions of all subgroups, deduplicated. Closed subgroups are in
/// inclusion-reversing bijection with these.
pub fn all_orbit_partitions(og: &OracleGroup) -> Vec<Partition> {
    all_orbit_partitions_with_triples(og).into_iter().map(|(p, _)| p).collect()
}

/// Same, each with a triple `(k, i, j)` whose subgroup `<a^k w^i, w^j>` has
/// that partition; sorted by block count.
pub fn all_orbit_partitions_with_triples(og: &OracleGroup) -> Vec<(Partition, (u64, u64, u64))> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in divisors(og.a_ord()) {
        for j in divisors(og.n) {
            // <a^k w^i, w^j> only depends on i mod j
            for i in 0..j {
                let gens = [GroupElement::new(k % og.a_ord(), i), GroupElement::new(0, j % og.n)];
                let p = orbit_partition_of_generators(og, &gens);
                if seen.insert(p.clone()) {
                    out.push((p, (k, i, j)));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0.block_count(), &a.0.labels).cmp(&(b.0.block_count(), &b.0.labels)));
    out
}

/// The coarsest partitions of the list (those with no strictly coarser
/// partition in the list).
pub fn coarsest(parts: &[Partition]) -> Vec<Partition> {
    let mut sorted: Vec<&Partition> = parts.iter().collect();
    sorted.sort_by_key(|p| p.block_count());
    let mut out: Vec<Partition> = Vec::new();
    for p in sorted {
        if !out.iter().any(|m| m != p && p.refines(m)) {
            out.push(p.clone());
        }
    }
    out
}

/// Coarsest partitions other than the single block: the orbit partitions of
/// the maximal intransitive subgroups.
pub fn maximal_intransitive_partitions(parts: &[Partition]) -> Vec<Partition> {
    let proper: Vec<Partition> = parts.iter().filter(|p| p.block_count() > 1).cloned().collect();
    coarsest(&proper)
}

/// Orbit of a partition under the group generated by the given affine maps.
pub fn affine_orbit(p: &Partition, maps: &[(u64, u64)]) -> HashSet<Partition> {
    let mut seen = HashSet::from([p.clone()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(cur) = queue.pop_front() {
        for &(c, t) in maps {
            let next = cur.map_affine(c, t);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Generators of `G` acting as affine maps: `a` and `w`.
pub fn g_maps(og: &OracleGroup) -> Vec<(u64, u64)> {
    vec![(og.alpha % og.n, 0), (1 % og.n, 1 % og.n)]
}

/// Generators of `Hol(W)`: all units and the unit translation.
pub fn hol_maps(og: &OracleGroup) -> Vec<(u64, u64)> {
    let mut maps: Vec<(u64, u64)> = og.units().into_iter().map(|c| (c, 0)).collect();
    maps.push((1 % og.n, 1 % og.n));
    maps
}

/// Affine maps `v -> c v + t` that preserve `p`.
pub fn hol_stabilizer(og: &OracleGroup, p: &Partition) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for c in og.units() {
        for t in 0..og.n {
            if p.map_affine(c, t) == *p {
                out.push((c, t));
            }
        }
    }
    out
}

/// Classes of subgroups under conjugation by `Hol(W)`, as an index per
/// subgroup.
pub fn hol_classes(og: &OracleGroup, subgroups: &[ElementSet]) -> Vec<usize> {
    let position: HashMap<&ElementSet, usize> = subgroups.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let maps = hol_maps(og);
    let mut class = vec![usize::MAX; subgroups.len()];
    let mut next = 0;
    for start in 0..subgroups.len() {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for &(c, t) in &maps {
                let image = subgroups[cur].conjugate_affine(og, c, t);
                let idx = *position.get(&image).expect("conjugates of subgroups are subgroups");
                if class[idx] == usize::MAX {
                    class[idx] = next;
                    queue.push_back(idx);
                }
            }
        }
        next += 1;
    }
    class
}

#[cfg(test)]
mod tests {
    use super::*;

    fn og(n: u64, alpha: u64) -> OracleGroup {
        OracleGroup::new(&AmbientGroup::new(n, alpha).unwrap()).unwrap()
    }

    #[test]
    fn generate_examples() {
        let g = og(8, 3);
        let h = oracle_generate(&g, &[GroupElement::new(1, 1)]);
        let want = [(0, 0), (0, 4), (1, 1), (1, 5)].map(|(k, e)| GroupElement::new(k, e));
        assert_eq!(h.elements(&g), want);
        assert_eq!(oracle_generate(&g, &[]).len(), 1);
        assert_eq!(oracle_generate(&g, &[GroupElement::new(1, 0), GroupElement::new(0, 1)]).len(), 16);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(oracle_all_subgroups(&og(5, 4), 60).unwrap().len(), 8);
        assert_eq!(oracle_all_subgroups(&og(2, 1), 60).unwrap().len(), 2);
        assert!(oracle_all_subgroups(&og(61, 1), 60).is_err());
    }

    #[test]
    fn closure_and_radical_examples() {
        let g = og(8, 3);
        let w2 = oracle_generate(&g, &[GroupElement::new(0, 2)]);
        let m2 = oracle_closure(&g, &w2);
        assert_eq!(m2.len(), 8);
        assert!(m2.contains(&g, GroupElement::new(1, 0)));
        let p = oracle_generate(&g, &[GroupElement::new(1, 1), GroupElement::new(0, 4)]);
        assert_eq!(oracle_radical(&g, &p), 4);
        assert!(oracle_is_closed(&g, &p));
        let a = oracle_generate(&g, &[GroupElement::new(1, 0)]);
        assert_eq!(oracle_radical(&g, &a), 8);
        assert_eq!(oracle_radical(&g, &g.whole()), 1);
        let trivial = oracle_generate(&g, &[]);
        assert_eq!(oracle_closure(&g, &trivial), trivial);
    }

    #[test]
    fn maximal_examples() {
        let g = og(8, 3);
        let maxes = oracle_maximal_closed(&g, &g.whole());
        // M(2) is normal; P has two conjugates
        let mut sizes: Vec<usize> = maxes.iter().map(|m| m.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 4, 8]);
        let trivial = oracle_generate(&g, &[]);
        assert!(oracle_maximal_closed(&g, &trivial).is_empty());
    }
}
