//! Orbits of a subgroup on `Z_n`: explicit ones by union-find, and predicted
//! lengths through the action of `H` on `W / rad(H)`.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::closure::radical_unchecked;
use crate::error::Result;
use crate::group::{is_negative_automorphism, AmbientGroup, SubgroupPresentation};
use crate::normal_form::{require_normal_form, shrink_into_commutator};
use crate::numtheory::{additive_order, crt, hall_part_by, lcm, mul_mod, mult_order, residue};

/// Orbit lengths with multiplicities, sorted by length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitMultiset {
    pub entries: Vec<(u64, u64)>,
}

impl OrbitMultiset {
    pub fn from_lengths(lengths: impl IntoIterator<Item = u64>) -> Self {
        Self::from_counts(lengths.into_iter().map(|len| (len, 1)))
    }

    /// Merges `(length, multiplicity)` pairs; zero multiplicities vanish.
    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut acc = BTreeMap::new();
        for (len, mult) in counts {
            if mult > 0 {
                *acc.entry(len).or_insert(0) += mult;
            }
        }
        OrbitMultiset { entries: acc.into_iter().collect() }
    }

    pub fn orbit_count(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn point_count(&self) -> u64 {
        self.entries.iter().map(|&(len, m)| len * m).sum()
    }

    pub fn min_length(&self) -> Option<u64> {
        self.entries.first().map(|&(len, _)| len)
    }

    pub fn max_length(&self) -> Option<u64> {
        self.entries.last().map(|&(len, _)| len)
    }
}

impl std::fmt::Display for OrbitMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|&(len, m)| if m == 1 { len.to_string() } else { format!("{m}x{len}") })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Orbits as sorted point lists, ordered by their least point.
pub fn orbits_explicit(g: &AmbientGroup, h: &SubgroupPresentation) -> Vec<Vec<u64>> {
    let n = g.n() as usize;
    let mut uf = UnionFind::<usize>::new(n);
    let gens = g.generators(h);
    for v in 0..n {
        for &gen in &gens {
            uf.union(v, g.act(gen, v as u64) as usize);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    let mut order = Vec::new();
    for v in 0..n {
        let root = uf.find(v);
        by_root
            .entry(root)
            .or_insert_with(|| {
                order.push(root);
                Vec::new()
            })
            .push(v as u64);
    }
    order.into_iter().map(|r| by_root.remove(&r).unwrap()).collect()
}

pub fn explicit_multiset(g: &AmbientGroup, h: &SubgroupPresentation) -> OrbitMultiset {
    OrbitMultiset::from_lengths(orbits_explicit(g, h).iter().map(|o| o.len() as u64))
}

/// The cyclic group induced by `H` on `W / rad(H)`, conjugated so that its
/// generator `b x` has `|x|_p > |[b, W]|_p` on every prime of `x`.
#[derive(Debug, Clone)]
pub struct QuotientAction {
    /// `|rad(H)|`.
    pub radical_order: u64,
    /// `|W / rad(H)|`.
    pub modulus: u64,
    pub beta: u64,
    pub x: u64,
    /// Points of the quotient are shifted by `shift` before applying the
    /// formulas.
    pub shift: u64,
    pub u_order: u64,
    pub v_order: u64,
    pub negative: bool,
}

impl QuotientAction {
    pub fn new(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<Self> {
        require_normal_form(g, h)?;
        let j_r = radical_unchecked(g, h);
        let q = g.quotient(j_r);
        // rad(H) contains H ∩ W, so H acts on the quotient as <bx>; only the
        // generator matters and the third slot is a placeholder
        let cyclic = SubgroupPresentation::new(h.k % q.a_ord(), h.i % j_r, j_r);
        let (x, shift) = shrink_into_commutator(&q, &cyclic);
        let beta = q.beta(&cyclic);
        let v_order = hall_part_by(j_r, |p| (beta + p - 1) % p != 0);
        Ok(QuotientAction {
            radical_order: g.n() / j_r,
            modulus: j_r,
            beta,
            x,
            shift,
            u_order: j_r / v_order,
            v_order,
            negative: is_negative_automorphism(beta, j_r),
        })
    }

    /// Splits a quotient point into its `U`- and `V`-components.
    fn split(&self, v: u64) -> (u64, u64) {
        let v1 = crt(&[(v % self.u_order, self.u_order), (0, self.v_order)]);
        let v2 = crt(&[(0, self.u_order), (v % self.v_order, self.v_order)]);
        (v1, v2)
    }

    /// Length of the orbit through `v1` for `v1` in `U`.
    fn unipotent_length(&self, v1: u64) -> u64 {
        let m = self.modulus;
        let bm = residue(self.beta as i128 - 1, m);
        let d = (self.x + mul_mod(v1, bm, m)) % m;
        if !self.negative {
            return additive_order(d, m);
        }
        // two cosets of <d (beta + 1)>: v + C and v^b x + C, equal iff d is in C
        let c = mul_mod(d, (self.beta + 1) % m, m);
        let (ord_d, ord_c) = (additive_order(d, m), additive_order(c, m));
        if ord_d == ord_c {
            ord_c
        } else {
            2 * ord_c
        }
    }

    /// Orbit length of the quotient point `v` under the induced cyclic group.
    pub fn quotient_length(&self, v: u64) -> u64 {
        let (v1, v2) = self.split((v + self.shift) % self.modulus);
        let m1 = self.unipotent_length(v1);
        let m2 = mult_order(self.beta, additive_order(v2, self.modulus)).expect("unit");
        lcm(m1, m2)
    }

    pub fn length(&self, v: u64) -> u64 {
        self.radical_order * self.quotient_length(v % self.modulus)
    }

    pub fn multiset(&self) -> OrbitMultiset {
        let mut points: BTreeMap<u64, u64> = BTreeMap::new();
        for v in 0..self.modulus {
            *points.entry(self.quotient_length(v)).or_insert(0) += 1;
        }
        OrbitMultiset::from_counts(
            points.into_iter().map(|(len, pts)| (len * self.radical_order, pts / len)),
        )
    }

    /// `(m, M)`: least and greatest orbit lengths in closed form.
    pub fn length_bounds(&self) -> (u64, u64) {
        let m = self.modulus;
        let x_order = additive_order(self.x, m);
        let (t_min, t_max, s) = if self.negative {
            let t = 2 * additive_order(mul_mod(self.x, (self.beta + 1) % m, m), m);
            // x of odd order sits in the fixed coset <x^(beta+1)> = <x>
            (if x_order % 2 == 1 { x_order } else { t }, t, 2)
        } else {
            (x_order, x_order, 1)
        };
        // U_2: the part of U prime to |x|
        let u2 = hall_part_by(self.u_order, |p| x_order % p != 0);
        let beta_s = crate::numtheory::pow_mod(self.beta, s, m.max(1));
        let comm = additive_order(residue(beta_s as i128 - 1, u2.max(1)), u2.max(1));
        let v_len = mult_order(self.beta, self.v_order).expect("unit");
        let big = lcm(t_max * comm, v_len);
        (t_min * self.radical_order, big * self.radical_order)
    }
}

pub fn orbit_length_predict(g: &AmbientGroup, h: &SubgroupPresentation, v: u64) -> Result<u64> {
    Ok(QuotientAction::new(g, h)?.length(v))
}

pub fn orbit_multiset(g: &AmbientGroup, h: &SubgroupPresentation) -> Result<OrbitMultiset> {
    Ok(QuotientAction::new(g, h)?.multiset())
}

/// Number of orbits of the quotient generator inside `v1^H x v2^<b>` and
/// their common length, by explicit iteration; used to check the product
/// decomposition of orbits.
pub fn product_orbit_census(action: &QuotientAction, v: u64) -> (u64, u64, u64, u64) {
    let m = action.modulus;
    let (v1, v2) = action.split((v + action.shift) % m);
    let step = |p: u64| (mul_mod(p, action.beta, m) + action.x) % m;
    let cycle = |start: u64, f: &dyn Fn(u64) -> u64| {
        let mut pts = vec![start];
        let mut p = f(start);
        while p != start {
            pts.push(p);
            p = f(p);
        }
        pts
    };
    let orbit1 = cycle(v1, &step);
    let orbit2 = cycle(v2, &|p| mul_mod(p, action.beta, m));
    let mut set: Vec<u64> = orbit1
        .iter()
        .flat_map(|&a| orbit2.iter().map(move |&b| (a + b) % m))
        .collect();
    set.sort_unstable();
    set.dedup();
    let mut seen = vec![false; m as usize];
    let mut lengths = Vec::new();
    for &p in &set {
        if seen[p as usize] {
            continue;
        }
        let orbit = cycle(p, &step);
        for &q in &orbit {
            seen[q as usize] = true;
        }
        lengths.push(orbit.len() as u64);
    }
    let closed = set.iter().all(|&p| seen[p as usize]) && lengths.iter().sum::<u64>() == set.len() as u64;
    let common = if lengths.windows(2).all(|w| w[0] == w[1]) && closed {
        lengths[0]
    } else {
        0
    };
    (orbit1.len() as u64, orbit2.len() as u64, lengths.len() as u64, common)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g83() -> AmbientGroup {
        AmbientGroup::new(8, 3).unwrap()
    }

    #[test]
    fn explicit_examples() {
        let g = g83();
        assert_eq!(
            orbits_explicit(&g, &SubgroupPresentation::new(1, 0, 2)),
            vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]]
        );
        assert_eq!(
            orbits_explicit(&g, &SubgroupPresentation::new(1, 1, 4)),
            vec![vec![0, 1, 4, 5], vec![2, 3, 6, 7]]
        );
        assert_eq!(orbits_explicit(&g, &g.trivial()).len(), 8);
    }

    #[test]
    fn predicted_lengths() {
        let g = g83();
        let p = SubgroupPresentation::new(1, 1, 4);
        assert_eq!(orbit_length_predict(&g, &p, 0).unwrap(), 4);
        let g5 = AmbientGroup::new(5, 4).unwrap();
        let a = SubgroupPresentation::new(1, 0, 5);
        assert_eq!(orbit_length_predict(&g5, &a, 1).unwrap(), 2);
        assert_eq!(orbit_length_predict(&g5, &a, 0).unwrap(), 1);
    }

    #[test]
    fn multiset_examples() {
        let g = g83();
        let two_fours = OrbitMultiset { entries: vec![(4, 2)] };
        assert_eq!(orbit_multiset(&g, &SubgroupPresentation::new(1, 0, 2)).unwrap(), two_fours);
        assert_eq!(orbit_multiset(&g, &SubgroupPresentation::new(1, 1, 4)).unwrap(), two_fours);
        assert_eq!(
            orbit_multiset(&g, &g.whole()).unwrap(),
            OrbitMultiset { entries: vec![(8, 1)] }
        );
    }

    #[test]
    fn negative_fixed_point() {
        // <a> on Z_4 with alpha = 3: orbits {0}, {2}, {1, 3}
        let g = AmbientGroup::new(4, 3).unwrap();
        let a = SubgroupPresentation::new(1, 0, 4);
        let act = QuotientAction::new(&g, &a).unwrap();
        assert_eq!(act.multiset(), OrbitMultiset { entries: vec![(1, 2), (2, 1)] });
        assert_eq!(act.length_bounds(), (1, 2));
    }

    #[test]
    fn multiset_display() {
        let m = OrbitMultiset::from_lengths([1, 2, 2]);
        assert_eq!(m.to_string(), "[1, 2x2]");
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1,1],[2,2]]");
    }
}
