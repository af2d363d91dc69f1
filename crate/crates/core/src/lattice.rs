//! Classification of relatively closed subgroups: maximal ones below a
//! closed subgroup, maximal intransitive and second maximal subgroups of `G`,
//! subgroups with three orbits, and the lattice obtained by iteration.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::closure::{centralizer_exponent, is_relatively_closed};
use crate::error::{Error, Result};
use crate::group::{AmbientGroup, GroupElement, SubgroupPresentation};
use crate::normal_form::{order_triple, require_normal_form, to_normal_form};
use crate::numtheory::{gcd, mult_order, p_part_unchecked, prime_divisors};
use crate::orbits::{orbit_multiset, OrbitMultiset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifiedSubgroup {
    #[serde(flatten)]
    pub presentation: SubgroupPresentation,
    /// Which family produced the subgroup, e.g. `"M"` or `"intersection"`.
    pub family: String,
    /// Primes instantiating the family.
    pub params: Vec<u64>,
    pub orbit_multiset: OrbitMultiset,
}

fn normalized(g: &AmbientGroup, gens: &[GroupElement]) -> Result<SubgroupPresentation> {
    let h = g.canonical_presentation(gens)?;
    Ok(to_normal_form(g, &h)?.0)
}

fn classify(
    g: &AmbientGroup,
    h: SubgroupPresentation,
    family: &str,
    params: Vec<u64>,
) -> Result<ClassifiedSubgroup> {
    Ok(ClassifiedSubgroup {
        orbit_multiset: orbit_multiset(g, &h)?,
        presentation: h,
        family: family.to_string(),
        params,
    })
}

/// `w^(j * |y|_(r'))`: the `r`-part of `y = w^j`, as an exponent.
fn r_part_of_y(g: &AmbientGroup, j: u64, r: u64) -> u64 {
    let y_order = g.n() / j;
    (j * (y_order / p_part_unchecked(y_order, r))) % g.n()
}

/// Representatives of the maximal relatively closed subgroups of `H`, one per
/// class under the normalizer of `H` in `Hol(W)`.
pub fn maximal_relatively_closed(
    g: &AmbientGroup,
    h: &SubgroupPresentation,
) -> Result<Vec<ClassifiedSubgroup>> {
    require_normal_form(g, h)?;
    if !is_relatively_closed(g, h)? {
        return Err(Error::invalid(format!(
            "({}, {}, {}) is not relatively closed",
            h.k, h.i, h.j
        )));
    }
    let n = g.n();
    let beta = g.beta(h);
    let s = g.structure_data(h);
    let n_alpha = centralizer_exponent(g, h.j);
    let y_order = g.y_order(h);
    let x_order = g.x_order(h);
    let bx = g.element_reduced(h.k, h.i);
    let y = g.element_reduced(0, h.j);
    let mut out = Vec::new();

    // powers of bx
    for r in prime_divisors(n_alpha / h.k) {
        let k = normalized(g, &[g.pow(bx, r), y])?;
        out.push(classify(g, k, "power", vec![r])?);
    }

    // shrinking the intersection with W; whether <bx, y^r> is closed is
    // decided by the screen below
    for r in prime_divisors(y_order) {
        let k = normalized(g, &[bx, g.element_reduced(0, h.j * r)])?;
        out.push(classify(g, k, "intersection", vec![r])?);
    }

    let l_primes = prime_divisors(s.l);
    let beta_minus = (beta + n - 1) % n;
    for &r in &l_primes {
        if y_order % r != 0 {
            continue;
        }
        let z = r_part_of_y(g, h.j, r);
        let jr = h.j * r;
        if beta_minus % r == 0 {
            // twisting by the r-part of y, unipotent prime
            let c_r = p_part_unchecked(n / gcd(n, beta_minus), r);
            if x_order % r != 0 && p_part_unchecked(y_order, r) > c_r {
                let k = normalized(g, &[g.element_reduced(h.k, h.i + z), g.element_reduced(0, jr)])?;
                out.push(classify(g, k, "twist-u", vec![r])?);
            }
        } else if h.j % r != 0 {
            let n_beta = mult_order(beta, r)?;
            if gcd(n_beta, n_alpha) == 1 {
                let lead = g.mul(g.pow(bx, n_beta), g.element_reduced(0, z));
                let k = normalized(g, &[lead, g.element_reduced(0, jr)])?;
                out.push(classify(g, k, "twist-v", vec![r])?);
            }
        }
    }

    if h.j % 2 == 1 && s.l % 2 == 1 && s.b_negative_on_w {
        let z = r_part_of_y(g, h.j, 2);
        let k = normalized(
            g,
            &[g.element_reduced(h.k, h.i + z), g.element_reduced(0, 4 * h.j)],
        )?;
        out.push(classify(g, k, "negative", vec![2])?);
    }
    // a proper candidate has prime index in H, so it is maximal iff closed;
    // <bx, y^r> can also collapse back to H when <bx> meets W outside <y^r>
    let order = g.subgroup_order(h);
    let mut kept = Vec::with_capacity(out.len());
    for c in out {
        if g.subgroup_order(&c.presentation) < order && is_relatively_closed(g, &c.presentation)? {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// `<a^s w^e, w^m>` in normal form.
fn standard(g: &AmbientGroup, s: u64, e: u64, m: u64) -> Result<SubgroupPresentation> {
    normalized(g, &[g.element_reduced(s, e), g.element_reduced(0, m)])
}

fn with_formula(
    h: SubgroupPresentation,
    family: &str,
    params: Vec<u64>,
    omega: OrbitMultiset,
) -> ClassifiedSubgroup {
    ClassifiedSubgroup { presentation: h, family: family.to_string(), params, orbit_multiset: omega }
}

fn ord(alpha: u64, m: u64) -> u64 {
    mult_order(alpha, m).expect("alpha is a unit")
}

/// `M(r)` for the primes `r | n`, and `P` when `a` is negative; the orbit
/// multisets are the closed-form ones.
pub fn maximal_intransitive(g: &AmbientGroup) -> Result<Vec<ClassifiedSubgroup>> {
    let (n, alpha) = (g.n(), g.alpha());
    let mut out = Vec::new();
    for r in prime_divisors(n) {
        let o = ord(alpha, r);
        let omega = OrbitMultiset::from_counts([((n * o) / r, (r - 1) / o), (n / r, 1)]);
        out.push(with_formula(standard(g, 1, 0, r)?, "M", vec![r], omega));
    }
    if g.is_negative() {
        let omega = OrbitMultiset::from_counts([(n / 2, 2)]);
        out.push(with_formula(standard(g, 1, 1, 4)?, "P", vec![], omega));
    }
    Ok(out)
}

/// The six families of second maximal relatively closed subgroups whose side
/// conditions hold, with their closed-form orbit multisets.
pub fn second_maximal(g: &AmbientGroup) -> Result<Vec<ClassifiedSubgroup>> {
    let (n, alpha) = (g.n(), g.alpha());
    let primes = prime_divisors(n);
    let mut out = Vec::new();

    for &r in &primes {
        let o_r = ord(alpha, r);
        for s in prime_divisors(o_r) {
            let omega = OrbitMultiset::from_counts([(n / r, 1), ((n / r) * (o_r / s), s * (r - 1) / o_r)]);
            out.push(with_formula(standard(g, s, 0, r)?, "H1", vec![r, s], omega));
        }
    }

    for (idx, &s) in primes.iter().enumerate() {
        for &r in &primes[idx..] {
            if n % (s * r) != 0 {
                continue;
            }
            let omega = if s == r {
                let (o1, o2) = (ord(alpha, r), ord(alpha, r * r));
                let base = n / (r * r);
                OrbitMultiset::from_counts([
                    (base, 1),
                    (base * o1, (r - 1) / o1),
                    (base * o2, r * (r - 1) / o2),
                ])
            } else {
                let (or, os, osr) = (ord(alpha, r), ord(alpha, s), ord(alpha, s * r));
                let base = n / (s * r);
                OrbitMultiset::from_counts([
                    (base, 1),
                    (base * or, (r - 1) / or),
                    (base * os, (s - 1) / os),
                    (base * osr, (s - 1) * (r - 1) / osr),
                ])
            };
            out.push(with_formula(standard(g, 1, 0, s * r)?, "H2", vec![s, r], omega));
        }
    }

    for &r in &primes {
        let o_r = ord(alpha, r);
        for &s in &primes {
            if o_r % s != 0 {
                continue;
            }
            let o_s = ord(alpha, s);
            if gcd(o_r, o_s) != 1 {
                continue;
            }
            let omega = OrbitMultiset::from_counts([(n / r, 1), ((n / r) * (o_r / s), s * (r - 1) / o_r)]);
            out.push(with_formula(standard(g, o_s, r, s * r)?, "H3", vec![r, s], omega));
        }
    }

    if n % 4 == 0 && alpha % 4 == 3 {
        for &r in primes.iter().filter(|&&r| r != 2) {
            let o_r = ord(alpha, r);
            let t = gcd(2, o_r);
            let omega = OrbitMultiset::from_counts([
                (n / (2 * r), 2),
                ((n / (2 * r)) * (o_r / t), 2 * (r - 1) * t / o_r),
            ]);
            out.push(with_formula(standard(g, 1, r, 4 * r)?, "H4", vec![r], omega));
        }
        let omega = OrbitMultiset::from_counts([(n / 4, 4)]);
        out.push(with_formula(standard(g, 2, 0, 4)?, "H5", vec![], omega));
    }
    if n % 8 == 0 && alpha % 8 == 7 {
        let omega = OrbitMultiset::from_counts([(n / 4, 4)]);
        out.push(with_formula(standard(g, 1, 1, 8)?, "H6", vec![], omega));
    }
    Ok(out)
}

/// Relatively closed subgroups with exactly three orbits, one per `Hol(W)`
/// class.
pub fn rank_four(g: &AmbientGroup) -> Result<Vec<ClassifiedSubgroup>> {
    let (n, alpha) = (g.n(), g.alpha());
    let primes = prime_divisors(n);
    let mut out = Vec::new();
    let three = |r: u64| OrbitMultiset::from_counts([(n / r, 1), (n * (r - 1) / (2 * r), 2)]);
    for &r in primes.iter().filter(|&&r| r != 2) {
        let o = ord(alpha, r);
        if 2 * o == r - 1 {
            out.push(with_formula(standard(g, 1, 0, r)?, "R1", vec![r], three(r)));
        }
        if o == r - 1 {
            out.push(with_formula(standard(g, 2, 0, r)?, "R2", vec![r], three(r)));
        }
    }
    for &r in &primes {
        let r2 = r * r;
        if n % r2 == 0 && ord(alpha, r2) == r2 - r {
            let omega = OrbitMultiset::from_counts([(n / r2, 1), (n * (r - 1) / r2, 1), (n * (r2 - r) / r2, 1)]);
            out.push(with_formula(standard(g, 1, 0, r2)?, "R3", vec![r], omega));
        }
    }
    if n % 2 == 0 && alpha % 2 == 1 {
        for &r in primes.iter().filter(|&&r| r != 2) {
            if ord(alpha, r) == r - 1 {
                out.push(with_formula(standard(g, 1, r, 2 * r)?, "R4", vec![r], three(r)));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeNode {
    pub id: usize,
    pub depth: usize,
    pub subgroup: ClassifiedSubgroup,
    /// `(|b|, |x|, |y|)`.
    pub triple: (u64, u64, u64),
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedLattice {
    pub n: u64,
    pub alpha: u64,
    pub nodes: Vec<LatticeNode>,
    pub edges: Vec<(usize, usize)>,
}

/// Breadth-first iteration of [`maximal_relatively_closed`] from `G`, nodes
/// identified up to `Hol(W)`-conjugacy.
pub fn closed_lattice(g: &AmbientGroup, max_depth: Option<usize>) -> Result<ClosedLattice> {
    let root = ClassifiedSubgroup {
        presentation: g.whole(),
        family: "G".to_string(),
        params: vec![],
        orbit_multiset: orbit_multiset(g, &g.whole())?,
    };
    let mut nodes = vec![LatticeNode { id: 0, depth: 0, triple: order_triple(g, &root.presentation), subgroup: root }];
    let mut index: BTreeMap<(u64, u64, u64), usize> = BTreeMap::new();
    index.insert(nodes[0].triple, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let depth = nodes[id].depth;
        if max_depth.is_some_and(|d| depth >= d) {
            continue;
        }
        let parent = nodes[id].subgroup.presentation;
        for child in maximal_relatively_closed(g, &parent)? {
            let triple = order_triple(g, &child.presentation);
            let cid = match index.get(&triple) {
                Some(&cid) => cid,
                None => {
                    let cid = nodes.len();
                    nodes.push(LatticeNode { id: cid, depth: depth + 1, subgroup: child, triple });
                    index.insert(triple, cid);
                    queue.push_back(cid);
                    cid
                }
            };
            if !edges.contains(&(id, cid)) {
                edges.push((id, cid));
            }
        }
    }
    Ok(ClosedLattice { n: g.n(), alpha: g.alpha(), nodes, edges })
}

impl ClosedLattice {
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph closed_lattice_n{}_alpha{} {{\n", self.n, self.alpha);
        out.push_str("  rankdir=TB;\n  node [shape=box];\n");
        for node in &self.nodes {
            let s = &node.subgroup;
            let tag = if s.params.is_empty() {
                s.family.clone()
            } else {
                let ps: Vec<String> = s.params.iter().map(|p| p.to_string()).collect();
                format!("{}({})", s.family, ps.join(","))
            };
            let (b, x, y) = node.triple;
            out.push_str(&format!(
                "  n{} [label=\"{}\\n|b|={} |x|={} |y|={}\\n{}\"];\n",
                node.id, tag, b, x, y, s.orbit_multiset
            ));
        }
        for &(p, c) in &self.edges {
            out.push_str(&format!("  n{p} -> n{c};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g83() -> AmbientGroup {
        AmbientGroup::new(8, 3).unwrap()
    }

    fn keys(list: &[ClassifiedSubgroup]) -> Vec<(String, (u64, u64, u64))> {
        list.iter().map(|c| (c.family.clone(), c.presentation.subgroup_key())).collect()
    }

    #[test]
    fn maximal_below_whole_group() {
        let g = g83();
        let got = maximal_relatively_closed(&g, &g.whole()).unwrap();
        assert_eq!(
            keys(&got),
            vec![("intersection".into(), (1, 0, 2)), ("negative".into(), (1, 1, 4))]
        );
        let g5 = AmbientGroup::new(5, 4).unwrap();
        let got = maximal_relatively_closed(&g5, &g5.whole()).unwrap();
        assert_eq!(keys(&got), vec![("intersection".into(), (1, 0, 5))]);
        assert!(maximal_relatively_closed(&g, &g.trivial()).unwrap().is_empty());
    }

    #[test]
    fn maximal_intransitive_examples() {
        let g = g83();
        let got = maximal_intransitive(&g).unwrap();
        assert_eq!(got.len(), 2);
        assert!(got.iter().all(|c| c.orbit_multiset == OrbitMultiset { entries: vec![(4, 2)] }));
        let g5 = AmbientGroup::new(5, 4).unwrap();
        let got = maximal_intransitive(&g5).unwrap();
        assert_eq!(got[0].orbit_multiset, OrbitMultiset { entries: vec![(1, 1), (2, 2)] });
        let g24 = AmbientGroup::new(24, 5).unwrap();
        let fams: Vec<_> = maximal_intransitive(&g24).unwrap().iter().map(|c| c.family.clone()).collect();
        assert_eq!(fams, vec!["M", "M"]);
    }

    #[test]
    fn second_maximal_examples() {
        let g = g83();
        let got = second_maximal(&g).unwrap();
        let h5 = got.iter().find(|c| c.family == "H5").unwrap();
        assert_eq!(h5.presentation.subgroup_key(), (2, 0, 4));
        assert_eq!(h5.orbit_multiset, OrbitMultiset { entries: vec![(2, 4)] });
        assert!(got.iter().all(|c| c.family != "H6"));
        let g7 = AmbientGroup::new(8, 7).unwrap();
        let h6 = second_maximal(&g7).unwrap().into_iter().find(|c| c.family == "H6").unwrap();
        assert_eq!(h6.orbit_multiset, OrbitMultiset { entries: vec![(2, 4)] });
    }

    #[test]
    fn rank_four_examples() {
        let g5 = AmbientGroup::new(5, 4).unwrap();
        let got = rank_four(&g5).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].family, "R1");
        let got = rank_four(&g83()).unwrap();
        assert_eq!(keys(&got), vec![("R3".into(), (1, 0, 4))]);
        // a acts trivially on Z_3: three fixed points
        let got = rank_four(&AmbientGroup::new(3, 1).unwrap()).unwrap();
        assert_eq!(got[0].orbit_multiset, OrbitMultiset { entries: vec![(1, 3)] });
        assert!(rank_four(&AmbientGroup::new(7, 6).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn lattice_depths() {
        let g = g83();
        let lat = closed_lattice(&g, Some(0)).unwrap();
        assert_eq!((lat.nodes.len(), lat.edges.len()), (1, 0));
        let lat = closed_lattice(&g, Some(1)).unwrap();
        assert_eq!(lat.nodes.len(), 3);
        assert!(lat.to_dot().contains("n0 -> n1"));
        let full = closed_lattice(&AmbientGroup::new(5, 4).unwrap(), None).unwrap();
        assert_eq!(full.nodes.last().unwrap().subgroup.presentation.subgroup_key(), (2, 0, 5));
    }
}
