use relclosure::closure::{is_relatively_closed, kernel_of_quotient_action, radical, relative_closure};
use relclosure::lattice::{closed_lattice, maximal_intransitive, maximal_relatively_closed, rank_four, second_maximal};
use relclosure::normal_form::{hol_conjugate, is_normal_form, to_normal_form};
use relclosure::numtheory::{lifted_power_p_part, sigma_mod};
use relclosure::oracle::{
    oracle_all_subgroups, oracle_closure, oracle_generate, oracle_is_closed, oracle_maximal_closed, oracle_radical,
    OracleGroup,
};
use relclosure::orbits::{explicit_multiset, orbit_length_predict, orbit_multiset, orbits_explicit, OrbitMultiset};
use relclosure::{AmbientGroup, GroupElement, SubgroupPresentation};

fn g(n: u64, alpha: u64) -> AmbientGroup {
    AmbientGroup::new(n, alpha).unwrap()
}

fn sp(k: u64, i: u64, j: u64) -> SubgroupPresentation {
    SubgroupPresentation::new(k, i, j)
}

fn el(k: u64, e: u64) -> GroupElement {
    GroupElement { k, e }
}

fn ms(counts: &[(u64, u64)]) -> OrbitMultiset {
    OrbitMultiset::from_counts(counts.iter().copied())
}

fn oracle_set(g: &AmbientGroup, h: &SubgroupPresentation) -> (OracleGroup, relclosure::oracle::ElementSet) {
    let og = OracleGroup::new(g).unwrap();
    let set = oracle_generate(&og, &g.generators(h));
    (og, set)
}

#[test]
fn number_theory() {
    assert_eq!(sigma_mod(3, 4, 100), 1 + 3 + 9 + 27);
    // 3^2 - 1 = 8; 4^3 - 1 = 63 = 9 * 7
    assert_eq!(lifted_power_p_part(3, 2, 2).unwrap(), 8);
    assert_eq!(lifted_power_p_part(4, 3, 3).unwrap(), 9);
}

#[test]
fn element_arithmetic() {
    let g = g(8, 3);
    assert_eq!(g.mul(el(1, 1), el(1, 1)), el(0, 4));
    assert_eq!(g.act(el(1, 1), 4), (3 * 4 + 1) % 8);
    assert_eq!(g.element_order(el(1, 1)), 4);
    assert_eq!(g.canonical_presentation(&[el(1, 1)]).unwrap(), sp(1, 1, 4));
    assert_eq!(g.conjugate_by_w(&sp(1, 1, 4), 1), sp(1, 7, 4));
    assert!(g.subgroup_contains(&sp(1, 1, 4), el(0, 4)));
    assert!(!g.subgroup_contains(&sp(1, 1, 4), el(0, 2)));
}

#[test]
fn structure_data() {
    let s = g(8, 3).structure_data(&sp(1, 1, 4));
    assert_eq!((s.v_order, s.l, s.b_negative_on_w, s.b_negative_on_wbar), (1, 1, true, true));
    let s = g(40, 3).structure_data(&sp(1, 0, 40));
    assert_eq!((s.v_order, s.l), (5, 4));
}

#[test]
fn oracle_element_set_of_aw() {
    let (og, set) = oracle_set(&g(8, 3), &sp(1, 1, 4));
    let mut got = set.elements(&og);
    got.sort_by_key(|x| (x.k, x.e));
    assert_eq!(got, vec![el(0, 0), el(0, 4), el(1, 1), el(1, 5)]);
}

#[test]
fn dihedral_ten_has_eight_subgroups() {
    let og = OracleGroup::new(&g(5, 4)).unwrap();
    assert_eq!(oracle_all_subgroups(&og, 60).unwrap().len(), 8);
}

#[test]
fn normal_forms() {
    let g = g(8, 3);
    assert_eq!(to_normal_form(&g, &sp(1, 1, 4)).unwrap(), (sp(1, 1, 4), 0));
    let (nf, u) = to_normal_form(&g, &sp(1, 2, 4)).unwrap();
    assert_eq!(nf, sp(1, 0, 4));
    let (og, set) = oracle_set(&g, &sp(1, 2, 4));
    assert_eq!(set.conjugate_affine(&og, 1, u), oracle_set(&g, &nf).1);
    assert!(is_normal_form(&g, &sp(1, 1, 4)));
    assert!(!is_normal_form(&g, &sp(1, 2, 4)));
    assert!(hol_conjugate(&g, &sp(1, 1, 4), &sp(1, 3, 4)).unwrap());
    assert!(!hol_conjugate(&g, &sp(1, 1, 4), &sp(1, 0, 4)).unwrap());
}

#[test]
fn orbits_of_m2_and_p() {
    let g = g(8, 3);
    assert_eq!(orbits_explicit(&g, &sp(1, 0, 2)), vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]]);
    assert_eq!(orbits_explicit(&g, &sp(1, 1, 4)), vec![vec![0, 1, 4, 5], vec![2, 3, 6, 7]]);
    assert_eq!(orbit_length_predict(&g, &sp(1, 1, 4), 0).unwrap(), 4);
    assert_eq!(orbit_multiset(&g, &sp(1, 0, 2)).unwrap(), ms(&[(4, 2)]));
    assert_eq!(orbit_multiset(&g, &sp(1, 1, 4)).unwrap(), ms(&[(4, 2)]));
    let g5 = self::g(5, 4);
    assert_eq!(orbit_length_predict(&g5, &g5.trivial_a(), 1).unwrap(), 2);
}

trait TrivialA {
    fn trivial_a(&self) -> SubgroupPresentation;
}

impl TrivialA for AmbientGroup {
    /// `<a>`, i.e. `(1, 0, n)`.
    fn trivial_a(&self) -> SubgroupPresentation {
        self.presentation_from_triple(1, 0, self.n()).unwrap()
    }
}

#[test]
fn radicals_and_closedness() {
    let g = g(8, 3);
    for (h, want) in [(sp(1, 1, 4), 4), (g.trivial_a(), 8)] {
        assert_eq!(radical(&g, &h).unwrap(), want);
        let (og, set) = oracle_set(&g, &h);
        assert_eq!(oracle_radical(&og, &set), want);
    }
    assert!(is_relatively_closed(&g, &sp(1, 1, 4)).unwrap());
    let w2 = g.presentation_from_triple(0, 0, 2).unwrap();
    assert!(!is_relatively_closed(&g, &w2).unwrap());
    let (og, set) = oracle_set(&g, &w2);
    assert!(!oracle_is_closed(&og, &set));

    let closure = relative_closure(&g, &w2).unwrap();
    assert_eq!(closure, sp(1, 0, 2));
    assert_eq!(oracle_closure(&og, &set), oracle_set(&g, &closure).1);
    assert_eq!(oracle_closure(&og, &set).len(), 8);
    assert_eq!(kernel_of_quotient_action(&g, 2).unwrap(), sp(1, 0, 2));
}

#[test]
fn maximal_of_g() {
    let g8 = g(8, 3);
    let found: Vec<_> = maximal_relatively_closed(&g8, &g8.whole()).unwrap().into_iter().map(|c| c.presentation).collect();
    assert_eq!(found.len(), 2);
    assert!(found.contains(&sp(1, 0, 2)));
    assert!(found.iter().any(|h| hol_conjugate(&g8, h, &sp(1, 1, 4)).unwrap()));
    let og = OracleGroup::new(&g8).unwrap();
    let mut sizes: Vec<_> = oracle_maximal_closed(&og, &og.whole()).iter().map(|s| s.len()).collect();
    sizes.sort_unstable();
    // M(2) is normal; P has two conjugates under G
    assert_eq!(sizes, vec![4, 4, 8]);

    let g5 = g(5, 4);
    let found = maximal_relatively_closed(&g5, &g5.whole()).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].presentation, g5.trivial_a());
}

#[test]
fn maximal_of_m2_matches_oracle() {
    let g8 = g(8, 3);
    let m2 = sp(1, 0, 2);
    let found = maximal_relatively_closed(&g8, &m2).unwrap();
    let (og, set) = oracle_set(&g8, &m2);
    let oracle = oracle_maximal_closed(&og, &set);
    for c in &found {
        let s = oracle_set(&g8, &c.presentation).1;
        assert!(oracle.contains(&s), "{:?}", c.presentation);
    }
    for s in &oracle {
        assert!(found.iter().any(|c| {
            let e = oracle_set(&g8, &c.presentation).1;
            og.units().iter().any(|&c| (0..8).any(|t| e.conjugate_affine(&og, c, t) == *s))
        }));
    }
}

#[test]
fn maximal_intransitive_examples() {
    let list = maximal_intransitive(&g(8, 3)).unwrap();
    let got: Vec<_> = list.iter().map(|c| (c.family.as_str(), c.orbit_multiset.clone())).collect();
    assert_eq!(got, vec![("M", ms(&[(4, 2)])), ("P", ms(&[(4, 2)]))]);

    let list = maximal_intransitive(&g(5, 4)).unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0].orbit_multiset, ms(&[(1, 1), (2, 2)]));
    assert_eq!(list[0].orbit_multiset, explicit_multiset(&g(5, 4), &list[0].presentation));

    let list = maximal_intransitive(&g(24, 5)).unwrap();
    let got: Vec<_> = list.iter().map(|c| (c.family.as_str(), c.params.clone())).collect();
    assert_eq!(got, vec![("M", vec![2]), ("M", vec![3])]);
}

#[test]
fn second_maximal_examples() {
    let g8 = g(8, 3);
    let list = second_maximal(&g8).unwrap();
    let h5 = list.iter().find(|c| c.family == "H5").expect("H5 present");
    assert!(hol_conjugate(&g8, &h5.presentation, &g8.presentation_from_triple(2, 0, 4).unwrap()).unwrap());
    assert_eq!(h5.orbit_multiset, ms(&[(2, 4)]));

    let g87 = g(8, 7);
    let list = second_maximal(&g87).unwrap();
    let h6 = list.iter().find(|c| c.family == "H6").expect("H6 present");
    assert!(hol_conjugate(&g87, &h6.presentation, &sp(1, 1, 8)).unwrap());
    assert_eq!(h6.orbit_multiset, ms(&[(2, 4)]));
    assert_eq!(h6.orbit_multiset, explicit_multiset(&g87, &h6.presentation));
}

#[test]
fn rank_four_examples() {
    let g5 = g(5, 4);
    let list = rank_four(&g5).unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0].presentation, g5.trivial_a());
    assert_eq!(list[0].orbit_multiset, ms(&[(1, 1), (2, 2)]));

    // <a, w^4> in n = 8, alpha = 3: orbits {0,4}, {2,6}, {odds}
    let g8 = g(8, 3);
    let list = rank_four(&g8).unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0].family, "R3");
    assert_eq!(list[0].presentation, sp(1, 0, 4));
    assert_eq!(explicit_multiset(&g8, &sp(1, 0, 4)), ms(&[(2, 2), (4, 1)]));
}

#[test]
fn lattice_examples() {
    let g8 = g(8, 3);
    let lattice = closed_lattice(&g8, Some(1)).unwrap();
    assert_eq!(lattice.nodes.len(), 3);
    let children: Vec<_> = lattice.nodes[1..].iter().map(|n| n.subgroup.presentation).collect();
    let expected: Vec<_> = maximal_intransitive(&g8).unwrap().into_iter().map(|c| c.presentation).collect();
    for h in &expected {
        assert!(children.iter().any(|c| hol_conjugate(&g8, c, h).unwrap()));
    }

    // the full lattice of n = 5: G, <a>, trivial
    let g5 = g(5, 4);
    let lattice = closed_lattice(&g5, None).unwrap();
    let og = OracleGroup::new(&g5).unwrap();
    let closed = oracle_all_subgroups(&og, 60).unwrap().into_iter().filter(|s| oracle_is_closed(&og, &s.elements)).count();
    assert_eq!(lattice.nodes.len(), 3);
    // <a> has five conjugates; up to conjugacy three classes remain
    assert_eq!(closed, 7);
    assert_eq!(lattice.edges, vec![(0, 1), (1, 2)]);
    assert!(lattice.to_dot().starts_with("digraph"));
}
