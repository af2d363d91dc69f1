use proptest::prelude::*;

use relclosure::affine::iso::is_isomorphism;
use relclosure::affine::{
    affine_classify, affine_maximal, gamma_l1, scheme_isomorphic, scheme_isomorphic_transitive, AffineMode, AffineReport,
    AssociationScheme, FiniteField, IsoVerdict,
};
use relclosure::numtheory::{mult_order, prime_divisors};
use relclosure::orbits::OrbitMultiset;
use relclosure::SubgroupPresentation;

fn field(p: u64, d: u32) -> FiniteField {
    FiniteField::new(p, d).unwrap()
}

fn scheme(f: &FiniteField, h: SubgroupPresentation) -> AssociationScheme {
    AssociationScheme::from_stabilizer(f, &h).unwrap()
}

fn paley_peisert(f: &FiniteField) -> (AssociationScheme, AssociationScheme) {
    (scheme(f, SubgroupPresentation::new(1, 0, 2)), scheme(f, SubgroupPresentation::new(1, 1, 4)))
}

/// `u -> perm[u]` applied to the points of `s`.
fn relabel(s: &AssociationScheme, perm: &[usize]) -> AssociationScheme {
    let q = s.point_count;
    let mut colors = vec![0u16; q * q];
    for u in 0..q {
        for v in 0..q {
            colors[perm[u] * q + perm[v]] = s.color(u, v);
        }
    }
    AssociationScheme::from_colors(q, colors).unwrap()
}

#[test]
fn field_axioms_by_brute_force() {
    for (p, d) in [(2, 1), (2, 3), (2, 4), (3, 2), (5, 1), (3, 3), (5, 2)] {
        let f = field(p, d);
        let q = f.order() as u32;
        let mut seen = vec![false; q as usize];
        for t in 0..q as u64 - 1 {
            let x = f.exp(t);
            assert!(!std::mem::replace(&mut seen[x as usize], true), "q={q}: primitive element has small order");
            assert_eq!(f.log(x), t);
        }
        for a in 0..q {
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, 0), a);
            for b in 0..q {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                let c = (a * 7 + b * 3 + 1) % q;
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}

#[test]
fn field_conventions() {
    let f5 = field(5, 1);
    assert_eq!((f5.modulus.clone(), f5.primitive), (vec![0, 1], 2));
    // x^2 + 1 over F_3, primitive element 1 + x
    let f9 = field(3, 2);
    assert_eq!((f9.modulus.clone(), f9.primitive), (vec![1, 0, 1], 4));
    let g = gamma_l1(&f9);
    assert_eq!((g.n(), g.alpha(), g.a_ord()), (8, 3, 2));
    let g = gamma_l1(&field(7, 2));
    assert_eq!((g.n(), g.alpha(), g.a_ord()), (48, 7, 2));
    assert!(FiniteField::new(6, 1).is_err());
    assert!(matches!(FiniteField::new(1009, 2), Err(relclosure::Error::ResourceLimit(_))));
}

#[test]
fn nine_point_schemes() {
    let f9 = field(3, 2);
    let (paley, peisert) = paley_peisert(&f9);
    for s in [&paley, &peisert] {
        assert_eq!(s.valencies, vec![1, 4, 4]);
        assert!(s.is_coherent());
    }
    match scheme_isomorphic(&paley, &peisert).unwrap() {
        IsoVerdict::Isomorphic { points, colors } => assert!(is_isomorphism(&paley, &peisert, &points, &colors)),
        other => panic!("expected an isomorphism, got {other:?}"),
    }
}

/// Every point permutation of 9 points against every colour bijection.
#[test]
fn nine_point_verdict_agrees_with_exhaustive_search() {
    let f9 = field(3, 2);
    let (paley, peisert) = paley_peisert(&f9);
    let colour_maps: [[u16; 3]; 2] = [[0, 1, 2], [0, 2, 1]];
    let mut perm: Vec<usize> = (0..9).collect();
    let mut count = 0u64;
    // Heap's algorithm
    let mut c = [0usize; 9];
    let mut check = |perm: &[usize]| {
        for cm in &colour_maps {
            if is_isomorphism(&paley, &peisert, perm, cm) {
                count += 1;
            }
        }
    };
    check(&perm);
    let mut i = 0;
    while i < 9 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    assert!(count > 0);
    assert_eq!(count > 0, scheme_isomorphic(&paley, &peisert).unwrap().is_isomorphic());
    // the same search on a scheme against itself counts its automorphisms
    let mut autos = 0u64;
    let mut perm: Vec<usize> = (0..9).collect();
    let mut c = [0usize; 9];
    let mut i = 0;
    let ident: [u16; 3] = [0, 1, 2];
    let swap: [u16; 3] = [0, 2, 1];
    let mut tally = |perm: &[usize]| {
        if is_isomorphism(&paley, &paley, perm, &ident) || is_isomorphism(&paley, &paley, perm, &swap) {
            autos += 1;
        }
    };
    tally(&perm);
    while i < 9 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            tally(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    // isomorphisms form a coset of the colour-automorphism group
    assert_eq!(count, autos);
}

#[test]
fn forty_nine_point_pair_is_not_isomorphic() {
    let f49 = field(7, 2);
    let (paley, peisert) = paley_peisert(&f49);
    assert_eq!(paley.valencies, peisert.valencies);
    assert_eq!(scheme_isomorphic(&paley, &peisert).unwrap(), IsoVerdict::NonIsomorphic);
    assert_eq!(scheme_isomorphic_transitive(&paley, &peisert).unwrap(), IsoVerdict::NonIsomorphic);
}

#[test]
fn single_cell_recolouring_breaks_the_identity() {
    let (paley, _) = paley_peisert(&field(3, 2));
    let mut colors = paley.colors.clone();
    colors[1] = 3 - colors[1];
    let broken = AssociationScheme::from_colors(9, colors).unwrap();
    let id: Vec<usize> = (0..9).collect();
    assert!(is_isomorphism(&paley, &paley, &id, &[0, 1, 2]));
    assert!(!is_isomorphism(&paley, &broken, &id, &[0, 1, 2]));
    assert!(!broken.is_coherent());
}

#[test]
fn binary_round_trip() {
    for (p, d) in [(3, 2), (2, 4), (5, 2)] {
        let f = field(p, d);
        for group in affine_maximal(&f).unwrap() {
            let s = AssociationScheme::from_stabilizer(&f, &group.presentation).unwrap();
            let bytes = s.to_binary();
            assert_eq!(&bytes[..4], &(f.order() as u32).to_le_bytes());
            assert_eq!(AssociationScheme::from_binary(&bytes).unwrap(), s);
            assert!(AssociationScheme::from_binary(&bytes[..bytes.len() - 1]).is_err());
        }
    }
}

#[test]
fn classification_follows_the_field() {
    for (p, d) in [(2, 2), (5, 1), (3, 2), (5, 2), (7, 2), (3, 4)] {
        let f = field(p, d);
        let AffineReport::Groups(groups) = affine_classify(&f, AffineMode::Maximal).unwrap() else { panic!() };
        let n = f.order() - 1;
        let has_p = groups.iter().any(|c| c.family == "P");
        assert_eq!(has_p, p % 4 == 3 && d % 2 == 0, "q={}", f.order());
        let ms: Vec<u64> = groups.iter().filter(|c| c.family == "M").map(|c| c.params[0]).collect();
        assert_eq!(ms, prime_divisors(n));
        for c in &groups {
            let s = AssociationScheme::from_stabilizer(&f, &c.presentation).unwrap();
            assert!(s.is_coherent());
            // valencies are the orbit lengths of the zero stabilizer
            let mut v = s.valencies[1..].to_vec();
            v.sort_unstable();
            let lens = OrbitMultiset::from_lengths(v.iter().map(|&x| x as u64));
            assert_eq!(lens, c.orbit_multiset);
        }
    }
    // q = 8: the unique rank-4 group comes from r = 7 with ord_7(2) = 3
    assert_eq!(mult_order(2, 7).unwrap(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelled_schemes_are_isomorphic(seed in any::<u64>(), which in 0usize..4) {
        let (p, d, r) = [(3, 2, 2), (2, 4, 3), (5, 2, 3), (7, 2, 2)][which];
        let f = field(p, d);
        let s = scheme(&f, SubgroupPresentation::new(1, 0, r));
        let q = s.point_count;
        // a seeded shuffle
        let mut perm: Vec<usize> = (0..q).collect();
        let mut state = seed | 1;
        for i in (1..q).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let t = relabel(&s, &perm);
        match scheme_isomorphic(&s, &t).unwrap() {
            IsoVerdict::Isomorphic { points, colors } => prop_assert!(is_isomorphism(&s, &t, &points, &colors)),
            other => prop_assert!(false, "relabelling not recognised: {:?}", other),
        }
    }
}
