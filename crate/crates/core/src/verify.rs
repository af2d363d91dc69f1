//! Cross-checks of the formula path against the oracle.
//!
//! Each battery returns a [`CriterionReport`]; the CLI `verify` verb and the
//! acceptance tests run the same code. Ambients are processed in parallel and
//! results are gathered in ambient order, so reports are deterministic.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{
    affine_maximal, affine_rank_four, gamma_l1, minimal_schemes, scheme_isomorphic, AssociationScheme, FiniteField,
    IsoVerdict,
};
use crate::closure::{closedness_verdicts, radical, relative_closure};
use crate::group::{AmbientGroup, SubgroupPresentation};
use crate::lattice::{maximal_intransitive, maximal_relatively_closed, rank_four, second_maximal, ClassifiedSubgroup};
use crate::normal_form::{hol_conjugate, to_normal_form};
use crate::numtheory::{gcd, lcm};
use crate::oracle::{
    affine_orbit, all_orbit_partitions, all_orbit_partitions_with_triples, coarsest, g_maps, hol_classes, hol_maps,
    hol_stabilizer, maximal_intransitive_partitions, oracle_all_subgroups, oracle_closure, oracle_generate,
    oracle_is_closed, oracle_radical, orbit_partition, orbit_partition_of_generators, stabilizer_of_partition,
    OracleGroup, Partition,
};
use crate::orbits::{orbit_multiset, product_orbit_census, OrbitMultiset, QuotientAction};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl CriterionReport {
    pub fn new(name: &str) -> Self {
        CriterionReport { name: name.to_string(), checked: 0, failures: 0, first_counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }

    /// Records one check; the message is only built on failure.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(what());
            }
        }
    }

    pub fn absorb(&mut self, other: CriterionReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
    }

    pub fn merge(name: &str, parts: impl IntoIterator<Item = CriterionReport>) -> Self {
        let mut out = CriterionReport::new(name);
        for p in parts {
            out.absorb(p);
        }
        out
    }
}

/// Every `(n, alpha)` with `1 <= n <= n_max` and `alpha` a unit mod `n`.
pub fn ambients(n_max: u64) -> Vec<AmbientGroup> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for alpha in 0..n {
            if gcd(alpha, n) == 1 {
                out.push(AmbientGroup::new(n, alpha).expect("unit"));
            }
        }
    }
    out
}

fn multiset_of(p: &Partition) -> OrbitMultiset {
    OrbitMultiset::from_lengths(p.block_sizes())
}

fn partition_of(og: &OracleGroup, g: &AmbientGroup, h: &SubgroupPresentation) -> Partition {
    orbit_partition_of_generators(og, &g.generators(h))
}

fn label(g: &AmbientGroup) -> String {
    format!("n={} alpha={}", g.n(), g.alpha())
}

/// Criteria over every subgroup of every small ambient: closedness verdicts,
/// radical and closure, orbit formulas.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupSweep {
    pub equivalence: CriterionReport,
    pub radical_closure: CriterionReport,
    pub orbit_formulas: CriterionReport,
}

fn sweep_ambient(g: &AmbientGroup) -> [CriterionReport; 3] {
    let mut eq = CriterionReport::new("equivalence");
    let mut rc = CriterionReport::new("radical-closure");
    let mut of = CriterionReport::new("orbit-formulas");
    let og = OracleGroup::new(g).expect("small ambient");
    let subgroups = oracle_all_subgroups(&og, u64::MAX).expect("no bound");
    for sub in &subgroups {
        let (k, i, j) = sub.triple;
        let where_ = || format!("{} subgroup <a^{k} w^{i}, w^{j}>", label(g));
        let h = g.presentation_from_triple(k, i, j).expect("valid triple");
        let (nf, u) = to_normal_form(g, &h).expect("valid");

        let oracle_closed = oracle_is_closed(&og, &sub.elements);
        let (arith, structural) = closedness_verdicts(g, &nf).expect("normal form");
        eq.check(arith == oracle_closed && structural == oracle_closed, || {
            format!("{}: arithmetic={arith} structural={structural} oracle={oracle_closed}", where_())
        });

        let rad = radical(g, &nf).expect("normal form");
        let orad = oracle_radical(&og, &sub.elements);
        rc.check(rad == orad, || format!("{}: radical {rad} vs oracle {orad}", where_()));
        let closure = relative_closure(g, &h).expect("valid");
        let formula_set = oracle_generate(&og, &g.generators(&closure));
        let oracle_set = oracle_closure(&og, &sub.elements);
        rc.check(formula_set == oracle_set, || {
            format!("{}: closure {:?} has {} elements, oracle {}", where_(), closure, formula_set.len(), oracle_set.len())
        });

        let partition = orbit_partition(&og, &sub.elements);
        let sizes = partition.block_sizes();
        let action = QuotientAction::new(g, &nf).expect("normal form");
        let n = g.n();
        let mut bad_point = None;
        for v in 0..n {
            let predicted = action.length((v + u) % n);
            let explicit = sizes[partition.labels[v as usize] as usize];
            if predicted != explicit && bad_point.is_none() {
                bad_point = Some((v, predicted, explicit));
            }
        }
        of.check(bad_point.is_none(), || {
            let (v, p, e) = bad_point.unwrap();
            format!("{}: point {v} predicted {p}, explicit {e}", where_())
        });
        let explicit = multiset_of(&partition);
        let predicted = orbit_multiset(g, &nf).expect("normal form");
        of.check(predicted == explicit, || format!("{}: multiset {predicted} vs {explicit}", where_()));
        let bounds = action.length_bounds();
        let actual = (explicit.min_length().unwrap(), explicit.max_length().unwrap());
        of.check(bounds == actual, || format!("{}: bounds {bounds:?} vs {actual:?}", where_()));
        for v in 0..action.modulus {
            let (o1, o2, count, common) = product_orbit_census(&action, v);
            of.check(count == gcd(o1, o2) && common == lcm(o1, o2), || {
                format!("{}: quotient point {v}: {count} orbits of length {common} from |O1|={o1}, |O2|={o2}", where_())
            });
        }
    }
    [eq, rc, of]
}

pub fn subgroup_sweep(n_max: u64) -> SubgroupSweep {
    let parts: Vec<[CriterionReport; 3]> = ambients(n_max).par_iter().map(sweep_ambient).collect();
    let mut it = [Vec::new(), Vec::new(), Vec::new()];
    for [a, b, c] in parts {
        it[0].push(a);
        it[1].push(b);
        it[2].push(c);
    }
    let [a, b, c] = it;
    SubgroupSweep {
        equivalence: CriterionReport::merge("equivalence", a),
        radical_closure: CriterionReport::merge("radical-closure", b),
        orbit_formulas: CriterionReport::merge("orbit-formulas", c),
    }
}

/// Partitions are the same for every `alpha` generating the same subgroup of
/// units, so they are cached per `(n, <alpha>)`.
struct PartitionCache {
    by_key: HashMap<Vec<u64>, std::sync::Arc<Vec<Partition>>>,
}

fn unit_subgroup(n: u64, alpha: u64) -> Vec<u64> {
    let mut out = vec![1 % n];
    let mut cur = alpha % n;
    while cur != 1 % n {
        out.push(cur);
        cur = cur * alpha % n;
    }
    out.sort_unstable();
    out
}

fn per_n<F>(n_max: u64, f: F) -> Vec<CriterionReport>
where
    F: Fn(&AmbientGroup, &OracleGroup, &[Partition]) -> CriterionReport + Sync,
{
    (1..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut cache = PartitionCache { by_key: HashMap::new() };
            let mut out = Vec::new();
            for g in ambients_with_n(n) {
                let og = OracleGroup::new(&g).expect("within oracle bound");
                let parts = cache
                    .by_key
                    .entry(unit_subgroup(n, g.alpha()))
                    .or_insert_with(|| std::sync::Arc::new(all_orbit_partitions(&og)))
                    .clone();
                out.push(f(&g, &og, &parts));
            }
            out
        })
        .collect()
}

fn ambients_with_n(n: u64) -> Vec<AmbientGroup> {
    (0..n).filter(|&a| gcd(a, n) == 1).map(|a| AmbientGroup::new(n, a).expect("unit")).collect()
}

/// The representatives' orbits under `maps` are pairwise disjoint and their
/// union is `target`.
fn classes_match(
    report: &mut CriterionReport,
    g: &AmbientGroup,
    reps: &[(String, Partition)],
    target: &HashSet<Partition>,
    maps: &[(u64, u64)],
) {
    let mut covered: HashSet<Partition> = HashSet::new();
    for (name, p) in reps {
        let orbit = affine_orbit(p, maps);
        let inside = orbit.is_subset(target);
        report.check(inside, || format!("{}: {name} is not in the oracle set", label(g)));
        let fresh = orbit.is_disjoint(&covered);
        report.check(fresh, || format!("{}: {name} is conjugate to an earlier representative", label(g)));
        covered.extend(orbit);
    }
    let missing = target.difference(&covered).count();
    report.check(missing == 0, || format!("{}: {missing} oracle partitions not covered", label(g)));
}

fn closed_by_oracle(og: &OracleGroup, g: &AmbientGroup, h: &SubgroupPresentation) -> bool {
    let set = oracle_generate(og, &g.generators(h));
    stabilizer_of_partition(og, &orbit_partition(og, &set)).len() == set.len()
}

fn formula_multisets(report: &mut CriterionReport, og: &OracleGroup, g: &AmbientGroup, reps: &[ClassifiedSubgroup]) {
    for c in reps {
        let explicit = multiset_of(&partition_of(og, g, &c.presentation));
        report.check(explicit == c.orbit_multiset, || {
            format!("{}: {}{:?} formula {} vs explicit {}", label(g), c.family, c.params, c.orbit_multiset, explicit)
        });
        report.check(closed_by_oracle(og, g, &c.presentation), || {
            format!("{}: {}{:?} is not relatively closed", label(g), c.family, c.params)
        });
    }
}

fn tagged(og: &OracleGroup, g: &AmbientGroup, reps: &[ClassifiedSubgroup]) -> Vec<(String, Partition)> {
    reps.iter()
        .map(|c| (format!("{}{:?}", c.family, c.params), partition_of(og, g, &c.presentation)))
        .collect()
}

/// Maximal intransitive subgroups: formula multisets and classes under `G`.
pub fn maximal_intransitive_battery(n_max: u64) -> CriterionReport {
    let parts = per_n(n_max, |g, og, parts| {
        let mut r = CriterionReport::new("maximal-intransitive");
        let partitions = parts;
        let target: HashSet<Partition> = maximal_intransitive_partitions(&partitions).into_iter().collect();
        let reps = maximal_intransitive(g).expect("valid ambient");
        formula_multisets(&mut r, og, g, &reps);
        classes_match(&mut r, g, &tagged(og, g, &reps), &target, &g_maps(og));
        r
    });
    CriterionReport::merge("maximal-intransitive", parts)
}

/// Second maximal partitions: strictly finer than a maximal one with nothing
/// in between.
fn second_maximal_partitions(partitions: &[Partition]) -> HashSet<Partition> {
    let maxes = maximal_intransitive_partitions(partitions);
    let mut out = HashSet::new();
    for m in &maxes {
        let below: Vec<Partition> = partitions.iter().filter(|p| *p != m && p.refines(m)).cloned().collect();
        out.extend(coarsest(&below));
    }
    out
}

/// Second maximal subgroups: formula multisets everywhere up to `n_max`,
/// non-conjugacy, and second maximality in the oracle poset up to `poset_max`.
pub fn second_maximal_battery(n_max: u64, poset_max: u64) -> CriterionReport {
    let parts = per_n(n_max, |g, og, parts| {
        let mut r = CriterionReport::new("second-maximal");
        let reps = second_maximal(g).expect("valid ambient");
        formula_multisets(&mut r, og, g, &reps);
        let tagged = tagged(og, g, &reps);
        let maps = hol_maps(og);
        let mut seen: HashSet<Partition> = HashSet::new();
        for (name, p) in &tagged {
            let orbit = affine_orbit(p, &maps);
            r.check(orbit.is_disjoint(&seen), || format!("{}: {name} is Hol-conjugate to an earlier one", label(g)));
            seen.extend(orbit);
        }
        if g.n() <= poset_max {
            let partitions = parts;
            let second = second_maximal_partitions(&partitions);
            for (name, p) in &tagged {
                r.check(second.contains(p), || format!("{}: {name} is not second maximal", label(g)));
            }
        }
        r
    });
    CriterionReport::merge("second-maximal", parts)
}

/// Every oracle second maximal subgroup is conjugate to a listed one.
pub fn second_maximal_completeness(n_max: u64) -> CriterionReport {
    let parts = per_n(n_max, |g, og, parts| {
        let mut r = CriterionReport::new("second-maximal-completeness");
        let partitions = parts;
        let target = second_maximal_partitions(&partitions);
        let reps = second_maximal(g).expect("valid ambient");
        classes_match(&mut r, g, &tagged(og, g, &reps), &target, &hol_maps(og));
        r
    });
    CriterionReport::merge("second-maximal-completeness", parts)
}

/// Subgroups with three orbits: multisets and `Hol(W)`-classes.
pub fn rank_four_battery(n_max: u64) -> CriterionReport {
    let parts = per_n(n_max, |g, og, parts| {
        let mut r = CriterionReport::new("rank-four");
        let target: HashSet<Partition> =
            parts.iter().filter(|p| p.block_count() == 3).cloned().collect();
        let reps = rank_four(g).expect("valid ambient");
        formula_multisets(&mut r, og, g, &reps);
        for c in &reps {
            r.check(c.orbit_multiset.orbit_count() == 3, || {
                format!("{}: {}{:?} has {} orbits", label(g), c.family, c.params, c.orbit_multiset.orbit_count())
            });
        }
        classes_match(&mut r, g, &tagged(og, g, &reps), &target, &hol_maps(og));
        r
    });
    CriterionReport::merge("rank-four", parts)
}

/// Maximal relatively closed subgroups of every closed subgroup, against the
/// oracle poset, up to the `Hol(W)`-normalizer of the subgroup.
pub fn maximal_closed_battery(n_max: u64) -> CriterionReport {
    let parts: Vec<CriterionReport> = ambients(n_max)
        .par_iter()
        .map(|g| {
            let mut r = CriterionReport::new("maximal-closed");
            let og = OracleGroup::new(g).expect("small");
            let with_triples = all_orbit_partitions_with_triples(&og);
            let partitions: Vec<Partition> = with_triples.iter().map(|(p, _)| p.clone()).collect();
            for (top, (k, i, j)) in &with_triples {
                let h = g.presentation_from_triple(*k, *i, *j).expect("valid");
                let closed = relative_closure(g, &h).expect("valid");
                let (nf, _) = to_normal_form(g, &closed).expect("valid");
                let top_nf = partition_of(&og, g, &nf);
                r.check(top_nf.block_sizes().len() == top.block_sizes().len(), || {
                    format!("{}: closure of {h:?} changed the orbits", label(g))
                });
                let below: Vec<Partition> =
                    partitions.iter().filter(|p| **p != top_nf && p.refines(&top_nf)).cloned().collect();
                let target: HashSet<Partition> = coarsest(&below).into_iter().collect();
                let reps = maximal_relatively_closed(g, &nf).expect("closed normal form");
                let stab = hol_stabilizer(&og, &top_nf);
                let tagged: Vec<(String, Partition)> = tagged(&og, g, &reps)
                    .into_iter()
                    .map(|(name, p)| (format!("{name} below {nf:?}"), p))
                    .collect();
                classes_match(&mut r, g, &tagged, &target, &stab);
            }
            r
        })
        .collect();
    CriterionReport::merge("maximal-closed", parts)
}

/// Normal forms: idempotence, conjugation by the returned `w^u`, and the
/// conjugacy test against brute force in `Hol(W)`.
pub fn normal_form_battery(n_max: u64) -> CriterionReport {
    let parts: Vec<CriterionReport> = ambients(n_max)
        .par_iter()
        .map(|g| {
            let mut r = CriterionReport::new("normal-form");
            let og = OracleGroup::new(g).expect("small");
            let subgroups = oracle_all_subgroups(&og, u64::MAX).expect("no bound");
            let sets: Vec<_> = subgroups.iter().map(|s| s.elements.clone()).collect();
            let classes = hol_classes(&og, &sets);
            let mut forms = Vec::new();
            for (idx, sub) in subgroups.iter().enumerate() {
                let (k, i, j) = sub.triple;
                let h = g.presentation_from_triple(k, i, j).expect("valid");
                let (nf, u) = to_normal_form(g, &h).expect("valid");
                let again = to_normal_form(g, &nf).expect("valid");
                r.check(again == (nf, 0), || format!("{}: {nf:?} renormalizes to {again:?}", label(g)));
                let conj = sub.elements.conjugate_affine(&og, 1, u);
                let got = oracle_generate(&og, &g.generators(&nf));
                r.check(conj == got, || format!("{}: {h:?} conjugated by w^{u} is not {nf:?}", label(g)));
                forms.push((nf, classes[idx]));
            }
            forms.sort();
            forms.dedup();
            for a in 0..forms.len() {
                for b in a..forms.len() {
                    let (h1, c1) = forms[a];
                    let (h2, c2) = forms[b];
                    let verdict = hol_conjugate(g, &h1, &h2).expect("normal forms");
                    r.check(verdict == (c1 == c2), || {
                        format!("{}: hol_conjugate({h1:?}, {h2:?}) = {verdict}, brute force {}", label(g), c1 == c2)
                    });
                }
            }
            r
        })
        .collect();
    CriterionReport::merge("normal-form", parts)
}

/// Field orders used by the affine criterion.
pub const AFFINE_ORDERS: [(u64, u32); 14] = [
    (2, 2),
    (5, 1),
    (7, 1),
    (2, 3),
    (3, 2),
    (11, 1),
    (13, 1),
    (2, 4),
    (5, 2),
    (3, 3),
    (2, 5),
    (7, 2),
    (2, 6),
    (3, 4),
];

fn scheme_ok(field: &FiniteField, c: &ClassifiedSubgroup) -> bool {
    let s = AssociationScheme::from_stabilizer(field, &c.presentation).expect("valid subgroup");
    s.is_coherent() && s.rank as u64 == 1 + c.orbit_multiset.orbit_count()
}

/// Maximal and rank-4 one-dimensional affine groups against the stated
/// conditions, the general classification and the oracle.
pub fn affine_battery(orders: &[(u64, u32)]) -> CriterionReport {
    let parts: Vec<CriterionReport> = orders
        .par_iter()
        .map(|&(p, d)| {
            let mut r = CriterionReport::new("affine");
            let field = FiniteField::new(p, d).expect("valid field");
            let g = gamma_l1(&field);
            let og = OracleGroup::new(&g).expect("small");
            let q = field.order();
            let where_ = || format!("q={q}");

            let maxes = affine_maximal(&field).expect("valid");
            let mut expected: Vec<String> =
                crate::numtheory::prime_divisors(q - 1).iter().map(|r| format!("M[{r}]")).collect();
            if p % 4 == 3 && d % 2 == 0 {
                expected.push("P[]".into());
            }
            let got: Vec<String> = maxes.iter().map(|c| format!("{}{:?}", c.family, c.params)).collect();
            r.check(got == expected, || format!("{}: maximal {got:?}, expected {expected:?}", where_()));
            let general = maximal_intransitive(&g).expect("valid");
            let same = general.len() == maxes.len()
                && general.iter().zip(&maxes).all(|(a, b)| {
                    to_normal_form(&g, &a.presentation).unwrap().0.subgroup_key() == b.presentation.subgroup_key()
                });
            r.check(same, || format!("{}: specialization differs from the general classification", where_()));

            let partitions = all_orbit_partitions(&og);
            let target: HashSet<Partition> = maximal_intransitive_partitions(&partitions).into_iter().collect();
            classes_match(&mut r, &g, &tagged(&og, &g, &maxes), &target, &g_maps(&og));

            let r4 = affine_rank_four(&field).expect("valid");
            let mut expected = Vec::new();
            let ord = |m: u64| crate::numtheory::mult_order(p % m, m).unwrap();
            let primes = crate::numtheory::prime_divisors(q - 1);
            for &r in &primes {
                if (r - 1) % 2 == 0 && ord(r) == (r - 1) / 2 && r > 2 {
                    expected.push(format!("R1[{r}]"));
                }
            }
            for &r in primes.iter().filter(|&&r| r != 2) {
                if ord(r) == r - 1 {
                    expected.push(format!("R2[{r}]"));
                }
            }
            for &r in &primes {
                if (q - 1) % (r * r) == 0 && ord(r * r) == r * r - r {
                    expected.push(format!("R3[{r}]"));
                }
            }
            for &r in primes.iter().filter(|&&r| r != 2 && p % 2 == 1) {
                if ord(r) == r - 1 {
                    expected.push(format!("R4[{r}]"));
                }
            }
            let got: Vec<String> = r4.iter().map(|c| format!("{}{:?}", c.family, c.params)).collect();
            r.check(got == expected, || format!("{}: rank 4 {got:?}, expected {expected:?}", where_()));
            let three: HashSet<Partition> = partitions.iter().filter(|p| p.block_count() == 3).cloned().collect();
            classes_match(&mut r, &g, &tagged(&og, &g, &r4), &three, &g_maps(&og));

            for c in maxes.iter().chain(&r4) {
                r.check(scheme_ok(&field, c), || format!("{}: scheme of {}{:?} fails the axioms", where_(), c.family, c.params));
            }
            r
        })
        .collect();
    CriterionReport::merge("affine", parts)
}

/// The nine-point pair is isomorphic, the 49-point pair is not.
pub fn minimal_schemes_battery() -> (CriterionReport, [Duration; 2]) {
    let mut r = CriterionReport::new("minimal-schemes");
    let mut times = [Duration::ZERO; 2];
    for (slot, (p, d, iso)) in [(3, 2, true), (7, 2, false)].into_iter().enumerate() {
        let field = FiniteField::new(p, d).expect("valid");
        let start = Instant::now();
        let report = minimal_schemes(&field).expect("valid");
        let paley = report.schemes.iter().position(|s| s.group.family == "M" && s.group.params == [2]);
        let peisert = report.schemes.iter().position(|s| s.group.family == "P");
        let (Some(a), Some(b)) = (paley, peisert) else {
            r.check(false, || format!("q={}: missing Paley or Peisert group", field.order()));
            continue;
        };
        let sa = AssociationScheme::from_stabilizer(&field, &report.schemes[a].group.presentation).unwrap();
        let sb = AssociationScheme::from_stabilizer(&field, &report.schemes[b].group.presentation).unwrap();
        let verdict = scheme_isomorphic(&sa, &sb).expect("same size");
        times[slot] = start.elapsed();
        let ok = match (&verdict, iso) {
            (IsoVerdict::Isomorphic { points, colors }, true) => {
                crate::affine::iso::is_isomorphism(&sa, &sb, points, colors)
            }
            (IsoVerdict::NonIsomorphic, false) => true,
            _ => false,
        };
        r.check(ok, || format!("q={}: Paley/Peisert verdict {:?}", field.order(), verdict));
        let pair = report.pairs.iter().find(|pv| pv.left.min(pv.right) == a.min(b) && pv.left.max(pv.right) == a.max(b));
        r.check(pair.is_some_and(|pv| pv.verdict.is_isomorphic() == iso), || {
            format!("q={}: report verdict disagrees", field.order())
        });
        for s in &report.schemes {
            r.check(s.coherent, || format!("q={}: incoherent scheme", field.order()));
        }
    }
    (r, times)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub subgroup_bound: u64,
    pub maximal_intransitive_bound: u64,
    pub second_maximal_bound: u64,
    pub second_maximal_poset_bound: u64,
    pub rank_four_bound: u64,
    pub normal_form_bound: u64,
    pub maximal_closed_bound: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            subgroup_bound: 60,
            maximal_intransitive_bound: 200,
            second_maximal_bound: 120,
            second_maximal_poset_bound: 60,
            rank_four_bound: 100,
            normal_form_bound: 40,
            maximal_closed_bound: 30,
        }
    }
}

impl VerifyConfig {
    /// Every bound capped at `n`.
    pub fn capped(n: u64) -> Self {
        let d = VerifyConfig::default();
        VerifyConfig {
            subgroup_bound: d.subgroup_bound.min(n),
            maximal_intransitive_bound: d.maximal_intransitive_bound.min(n),
            second_maximal_bound: d.second_maximal_bound.min(n),
            second_maximal_poset_bound: d.second_maximal_poset_bound.min(n),
            rank_four_bound: d.rank_four_bound.min(n),
            normal_form_bound: d.normal_form_bound.min(n),
            maximal_closed_bound: d.maximal_closed_bound.min(n),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

/// The whole battery; affine checks always use the fixed list of fields.
pub fn run_battery(config: &VerifyConfig) -> VerifyReport {
    let sweep = subgroup_sweep(config.subgroup_bound);
    let criteria = vec![
        sweep.equivalence,
        sweep.radical_closure,
        maximal_intransitive_battery(config.maximal_intransitive_bound),
        second_maximal_battery(config.second_maximal_bound, config.second_maximal_poset_bound),
        rank_four_battery(config.rank_four_bound),
        affine_battery(&AFFINE_ORDERS),
        minimal_schemes_battery().0,
        sweep.orbit_formulas,
        normal_form_battery(config.normal_form_bound),
        maximal_closed_battery(config.maximal_closed_bound),
        second_maximal_completeness(config.second_maximal_poset_bound),
    ];
    let passed = criteria.iter().all(|c| c.passed());
    VerifyReport { config: config.clone(), criteria, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_battery_passes() {
        let report = run_battery(&VerifyConfig::capped(12));
        for c in &report.criteria {
            assert!(c.passed(), "{c:?}");
        }
    }
}
