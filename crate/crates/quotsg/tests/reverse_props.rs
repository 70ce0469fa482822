//! Reverse solvers checked against membership tables.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use quotsg::exactmath::Int;
use quotsg::lattice::{chain_window, psi_map, QuotientSpec};
use quotsg::oracle::{member_ab, SemigroupOracle};
use quotsg::reverse::{
    admissible_orderings, arithmetic_identity, case2_family, case3_conditions, case3_family,
    irr_of_span, n_independent, solve_case1, solve_case2, solve_case3, Constraint, GenSeq, Param,
};

fn ints(v: &[u64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn u64s(v: &[Int]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().unwrap()).collect()
}

fn sorted(v: &[Int]) -> Vec<u64> {
    let mut out = u64s(v);
    out.sort_unstable();
    out
}

/// Oracle generator set of `<a,b>/d`.
fn oracle_irr(spec: &QuotientSpec) -> Vec<u64> {
    let (a, b, d) = (
        spec.a.to_u64().unwrap(),
        spec.b.to_u64().unwrap(),
        spec.d.to_u64().unwrap(),
    );
    SemigroupOracle::quotient_ab(a, b, d).unwrap().irr()
}

/// Whether `x` is a non-negative combination of `others`, by dynamic
/// programming up to `x`.
fn representable(x: u64, others: &[u64]) -> bool {
    let mut reach = vec![false; x as usize + 1];
    reach[0] = true;
    for v in 1..=x as usize {
        reach[v] = others.iter().any(|&g| g as usize <= v && reach[v - g as usize]);
    }
    reach[x as usize]
}

fn independent_bf(set: &[u64]) -> bool {
    (0..set.len()).all(|i| {
        let others: Vec<u64> = set
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        !representable(set[i], &others)
    })
}

/// Modular-convex sequence from a start pair and coefficients, if every
/// term stays positive.
fn build_seq(n0: u64, n1: u64, ds: &[u64]) -> Option<Vec<u64>> {
    let mut n: Vec<i64> = vec![n0 as i64, n1 as i64];
    for &d in ds {
        let k = n.len();
        let next = d as i64 * n[k - 1] - n[k - 2];
        if next <= 0 {
            return None;
        }
        n.push(next);
    }
    Some(n.into_iter().map(|x| x as u64).collect())
}

fn seq_strategy() -> impl Strategy<Value = Vec<u64>> {
    (2u64..40, 2u64..40, prop::collection::vec(2u64..6, 0..5))
        .prop_filter_map("positive, coprime start", |(n0, n1, ds)| {
            if n0.gcd(&n1) != 1 {
                return None;
            }
            let n = build_seq(n0, n1, &ds)?;
            let distinct: BTreeSet<u64> = n.iter().copied().collect();
            (distinct.len() == n.len() && *n.iter().max().unwrap() < 2000).then_some(n)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn span_generators_match_oracle(n in seq_strategy()) {
        let o = SemigroupOracle::from_generators(&n).unwrap();
        let window = irr_of_span(&ints(&n)).unwrap();
        prop_assert_eq!(sorted(&window), o.irr());
        let ind = n_independent(&ints(&n)).unwrap();
        prop_assert_eq!(ind, independent_bf(&n));
        prop_assert_eq!(ind, window.len() == n.len());
    }

    #[test]
    fn independence_with_common_factor(n in seq_strategy(), g in 2u64..5) {
        // Scaling by g keeps modular convexity; independence then follows
        // Q_{r-1} < min(n_0, n_r) / g.
        let scaled: Vec<u64> = n.iter().map(|x| x * g).collect();
        let ind = n_independent(&ints(&n)).unwrap();
        prop_assert_eq!(independent_bf(&scaled), ind);
        let seq = GenSeq::from_u64(&scaled).unwrap();
        prop_assert!(seq.n_independent().is_err());
    }
}

/// Every pairwise coprime `d < a < b <= 70` with `d` outside `<a,b>`,
/// grouped by generator set.
fn case1_scan() -> BTreeMap<Vec<u64>, (Vec<(u64, u64, u64)>, Vec<Int>)> {
    let mut by_set: BTreeMap<Vec<u64>, (Vec<(u64, u64, u64)>, Vec<Int>)> = BTreeMap::new();
    for b in 3..=70u64 {
        for a in 2..b {
            if a.gcd(&b) != 1 {
                continue;
            }
            for d in 1..a {
                if d.gcd(&a) != 1 || d.gcd(&b) != 1 || member_ab(d, a, b) {
                    continue;
                }
                let irr = SemigroupOracle::quotient_ab(a, b, d).unwrap().irr();
                let entry = by_set.entry(irr).or_default();
                entry.0.push((a, b, d));
                if entry.1.is_empty() && d > 1 {
                    // Chain order of the generators, used as the given
                    // order for sets too large for the exhaustive search.
                    let spec = QuotientSpec::from_u64(a, b, d).unwrap();
                    let (pts, sigma, s) = chain_window(&spec).unwrap();
                    entry.1 = pts[sigma..=s]
                        .iter()
                        .map(|p| psi_map(&spec, p).to_integer())
                        .collect();
                }
            }
        }
    }
    by_set
}

fn naive_case1_orderings(set: &[u64]) -> usize {
    // All permutations of a three element set, checked directly.
    let mut count = 0;
    let idx = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in idx {
        let (x, y, z) = (set[p[0]], set[p[1]], set[p[2]]);
        let convex = (x + z) % y == 0 && (x + z) / y >= 2;
        if convex && x.gcd(&z) == 1 && x < z && independent_bf(set) {
            count += 1;
        }
    }
    count
}

#[test]
fn case1_is_complete_on_small_triples() {
    let scan = case1_scan();
    assert!(scan.len() > 1000, "{} sets", scan.len());
    let mut three = 0;
    for (set, (found, chain_order)) in &scan {
        let input = if chain_order.is_empty() { ints(set) } else { chain_order.clone() };
        let sols = solve_case1(&input).unwrap();
        let mut got: Vec<(u64, u64, u64)> = sols
            .iter()
            .map(|s| (s.spec.a.to_u64().unwrap(), s.spec.b.to_u64().unwrap(), s.spec.d.to_u64().unwrap()))
            .collect();
        got.sort_unstable();
        let mut want = found.clone();
        want.sort_unstable();
        if set.len() <= 10 {
            assert_eq!(got, want, "I = {set:?}");
        } else {
            // Only the chain order and its reverse are tried.
            assert!(got.iter().all(|t| want.contains(t)), "I = {set:?}");
            assert!(!got.is_empty(), "I = {set:?}");
        }
        for s in &sols {
            assert_eq!(oracle_irr(&s.spec), *set);
        }
        if set.len() == 3 {
            three += 1;
            assert_eq!(naive_case1_orderings(set), sols.len(), "I = {set:?}");
            let distinct: BTreeSet<_> = got.iter().collect();
            assert_eq!(distinct.len(), got.len());
        }
    }
    assert!(three > 100);
}

fn test_sets() -> Vec<Vec<u64>> {
    vec![
        vec![7, 11, 59],
        vec![10, 17, 24],
        vec![5, 7, 9, 11],
        vec![3, 5],
        vec![4, 7],
        vec![8, 13, 31],
        vec![9, 13, 17, 21],
        vec![7, 10, 13],
        vec![12, 17, 22, 27, 32],
        vec![6, 11, 27],
    ]
}

#[test]
fn cases_two_and_three_are_sound() {
    for set in test_sets() {
        let input = ints(&set);
        assert!(!admissible_orderings(&input).unwrap().is_empty(), "{set:?}");
        for fam in solve_case2(&input, 6).unwrap() {
            assert_eq!(fam.instances.len(), 6);
            for s in &fam.instances {
                assert!(s.spec.a < s.spec.d && s.spec.d < s.spec.b, "{}", s.spec);
                assert_eq!(oracle_irr(&s.spec), set, "{} from {:?}", s.spec, fam.family.ordering);
            }
        }
        for fam in solve_case3(&input, 6).unwrap() {
            assert_eq!(fam.instances.len(), 6);
            for s in &fam.instances {
                assert!(s.spec.a < s.spec.b && s.spec.b < s.spec.d, "{}", s.spec);
                assert_eq!(oracle_irr(&s.spec), set, "{} from {:?}", s.spec, fam.family.ordering);
            }
        }
    }
}

#[test]
fn worked_families() {
    // <7, 59k - 11>/(6k - 1) for k != -1 mod 7.
    let seq = GenSeq::from_u64(&[7, 11, 59]).unwrap();
    let fam = case2_family(&seq);
    for k in 2..60u64 {
        let spec = QuotientSpec::from_u64(7, 59 * k - 11, 6 * k - 1);
        let admitted = fam.instance(&Int::from(0), &Int::from(k));
        assert_eq!(admitted.is_some(), k % 7 != 6, "k = {k}");
        if let (Some(got), Ok(spec)) = (admitted, spec) {
            assert_eq!(got, spec);
            assert_eq!(oracle_irr(&spec), vec![7, 11, 59]);
        }
    }
    // <10, 24k - 17>/(2k - 1) from k = 6 on, k != 3 mod 5.
    let fam = case2_family(&GenSeq::from_u64(&[10, 17, 24]).unwrap());
    assert_eq!(fam.min(Param::K), Some(&Int::from(6)));
    // <7j - 11, 59k - 11>/(6jk - k - j), j >= 10, k >= 2.
    let fam = case3_family(&seq);
    for j in 10..30u64 {
        for k in 2..12u64 {
            let (a, b, d) = (7 * j - 11, 59 * k - 11, 6 * k * j - k - j);
            let admitted = fam.instance(&Int::from(j), &Int::from(k));
            assert_eq!(admitted.is_some(), a.gcd(&b) == 1, "j = {j}, k = {k}");
            if let Some(spec) = admitted {
                assert_eq!(spec, QuotientSpec::from_u64(a, b, d).unwrap());
            }
        }
    }
}

/// Every admitted point of a family near its corner, including points
/// with `a > b`, yields the target set.
#[test]
fn family_instances_match_oracle() {
    for set in test_sets() {
        for seq in admissible_orderings(&ints(&set)).unwrap() {
            let f2 = case2_family(&seq);
            let k0 = f2.min(Param::K).unwrap().to_u64().unwrap();
            let zero = Int::from(0);
            for k in k0..k0 + 40 {
                let k = Int::from(k);
                let spec = f2.instance(&zero, &k);
                let raw = (f2.a.eval(&zero, &k), f2.b.eval(&zero, &k), f2.d.eval(&zero, &k));
                match spec {
                    Some(spec) => assert_eq!(oracle_irr(&spec), set, "{spec}"),
                    None => {
                        // Excluded points share a factor and never give the set.
                        let g = raw.0.gcd(&raw.1);
                        assert!(!g.is_one(), "{:?} k = {k} rejected", seq.terms());
                        let a = (&raw.0 / &g).to_u64().unwrap();
                        let b = (&raw.1 / &g).to_u64().unwrap();
                        let d = raw.2.to_u64().unwrap();
                        let gd = d.gcd(&g.to_u64().unwrap());
                        let d = d / gd;
                        // <a,b>/d with a common factor g: scale back as
                        // g <a', b'> / d = (g/gcd(g,d)) (<a',b'>/(d/gcd)).
                        let o = SemigroupOracle::quotient_ab(a, b, d).unwrap();
                        let factor = g.to_u64().unwrap() / gd;
                        let irr: Vec<u64> = o.irr().iter().map(|x| x * factor).collect();
                        assert_ne!(irr, set, "excluded k = {k} for {:?}", seq.terms());
                    }
                }
            }
            let f3 = case3_family(&seq);
            let j0 = f3.min(Param::J).unwrap().to_u64().unwrap();
            let k0 = f3.min(Param::K).unwrap().to_u64().unwrap();
            for j in j0..j0 + 12 {
                for k in k0..k0 + 12 {
                    let (j, k) = (Int::from(j), Int::from(k));
                    if let Some(spec) = f3.instance(&j, &k) {
                        assert_eq!(oracle_irr(&spec), set, "{spec} (j = {j}, k = {k})");
                        let exact = case3_conditions(&seq, &j, &k);
                        if f3.a.eval(&j, &k) < f3.b.eval(&j, &k) {
                            assert_eq!(exact, Some(spec));
                        }
                    }
                    for c in &f3.constraints {
                        if !matches!(c, Constraint::Coprime(..)) && j >= Int::from(j0) {
                            assert!(c.holds(&j, &k), "{c} fails at j = {j}, k = {k}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn arithmetic_progressions() {
    for a in 2..=12u64 {
        for k in 2..=9u64 {
            if a.gcd(&k) != 1 {
                continue;
            }
            for r in 1..a {
                let id = arithmetic_identity(&Int::from(a), &Int::from(k), &Int::from(r)).unwrap();
                let lhs = SemigroupOracle::from_generators(&u64s(&id.gens)).unwrap();
                let g = &id.general;
                let rhs = SemigroupOracle::quotient_ab(
                    g.a.to_u64().unwrap(),
                    g.b.to_u64().unwrap(),
                    g.d.to_u64().unwrap(),
                )
                .unwrap();
                assert_eq!(lhs.gaps(), rhs.gaps(), "a = {a}, k = {k}, r = {r}");
                assert_eq!(id.simple.is_some(), a.gcd(&r) == 1);
                if let Some(s) = &id.simple {
                    assert_eq!(oracle_irr(s), lhs.irr());
                    assert_eq!(lhs.gaps(), SemigroupOracle::quotient_ab(
                        s.a.to_u64().unwrap(), s.b.to_u64().unwrap(), s.d.to_u64().unwrap()).unwrap().gaps());
                }
                assert!(id.gens.iter().zip(&lhs.irr()).all(|(x, &y)| *x == Int::from(y)));
                assert!(Int::one() <= id.general.d);
            }
        }
    }
}
