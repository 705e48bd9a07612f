use std::collections::{BTreeMap, BTreeSet, VecDeque};

use bqt_core::chains::*;
use bqt_core::posets::*;
use bqt_core::{Error, WeightedPoset};
use bqt_field::RatFunc;
use proptest::prelude::*;

fn boolean3() -> WeightedPoset {
    build_boolean(&[RatFunc::a(1), RatFunc::a(2), RatFunc::a(3)]).unwrap()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn binomial(n: usize, k: usize) -> usize {
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[test]
fn two_box_partitions_have_one_good_two_chain() {
    let p = build_partition_ideal(2, None, None);
    let chains = enumerate_good_chains(&p, 2);
    assert_eq!(chains.len(), 1);
    assert_eq!(chains[0].base, p.index_of("∅").unwrap());
    assert_eq!(chains[0].word, vec![RatFunc::one(), RatFunc::q()]);
    assert_eq!(chains[0].end, p.index_of("(2)").unwrap());
    assert_eq!(enumerate_chains(&p, 2).len(), 2);
}

#[test]
fn boolean_single_steps() {
    let b = boolean3();
    let want: usize = (0..=3).map(|s| binomial(3, s) * (3 - s)).sum();
    assert_eq!(want, 12);
    assert_eq!(enumerate_good_chains(&b, 1).len(), want);
}

#[test]
fn level_zero_has_one_chain_per_element() {
    let p = build_partition_ideal(3, None, None);
    let chains = enumerate_good_chains(&p, 0);
    assert_eq!(chains.len(), p.len());
    assert!(chains.iter().all(|c| c.base == c.end && c.word.is_empty()));
}

#[test]
fn no_chains_beyond_the_longest() {
    for e in [build_partition_ideal(3, None, None), boolean3(), build_linear(4, &RatFunc::one()).unwrap()] {
        assert!(enumerate_good_chains(&e, e.longest_chain() + 1).is_empty());
    }
}

#[test]
fn enumeration_is_sorted_and_deterministic() {
    let b = boolean3();
    let a = enumerate_good_chains(&b, 2);
    assert_eq!(a, enumerate_good_chains(&b, 2));
    let keys: Vec<(usize, Vec<String>)> =
        a.iter().map(|c| (c.base, c.word.iter().map(|w| w.to_string()).collect())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn transposition_statuses() {
    let p = build_partition_ideal(2, None, None);
    let c = &enumerate_good_chains(&p, 2)[0];
    assert_eq!(transposition_status(c, 1), Ok(TranspositionStatus::NonAdmissible));
    assert!(matches!(apply_transposition(&p, c, 1), Err(Error::NotExcellent(_))));

    let b = boolean3();
    let s = b.index_of("{3}").unwrap();
    let c = GoodChain::new(&b, s, vec![RatFunc::a(1), RatFunc::a(2)]).unwrap();
    assert_eq!(transposition_status(&c, 1), Ok(TranspositionStatus::Excellent));

    let single = GoodChain::new(&b, s, vec![RatFunc::a(1)]).unwrap();
    assert!(matches!(transposition_status(&single, 1), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(transposition_status(&c, 0), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn boolean_transposition() {
    let b = boolean3();
    let empty = b.index_of("∅").unwrap();
    let c = GoodChain::new(&b, empty, vec![RatFunc::a(2), RatFunc::a(1)]).unwrap();
    let s = apply_transposition(&b, &c, 1).unwrap();
    assert_eq!(s.word, vec![RatFunc::a(1), RatFunc::a(2)]);
    assert_eq!(s.end, c.end);
    assert_eq!(apply_transposition(&b, &s, 1).unwrap(), c);
}

/// Horizontal strips `μ/λ` of size `k`, each counted with the number of ways to
/// order its cells compatibly with rows: `k! / Π r_i!`.
fn strip_count(lam: &[usize], mu: &[usize]) -> Option<usize> {
    let rows = mu.len();
    if lam.len() > rows {
        return None;
    }
    let l = |i: usize| lam.get(i).copied().unwrap_or(0);
    let mut sizes = Vec::new();
    for i in 0..rows {
        if mu[i] < l(i) || (i + 1 < rows && mu[i + 1] > l(i)) {
            return None;
        }
        sizes.push(mu[i] - l(i));
    }
    let k: usize = sizes.iter().sum();
    Some(factorial(k) / sizes.iter().map(|&r| factorial(r)).product::<usize>())
}

#[test]
fn partition_chains_match_horizontal_strip_count() {
    let p = build_partition_ideal(5, None, None);
    let shape = |i: usize| partition_from_contents(&p.element(i).contents).unwrap();
    for k in 0..=4 {
        let mut by_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for c in enumerate_good_chains(&p, k) {
            *by_pair.entry((c.base, c.end)).or_default() += 1;
        }
        for lam in 0..p.len() {
            for mu in 0..p.len() {
                if p.grade(mu) - p.grade(lam) != k as i64 {
                    continue;
                }
                let want = strip_count(&shape(lam), &shape(mu)).unwrap_or(0);
                assert_eq!(by_pair.get(&(lam, mu)).copied().unwrap_or(0), want, "{} -> {}", p.label(lam), p.label(mu));
            }
        }
    }
}

#[test]
fn far_weights_are_separated() {
    let q = RatFunc::q();
    let t = RatFunc::t();
    for e in [build_partition_ideal(4, None, None), boolean3()] {
        for k in 2..=e.longest_chain() {
            for c in enumerate_good_chains(&e, k) {
                for i in 1..=k {
                    for j in 1..i {
                        let (wi, wj) = (c.w(i), c.w(j));
                        assert!(*wi != wj * &q && *wi != wj * &t && wi != wj, "{}", c.display(&e));
                    }
                }
            }
        }
    }
}

/// Good chains sharing base, endpoint and weight multiset form one orbit under
/// admissible transpositions.
#[test]
fn transposition_orbits_are_connected() {
    for e in [build_partition_ideal(4, None, None), boolean3()] {
        for k in 2..=e.longest_chain() {
            let chains = enumerate_good_chains(&e, k);
            let mut groups: BTreeMap<(usize, usize, Vec<RatFunc>), BTreeSet<GoodChain>> = BTreeMap::new();
            for c in &chains {
                let mut m = c.word.clone();
                m.sort();
                groups.entry((c.base, c.end, m)).or_default().insert(c.clone());
            }
            for group in groups.values() {
                let start = group.iter().next().unwrap().clone();
                let mut seen = BTreeSet::from([start.clone()]);
                let mut queue = VecDeque::from([start]);
                while let Some(c) = queue.pop_front() {
                    for i in 1..k {
                        if let Ok(s) = apply_transposition(&e, &c, i) {
                            assert!(s.is_good());
                            if seen.insert(s.clone()) {
                                queue.push_back(s);
                            }
                        }
                    }
                }
                assert_eq!(&seen, group);
            }
        }
    }
}

proptest! {
    #[test]
    fn transpositions_are_involutions(k in 2usize..=4, pick in 0usize..1000, i in 1usize..4) {
        let e = build_partition_ideal(5, None, None);
        let chains = enumerate_good_chains(&e, k);
        let c = &chains[pick % chains.len()];
        prop_assume!(i < k);
        if transposition_status(c, i).unwrap() == TranspositionStatus::Excellent {
            let s = apply_transposition(&e, c, i).unwrap();
            prop_assert!(s.is_good());
            prop_assert_eq!(s.end, c.end);
            prop_assert_eq!(&apply_transposition(&e, &s, i).unwrap(), c);
        } else {
            prop_assert!(apply_transposition(&e, c, i).is_err());
        }
    }
}
