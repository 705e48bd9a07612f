use std::collections::BTreeMap;

use bqt_core::chains::GoodChain;
use bqt_core::edge::{coboundary, partition_edge_function, squares, synthesize_edge};
use bqt_core::posets::{build_linear, build_partition_ideal, build_singleton, dual, PosetMap};
use bqt_core::rep::duality::{check_duality, dual_rep, expand, simplify, theta_on_words};
use bqt_core::rep::hom::{check_intertwiner, hom_from_posetmap};
use bqt_core::rep::reconstruct::reconstruct_poset;
use bqt_core::rep::relations::{check_calibrated, verify_relations, Combination};
use bqt_core::rep::rescale::{check_rescaled_forms, gauge_intertwiner, rescale, unrescale};
use bqt_core::rep::submodule::{count, matrix_closure, sandwich, submodule_closure, submodule_from_coideal};
use bqt_core::rep::sym::{check_sym_commute, sym_generators};
use bqt_core::rep::tensor::tensor_dim_check;
use bqt_core::rep::{Gen, SparseMatrix};
use bqt_core::{build_rep, EdgeFunction, Error, Representation, WeightedPoset};
use bqt_field::{parse, RatFunc};
use proptest::prelude::*;

fn rf(s: &str) -> RatFunc {
    parse(s).unwrap()
}

fn full(e: &WeightedPoset, c: &EdgeFunction) -> Representation {
    build_rep(e, c, e.longest_chain()).unwrap()
}

fn synth_rep_seeded(e: &WeightedPoset, seed: u64) -> Representation {
    full(e, &synthesize_edge(e, seed).unwrap())
}

fn synth_rep(e: &WeightedPoset) -> Representation {
    synth_rep_seeded(e, 0)
}

fn index(rep: &Representation, k: usize, base: &str, word: &[RatFunc]) -> usize {
    let e = rep.poset();
    let ch = GoodChain::new(e, e.index_of(base).unwrap(), word.to_vec()).unwrap();
    rep.level(k).unwrap().index_of(&ch).unwrap()
}

fn same_matrices(a: &Representation, b: &Representation) -> bool {
    (0..a.levels().len()).all(|k| Gen::generators_at(k).into_iter().all(|g| a.matrix(g, k) == b.matrix(g, k)))
}

#[test]
fn singleton_representation_is_one_dimensional() {
    let s = build_singleton(&[]);
    let rep = synth_rep(&s);
    assert_eq!(rep.dims(), vec![1]);
    assert!(rep.is_complete());
    assert!(rep.matrix(Gen::Phi, 0).unwrap().is_zero());
    assert!(rep.matrix(Gen::DPlus, 0).unwrap().is_zero());
    assert!(verify_relations(&rep).passed());
}

#[test]
fn two_box_partition_raising_coefficients() {
    let e = build_partition_ideal(2, None, None);
    let c = partition_edge_function(&e).unwrap();
    let rep = full(&e, &c);
    let (one, q) = (RatFunc::one(), RatFunc::q());
    assert_eq!(rep.dims()[..3], [4, 3, 1]);

    let d0 = rep.matrix(Gen::DPlus, 0).unwrap();
    let col = d0.column(index(&rep, 0, "∅", &[]));
    assert_eq!(col.len(), 1);
    assert_eq!(col.get(&index(&rep, 1, "∅", std::slice::from_ref(&one))), Some(&RatFunc::from_int(-1)));

    let d1 = rep.matrix(Gen::DPlus, 1).unwrap();
    let col = d1.column(index(&rep, 1, "∅", std::slice::from_ref(&one)));
    let want = rf("q * (-q*(1-t)/(q-t)) * (q - t)/(q - q*t)");
    assert_eq!(col.len(), 1);
    assert_eq!(col.get(&index(&rep, 2, "∅", &[one, q])), Some(&want));
}

#[test]
fn linear_raising_coefficients() {
    let e = build_linear(3, &RatFunc::a(1)).unwrap();
    let c = synthesize_edge(&e, 0).unwrap();
    let rep = full(&e, &c);
    let (a, q, t) = (RatFunc::a(1), RatFunc::q(), RatFunc::t());
    let d = rep.matrix(Gen::DPlus, 1).unwrap();
    let col = d.column(index(&rep, 1, "0", std::slice::from_ref(&a)));
    let x = &a * &q;
    let want = &q * c.get(1) * (&x - &(&t * &a)) / (&x - &(&(&q * &t) * &a));
    assert_eq!(col.get(&index(&rep, 2, "0", &[a, x])), Some(&want));
}

#[test]
fn relations_and_calibration_hold() {
    for e in [build_partition_ideal(3, None, None), build_linear(4, &RatFunc::a(2)).unwrap()] {
        let rep = synth_rep(&e);
        let report = verify_relations(&rep);
        assert!(report.passed(), "{:?}", report.failures().next());
        assert!(report.checked_instances() > 0);
        assert!(check_calibrated(&rep).passed());
    }
}

#[test]
fn truncated_representation_skips_the_boundary() {
    let e = build_partition_ideal(4, None, None);
    let rep = build_rep(&e, &synthesize_edge(&e, 0).unwrap(), 2).unwrap();
    assert!(!rep.is_complete());
    let report = verify_relations(&rep);
    assert!(report.passed());
    assert!(report.skipped() > 0);
}

#[test]
fn a_broken_square_breaks_a_relation() {
    let e = build_partition_ideal(3, None, None);
    let sq = &squares(&e)[0];
    let ci = e.cover_with(sq.base, &sq.x).unwrap();
    let mut c = synthesize_edge(&e, 0).unwrap();
    c.set(ci, c.get(ci) * &RatFunc::q());
    let report = verify_relations(&full(&e, &c));
    assert!(!report.passed());
    assert!(report.family("t_dplus2").any(|o| o.witness.is_some()));
}

#[test]
fn raising_preserves_the_base_and_lowering_preserves_the_end() {
    let e = build_partition_ideal(4, None, None);
    let rep = synth_rep(&e);
    for k in 0..rep.top() {
        let (lo, hi) = (&rep.levels()[k], &rep.levels()[k + 1]);
        let up = rep.matrix(Gen::DPlus, k).unwrap();
        let down = rep.matrix(Gen::DMinus, k + 1).unwrap();
        for (j, ch) in lo.basis.iter().enumerate() {
            for &i in up.column(j).keys() {
                assert_eq!(hi.basis[i].base, ch.base);
                assert_eq!(e.grade(hi.basis[i].end), e.grade(ch.end) + 1);
            }
        }
        for (j, ch) in hi.basis.iter().enumerate() {
            for &i in down.column(j).keys() {
                assert_eq!(lo.basis[i].end, ch.end);
                assert_eq!(e.grade(lo.basis[i].base), e.grade(ch.base) + 1);
            }
        }
    }
}

#[test]
fn non_admissible_swaps_are_eigenvectors() {
    let e = build_partition_ideal(2, None, None);
    let rep = synth_rep(&e);
    let j = index(&rep, 2, "∅", &[RatFunc::one(), RatFunc::q()]);
    let t1 = rep.matrix(Gen::T(1), 2).unwrap();
    assert_eq!(t1.column(j).len(), 1);
    assert_eq!(t1.get(j, j), RatFunc::one());
}

fn word(letters: &[Gen]) -> Combination {
    vec![(RatFunc::one(), letters.to_vec())]
}

#[test]
fn theta_on_single_letters() {
    let (image, level) = theta_on_words(&word(&[Gen::T(1)]), 3).unwrap();
    assert_eq!(level, 3);
    assert_eq!(image, word(&[Gen::TInv(2)]));

    let (image, _) = theta_on_words(&word(&[Gen::Z(1)]), 3).unwrap();
    assert_eq!(image, word(&[Gen::Z(3)]));

    let (image, level) = theta_on_words(&word(&[Gen::DPlus]), 2).unwrap();
    assert_eq!(level, 3);
    assert_eq!(image, vec![(RatFunc::v().pow(-3), vec![Gen::DMinus])]);

    let (image, _) = theta_on_words(&word(&[Gen::Delta(2)]), 2).unwrap();
    let want: Combination = vec![
        (RatFunc::from_int(-1), vec![Gen::Delta(2)]),
        (RatFunc::one(), vec![Gen::Z(1), Gen::Z(1)]),
        (RatFunc::one(), vec![Gen::Z(2), Gen::Z(2)]),
    ];
    assert_eq!(simplify(image), simplify(want));
}

#[test]
fn theta_is_an_involution_on_raising() {
    let (once, l1) = theta_on_words(&word(&[Gen::DPlus]), 1).unwrap();
    let (twice, l2) = theta_on_words(&once, l1).unwrap();
    assert_eq!(l2, 1);
    assert_eq!(simplify(twice), word(&[Gen::DPlus]));
}

#[test]
fn theta_rejects_ill_typed_words() {
    assert!(matches!(theta_on_words(&word(&[Gen::DMinus]), 0), Err(Error::IllTypedWord(_))));
    assert!(matches!(theta_on_words(&word(&[Gen::T(2)]), 2), Err(Error::IllTypedWord(_))));
}

#[test]
fn rescaled_basis() {
    let e = build_partition_ideal(3, None, None);
    let rep = synth_rep(&e);
    let resc = rescale(&rep);
    assert!(check_rescaled_forms(&resc).passed());
    assert!(verify_relations(&resc).passed());
    for k in 0..=1 {
        let d = resc.matrix(Gen::DPlus, k).unwrap();
        for j in 0..resc.dim(k).unwrap() {
            assert!(d.column(j).values().all(|x| *x == RatFunc::one()));
        }
    }
    assert!(same_matrices(&unrescale(&resc), &rep));
}

#[test]
fn coideal_submodules() {
    let e = build_partition_ideal(3, None, None);
    let rep = synth_rep(&e);
    let all = submodule_from_coideal(&rep, &vec![true; e.len()]).unwrap();
    let stored: Vec<usize> = rep.levels().iter().map(|l| l.dim()).collect();
    assert_eq!(count(&all.v), stored);
    assert_eq!(count(&all.u), stored);

    let top = e.index_of("(3)").unwrap();
    let coideal = e.coideal_generated(&[top]);
    let spans = submodule_from_coideal(&rep, &coideal).unwrap();
    assert!(spans.v_closed && spans.u_closed);
    for k in 0..rep.top() {
        let d = rep.matrix(Gen::DPlus, k).unwrap();
        for (j, inside) in spans.u[k].iter().enumerate() {
            if *inside {
                assert!(d.column(j).is_empty());
            }
        }
    }

    let mut lower = vec![false; e.len()];
    lower[e.index_of("∅").unwrap()] = true;
    assert!(matches!(submodule_from_coideal(&rep, &lower), Err(Error::NotACoideal(_))));
}

#[test]
fn closure_of_a_level_zero_vector_is_sandwiched() {
    let e = build_partition_ideal(3, None, None);
    let rep = synth_rep(&e);
    let lam = e.index_of("(1)").unwrap();
    let j = index(&rep, 0, "(1)", &[]);
    let closure = submodule_closure(&rep, &[(0, j)]);
    let w = matrix_closure(&rep, &[(0, j)]);
    let report = sandwich(&rep, &w);
    assert!(report.passed());
    assert_eq!(report.generated_coideal, e.coideal_generated(&[lam]));
    let spans = submodule_from_coideal(&rep, &report.generated_coideal).unwrap();
    assert!(count(&spans.v) <= count(&closure) && count(&closure) <= count(&spans.u));
}

#[test]
fn identity_homomorphism() {
    let e = build_partition_ideal(3, None, None);
    let rep = synth_rep(&e);
    let id = PosetMap::identity(e.len());
    let maps = hom_from_posetmap(&rep, &rep, &id, &BTreeMap::new()).unwrap();
    for (k, m) in maps.iter().enumerate() {
        assert_eq!(m, &SparseMatrix::identity(rep.dim(k).unwrap()));
    }
    assert!(check_intertwiner(&rep, &rep, &maps).passed());
}

#[test]
fn homomorphism_needs_matching_weights() {
    let e = build_partition_ideal(2, None, None);
    let rep = synth_rep(&e);
    let mut f = PosetMap::identity(e.len());
    let (a, b) = (e.index_of("(2)").unwrap(), e.index_of("(1,1)").unwrap());
    f.map.swap(a, b);
    let r = hom_from_posetmap(&rep, &rep, &f, &BTreeMap::new());
    assert!(matches!(r, Err(Error::MapConditionViolated(3, _))));
}

#[test]
fn symmetric_function_operators() {
    let rep = synth_rep(&build_singleton(&[]));
    assert!(sym_generators(&rep, 1).unwrap()[0].is_zero());
    let rep = synth_rep(&build_linear(3, &RatFunc::one()).unwrap());
    assert!(check_sym_commute(&rep, 3).unwrap().passed());
}

#[test]
fn tensor_with_the_unit() {
    let e = build_partition_ideal(3, None, None);
    let report = tensor_dim_check(&e, &build_singleton(&[]), 3).unwrap();
    assert!(report.passed());
    let direct: Vec<usize> = synth_rep(&e).dims();
    for row in &report.rows {
        assert_eq!(row.product_count, direct[row.k]);
    }
}

#[test]
fn duality_on_a_linear_poset() {
    let e = build_linear(3, &RatFunc::one()).unwrap();
    let rep = synth_rep(&e);
    let d = dual_rep(&rep).unwrap();
    assert!(d.dual_poset.same_structure(&dual(&e)));
    assert_eq!(d.rep.dims(), rep.dims());
    assert!(check_duality(&rep, &d).passed());
}

#[test]
fn reconstruction_of_a_dual_representation() {
    let rep = synth_rep(&build_partition_ideal(3, None, None));
    let d = dual_rep(&rep).unwrap();
    let (_, report) = reconstruct_poset(&d.rep).unwrap();
    assert!(report.passed(), "{:?}", report.detail);
}

#[test]
fn json_dump_lists_every_level() {
    let rep = synth_rep(&build_partition_ideal(2, None, None));
    let v = rep.to_json();
    assert_eq!(v["levels"].as_array().unwrap().len(), rep.top() + 1);
    assert_eq!(v["levels"][0]["basis"][0], "[∅]");
}

fn letters_at(k: usize) -> Vec<Gen> {
    let mut out = Gen::generators_at(k);
    out.extend((1..k).map(Gen::TInv));
    out.extend((1..=k).map(Gen::Y));
    out.push(Gen::Phi);
    out
}

/// A well-typed word on level `k`: picks letters from the right, tracking the level.
fn random_word(k: usize, picks: &[usize]) -> Vec<Gen> {
    let mut cur = k;
    let mut rev = Vec::new();
    for &p in picks {
        let choices = letters_at(cur);
        let g = choices[p % choices.len()];
        cur = g.target(cur).unwrap();
        rev.push(g);
    }
    rev.reverse();
    rev
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn theta_squared_is_the_identity(k in 0usize..=3, picks in prop::collection::vec(0usize..64, 1..=4)) {
        let w = word(&random_word(k, &picks));
        let (once, l1) = theta_on_words(&w, k).unwrap();
        let (twice, l2) = theta_on_words(&once, l1).unwrap();
        prop_assert_eq!(l2, k);
        prop_assert_eq!(simplify(twice), simplify(expand(&w, k).unwrap()));
    }

    #[test]
    fn representations_do_not_depend_on_the_gauge(s1 in 0u64..1000, s2 in 0u64..1000) {
        let e = build_partition_ideal(3, None, None);
        let (c1, c2) = (synthesize_edge(&e, s1).unwrap(), synthesize_edge(&e, s2).unwrap());
        let a = coboundary(&e, &c1, &c2).unwrap();
        let (r1, r2) = (full(&e, &c1), full(&e, &c2));
        prop_assert!(check_intertwiner(&r1, &r2, &gauge_intertwiner(&r1, &a)).passed());
    }

    #[test]
    fn rescaling_round_trips(seed in 0u64..1000) {
        let rep = synth_rep_seeded(&build_partition_ideal(3, None, None), seed);
        prop_assert!(same_matrices(&unrescale(&rescale(&rep)), &rep));
    }
}
