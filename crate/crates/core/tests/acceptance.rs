//! The acceptance suite: thirteen exact checks, one report line each.
//!
//! Runs as a plain binary so the report is printed on every `cargo test` run.
//! Exits with status 1 when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use bqt_core::chains::{enumerate_good_chains, GoodChain};
use bqt_core::edge::{
    boolean_edge_function, closed_form_edge, coboundary, partition_edge_function, product_edge, synthesize_edge,
    verify_monodromy, Psi, ProductEdgeInput,
};
use bqt_core::posets::{build_boolean, build_linear, build_partition_ideal, product, twist, PosetMap};
use bqt_core::rep::duality::{check_duality, dual_rep};
use bqt_core::rep::hom::{check_intertwiner, compatible_edge, hom_from_posetmap, kernel_matches_coideal};
use bqt_core::rep::reconstruct::{reconstruct_from_data, reconstruct_poset, CalibratedData};
use bqt_core::rep::relations::{check_calibrated, verify_relations};
use bqt_core::rep::rescale::gauge_intertwiner;
use bqt_core::rep::submodule::{matrix_closure, sandwich, spans_equal, submodule_closure, submodule_from_coideal};
use bqt_core::rep::sym::check_sym_commute;
use bqt_core::rep::tensor::tensor_dim_check;
use bqt_core::rep::{Gen, SparseVec};
use bqt_core::{build_rep, Assumption, EdgeFunction, Error, Representation, WeightedPoset};
use bqt_field::{Character, Monomial, RatFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn fail(msg: impl Into<String>) -> Outcome {
    Err(msg.into())
}

fn err(e: Error) -> String {
    e.to_string()
}

struct Fixture {
    name: &'static str,
    poset: WeightedPoset,
    rep: Representation,
}

fn full_rep(e: &WeightedPoset, c: &EdgeFunction) -> Result<Representation, String> {
    build_rep(e, c, e.longest_chain()).map_err(err)
}

fn fixture(name: &'static str, poset: WeightedPoset) -> Result<Fixture, String> {
    let c = synthesize_edge(&poset, 0).map_err(err)?;
    let rep = full_rep(&poset, &c)?;
    Ok(Fixture { name, poset, rep })
}

fn twisted_pair() -> Result<(WeightedPoset, WeightedPoset), String> {
    let p2 = build_partition_ideal(2, None, None);
    Ok((twist(&p2, &RatFunc::a(1)).map_err(err)?, twist(&p2, &RatFunc::a(2)).map_err(err)?))
}

fn linear_pair() -> Result<(WeightedPoset, WeightedPoset), String> {
    Ok((build_linear(2, &RatFunc::one()).map_err(err)?, build_linear(2, &RatFunc::a(1)).map_err(err)?))
}

fn fixtures() -> Result<Vec<Fixture>, String> {
    let (l1, l2) = linear_pair()?;
    let (t1, t2) = twisted_pair()?;
    let booleans = build_boolean(&[RatFunc::a(1), RatFunc::a(2), RatFunc::a(3)]).map_err(err)?;
    vec![
        ("partitions(4)", build_partition_ideal(4, None, None)),
        ("partitions(6, cols<=2)", build_partition_ideal(6, None, Some(2))),
        ("linear(4,1)", build_linear(4, &RatFunc::one()).map_err(err)?),
        ("boolean(a1,a2,a3)", booleans),
        ("linear(2,1) x linear(2,a1)", product(&l1, &l2).map_err(err)?),
        ("partitions(2)(a1) x partitions(2)(a2)", product(&t1, &t2).map_err(err)?),
    ]
    .into_iter()
    .map(|(n, e)| fixture(n, e))
    .collect()
}

fn find<'a>(fx: &'a [Fixture], name: &str) -> &'a Fixture {
    fx.iter().find(|f| f.name == name).expect("known fixture")
}

fn relation_suite(fx: &[Fixture]) -> Outcome {
    let mut parts = Vec::new();
    for f in fx {
        let report = verify_relations(&f.rep);
        if let Some(o) = report.failures().next() {
            return fail(format!("{}: {} fails on level {} ({:?})", f.name, o.family, o.level, o.witness));
        }
        if report.skipped() != 0 {
            return fail(format!("{}: {} checks skipped at the boundary", f.name, report.skipped()));
        }
        parts.push(format!("{} {:?}: {} instances", f.name, f.rep.dims(), report.checked_instances()));
    }
    Ok(parts.join("; "))
}

fn calibration(fx: &[Fixture]) -> Outcome {
    for f in fx {
        let r = check_calibrated(&f.rep);
        if let Some(msg) = r.failure {
            return fail(format!("{}: {msg}", f.name));
        }
    }
    Ok(format!("{} representations", fx.len()))
}

fn edge_uniqueness() -> Outcome {
    let e = build_partition_ideal(4, None, None);
    let c1 = synthesize_edge(&e, 1).map_err(err)?;
    let c2 = synthesize_edge(&e, 2).map_err(err)?;
    let differing = c1.values().iter().zip(c2.values()).filter(|(a, b)| a != b).count();
    if differing == 0 {
        return fail("the two seeds produced identical edge functions");
    }
    let a = coboundary(&e, &c1, &c2).map_err(err)?;
    if c2.gauge(&e, &a) != c1 {
        return fail("recovered coboundary does not map one edge function onto the other");
    }
    let r1 = full_rep(&e, &c1)?;
    let r2 = full_rep(&e, &c2)?;
    let maps = gauge_intertwiner(&r1, &a);
    let report = check_intertwiner(&r1, &r2, &maps);
    match report.failure {
        Some(f) => fail(f),
        None => Ok(format!("{differing} covers differ; intertwiner exact on {} generator checks", report.checks)),
    }
}

fn closed_forms() -> Outcome {
    let p = build_partition_ideal(4, None, None);
    let b = build_boolean(&[RatFunc::a(1), RatFunc::a(2), RatFunc::a(3)]).map_err(err)?;
    let cases = [
        ("partitions(4)", &p, partition_edge_function(&p).map_err(err)?),
        ("boolean(a1,a2,a3)", &b, boolean_edge_function(&b).map_err(err)?),
    ];
    for (name, e, closed) in &cases {
        let m = verify_monodromy(e, closed);
        if !m.passed() {
            return fail(format!("{name}: closed form fails monodromy {:?}", m.failure));
        }
        let synth = synthesize_edge(e, 0).map_err(err)?;
        coboundary(e, closed, &synth).map_err(|x| format!("{name}: {x}"))?;
    }
    Ok("monodromy and gauge equivalence on partitions(4) and boolean(a1,a2,a3)".into())
}

fn linear_formulas(fx: &[Fixture]) -> Outcome {
    let f = find(fx, "linear(4,1)");
    let (e, rep) = (&f.poset, &f.rep);
    let q = RatFunc::q();
    let t = RatFunc::t();
    let one = RatFunc::one();
    let n = e.len();
    let chain = |i: usize, k: usize| -> GoodChain {
        let word = (i..i + k).map(|j| RatFunc::q_pow(j as i32)).collect();
        GoodChain::new(e, i, word).expect("linear chain")
    };
    let edge = |j: usize| rep.edge().at(e, j, &RatFunc::q_pow(j as i32)).cloned().expect("cover");
    let mut checked = 0;
    for k in 0..n {
        for i in 0..n - k {
            let level = &rep.levels()[k];
            let col = level.index_of(&chain(i, k)).expect("basis chain");
            if let Some(dp) = rep.matrix(Gen::DPlus, k) {
                let mut want = SparseVec::new();
                if i + k + 1 < n {
                    let row = rep.levels()[k + 1].index_of(&chain(i, k + 1)).expect("extended chain");
                    let coef = (q.pow(k as i32) - &t) / (&one - &t) * edge(i + k);
                    want.insert(row, coef);
                }
                if dp.column(col) != &want {
                    return fail(format!("d_+ on [{i},{}]: {:?}", i + k, dp.column(col)));
                }
                checked += 1;
            }
            if k >= 1 {
                let commutator = rep.matrix(Gen::Phi, k).ok_or("phi missing")?.scale(&(&q - &one));
                let mut want = SparseVec::new();
                if i + k + 1 < n {
                    let row = level.index_of(&chain(i + 1, k)).expect("shifted chain");
                    let coef = edge(i + k) * q.pow(k as i32 - 1) * (&one - &q) / (&one - &t);
                    want.insert(row, coef);
                }
                if commutator.column(col) != &want {
                    return fail(format!("[d_+, d_-] on [{i},{}]: {:?}", i + k, commutator.column(col)));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} columns of d_+ and [d_+, d_-]"))
}

fn restricted_partitions(fx: &[Fixture]) -> Outcome {
    let f = find(fx, "partitions(6, cols<=2)");
    let counts: Vec<usize> = (0..=f.poset.longest_chain()).map(|k| enumerate_good_chains(&f.poset, k).len()).collect();
    let nonzero: BTreeSet<usize> = counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, _)| k).collect();
    if counts != f.rep.dims() {
        return fail(format!("chain counts {counts:?} differ from dimensions {:?}", f.rep.dims()));
    }
    if nonzero != BTreeSet::from([0, 1, 2]) {
        return fail(format!("nonzero levels {nonzero:?}, counts {counts:?}"));
    }
    Ok(format!("dims {counts:?}"))
}

fn tensor_dims() -> Outcome {
    let mut parts = Vec::new();
    for (name, (e1, e2)) in [("linear", linear_pair()?), ("twisted partitions", twisted_pair()?)] {
        let r = tensor_dim_check(&e1, &e2, 3).map_err(err)?;
        let counts: Vec<usize> = r.rows.iter().map(|row| row.product_count).collect();
        if !r.passed() {
            return fail(format!("{name}: {:?}", r.rows));
        }
        parts.push(format!("{name} {counts:?}"));
    }
    Ok(parts.join("; "))
}

fn gieseker() -> Outcome {
    let (a1, a2) = (RatFunc::a(1), RatFunc::a(2));
    let (e1, e2) = twisted_pair()?;
    let c1 = closed_form_edge(&e1, &Character::monomial(Monomial::a(1, 1))).map_err(err)?;
    let c2 = closed_form_edge(&e2, &Character::monomial(Monomial::a(2, 1))).map_err(err)?;
    let p = product(&e1, &e2).map_err(err)?;
    let base1 = |_: usize, u: &RatFunc| (RatFunc::one() - &a1 / u).inv().map_err(Error::from);
    let base2 = |_: usize, u: &RatFunc| (RatFunc::one() - &a2 / u).inv().map_err(Error::from);
    let inp = ProductEdgeInput {
        e1: &e1,
        c1: &c1,
        e2: &e2,
        c2: &c2,
        psi1: &Psi::Std,
        psi2: &Psi::Std,
        base1: &base1,
        base2: &base2,
    };
    let pc = product_edge(&p, &inp).map_err(err)?;
    let a = Character::monomial(Monomial::a(1, 1)).add(&Character::monomial(Monomial::a(2, 1)));
    let closed = closed_form_edge(&p, &a).map_err(err)?;
    let gauge = coboundary(&p, &pc, &closed).map_err(err)?;
    let trivial = gauge.iter().all(|g| g == &gauge[0]);
    let rep = full_rep(&p, &pc)?;
    let report = verify_relations(&rep);
    if let Some(o) = report.failures().next() {
        return fail(format!("{} fails on level {}", o.family, o.level));
    }
    Ok(format!(
        "gauge-equivalent to the closed form ({}), relations pass on dims {:?}",
        if trivial { "equal" } else { "nontrivial gauge" },
        rep.dims()
    ))
}

fn duality(fx: &[Fixture]) -> Outcome {
    let p3 = fixture("partitions(3)", build_partition_ideal(3, None, None))?;
    let mut parts = Vec::new();
    for f in [find(fx, "linear(4,1)"), &p3] {
        let d = dual_rep(&f.rep).map_err(err)?;
        let r = check_duality(&f.rep, &d);
        if !r.passed() {
            let first = r.dual_relations.failures().chain(r.explicit_relations.failures()).next().cloned();
            return fail(format!("{}: {:?} {:?} {:?}", f.name, first, r.route_failure, r.intertwiner.failure));
        }
        parts.push(format!("{}: intertwiner exact on {} checks", f.name, r.intertwiner.checks));
    }
    Ok(parts.join("; "))
}

fn submodules() -> Outcome {
    let e = build_partition_ideal(3, None, None);
    let rep = full_rep(&e, &synthesize_edge(&e, 0).map_err(err)?)?;
    let coideals = e.all_coideals();
    for co in &coideals {
        let s = submodule_from_coideal(&rep, co).map_err(err)?;
        if !(s.v_closed && s.u_closed) {
            return fail(format!("spans of coideal {co:?} are not closed"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for trial in 0..10 {
        let n = rng.gen_range(1..=3);
        let seeds: Vec<(usize, usize)> = (0..n)
            .map(|_| {
                let k = rng.gen_range(0..=rep.top());
                (k, rng.gen_range(0..rep.levels()[k].dim()))
            })
            .collect();
        let set = submodule_closure(&rep, &seeds);
        let w = matrix_closure(&rep, &seeds);
        if !spans_equal(&w, &set) {
            return fail(format!("trial {trial}: closures differ for seeds {seeds:?}"));
        }
        let s = sandwich(&rep, &w);
        if !s.passed() {
            return fail(format!("trial {trial}: sandwich fails for seeds {seeds:?}: {s:?}"));
        }
    }
    Ok(format!("{} coideals closed; 10 random seed sets agree and satisfy the sandwich", coideals.len()))
}

fn homomorphisms() -> Outcome {
    let e3 = build_partition_ideal(3, None, None);
    let e2 = build_partition_ideal(2, None, None);
    let f = PosetMap::by_contents(&e3, &e2);
    let c3 = synthesize_edge(&e3, 0).map_err(err)?;
    let c2 = compatible_edge(&e3, &c3, &e2, &f, 0).map_err(err)?;
    let r3 = full_rep(&e3, &c3)?;
    let r2 = build_rep(&e2, &c2, r3.top()).map_err(err)?;
    let maps = hom_from_posetmap(&r3, &r2, &f, &BTreeMap::new()).map_err(err)?;
    let ir = check_intertwiner(&r3, &r2, &maps);
    if let Some(msg) = ir.failure {
        return fail(msg);
    }
    let kr = kernel_matches_coideal(&r3, &maps, &f);
    if !kr.matches {
        return fail(format!("kernel and U(complement) differ: {:?}", kr.levels));
    }
    Ok(format!("{} generator checks; (kernel, U) dims {:?}", ir.checks, kr.levels))
}

fn sym(fx: &[Fixture]) -> Outcome {
    let mut parts = Vec::new();
    for name in ["partitions(4)", "linear(4,1)"] {
        let f = find(fx, name);
        let r = check_sym_commute(&f.rep, 3).map_err(err)?;
        if let Some(msg) = r.failure {
            return fail(format!("{name}: {msg}"));
        }
        if r.nonzero == 0 {
            return fail(format!("{name}: every E_i vanishes"));
        }
        parts.push(format!("{name}: {} pairs, {} nonzero", r.pairs_checked, r.nonzero));
    }
    Ok(parts.join("; "))
}

fn expect_violation(data: &CalibratedData, want: Assumption) -> Result<(), String> {
    match reconstruct_from_data(data) {
        Err(Error::AssumptionViolated(a, _)) if a == want => Ok(()),
        Err(e) => Err(format!("expected {want} violation, got {e}")),
        Ok(_) => Err(format!("expected {want} violation, reconstruction succeeded")),
    }
}

fn reconstruction(fx: &[Fixture]) -> Outcome {
    let p3 = fixture("partitions(3)", build_partition_ideal(3, None, None))?;
    for f in [find(fx, "linear(4,1)"), find(fx, "boolean(a1,a2,a3)"), &p3] {
        let (_, report) = reconstruct_poset(&f.rep).map_err(err)?;
        if !report.passed() {
            return fail(format!("{}: {report:?}", f.name));
        }
    }
    let clean = CalibratedData::from_rep(&p3.rep);

    let mut zeroed = clean.clone();
    let dm = zeroed.levels[2].d_minus.as_mut().ok_or("no d_- on level 2")?;
    let (&r, _) = dm.column(0).iter().next().ok_or("empty d_- column")?;
    dm.set(r, 0, RatFunc::zero());
    expect_violation(&zeroed, Assumption::DMinus)?;

    let mut duplicated = clean.clone();
    let l1 = &mut duplicated.levels[1];
    l1.zeta[1] = l1.zeta[0].clone();
    l1.records[1] = l1.records[0].clone();
    expect_violation(&duplicated, Assumption::SimpleSpectrum)?;

    let mut incomplete = clean.clone();
    let dp = incomplete.levels[0].d_plus.as_mut().ok_or("no d_+ on level 0")?;
    let (&r, _) = dp.column(0).iter().next().ok_or("empty d_+ column")?;
    dp.set(r, 0, RatFunc::zero());
    expect_violation(&incomplete, Assumption::Completeness)?;

    Ok("round trips on linear(4,1), boolean(a1,a2,a3), partitions(3); corruptions raise d_minus, simple_spectrum, completeness".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fx = match fixtures() {
        Ok(fx) => fx,
        Err(e) => {
            println!("acceptance: could not build the shared representations: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<Criterion> = vec![
        ("relation suite", Box::new(|| relation_suite(&fx))),
        ("calibration", Box::new(|| calibration(&fx))),
        ("edge-function uniqueness", Box::new(edge_uniqueness)),
        ("closed forms vs synthesis", Box::new(closed_forms)),
        ("linear-poset formulas", Box::new(|| linear_formulas(&fx))),
        ("restricted partitions", Box::new(|| restricted_partitions(&fx))),
        ("tensor dimension identity", Box::new(tensor_dims)),
        ("Gieseker as tensor power", Box::new(gieseker)),
        ("duality", Box::new(|| duality(&fx))),
        ("submodules", Box::new(submodules)),
        ("homomorphisms", Box::new(homomorphisms)),
        ("Sym commutativity", Box::new(|| sym(&fx))),
        ("reconstruction", Box::new(|| reconstruction(&fx))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass ({:.1}s)",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
