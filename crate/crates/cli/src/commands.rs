use std::collections::BTreeMap;

use bqt_core::chains::{enumerate_good_chains, GoodChain};
use bqt_core::edge::{
    boolean_edge_function, closed_form_edge, coboundary, product_edge, synthesize_edge, unit_base, verify_monodromy,
    MonodromyReport, ProductEdgeInput, Psi,
};
use bqt_core::posets::{check_excellent, check_general_position, product as poset_product, PosetMap};
use bqt_core::rep::duality::{check_duality, dual_rep};
use bqt_core::rep::hom::{check_intertwiner, compatible_edge, hom_from_posetmap, kernel_matches_coideal};
use bqt_core::rep::reconstruct::{isomorphic, reconstruct_from_data, reconstruct_poset, CalibratedData};
use bqt_core::rep::relations::{check_calibrated, verify_relations, RelationReport};
use bqt_core::rep::rescale::gauge_intertwiner;
use bqt_core::rep::submodule::{matrix_closure, sandwich, spans_equal, submodule_closure, submodule_from_coideal};
use bqt_core::rep::sym::check_sym_commute;
use bqt_core::rep::tensor::tensor_dim_check;
use bqt_core::rep::{Gen, SparseVec};
use bqt_core::{build_rep, EdgeFunction, Error, Representation, WeightedPoset};
use bqt_field::RatFunc;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::poset_expr::{self, Built, ClosedForm};
use crate::{
    Common, Corruption, EdgeArgs, Failure, HomArgs, Outcome, ProductArgs, ReconstructArgs, SymArgs, VerifyArgs,
};

struct Report {
    fields: Map<String, Value>,
    lines: Vec<String>,
    passed: bool,
}

impl Report {
    fn new(command: &str, e: &WeightedPoset) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        fields.insert("poset".into(), json!(e.name()));
        Report { fields, lines: vec![format!("{command} on {}", e.name())], passed: true }
    }

    fn set(&mut self, key: &str, v: impl serde::Serialize) {
        self.fields.insert(key.into(), serde_json::to_value(v).expect("reports serialize"));
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, ok: bool) {
        self.passed &= ok;
    }

    fn finish(mut self) -> Outcome {
        self.fields.insert("passed".into(), json!(self.passed));
        self.lines.push(if self.passed { "result: pass".into() } else { "result: FAIL".into() });
        Outcome { report: Value::Object(self.fields), lines: self.lines, passed: self.passed }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn built(c: &Common) -> Result<Built, Failure> {
    poset_expr::build(&c.poset.poset, &c.poset)
}

fn closed_edge(b: &Built) -> Result<EdgeFunction, Failure> {
    match &b.closed {
        Some(ClosedForm::Lambda(a)) => Ok(closed_form_edge(&b.poset, a)?),
        Some(ClosedForm::Boolean) => Ok(boolean_edge_function(&b.poset)?),
        None => Err(Failure::Usage(format!("no closed-form edge function is known for {}", b.poset.name()))),
    }
}

/// The edge function selected by the flags, and a description of where it came from.
fn edge_for(b: &Built, c: &Common) -> Result<(EdgeFunction, String), Failure> {
    let e = &b.poset;
    let (mut edge, mut source) = if c.closed_form {
        (closed_edge(b)?, "closed form".to_string())
    } else {
        (synthesize_edge(e, c.seed)?, format!("synthesized from seed {}", c.seed))
    };
    if let Some(i) = c.corrupt_edge {
        if i >= e.covers().len() {
            return Err(Failure::Usage(format!("--corrupt-edge {i}: the poset has {} covers", e.covers().len())));
        }
        let v = edge.get(i) * &RatFunc::q();
        edge.set(i, v);
        let cv = e.cover(i);
        source += &format!(", cover {i} ({} -> {}) multiplied by q", e.label(cv.src), e.label(cv.dst));
    }
    Ok((edge, source))
}

fn rep_for(e: &WeightedPoset, edge: &EdgeFunction, c: &Common) -> Result<Representation, Failure> {
    Ok(build_rep(e, edge, c.levels.unwrap_or_else(|| e.longest_chain()))?)
}

fn monodromy_lines(r: &mut Report, m: &MonodromyReport) {
    match &m.failure {
        None => r.line(format!("monodromy: pass ({} squares)", m.squares_checked)),
        Some(f) => r.line(format!(
            "monodromy: FAIL on the square at {} with weights {}, {}: ratio {} instead of {}",
            f.base, f.x, f.y, f.ratio, f.expected
        )),
    }
}

fn relation_lines(r: &mut Report, name: &str, rel: &RelationReport) {
    r.line(format!(
        "{name}: {} ({} instances checked, {} boundary checks skipped)",
        verdict(rel.passed()),
        rel.checked_instances(),
        rel.skipped()
    ));
    for o in rel.failures() {
        match &o.witness {
            Some(w) => {
                let instance = if w.instance.is_empty() { String::new() } else { format!(" ({})", w.instance) };
                r.line(format!(
                    "  {} on level {}{instance}: row {} of column {}, residual {}",
                    o.family, o.level, w.row, w.column, w.residual
                ))
            }
            None => r.line(format!("  {} on level {}", o.family, o.level)),
        }
    }
}

fn strings(xs: &[RatFunc]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn poset(c: &Common) -> Result<Outcome, Failure> {
    let b = built(c)?;
    let e = &b.poset;
    let mut r = Report::new("poset", e);
    let ex = check_excellent(e);
    r.set("definition", e.to_json());
    r.set("longest_chain", e.longest_chain());
    r.set("excellence", &ex);
    r.line(format!("{} elements, {} covers, longest chain {}", e.len(), e.covers().len(), e.longest_chain()));
    for cv in e.covers() {
        r.line(format!("  {} -> {}  weight {}", e.label(cv.src), e.label(cv.dst), cv.weight));
    }
    match &ex.witness {
        None => r.line("excellent: yes"),
        Some(w) => r.line(format!("excellent: no, clause {} at [{}; {}, {}]: {}", w.clause, e.label(w.base), w.x, w.y, w.detail)),
    }
    r.check(ex.is_excellent());
    Ok(r.finish())
}

pub fn chains(c: &Common) -> Result<Outcome, Failure> {
    let b = built(c)?;
    let e = &b.poset;
    let mut r = Report::new("chains", e);
    let top = c.levels.unwrap_or_else(|| e.longest_chain());
    let mut levels = Vec::new();
    for k in 0..=top {
        let chains: Vec<String> = enumerate_good_chains(e, k).iter().map(|ch| ch.display(e)).collect();
        r.line(format!("level {k}: {} good chains", chains.len()));
        for ch in &chains {
            r.line(format!("  {ch}"));
        }
        levels.push(json!({ "k": k, "count": chains.len(), "chains": chains }));
    }
    r.set("levels", levels);
    Ok(r.finish())
}

pub fn edge(a: &EdgeArgs) -> Result<Outcome, Failure> {
    let c = &a.common;
    let b = built(c)?;
    let e = &b.poset;
    let (edge, source) = edge_for(&b, c)?;
    let mut r = Report::new("edge", e);
    r.set("source", &source);
    r.set("edge", edge.to_json(e));
    r.line(format!("edge function: {source}"));
    for (i, cv) in e.covers().iter().enumerate() {
        r.line(format!("  c({}; {}) = {}", e.label(cv.src), cv.weight, edge.get(i)));
    }
    if a.check_monodromy {
        let m = verify_monodromy(e, &edge);
        monodromy_lines(&mut r, &m);
        r.check(m.passed());
        r.set("monodromy", &m);
    }
    if let Some(seed) = a.compare_seed {
        let other = synthesize_edge(e, seed)?;
        match coboundary(e, &edge, &other) {
            Ok(g) => {
                let r1 = rep_for(e, &edge, c)?;
                let r2 = rep_for(e, &other, c)?;
                let ir = check_intertwiner(&r1, &r2, &gauge_intertwiner(&r1, &g));
                r.line(format!("coboundary to seed {seed}: found; intertwiner {} on {} checks", verdict(ir.passed()), ir.checks));
                r.check(ir.passed());
                r.set("comparison", json!({ "seed": seed, "coboundary": strings(&g), "intertwiner": ir }));
            }
            Err(err) => {
                r.line(format!("coboundary to seed {seed}: none ({err})"));
                r.check(false);
                r.set("comparison", json!({ "seed": seed, "error": err.to_string() }));
            }
        }
    }
    Ok(r.finish())
}

pub fn rep(c: &Common) -> Result<Outcome, Failure> {
    let b = built(c)?;
    let e = &b.poset;
    let (edge, source) = edge_for(&b, c)?;
    let rep = rep_for(e, &edge, c)?;
    let mut r = Report::new("rep", e);
    r.line(format!("edge function: {source}"));
    r.line(format!("dimensions by level: {:?}", rep.dims()));
    r.set("source", &source);
    r.set("representation", rep.to_json());
    Ok(r.finish())
}

/// The linear-poset coefficients of `d_+` and of `d_+ d_- - d_- d_+`, compared
/// column by column. Returns the number of columns checked.
fn linear_formulas(rep: &Representation, x0: &RatFunc) -> Result<usize, String> {
    let e = rep.poset();
    let (q, t, one) = (RatFunc::q(), RatFunc::t(), RatFunc::one());
    let n = e.len();
    let weight = |j: usize| x0 * &RatFunc::q_pow(j as i32);
    let chain = |i: usize, k: usize| GoodChain::new(e, i, (i..i + k).map(weight).collect());
    let edge = |j: usize| rep.edge().at(e, j, &weight(j)).cloned();
    let mut checked = 0;
    for k in 0..=rep.top().min(n - 1) {
        let level = &rep.levels()[k];
        for i in 0..n - k {
            let col = chain(i, k).and_then(|ch| level.index_of(&ch)).ok_or(format!("chain [{i}; {k} steps] missing"))?;
            if let Some(dp) = rep.matrix(Gen::DPlus, k).filter(|_| k < rep.top()) {
                let mut want = SparseVec::new();
                if i + k + 1 < n {
                    let row = chain(i, k + 1).and_then(|ch| rep.levels()[k + 1].index_of(&ch)).ok_or("extended chain missing")?;
                    let c = edge(i + k).ok_or("missing cover")?;
                    want.insert(row, (q.pow(k as i32) - &t) / (&one - &t) * c);
                }
                if dp.column(col) != &want {
                    return Err(format!("d_+ on the chain from {i} with {k} steps"));
                }
                checked += 1;
            }
            if k >= 1 {
                let comm = rep.matrix(Gen::Phi, k).ok_or("phi missing")?.scale(&(&q - &one));
                let mut want = SparseVec::new();
                if i + k + 1 < n {
                    let row = chain(i + 1, k).and_then(|ch| level.index_of(&ch)).ok_or("shifted chain missing")?;
                    let c = edge(i + k).ok_or("missing cover")?;
                    want.insert(row, c * q.pow(k as i32 - 1) * (&one - &q) / (&one - &t));
                }
                if comm.column(col) != &want {
                    return Err(format!("d_+d_- - d_-d_+ on the chain from {i} with {k} steps"));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Every coideal's spans, then `trials` random seed sets whose combinatorial and
/// matrix closures are compared and sandwiched.
fn submodule_checks(rep: &Representation, trials: usize, seed: u64) -> Result<Value, String> {
    let e = rep.poset();
    let coideals = e.all_coideals();
    for co in &coideals {
        let s = submodule_from_coideal(rep, co).map_err(|x| x.to_string())?;
        if !(s.v_closed && s.u_closed) {
            return Err(format!("the spans of the coideal {co:?} are not closed"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels: Vec<usize> = (0..=rep.top()).filter(|&k| rep.levels()[k].dim() > 0).collect();
    for trial in 0..trials {
        let n = rng.gen_range(1..=3);
        let seeds: Vec<(usize, usize)> = (0..n)
            .map(|_| {
                let k = levels[rng.gen_range(0..levels.len())];
                (k, rng.gen_range(0..rep.levels()[k].dim()))
            })
            .collect();
        let set = submodule_closure(rep, &seeds);
        let w = matrix_closure(rep, &seeds);
        if !spans_equal(&w, &set) {
            return Err(format!("trial {trial}: the closures of {seeds:?} differ"));
        }
        if !sandwich(rep, &w).passed() {
            return Err(format!("trial {trial}: the closure of {seeds:?} is not sandwiched"));
        }
    }
    Ok(json!({ "coideals": coideals.len(), "closure_trials": trials }))
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let c = &a.common;
    let b = built(c)?;
    let e = &b.poset;
    let (edge, source) = edge_for(&b, c)?;
    let mut r = Report::new("verify", e);
    r.set("source", &source);
    r.line(format!("edge function: {source}"));

    let m = verify_monodromy(e, &edge);
    monodromy_lines(&mut r, &m);
    r.check(m.passed());
    r.set("monodromy", &m);

    let rep = rep_for(e, &edge, c)?;
    r.set("dims", rep.dims());
    r.line(format!("dimensions by level: {:?}", rep.dims()));
    let rel = verify_relations(&rep);
    relation_lines(&mut r, "relations", &rel);
    r.check(rel.passed());
    r.set("relations", &rel);

    let cal = check_calibrated(&rep);
    r.line(format!("calibration: {}", verdict(cal.passed())));
    r.check(cal.passed());
    r.set("calibration", &cal);

    if let Some(x0) = &b.linear_x0 {
        match linear_formulas(&rep, x0) {
            Ok(n) => {
                r.line(format!("linear coefficients: pass ({n} columns)"));
                r.set("linear_formulas", json!({ "columns": n, "passed": true }));
            }
            Err(msg) => {
                r.line(format!("linear coefficients: FAIL at {msg}"));
                r.check(false);
                r.set("linear_formulas", json!({ "passed": false, "failure": msg }));
            }
        }
    }
    if let Some(trials) = a.submodules {
        match submodule_checks(&rep, trials, c.seed) {
            Ok(v) => {
                r.line(format!("submodules: pass ({} coideals, {trials} closures)", v["coideals"]));
                r.set("submodules", v);
            }
            Err(msg) => {
                r.line(format!("submodules: FAIL, {msg}"));
                r.check(false);
                r.set("submodules", json!({ "passed": false, "failure": msg }));
            }
        }
    }
    Ok(r.finish())
}

pub fn dual(c: &Common) -> Result<Outcome, Failure> {
    let b = built(c)?;
    let e = &b.poset;
    let (edge, source) = edge_for(&b, c)?;
    let rep = rep_for(e, &edge, c)?;
    let d = dual_rep(&rep)?;
    let report = check_duality(&rep, &d);
    let mut r = Report::new("dual", e);
    r.line(format!("edge function: {source}"));
    r.line(format!("dual poset {} with dimensions {:?}", d.dual_poset.name(), d.rep.dims()));
    relation_lines(&mut r, "relations on the dual poset", &report.dual_relations);
    relation_lines(&mut r, "relations of the dual operators", &report.explicit_relations);
    r.line(format!("dual operators agree with the anti-involution: {}", verdict(report.routes_agree)));
    r.line(format!("isomorphism: {} on {} checks", verdict(report.intertwiner.passed()), report.intertwiner.checks));
    r.check(report.passed());
    r.set("source", &source);
    r.set("dual_poset", d.dual_poset.to_json());
    r.set("dual_edge", d.dual_edge.to_json(&d.dual_poset));
    r.set("duality", &report);
    Ok(r.finish())
}

fn base_fn(expr: Option<RatFunc>) -> impl Fn(usize, &RatFunc) -> bqt_core::Result<RatFunc> {
    move |root, u| match &expr {
        Some(f) => Psi::Expr(f.clone()).eval(&RatFunc::one(), u),
        None => unit_base(root, u),
    }
}

pub fn product(a: &ProductArgs) -> Result<Outcome, Failure> {
    let c = &a.common;
    let params = c.poset.params;
    let b1 = built(c)?;
    let b2 = poset_expr::parse_poset(&a.with, &c.poset)?;
    let (e1, e2) = (&b1.poset, &b2.poset);
    let gp = check_general_position(e1, e2);
    if !gp.ok() {
        let mut r = Report::new("product", e1);
        r.line(format!("not in general position with {}: {}", e2.name(), gp.witness.clone().unwrap_or_default()));
        r.check(false);
        r.set("general_position", &gp);
        return Ok(r.finish());
    }
    let p = poset_product(e1, e2)?;
    let mut r = Report::new("product", &p);
    r.set("general_position", &gp);
    r.line(format!("{} elements, {} covers", p.len(), p.covers().len()));

    let tensor = tensor_dim_check(e1, e2, a.tensor_levels)?;
    let counts: Vec<usize> = tensor.rows.iter().map(|row| row.product_count).collect();
    r.line(format!("tensor dimensions up to level {}: {} {counts:?}", a.tensor_levels, verdict(tensor.passed())));
    r.check(tensor.passed());
    r.set("tensor", &tensor);

    let factor_edge = |b: &Built| -> Result<EdgeFunction, Failure> {
        if c.closed_form {
            closed_edge(b)
        } else {
            Ok(synthesize_edge(&b.poset, c.seed)?)
        }
    };
    let (c1, c2) = (factor_edge(&b1)?, factor_edge(&b2)?);
    let psi = |s: &Option<String>| -> Result<Psi, Failure> {
        Ok(match s {
            Some(s) => Psi::Expr(poset_expr::expr(s, params)?),
            None => Psi::Std,
        })
    };
    let (psi1, psi2) = (psi(&a.psi1)?, psi(&a.psi2)?);
    let base = |s: &Option<String>| s.as_deref().map(|s| poset_expr::expr(s, params)).transpose();
    let base1 = base_fn(base(&a.base1)?);
    let base2 = base_fn(base(&a.base2)?);
    let inp = ProductEdgeInput { e1, c1: &c1, e2, c2: &c2, psi1: &psi1, psi2: &psi2, base1: &base1, base2: &base2 };
    let pc = product_edge(&p, &inp)?;
    r.set("edge", pc.to_json(&p));

    let m = verify_monodromy(&p, &pc);
    monodromy_lines(&mut r, &m);
    r.check(m.passed());
    r.set("monodromy", &m);

    let closed = match (&b1.closed, &b2.closed) {
        (Some(ClosedForm::Lambda(x)), Some(ClosedForm::Lambda(y))) => Some(x.add(y)),
        _ => None,
    };
    if let Some(ch) = closed {
        let cf = closed_form_edge(&p, &ch)?;
        match coboundary(&p, &pc, &cf) {
            Ok(g) => {
                let equal = pc == cf;
                r.line(format!("closed form: gauge equivalent{}", if equal { ", equal" } else { "" }));
                r.set("closed_form", json!({ "gauge_equivalent": true, "equal": equal, "coboundary": strings(&g) }));
            }
            Err(err) => {
                r.line(format!("closed form: not gauge equivalent ({err})"));
                r.check(false);
                r.set("closed_form", json!({ "gauge_equivalent": false, "error": err.to_string() }));
            }
        }
    }

    let rep = build_rep(&p, &pc, p.longest_chain())?;
    r.line(format!("dimensions by level: {:?}", rep.dims()));
    let rel = verify_relations(&rep);
    relation_lines(&mut r, "relations", &rel);
    r.check(rel.passed());
    r.set("relations", &rel);
    Ok(r.finish())
}

pub fn hom(a: &HomArgs) -> Result<Outcome, Failure> {
    let c = &a.common;
    let b1 = built(c)?;
    let b2 = poset_expr::parse_poset(&a.target, &c.poset)?;
    let (e1, e2) = (&b1.poset, &b2.poset);
    let f = PosetMap::by_contents(e1, e2);
    f.check(e1, e2)?;
    let (c1, source) = edge_for(&b1, c)?;
    let c2 = compatible_edge(e1, &c1, e2, &f, c.seed)?;
    let r1 = rep_for(e1, &c1, c)?;
    let r2 = build_rep(e2, &c2, r1.top())?;
    let maps = hom_from_posetmap(&r1, &r2, &f, &BTreeMap::new())?;
    let ir = check_intertwiner(&r1, &r2, &maps);
    let kr = kernel_matches_coideal(&r1, &maps, &f);
    let mut r = Report::new("hom", e1);
    let images: BTreeMap<String, Option<String>> =
        (0..e1.len()).map(|i| (e1.label(i).to_string(), f.map[i].map(|j| e2.label(j).to_string()))).collect();
    r.line(format!("edge function: {source}"));
    r.line(format!("map to {} by contents: {} of {} elements survive", e2.name(), images.values().flatten().count(), e1.len()));
    r.line(format!("intertwines the generators: {} on {} checks", verdict(ir.passed()), ir.checks));
    r.line(format!("kernel equals the span of chains ending outside the image: {} {:?}", verdict(kr.matches), kr.levels));
    r.check(ir.passed() && kr.matches);
    r.set("target", e2.name());
    r.set("map", images);
    r.set("target_edge", c2.to_json(e2));
    r.set("intertwiner", &ir);
    r.set("kernel", &kr);
    Ok(r.finish())
}

fn corrupt(data: &mut CalibratedData, how: Corruption) -> Result<String, Failure> {
    let none = |what: &str| Failure::Usage(format!("the representation has no {what} to corrupt"));
    match how {
        Corruption::DMinus => {
            for (k, l) in data.levels.iter_mut().enumerate().skip(1) {
                let Some(m) = l.d_minus.as_mut() else { continue };
                if let Some((j, i)) = (0..m.cols()).find_map(|j| m.column(j).keys().next().map(|&i| (j, i))) {
                    m.set(i, j, RatFunc::zero());
                    return Ok(format!("zeroed d_- entry ({i}, {j}) on level {k}"));
                }
            }
            Err(none("nonzero d_- entry"))
        }
        Corruption::Spectrum => {
            let (k, l) = data.levels.iter_mut().enumerate().skip(1).find(|(_, l)| l.zeta.len() >= 2).ok_or_else(|| none("level of dimension 2"))?;
            l.zeta[1] = l.zeta[0].clone();
            l.records[1] = l.records[0].clone();
            Ok(format!("copied the spectrum of vector 0 onto vector 1 on level {k}"))
        }
        Corruption::Completeness => {
            for (k, l) in data.levels.iter_mut().enumerate() {
                let Some(m) = l.d_plus.as_mut() else { continue };
                if let Some((j, i)) = (0..m.cols()).find_map(|j| m.column(j).keys().next().map(|&i| (j, i))) {
                    m.set(i, j, RatFunc::zero());
                    return Ok(format!("zeroed d_+ entry ({i}, {j}) on level {k}"));
                }
            }
            Err(none("nonzero d_+ entry"))
        }
    }
}

pub fn reconstruct(a: &ReconstructArgs) -> Result<Outcome, Failure> {
    let c = &a.common;
    let b = built(c)?;
    let e = &b.poset;
    let (edge, source) = edge_for(&b, c)?;
    let rep = rep_for(e, &edge, c)?;
    let mut r = Report::new("reconstruct", e);
    r.line(format!("edge function: {source}"));
    r.set("source", &source);
    match a.corrupt {
        None => {
            let (rec, report) = reconstruct_poset(&rep)?;
            r.line(format!("recovered {} elements and {} covers", report.elements, report.covers));
            r.line(format!("isomorphic to the input: {}", verdict(report.isomorphic)));
            r.line(format!("rebuilding reproduces the matrices: {}", verdict(report.round_trip)));
            if let Some(d) = &report.detail {
                r.line(format!("  {d}"));
            }
            r.check(report.passed());
            r.set("recovered", rec.poset.to_json());
            r.set("report", &report);
        }
        Some(how) => {
            let mut data = CalibratedData::from_rep(&rep);
            let what = corrupt(&mut data, how)?;
            r.line(format!("corruption: {what}"));
            r.set("corruption", &what);
            match reconstruct_from_data(&data) {
                Err(Error::AssumptionViolated(kind, detail)) => {
                    r.line(format!("assumption violated: {kind} ({detail})"));
                    r.check(false);
                    r.set("assumption_violated", json!({ "assumption": kind.to_string(), "detail": detail }));
                }
                Err(err) => return Err(err.into()),
                Ok(rec) => {
                    let iso = isomorphic(&rec.poset, e);
                    r.line(format!("reconstruction succeeded; isomorphic to the input: {}", verdict(iso)));
                    r.check(iso);
                    r.set("recovered", rec.poset.to_json());
                }
            }
        }
    }
    Ok(r.finish())
}

pub fn sym(a: &SymArgs) -> Result<Outcome, Failure> {
    let c = &a.common;
    let b = built(c)?;
    let e = &b.poset;
    let (edge, source) = edge_for(&b, c)?;
    let rep = rep_for(e, &edge, c)?;
    let report = check_sym_commute(&rep, a.i_max)?;
    let mut r = Report::new("sym", e);
    r.line(format!("edge function: {source}"));
    r.line(format!(
        "E_1..E_{} commute: {} ({} pairs, {} nonzero operators)",
        a.i_max,
        verdict(report.passed()),
        report.pairs_checked,
        report.nonzero
    ));
    if let Some(f) = &report.failure {
        r.line(format!("  {f}"));
    }
    r.check(report.passed());
    r.set("sym", &report);
    Ok(r.finish())
}
