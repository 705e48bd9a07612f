//! The defining relations of the extended algebra, checked as exact matrix
//! identities level by level.

use bqt_field::RatFunc;
use rayon::prelude::*;
use serde::Serialize;

use super::{record_power_sum, Gen, Representation, SparseMatrix};

/// A linear combination of words `Σ c · g_1 ⋯ g_n`, acting from a fixed level.
pub type Combination = Vec<(RatFunc, Vec<Gen>)>;

/// `lhs = rhs` as operators out of `level`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub detail: String,
    pub lhs: Combination,
    pub rhs: Combination,
}

fn word(gens: &[Gen]) -> (RatFunc, Vec<Gen>) {
    (RatFunc::one(), gens.to_vec())
}

fn scaled(c: RatFunc, gens: &[Gen]) -> (RatFunc, Vec<Gen>) {
    (c, gens.to_vec())
}

fn eq(detail: String, lhs: Combination, rhs: Combination) -> Equation {
    Equation { detail, lhs, rhs }
}

/// Evaluates a combination; `None` when some word leaves the stored range.
pub fn eval_combination(rep: &Representation, comb: &Combination, level: usize) -> Option<Option<(SparseMatrix, usize)>> {
    let mut acc: Option<(SparseMatrix, usize)> = None;
    for (c, w) in comb {
        let (m, target) = rep.word_matrix(w, level)?;
        let m = m.scale(c);
        acc = Some(match acc {
            None => (m, target),
            Some((a, t)) => {
                debug_assert_eq!(t, target, "combination mixes target levels");
                (a.add(&m), t)
            }
        });
    }
    Some(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    BoundarySkipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub instance: String,
    pub column: String,
    pub row: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationOutcome {
    pub family: String,
    pub level: usize,
    pub instances: usize,
    pub status: Status,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub representation: String,
    pub outcomes: Vec<RelationOutcome>,
}

impl RelationReport {
    /// True when no family failed (boundary-skipped checks are not failures).
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationOutcome> {
        self.outcomes.iter().filter(|o| o.status == Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.outcomes.iter().filter(|o| o.status == Status::BoundarySkipped).count()
    }

    pub fn checked_instances(&self) -> usize {
        self.outcomes.iter().filter(|o| o.status != Status::BoundarySkipped).map(|o| o.instances).sum()
    }

    pub fn family(&self, name: &str) -> impl Iterator<Item = &RelationOutcome> {
        let name = name.to_string();
        self.outcomes.iter().filter(move |o| o.family == name)
    }
}

/// Every relation family instantiated at level `k`, as `(family, equations)`.
pub fn families_at(k: usize) -> Vec<(&'static str, Vec<Equation>)> {
    use Gen::*;
    let q = RatFunc::q;
    let one = RatFunc::one;
    let mut out: Vec<(&'static str, Vec<Equation>)> = Vec::new();

    out.push((
        "hecke_quadratic",
        (1..k)
            .map(|i| {
                eq(
                    format!("i={i}"),
                    vec![word(&[T(i), T(i)]), scaled(q() - one(), &[T(i)]), scaled(-q(), &[])],
                    vec![],
                )
            })
            .collect(),
    ));
    out.push((
        "braid",
        (1..k.saturating_sub(1))
            .map(|i| eq(format!("i={i}"), vec![word(&[T(i), T(i + 1), T(i)])], vec![word(&[T(i + 1), T(i), T(i + 1)])]))
            .collect(),
    ));
    let mut far = Vec::new();
    for i in 1..k {
        for j in i + 2..k {
            far.push(eq(format!("i={i},j={j}"), vec![word(&[T(i), T(j)])], vec![word(&[T(j), T(i)])]));
        }
    }
    out.push(("far_commutation", far));
    out.push((
        "t_z",
        (1..k)
            .map(|i| {
                eq(
                    format!("i={i}"),
                    vec![word(&[TInv(i), Z(i + 1), TInv(i)])],
                    vec![scaled(RatFunc::q_pow(-1), &[Z(i)])],
                )
            })
            .collect(),
    ));
    let mut zt = Vec::new();
    for i in 1..=k {
        for j in 1..k {
            if i != j && i != j + 1 {
                zt.push(eq(format!("i={i},j={j}"), vec![word(&[Z(i), T(j)])], vec![word(&[T(j), Z(i)])]));
            }
        }
    }
    out.push(("z_t_commute", zt));
    let mut zz = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            zz.push(eq(format!("i={i},j={j}"), vec![word(&[Z(i), Z(j)])], vec![word(&[Z(j), Z(i)])]));
        }
    }
    out.push(("z_commute", zz));
    out.push((
        "dminus2_t",
        if k >= 2 {
            vec![eq(format!("i={}", k - 1), vec![word(&[DMinus, DMinus, T(k - 1)])], vec![word(&[DMinus, DMinus])])]
        } else {
            vec![]
        },
    ));
    out.push((
        "dminus_t",
        (1..k.saturating_sub(1))
            .map(|i| eq(format!("i={i}"), vec![word(&[DMinus, T(i)])], vec![word(&[T(i), DMinus])]))
            .collect(),
    ));
    out.push(("t_dplus2", vec![eq(String::new(), vec![word(&[T(1), DPlus, DPlus])], vec![word(&[DPlus, DPlus])])]));
    out.push((
        "dplus_t",
        (2..k)
            .map(|i| eq(format!("i={i}"), vec![word(&[DPlus, T(i)])], vec![word(&[T(i + 1), DPlus])]))
            .collect(),
    ));
    // Not among the defining relations, but it holds on every chain representation
    // because d_+ shifts each weight one slot to the left with symmetric coefficients.
    out.push((
        "dplus_t1",
        if k >= 2 {
            vec![eq("i=1".into(), vec![word(&[DPlus, T(1)])], vec![word(&[T(2), DPlus])])]
        } else {
            vec![]
        },
    ));
    out.push((
        "phi_dminus",
        if k >= 2 {
            vec![eq(String::new(), vec![scaled(q(), &[Phi, DMinus])], vec![word(&[DMinus, Phi, T(k - 1)])])]
        } else {
            vec![]
        },
    ));
    out.push((
        "phi_dplus",
        if k >= 1 {
            vec![eq(String::new(), vec![word(&[T(1), Phi, DPlus])], vec![scaled(q(), &[DPlus, Phi])])]
        } else {
            vec![]
        },
    ));
    out.push((
        "z_dminus",
        (1..k)
            .map(|i| eq(format!("i={i}"), vec![word(&[Z(i), DMinus])], vec![word(&[DMinus, Z(i)])]))
            .collect(),
    ));
    out.push((
        "dplus_z",
        (1..=k)
            .map(|i| eq(format!("i={i}"), vec![word(&[DPlus, Z(i)])], vec![word(&[Z(i + 1), DPlus])]))
            .collect(),
    ));
    let qt = q() * RatFunc::t();
    out.push((
        "z1_commutator_zk",
        if k >= 1 {
            vec![eq(
                String::new(),
                vec![scaled(q(), &[Z(1), DPlus, DMinus]), scaled(-one(), &[Z(1), DMinus, DPlus])],
                vec![scaled(qt.clone(), &[DPlus, DMinus, Z(k)]), scaled(-qt, &[DMinus, DPlus, Z(k)])],
            )]
        } else {
            vec![]
        },
    ));
    let mut commutator = vec![scaled(-one(), &[DMinus, DPlus])];
    if k >= 1 {
        commutator.push(word(&[DPlus, DMinus]));
    }
    out.push(("phi_commutator", vec![eq(String::new(), vec![scaled(q() - one(), &[Phi])], commutator)]));
    let mut yy = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            yy.push(eq(format!("i={i},j={j}"), vec![word(&[Y(i), Y(j)])], vec![word(&[Y(j), Y(i)])]));
        }
    }
    out.push(("y_commute", yy));
    let mut yt = Vec::new();
    for i in 1..=k {
        for j in 1..k {
            if i != j && i != j + 1 {
                yt.push(eq(format!("i={i},j={j}"), vec![word(&[Y(i), T(j)])], vec![word(&[T(j), Y(i)])]));
            }
        }
    }
    out.push(("y_t_commute", yt));
    for (name, builder) in [
        ("delta_t", 0usize),
        ("delta_z", 1),
        ("delta_dminus", 2),
        ("delta_dplus", 3),
    ] {
        let mut eqs = Vec::new();
        for m in 1..=3i32 {
            let d = Delta(m);
            match builder {
                0 => eqs.extend(
                    (1..k).map(|i| eq(format!("m={m},i={i}"), vec![word(&[d, T(i)])], vec![word(&[T(i), d])])),
                ),
                1 => eqs.extend(
                    (1..=k).map(|i| eq(format!("m={m},i={i}"), vec![word(&[d, Z(i)])], vec![word(&[Z(i), d])])),
                ),
                2 if k >= 1 => {
                    eqs.push(eq(format!("m={m}"), vec![word(&[d, DMinus])], vec![word(&[DMinus, d])]))
                }
                3 => {
                    let mut rhs = vec![Z(1); m as usize];
                    rhs.push(DPlus);
                    eqs.push(eq(
                        format!("m={m}"),
                        vec![word(&[d, DPlus]), scaled(-one(), &[DPlus, d])],
                        vec![word(&rhs)],
                    ))
                }
                _ => {}
            }
        }
        out.push((name, eqs));
    }
    out
}

fn check_equation(rep: &Representation, e: &Equation, level: usize) -> Option<Result<(), Witness>> {
    let lhs = eval_combination(rep, &e.lhs, level)?;
    let rhs = eval_combination(rep, &e.rhs, level)?;
    let (l, r) = match (lhs, rhs) {
        (Some((l, _)), Some((r, _))) => (l, r),
        (Some((l, _)), None) => {
            let z = SparseMatrix::zeros(l.rows(), l.cols());
            (l, z)
        }
        (None, Some((r, _))) => (SparseMatrix::zeros(r.rows(), r.cols()), r),
        (None, None) => return Some(Ok(())),
    };
    let target = target_level(e, level);
    match l.first_difference(&r) {
        None => Some(Ok(())),
        Some((i, j, res)) => Some(Err(Witness {
            instance: e.detail.clone(),
            column: describe(rep, level, j),
            row: target.map(|t| describe(rep, t, i)).unwrap_or_else(|| i.to_string()),
            residual: res.to_string(),
        })),
    }
}

fn target_level(e: &Equation, level: usize) -> Option<usize> {
    let (_, w) = e.lhs.first().or(e.rhs.first())?;
    w.iter().rev().try_fold(level, |l, g| g.target(l))
}

fn describe(rep: &Representation, level: usize, j: usize) -> String {
    rep.level(level)
        .and_then(|l| l.basis.get(j))
        .map(|c| c.display(rep.poset()))
        .unwrap_or_else(|| format!("#{j}"))
}

/// Multiset bookkeeping for `Δ`: every nonzero entry of `T_i` and `d_-` joins
/// vectors with equal records, and every nonzero entry of `d_+` adds exactly the
/// `z_1`-eigenvalue of its target.
fn record_bookkeeping(rep: &Representation, k: usize) -> Option<Result<(), Witness>> {
    let lvl = rep.level(k)?;
    let mut checks: Vec<(&str, &SparseMatrix, usize, bool)> = lvl.t.iter().map(|t| ("T", t, k, false)).collect();
    if let Some(m) = &lvl.d_minus {
        checks.push(("d_-", m, k - 1, false));
    }
    match &lvl.d_plus {
        Some(m) => checks.push(("d_+", m, k + 1, true)),
        None if !rep.is_complete() => return None,
        None => {}
    }
    for (name, m, target, raises) in checks {
        let tl = rep.level(target)?;
        for (i, j, _) in m.triples() {
            let mut expected = lvl.records[j].clone();
            if raises {
                *expected.entry(tl.z[0][i].clone()).or_insert(0) += 1;
                expected.retain(|_, n| *n != 0);
            }
            if tl.records[i] != expected {
                let diff = record_power_sum(&tl.records[i], 1) - record_power_sum(&expected, 1);
                return Some(Err(Witness {
                    instance: name.to_string(),
                    column: describe(rep, k, j),
                    row: describe(rep, target, i),
                    residual: diff.to_string(),
                }));
            }
        }
    }
    Some(Ok(()))
}

/// Checks every relation family at every level up to the representation's top.
pub fn verify_relations(rep: &Representation) -> RelationReport {
    let mut jobs: Vec<(String, usize, Vec<Equation>)> = Vec::new();
    for k in 0..=rep.top() {
        for (name, eqs) in families_at(k) {
            if !eqs.is_empty() {
                jobs.push((name.to_string(), k, eqs));
            }
        }
    }
    let mut outcomes: Vec<RelationOutcome> = jobs
        .par_iter()
        .map(|(family, k, eqs)| {
            let mut status = Status::Pass;
            let mut witness = None;
            for e in eqs {
                match check_equation(rep, e, *k) {
                    None => status = Status::BoundarySkipped,
                    Some(Ok(())) => {}
                    Some(Err(w)) => {
                        status = Status::Fail;
                        witness = Some(w);
                        break;
                    }
                }
            }
            RelationOutcome { family: family.clone(), level: *k, instances: eqs.len(), status, witness }
        })
        .collect();
    for k in 0..=rep.top() {
        let (status, witness) = match record_bookkeeping(rep, k) {
            None => (Status::BoundarySkipped, None),
            Some(Ok(())) => (Status::Pass, None),
            Some(Err(w)) => (Status::Fail, Some(w)),
        };
        outcomes.push(RelationOutcome { family: "delta_records".into(), level: k, instances: 1, status, witness });
    }
    RelationReport { representation: rep.label().to_string(), outcomes }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub levels_checked: usize,
    pub failure: Option<String>,
}

impl CalibrationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that on every level the joint eigenvalues of the `z_i` and `Δ`
/// operators separate the basis, and that every `z`-eigenvalue is nonzero.
pub fn check_calibrated(rep: &Representation) -> CalibrationReport {
    for k in 0..=rep.top() {
        let lvl = rep.level(k).expect("stored level");
        let mut seen = std::collections::HashMap::new();
        for j in 0..lvl.dim() {
            let zs: Vec<RatFunc> = lvl.z.iter().map(|z| z[j].clone()).collect();
            if let Some(zero) = zs.iter().position(|z| z.is_zero()) {
                return CalibrationReport {
                    levels_checked: k + 1,
                    failure: Some(format!("z_{} vanishes on {}", zero + 1, describe(rep, k, j))),
                };
            }
            if let Some(other) = seen.insert((zs, lvl.records[j].clone()), j) {
                return CalibrationReport {
                    levels_checked: k + 1,
                    failure: Some(format!(
                        "{} and {} share a joint eigenvalue",
                        describe(rep, k, other),
                        describe(rep, k, j)
                    )),
                };
            }
        }
    }
    CalibrationReport { levels_checked: rep.top() + 1, failure: None }
}
