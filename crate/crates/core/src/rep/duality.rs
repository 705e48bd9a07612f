//! Duality: the θ-linear anti-involution `Θ` on words in the generators, the
//! dual representation `V(E)^*` written in the dual basis, the representation of
//! the dual poset, and the diagonal isomorphism between the two.

use std::collections::BTreeMap;

use bqt_field::RatFunc;
use serde::Serialize;

use super::build::{build_rep, extension_coefficient, gamma};
use super::relations::{verify_relations, Combination, RelationReport};
use super::hom::{check_intertwiner, IntertwinerReport};
use super::{fill_phi_from_commutator, fill_y, Gen, Level, Record, Representation, SparseMatrix, SparseVec};
use crate::chains::{apply_transposition, transposition_status, GoodChain, TranspositionStatus};
use crate::edge::EdgeFunction;
use crate::error::{Error, Result};
use crate::posets::{dual, WeightedPoset};

fn v_pow(e: i32) -> RatFunc {
    RatFunc::v().pow(e)
}

fn product_of(parts: Vec<Combination>) -> Combination {
    let mut acc: Combination = vec![(RatFunc::one(), Vec::new())];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for (c1, w1) in &acc {
            for (c2, w2) in &part {
                next.push((c1 * c2, [w1.clone(), w2.clone()].concat()));
            }
        }
        acc = next;
    }
    acc
}

/// Collects equal words and drops zero coefficients.
pub fn simplify(comb: Combination) -> Combination {
    let mut map: BTreeMap<Vec<Gen>, RatFunc> = BTreeMap::new();
    for (c, w) in comb {
        let e = map.entry(w).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
}

/// The domain level of each letter of `word` (letters act right to left), and
/// the level the whole word lands in.
fn letter_levels(word: &[Gen], level: usize) -> Result<(Vec<usize>, usize)> {
    let mut levels = vec![0; word.len()];
    let mut cur = level;
    for (pos, g) in word.iter().enumerate().rev() {
        levels[pos] = cur;
        cur = g.target(cur).ok_or_else(|| Error::IllTypedWord(format!("{} on level {cur}", g.name())))?;
    }
    Ok((levels, cur))
}

/// Rewrites `φ` and `y_i` in terms of `d_±` and `T_i^{±1}`.
fn expand_letter(g: Gen, d: usize) -> Combination {
    match g {
        Gen::Phi => {
            let inv = (RatFunc::q() - RatFunc::one()).inv().expect("q - 1 is nonzero");
            let mut out = vec![(-&inv, vec![Gen::DMinus, Gen::DPlus])];
            if d > 0 {
                out.push((inv, vec![Gen::DPlus, Gen::DMinus]));
            }
            out
        }
        Gen::Y(i) => {
            let mut w: Vec<Gen> = (1..i).rev().map(Gen::TInv).collect();
            let tail: Vec<Gen> = (i..d).rev().map(Gen::T).collect();
            let parts = vec![
                vec![(RatFunc::q_pow(i as i32 - d as i32), std::mem::take(&mut w))],
                expand_letter(Gen::Phi, d),
                vec![(RatFunc::one(), tail)],
            ];
            product_of(parts)
        }
        other => vec![(RatFunc::one(), vec![other])],
    }
}

/// `Θ` of a single letter acting on level `d`.
fn theta_letter(g: Gen, d: usize) -> Combination {
    match g {
        Gen::Z(i) => vec![(RatFunc::one(), vec![Gen::Z(d + 1 - i)])],
        Gen::T(i) => vec![(RatFunc::one(), vec![Gen::TInv(d - i)])],
        Gen::TInv(i) => vec![(RatFunc::one(), vec![Gen::T(d - i)])],
        Gen::DPlus => vec![(v_pow(-(d as i32 + 1)), vec![Gen::DMinus])],
        Gen::DMinus => vec![(v_pow(-(d as i32)), vec![Gen::DPlus])],
        Gen::Delta(m) => {
            let mut out = vec![(RatFunc::from_int(-1), vec![Gen::Delta(m)])];
            out.extend((1..=d).map(|i| (RatFunc::one(), vec![Gen::Z(i); m as usize])));
            out
        }
        Gen::Phi | Gen::Y(_) => unreachable!("expanded before applying theta"),
    }
}

/// Expands `φ` and `y_i` in every word of a combination acting on `level`.
pub fn expand(comb: &Combination, level: usize) -> Result<Combination> {
    let mut out = Vec::new();
    for (c, w) in comb {
        let (levels, _) = letter_levels(w, level)?;
        let parts: Vec<Combination> = w.iter().zip(&levels).map(|(g, &d)| expand_letter(*g, d)).collect();
        out.extend(product_of(parts).into_iter().map(|(c2, w2)| (c * &c2, w2)));
    }
    Ok(simplify(out))
}

/// Applies the anti-involution to a combination of words acting on `level`.
/// Returns the image and the level it acts on (the codomain of the input).
pub fn theta_on_words(comb: &Combination, level: usize) -> Result<(Combination, usize)> {
    let expanded = expand(comb, level)?;
    let mut out = Vec::new();
    let mut out_level = None;
    for (c, w) in &expanded {
        let (levels, end) = letter_levels(w, level)?;
        if *out_level.get_or_insert(end) != end {
            return Err(Error::IllTypedWord("words land in different levels".into()));
        }
        let parts: Vec<Combination> = w.iter().zip(&levels).rev().map(|(g, &d)| theta_letter(*g, d)).collect();
        out.extend(product_of(parts).into_iter().map(|(c2, w2)| (c.theta() * c2, w2)));
    }
    let out = simplify(out);
    Ok((out, out_level.unwrap_or(level)))
}

/// The dual poset with the edge function `c^∨(μ^∨; θ(x)) = θ(c(λ; x))`.
pub fn dual_edge(e: &WeightedPoset, c: &EdgeFunction) -> Result<(WeightedPoset, EdgeFunction)> {
    let d = dual(e);
    let values = d
        .covers()
        .iter()
        .map(|cv| {
            let x = cv.weight.theta();
            let ci = e.cover_with(cv.dst, &x).expect("dual covers reverse covers");
            c.get(ci).theta()
        })
        .collect();
    Ok((d.clone(), EdgeFunction::new(values)?))
}

/// `Θ(g)` evaluated on `rep`, θ applied entrywise and transposed: the matrix of
/// `g` on the dual basis of `V^*`, from the definition `(b·f)(v) = f(Θ(b)v)`.
pub fn dual_matrix_via_theta(rep: &Representation, g: Gen, k: usize) -> Option<Result<SparseMatrix>> {
    let kt = g.target(k)?;
    let (img, lvl) = match theta_on_words(&vec![(RatFunc::one(), vec![g])], k) {
        Ok(x) => x,
        Err(e) => return Some(Err(e)),
    };
    debug_assert_eq!(lvl, kt);
    let mut acc = SparseMatrix::zeros(rep.dim(k)?, rep.dim(kt)?);
    for (c, w) in &img {
        let (m, _) = rep.word_matrix(w, kt)?;
        acc = acc.add(&m.scale(c));
    }
    Some(Ok(acc.map(|x| x.theta()).transpose()))
}

fn chain_theta_record(e: &WeightedPoset, ch: &GoodChain) -> Record {
    let mut rec = Record::new();
    for (b, n) in e.signed_contents(ch.end) {
        *rec.entry(b.theta()).or_insert(0) -= n;
    }
    for w in &ch.word {
        *rec.entry(w.theta()).or_insert(0) += 1;
    }
    rec.retain(|_, n| *n != 0);
    rec
}

/// `V(E)^*` in the dual basis `[λ; w]^*`, written with the explicit dual operators:
/// `z_i ↦ θ(w_{k-i+1})`, `T_i` through `w_{k-i}, w_{k-i+1}`, `d_+` carrying
/// `q^{(k+1)/2}` and `d_-` carrying `q^{k/2} θ(c(λ; w))`.
pub fn dual_operators(rep: &Representation) -> Representation {
    let e = rep.poset();
    let c = rep.edge();
    let q = RatFunc::q();
    let n = rep.levels().len();
    let mut levels: Vec<Level> = rep.levels().iter().map(|l| Level::new(l.basis.clone())).collect();
    for k in 0..n {
        let (lower, rest) = levels.split_at_mut(k);
        let (cur, upper) = rest.split_first_mut().expect("level exists");
        cur.z = (1..=k).map(|i| cur.basis.iter().map(|ch| ch.w(k - i + 1).theta()).collect()).collect();
        cur.records = cur.basis.iter().map(|ch| chain_theta_record(e, ch)).collect();
        cur.t = (1..k)
            .map(|i| {
                let cols = cur
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(j, ch)| {
                        let a = ch.w(k - i + 1).theta();
                        let b = ch.w(k - i).theta();
                        let mut col = SparseVec::from([(j, (&q - &RatFunc::one()) * &b / (&a - &b))]);
                        if transposition_status(ch, k - i) == Ok(TranspositionStatus::Excellent) {
                            let s = apply_transposition(e, ch, k - i).expect("admissible");
                            col.insert(cur.index_of(&s).expect("good chain"), (&q * &a - &b) / (&a - &b));
                        }
                        col
                    })
                    .collect();
                SparseMatrix::from_columns(cur.dim(), cols)
            })
            .collect();
        if let Some(above) = upper.first() {
            let s = v_pow(k as i32 + 1);
            let cols = cur
                .basis
                .iter()
                .map(|ch| {
                    let mut col = SparseVec::new();
                    for &ci in e.down(ch.base) {
                        let cv = e.cover(ci);
                        let g = GoodChain { base: cv.src, word: [vec![cv.weight.clone()], ch.word.clone()].concat(), end: ch.end };
                        if let Some(r) = above.index_of(&g) {
                            col.insert(r, s.clone());
                        }
                    }
                    col
                })
                .collect();
            cur.d_plus = Some(SparseMatrix::from_columns(above.dim(), cols));
        }
        if k > 0 {
            let below = &lower[k - 1];
            let s = v_pow(k as i32);
            let cols = cur
                .basis
                .iter()
                .map(|ch| {
                    let prefix = GoodChain::new(e, ch.base, ch.word[..k - 1].to_vec()).expect("prefix");
                    let coeff = extension_coefficient(e, c, &prefix, ch.w(1)).expect("last step is a cover");
                    let r = below.index_of(&prefix).expect("prefixes of good chains are good");
                    SparseVec::from([(r, &s * &coeff.theta())])
                })
                .collect();
            cur.d_minus = Some(SparseMatrix::from_columns(below.dim(), cols));
        }
    }
    fill_phi_from_commutator(&mut levels);
    fill_y(&mut levels);
    let label = format!("{}^*", rep.label());
    Representation::from_parts(e.clone(), c.clone(), levels, rep.top(), rep.is_complete(), label)
}

/// The chain of `E` matching a chain of `E^∨`: same elements in reverse, with
/// θ applied to the weights.
pub fn undual_chain(dual_chain: &GoodChain) -> GoodChain {
    GoodChain {
        base: dual_chain.end,
        word: dual_chain.word.iter().rev().map(|w| w.theta()).collect(),
        end: dual_chain.base,
    }
}

#[derive(Clone, Debug)]
pub struct DualRep {
    pub dual_poset: WeightedPoset,
    pub dual_edge: EdgeFunction,
    /// `V(E^∨)` built from the dual edge function.
    pub rep: Representation,
    /// `V(E)^*` with the explicit dual operators.
    pub explicit: Representation,
    /// `Φ_k : V(E^∨)_k → V(E)^*_k`,
    /// `[λ^∨; θ(w_1), ..., θ(w_k)] ↦ q^{k(k+1)/4 + |λ^∨|} γ^∨(λ^∨; θ(w_1), ..., θ(w_k))^{-1} [μ; w_k, ..., w_1]^*`.
    /// The factor `q^{|λ^∨|}` is a gauge in the base grade: without it `d_-` is
    /// intertwined only up to a factor `q`.
    pub intertwiner: Vec<SparseMatrix>,
}

/// Builds both sides of the duality and the diagonal map between them.
pub fn dual_rep(rep: &Representation) -> Result<DualRep> {
    let (dp, dc) = dual_edge(rep.poset(), rep.edge())?;
    let max_level = if rep.is_complete() { rep.poset().longest_chain() } else { rep.top() };
    let drep = build_rep(&dp, &dc, max_level)?;
    let explicit = dual_operators(rep);
    let intertwiner = drep
        .levels()
        .iter()
        .zip(explicit.levels())
        .enumerate()
        .map(|(k, (dl, el))| {
            let cols = dl
                .basis
                .iter()
                .map(|ch| {
                    let target = undual_chain(ch);
                    let r = el.index_of(&target).expect("dual chains correspond");
                    let s = v_pow((k * (k + 1) / 2) as i32) * RatFunc::q_pow(dp.grade(ch.base) as i32)
                        / gamma(&dp, &dc, ch);
                    SparseVec::from([(r, s)])
                })
                .collect();
            SparseMatrix::from_columns(el.dim(), cols)
        })
        .collect();
    Ok(DualRep { dual_poset: dp, dual_edge: dc, rep: drep, explicit, intertwiner })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub dual_relations: RelationReport,
    pub explicit_relations: RelationReport,
    /// The explicit dual operators agree with `θ`-transposed `Θ(g)` matrices.
    pub routes_agree: bool,
    pub route_failure: Option<String>,
    pub intertwiner: IntertwinerReport,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.dual_relations.passed() && self.explicit_relations.passed() && self.routes_agree && self.intertwiner.passed()
    }
}

/// Compares the explicit dual operators with the definition through `Θ`.
pub fn compare_dual_routes(rep: &Representation, explicit: &Representation) -> Option<String> {
    for k in 0..=rep.top() {
        for g in Gen::generators_at(k) {
            let (Some(m1), Some(m2)) = (explicit.matrix(g, k), dual_matrix_via_theta(rep, g, k)) else { continue };
            match m2 {
                Err(e) => return Some(e.to_string()),
                Ok(m2) => {
                    if let Some((i, j, res)) = m1.first_difference(&m2) {
                        return Some(format!("{} on level {k}: entry ({i},{j}) off by {res}", g.name()));
                    }
                }
            }
        }
    }
    None
}

pub fn check_duality(rep: &Representation, d: &DualRep) -> DualityReport {
    let route_failure = compare_dual_routes(rep, &d.explicit);
    DualityReport {
        dual_relations: verify_relations(&d.rep),
        explicit_relations: verify_relations(&d.explicit),
        routes_agree: route_failure.is_none(),
        route_failure,
        intertwiner: check_intertwiner(&d.rep, &d.explicit, &d.intertwiner),
    }
}
