//! Module maps between representations: exact intertwiner checks and the
//! homomorphisms induced by poset maps.

use std::collections::BTreeMap;

use bqt_field::RatFunc;
use serde::Serialize;

use super::matrix::rank;
use super::{Gen, Representation, SparseMatrix, SparseVec};
use crate::chains::GoodChain;
use crate::edge::{synthesize_edge_with, EdgeFunction};
use crate::error::{Error, Result};
use crate::posets::{PosetMap, WeightedPoset};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntertwinerReport {
    pub checks: usize,
    pub skipped: usize,
    pub failure: Option<String>,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `f_{k'} · g₁ = g₂ · f_k` for every generator `g: V_k → V_{k'}` with
/// `k ≤ top`, where `maps[k]: V₁_k → V₂_k`.
pub fn check_intertwiner(rep1: &Representation, rep2: &Representation, maps: &[SparseMatrix]) -> IntertwinerReport {
    let mut checks = 0;
    let mut skipped = 0;
    let top = rep1.top().max(rep2.top());
    for k in 0..=top {
        let mut gens = Gen::generators_at(k);
        gens.push(Gen::Phi);
        for g in gens {
            let Some(kt) = g.target(k) else { continue };
            let (Some(m1), Some(m2), Some(fk), Some(fkt)) =
                (rep1.matrix(g, k), rep2.matrix(g, k), maps.get(k), maps.get(kt))
            else {
                skipped += 1;
                continue;
            };
            checks += 1;
            let lhs = fkt.mul(&m1);
            let rhs = m2.mul(fk);
            if let Some((i, j, res)) = lhs.first_difference(&rhs) {
                return IntertwinerReport {
                    checks,
                    skipped,
                    failure: Some(format!("{} on level {k}: entry ({i},{j}) off by {res}", g.name())),
                };
            }
        }
    }
    IntertwinerReport { checks, skipped, failure: None }
}

/// An edge function on `target` agreeing with `c` along every cover whose image
/// is a cover: `c'(F(μ); x) = c(μ; x)`. The remaining covers are filled in by
/// synthesis with the prescribed values held fixed.
pub fn compatible_edge(
    e: &WeightedPoset,
    c: &EdgeFunction,
    target: &WeightedPoset,
    f: &PosetMap,
    seed: u64,
) -> Result<EdgeFunction> {
    let mut prescribed: BTreeMap<usize, RatFunc> = BTreeMap::new();
    for (ci, cv) in e.covers().iter().enumerate() {
        let (Some(a), Some(_)) = (f.map[cv.src], f.map[cv.dst]) else { continue };
        let tc = target
            .cover_with(a, &cv.weight)
            .ok_or_else(|| Error::MapConditionViolated(4, format!("no cover out of {} with weight {}", target.label(a), cv.weight)))?;
        let v = c.get(ci).clone();
        if let Some(old) = prescribed.insert(tc, v.clone()) {
            if old != v {
                return Err(Error::IncompatibleEdgeFunctions(format!(
                    "two covers map onto {} -> {} with values {old} and {v}",
                    target.label(target.cover(tc).src),
                    target.label(target.cover(tc).dst)
                )));
            }
        }
    }
    synthesize_edge_with(target, seed, &prescribed)
}

/// The level-wise matrices of `[λ; w] ↦ α_λ [F(λ); w]` (zero when the endpoint
/// maps to `0`). `alpha` defaults to 1 on elements it does not mention.
pub fn hom_from_posetmap(
    rep1: &Representation,
    rep2: &Representation,
    f: &PosetMap,
    alpha: &BTreeMap<usize, RatFunc>,
) -> Result<Vec<SparseMatrix>> {
    let (e1, e2) = (rep1.poset(), rep2.poset());
    f.check(e1, e2)?;
    for (ci, cv) in e1.covers().iter().enumerate() {
        let (Some(a), Some(_)) = (f.map[cv.src], f.map[cv.dst]) else { continue };
        if e2.cover_with(a, &cv.weight).map(|tc| rep2.edge().get(tc)) != Some(rep1.edge().get(ci)) {
            return Err(Error::IncompatibleEdgeFunctions(format!(
                "edge values differ on the cover {} -> {}",
                e1.label(cv.src),
                e1.label(cv.dst)
            )));
        }
    }
    let n = rep1.levels().len().min(rep2.levels().len());
    let mut maps = Vec::with_capacity(n);
    for k in 0..n {
        let (l1, l2) = (&rep1.levels()[k], &rep2.levels()[k]);
        let cols: Vec<SparseVec> = l1
            .basis
            .iter()
            .map(|ch| {
                let mut col = SparseVec::new();
                if let (Some(b), Some(end)) = (f.map[ch.base], f.map[ch.end]) {
                    let image = GoodChain { base: b, word: ch.word.clone(), end };
                    let r = l2.index_of(&image).expect("poset maps send good chains to good chains");
                    col.insert(r, alpha.get(&ch.base).cloned().unwrap_or_else(RatFunc::one));
                }
                col
            })
            .collect();
        maps.push(SparseMatrix::from_columns(l2.dim(), cols));
    }
    Ok(maps)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    pub levels: Vec<(usize, usize)>,
    pub matches: bool,
}

/// Compares the kernel of each level map with `U(F⁻¹(0))`, the span of chains
/// whose endpoint maps to `0`: the columns of those chains vanish and the rank
/// equals the number of remaining chains.
pub fn kernel_matches_coideal(rep1: &Representation, maps: &[SparseMatrix], f: &PosetMap) -> KernelReport {
    let mut levels = Vec::new();
    let mut matches = true;
    for (l, m) in rep1.levels()[..=rep1.top()].iter().zip(maps) {
        let in_u: Vec<bool> = l.basis.iter().map(|ch| f.map[ch.end].is_none()).collect();
        let u_dim = in_u.iter().filter(|&&b| b).count();
        let kernel_dim = l.dim() - rank(m);
        let zero_cols = in_u.iter().enumerate().all(|(j, &u)| !u || m.column(j).is_empty());
        matches &= zero_cols && kernel_dim == u_dim;
        levels.push((kernel_dim, u_dim));
    }
    KernelReport { levels, matches }
}
