//! Submodules: the coordinate spans `V(I)` and `U(I)` of a coideal, the
//! combinatorial closure of a set of chains, and the linear-algebraic closure
//! under the generator matrices.

use std::collections::VecDeque;

use serde::Serialize;

use super::build::{drop_first, extend};
use super::matrix::{unit, Subspace};
use super::{Gen, Representation};
use crate::chains::{apply_transposition, transposition_status, TranspositionStatus};
use crate::error::{Error, Result};

/// Membership of basis vectors, level by level.
pub type ChainSet = Vec<Vec<bool>>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoidealSpans {
    /// Chains whose base lies in the coideal.
    pub v: ChainSet,
    /// Chains whose endpoint lies in the coideal.
    pub u: ChainSet,
    pub v_closed: bool,
    pub u_closed: bool,
}

pub fn count(set: &ChainSet) -> Vec<usize> {
    set.iter().map(|l| l.iter().filter(|&&b| b).count()).collect()
}

/// True when every generator maps the span of `set` into itself.
pub fn is_closed(rep: &Representation, set: &ChainSet) -> bool {
    for k in 0..=rep.top() {
        for g in Gen::generators_at(k) {
            let Some(kt) = g.target(k) else { continue };
            let Some(m) = rep.matrix(g, k) else { continue };
            for (j, &inside) in set[k].iter().enumerate() {
                if inside && m.column(j).keys().any(|&i| !set.get(kt).is_some_and(|s| s[i])) {
                    return false;
                }
            }
        }
    }
    true
}

/// `V(I)` and `U(I)` for a coideal `I`, with their closure checked.
pub fn submodule_from_coideal(rep: &Representation, coideal: &[bool]) -> Result<CoidealSpans> {
    let e = rep.poset();
    if coideal.len() != e.len() || !e.is_coideal(coideal) {
        return Err(Error::NotACoideal(format!("{:?}", coideal)));
    }
    let v: ChainSet = rep.levels().iter().map(|l| l.basis.iter().map(|c| coideal[c.base]).collect()).collect();
    let u: ChainSet = rep.levels().iter().map(|l| l.basis.iter().map(|c| coideal[c.end]).collect()).collect();
    let v_closed = is_closed(rep, &v);
    let u_closed = is_closed(rep, &u);
    Ok(CoidealSpans { v, u, v_closed, u_closed })
}

/// The smallest set of good chains containing `seeds` (pairs `(level, index)`)
/// that is closed under appending a weight at the end, removing the first step,
/// and admissible transpositions.
pub fn submodule_closure(rep: &Representation, seeds: &[(usize, usize)]) -> ChainSet {
    let e = rep.poset();
    let mut set: ChainSet = rep.levels().iter().map(|l| vec![false; l.dim()]).collect();
    let mut queue: VecDeque<(usize, usize)> = seeds.iter().copied().collect();
    while let Some((k, j)) = queue.pop_front() {
        if set[k][j] {
            continue;
        }
        set[k][j] = true;
        let ch = &rep.levels()[k].basis[j];
        let mut next = Vec::new();
        if k + 1 < rep.levels().len() {
            for &ci in e.up(ch.end) {
                if let Some(x) = extend(e, ch, &e.cover(ci).weight) {
                    next.push((k + 1, x));
                }
            }
        }
        if k > 0 {
            next.push((k - 1, drop_first(e, ch)));
        }
        for i in 1..k {
            if transposition_status(ch, i) == Ok(TranspositionStatus::Excellent) {
                next.push((k, apply_transposition(e, ch, i).expect("admissible")));
            }
        }
        for (kk, c) in next {
            let idx = rep.levels()[kk].index_of(&c).expect("closure stays among good chains");
            if !set[kk][idx] {
                queue.push_back((kk, idx));
            }
        }
    }
    set
}

/// The smallest subspace containing the seed basis vectors and closed under
/// the generator matrices, computed by repeated application and elimination.
pub fn matrix_closure(rep: &Representation, seeds: &[(usize, usize)]) -> Vec<Subspace> {
    let mut spaces: Vec<Subspace> = rep.levels().iter().map(|_| Subspace::new()).collect();
    let mut queue = VecDeque::new();
    for &(k, j) in seeds {
        let v = unit(j);
        if spaces[k].insert(&v) {
            queue.push_back((k, v));
        }
    }
    while let Some((k, v)) = queue.pop_front() {
        for g in Gen::generators_at(k) {
            let (Some(kt), Some(m)) = (g.target(k), rep.matrix(g, k)) else { continue };
            let w = m.apply(&v);
            if !w.is_empty() && spaces[kt].insert(&w) {
                queue.push_back((kt, w));
            }
        }
    }
    spaces
}

/// True when the subspaces are exactly the coordinate spans of `set`.
pub fn spans_equal(spaces: &[Subspace], set: &ChainSet) -> bool {
    spaces.iter().zip(set).all(|(s, members)| {
        let n = members.iter().filter(|&&b| b).count();
        s.dim() == n && members.iter().enumerate().all(|(j, &b)| !b || s.contains(&unit(j)))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichReport {
    /// `I_W`: the elements `λ` with `[λ] ∈ W`.
    pub generated_coideal: Vec<bool>,
    pub is_coideal: bool,
    pub lower_inclusion: bool,
    pub upper_inclusion: bool,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.is_coideal && self.lower_inclusion && self.upper_inclusion
    }
}

/// Checks `V(I_W) ⊆ W ⊆ U(I_W)` for a submodule `W` given level by level.
pub fn sandwich(rep: &Representation, w: &[Subspace]) -> SandwichReport {
    let e = rep.poset();
    let level0 = &rep.levels()[0];
    let mut iw = vec![false; e.len()];
    for (j, ch) in level0.basis.iter().enumerate() {
        iw[ch.base] = w[0].contains(&unit(j));
    }
    let is_coideal = e.is_coideal(&iw);
    let mut lower = true;
    let mut upper = true;
    for (k, l) in rep.levels().iter().enumerate() {
        for (j, ch) in l.basis.iter().enumerate() {
            if iw[ch.base] && !w[k].contains(&unit(j)) {
                lower = false;
            }
        }
        for v in w[k].vectors() {
            if v.keys().any(|&j| !iw[l.basis[j].end]) {
                upper = false;
            }
        }
    }
    SandwichReport { generated_coideal: iw, is_coideal, lower_inclusion: lower, upper_inclusion: upper }
}
