//! Representations on spans of good chains: the operator matrices, their exact
//! verification, and the constructions built on them (rescaling, submodules,
//! homomorphisms, duality, the symmetric-function generators, reconstruction).

mod build;
pub mod duality;
pub mod hom;
pub mod matrix;
pub mod reconstruct;
pub mod relations;
pub mod rescale;
pub mod submodule;
pub mod sym;
pub mod tensor;

use std::collections::{BTreeMap, HashMap};

use bqt_field::RatFunc;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chains::GoodChain;
use crate::edge::EdgeFunction;
use crate::posets::WeightedPoset;

pub use build::build_rep;
pub use matrix::{SparseMatrix, SparseVec, Subspace};

/// A signed multiset `Σ n_b [b]`; its power sums `Σ n_b b^m` are the eigenvalues
/// of `Δ_{p_m}`.
pub type Record = BTreeMap<RatFunc, i64>;

pub fn record_power_sum(r: &Record, m: i32) -> RatFunc {
    r.iter().map(|(b, &n)| RatFunc::from_int(n) * b.pow(m)).sum()
}

/// One graded piece `V_k` with its operators.
#[derive(Clone, Debug)]
pub struct Level {
    pub basis: Vec<GoodChain>,
    index: HashMap<GoodChain, usize>,
    /// `z[i - 1][j]` is the eigenvalue of `z_i` on basis vector `j`.
    pub z: Vec<Vec<RatFunc>>,
    /// The signed multiset whose power sums give the `Δ_{p_m}` eigenvalues.
    pub records: Vec<Record>,
    /// `t[i - 1]` is `T_i`.
    pub t: Vec<SparseMatrix>,
    /// `V_k → V_{k-1}`; absent at level 0.
    pub d_minus: Option<SparseMatrix>,
    /// `V_k → V_{k+1}`; absent at the highest stored level.
    pub d_plus: Option<SparseMatrix>,
    pub phi: Option<SparseMatrix>,
    /// `y[i - 1]` is `y_i`.
    pub y: Option<Vec<SparseMatrix>>,
}

impl Level {
    pub fn new(basis: Vec<GoodChain>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Level {
            basis,
            index,
            z: Vec::new(),
            records: Vec::new(),
            t: Vec::new(),
            d_minus: None,
            d_plus: None,
            phi: None,
            y: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, c: &GoodChain) -> Option<usize> {
        self.index.get(c).copied()
    }
}

/// A generator (or derived operator) of the algebra, acting from a given level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gen {
    Z(usize),
    T(usize),
    TInv(usize),
    DPlus,
    DMinus,
    Delta(i32),
    Phi,
    Y(usize),
}

impl Gen {
    /// The level reached when acting on level `k`, or `None` when the generator
    /// is not defined there.
    pub fn target(&self, k: usize) -> Option<usize> {
        match *self {
            Gen::Z(i) | Gen::Y(i) => (1..=k).contains(&i).then_some(k),
            Gen::T(i) | Gen::TInv(i) => (i >= 1 && i < k).then_some(k),
            Gen::DPlus => Some(k + 1),
            Gen::DMinus => k.checked_sub(1),
            Gen::Delta(m) => (m >= 1).then_some(k),
            Gen::Phi => Some(k),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Gen::Z(i) => format!("z_{i}"),
            Gen::T(i) => format!("T_{i}"),
            Gen::TInv(i) => format!("T_{i}^-1"),
            Gen::DPlus => "d_+".into(),
            Gen::DMinus => "d_-".into(),
            Gen::Delta(m) => format!("Delta_p{m}"),
            Gen::Phi => "phi".into(),
            Gen::Y(i) => format!("y_{i}"),
        }
    }

    /// The generators of the extended algebra acting on level `k`, with
    /// `Δ_{p_m}` for `m ≤ 3`.
    pub fn generators_at(k: usize) -> Vec<Gen> {
        let mut out: Vec<Gen> = (1..=k).map(Gen::Z).collect();
        out.extend((1..k).map(Gen::T));
        out.push(Gen::DPlus);
        if k > 0 {
            out.push(Gen::DMinus);
        }
        out.extend((1..=3).map(Gen::Delta));
        out
    }
}

/// A representation on good chains, stored level by level.
#[derive(Clone, Debug)]
pub struct Representation {
    poset: WeightedPoset,
    edge: EdgeFunction,
    levels: Vec<Level>,
    top: usize,
    complete: bool,
    label: String,
}

impl Representation {
    pub(crate) fn from_parts(
        poset: WeightedPoset,
        edge: EdgeFunction,
        levels: Vec<Level>,
        top: usize,
        complete: bool,
        label: String,
    ) -> Self {
        Representation { poset, edge, levels, top, complete, label }
    }

    pub fn poset(&self) -> &WeightedPoset {
        &self.poset
    }

    pub fn edge(&self) -> &EdgeFunction {
        &self.edge
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The highest level carrying basis vectors of interest.
    pub fn top(&self) -> usize {
        self.top
    }

    /// True when every level above `top` is zero, so no relation needs to be
    /// skipped at the boundary.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Stored levels; complete representations carry two extra (zero) levels
    /// above `top` so that every operator out of levels `≤ top` is available.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Option<&Level> {
        self.levels.get(k)
    }

    pub(crate) fn levels_mut(&mut self) -> &mut Vec<Level> {
        &mut self.levels
    }

    pub(crate) fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn dim(&self, k: usize) -> Option<usize> {
        self.levels.get(k).map(|l| l.dim())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels[..=self.top].iter().map(|l| l.dim()).collect()
    }

    /// The matrix of `g` on level `k`, or `None` when it is outside the stored
    /// range.
    pub fn matrix(&self, g: Gen, k: usize) -> Option<SparseMatrix> {
        let target = g.target(k)?;
        let lvl = self.levels.get(k)?;
        self.levels.get(target)?;
        match g {
            Gen::Z(i) => Some(SparseMatrix::diagonal(&lvl.z[i - 1])),
            Gen::T(i) => Some(lvl.t[i - 1].clone()),
            Gen::TInv(i) => Some(t_inverse(&lvl.t[i - 1])),
            Gen::DPlus => lvl.d_plus.clone(),
            Gen::DMinus => lvl.d_minus.clone(),
            Gen::Delta(m) => {
                let d: Vec<RatFunc> = lvl.records.iter().map(|r| record_power_sum(r, m)).collect();
                Some(SparseMatrix::diagonal(&d))
            }
            Gen::Phi => lvl.phi.clone(),
            Gen::Y(i) => lvl.y.as_ref().map(|y| y[i - 1].clone()),
        }
    }

    /// The matrix of a word `g_1 g_2 ⋯ g_n` (so `g_n` acts first) on level `k`,
    /// together with the level it lands in.
    pub fn word_matrix(&self, word: &[Gen], k: usize) -> Option<(SparseMatrix, usize)> {
        let mut level = k;
        let mut acc = SparseMatrix::identity(self.dim(k)?);
        for g in word.iter().rev() {
            let m = self.matrix(*g, level)?;
            level = g.target(level)?;
            acc = m.mul(&acc);
        }
        Some((acc, level))
    }

    /// JSON dump: per level the basis and each operator as `[row, col, value]`.
    pub fn to_json(&self) -> Value {
        let triples = |m: &SparseMatrix| -> Value {
            Value::Array(m.triples().into_iter().map(|(i, j, v)| json!([i, j, v.to_string()])).collect())
        };
        let levels: Vec<Value> = self.levels[..=self.top.min(self.levels.len() - 1)]
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let mut ops = serde_json::Map::new();
                for (i, z) in l.z.iter().enumerate() {
                    ops.insert(format!("z_{}", i + 1), triples(&SparseMatrix::diagonal(z)));
                }
                for (i, t) in l.t.iter().enumerate() {
                    ops.insert(format!("T_{}", i + 1), triples(t));
                }
                if let Some(m) = &l.d_minus {
                    ops.insert("d_-".into(), triples(m));
                }
                if let Some(m) = &l.d_plus {
                    ops.insert("d_+".into(), triples(m));
                }
                if let Some(m) = &l.phi {
                    ops.insert("phi".into(), triples(m));
                }
                json!({
                    "k": k,
                    "dim": l.dim(),
                    "basis": l.basis.iter().map(|c| c.display(&self.poset)).collect::<Vec<_>>(),
                    "operators": Value::Object(ops),
                })
            })
            .collect();
        json!({
            "representation": self.label,
            "poset": self.poset.name(),
            "top": self.top,
            "complete": self.complete,
            "dims": self.dims(),
            "edge": self.edge.to_json(&self.poset),
            "levels": levels,
        })
    }
}

/// `T⁻¹ = q⁻¹(T + q - 1)`, valid for any `T` satisfying the quadratic relation.
pub fn t_inverse(t: &SparseMatrix) -> SparseMatrix {
    let q = RatFunc::q();
    let shift = SparseMatrix::identity(t.rows()).scale(&(&q - &RatFunc::one()));
    t.add(&shift).scale(&q.inv().expect("q is nonzero"))
}

/// The `y_i` on a level from its `φ` and `T` matrices:
/// `y_i = q^{i-k} T_{i-1}⁻¹ ⋯ T_1⁻¹ φ T_{k-1} ⋯ T_i`.
pub fn y_operators(phi: &SparseMatrix, t: &[SparseMatrix], k: usize) -> Vec<SparseMatrix> {
    (1..=k)
        .map(|i| {
            let mut acc = SparseMatrix::identity(phi.cols());
            for j in i..k {
                acc = t[j - 1].mul(&acc);
            }
            acc = phi.mul(&acc);
            for j in 1..i {
                acc = t_inverse(&t[j - 1]).mul(&acc);
            }
            acc.scale(&RatFunc::q_pow(i as i32 - k as i32))
        })
        .collect()
}

/// Fills `y` on every level that has `φ`.
pub(crate) fn fill_y(levels: &mut [Level]) {
    for (k, l) in levels.iter_mut().enumerate() {
        l.y = l.phi.as_ref().map(|phi| y_operators(phi, &l.t, k));
    }
}

/// Fills `φ = (d_+ d_- - d_- d_+)/(q - 1)` wherever both products are available.
pub(crate) fn fill_phi_from_commutator(levels: &mut [Level]) {
    let inv = (RatFunc::q() - RatFunc::one()).inv().expect("q - 1 is nonzero");
    for k in 0..levels.len() {
        let Some(dp) = levels[k].d_plus.clone() else {
            levels[k].phi = None;
            continue;
        };
        let n = levels[k].dim();
        let up_down = match &levels[k].d_minus {
            Some(dm) => levels[k - 1].d_plus.as_ref().map(|dp_low| dp_low.mul(dm)),
            None => Some(SparseMatrix::zeros(n, n)),
        };
        let down_up = levels[k + 1].d_minus.as_ref().map(|dm_high| dm_high.mul(&dp));
        levels[k].phi = match (up_down, down_up) {
            (Some(a), Some(b)) => Some(a.sub(&b).scale(&inv)),
            _ => None,
        };
    }
}
