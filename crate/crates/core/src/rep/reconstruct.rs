//! Recovering a weighted poset and edge function from the spectral data of a
//! calibrated representation.
//!
//! Basis vectors are grouped by `p_m(v) - Σ_i ζ_i(v)^m`; the class of `d_- v`
//! covers the class of `v` with weight `ζ_k(v)`. After rescaling so that every
//! `d_-` coefficient is 1, the level-0 `d_+` coefficients are the edge values.
//! Complete reducibility of each level over the affine Hecke algebra is assumed
//! and not checked.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use bqt_field::RatFunc;
use serde::Serialize;

use super::{build_rep, Gen, Record, Representation, SparseMatrix};
use crate::chains::GoodChain;
use crate::edge::EdgeFunction;
use crate::error::{Assumption, Error, Result};
use crate::posets::{Cover, Element, WeightedPoset};

/// The data a reconstruction reads off a calibrated representation: per level,
/// the `z`-eigenvalues and `Δ`-records of each basis vector and the matrices of
/// `d_-` and `d_+`.
#[derive(Clone, Debug)]
pub struct CalibratedData {
    pub levels: Vec<LevelData>,
}

#[derive(Clone, Debug)]
pub struct LevelData {
    /// `zeta[j][i - 1]` is `ζ_i` of basis vector `j`.
    pub zeta: Vec<Vec<RatFunc>>,
    pub records: Vec<Record>,
    pub d_minus: Option<SparseMatrix>,
    pub d_plus: Option<SparseMatrix>,
}

impl CalibratedData {
    /// Levels `0..=top` of `rep`.
    pub fn from_rep(rep: &Representation) -> Self {
        let levels = rep.levels()[..=rep.top()]
            .iter()
            .enumerate()
            .map(|(k, l)| LevelData {
                zeta: (0..l.dim()).map(|j| (0..k).map(|i| l.z[i][j].clone()).collect()).collect(),
                records: l.records.clone(),
                d_minus: l.d_minus.clone(),
                d_plus: if k < rep.top() { l.d_plus.clone() } else { None },
            })
            .collect();
        CalibratedData { levels }
    }
}

/// A basis vector's element class: its record minus its `z`-eigenvalues.
pub fn class_of(record: &Record, zeta: &[RatFunc]) -> Record {
    let mut out = record.clone();
    for z in zeta {
        *out.entry(z.clone()).or_insert(0) -= 1;
    }
    out.retain(|_, n| *n != 0);
    out
}

fn violated(a: Assumption, msg: String) -> Error {
    Error::AssumptionViolated(a, msg)
}

/// The unique nonzero entry of a `d_-` column.
fn single_entry(dm: &SparseMatrix, j: usize, k: usize) -> Result<(usize, RatFunc)> {
    let col = dm.column(j);
    match col.len() {
        0 => Err(violated(Assumption::DMinus, format!("d_- kills basis vector {j} on level {k}"))),
        1 => {
            let (&r, v) = col.iter().next().expect("one entry");
            Ok((r, v.clone()))
        }
        n => Err(violated(
            Assumption::DMinus,
            format!("d_- sends basis vector {j} on level {k} to {n} eigenvectors"),
        )),
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub poset: WeightedPoset,
    pub edge: EdgeFunction,
    /// `chains[k][j]` is the good chain matching input basis vector `j` on level `k`.
    pub chains: Vec<Vec<GoodChain>>,
    /// `scales[k][j]` rescales input vector `j` so every `d_-` coefficient is 1.
    pub scales: Vec<Vec<RatFunc>>,
}

/// Rebuilds the poset and edge function, checking simple spectrum, the `d_-`
/// assumption and completeness in that order.
pub fn reconstruct_from_data(data: &CalibratedData) -> Result<Reconstruction> {
    for (k, l) in data.levels.iter().enumerate() {
        let mut seen = HashMap::new();
        for (j, (z, r)) in l.zeta.iter().zip(&l.records).enumerate() {
            if z.iter().any(|x| x.is_zero()) {
                return Err(violated(Assumption::SimpleSpectrum, format!("zero z-eigenvalue on level {k}, vector {j}")));
            }
            if let Some(i) = seen.insert((z, r), j) {
                return Err(violated(
                    Assumption::SimpleSpectrum,
                    format!("vectors {i} and {j} on level {k} share their joint eigenvalues"),
                ));
            }
        }
    }

    let classes: Vec<Vec<Record>> =
        data.levels.iter().map(|l| l.zeta.iter().zip(&l.records).map(|(z, r)| class_of(r, z)).collect()).collect();

    // d_- targets and coefficients, checked against the spectral data.
    let mut down: Vec<Vec<(usize, RatFunc)>> = vec![Vec::new()];
    for k in 1..data.levels.len() {
        let l = &data.levels[k];
        let below = &data.levels[k - 1];
        let dm = l.d_minus.as_ref().ok_or_else(|| violated(Assumption::DMinus, format!("no d_- on level {k}")))?;
        let mut col = Vec::with_capacity(l.zeta.len());
        for j in 0..l.zeta.len() {
            let (r, a) = single_entry(dm, j, k)?;
            if below.zeta[r][..] != l.zeta[j][..k - 1] || below.records[r] != l.records[j] {
                return Err(violated(
                    Assumption::DMinus,
                    format!("d_- of vector {j} on level {k} lands on a vector with different eigenvalues"),
                ));
            }
            col.push((r, a));
        }
        down.push(col);
    }

    let level0 = data.levels.first().ok_or_else(|| violated(Assumption::Completeness, "no level 0".into()))?;
    let element_of: HashMap<&Record, usize> = classes[0].iter().enumerate().map(|(i, c)| (c, i)).collect();
    let lookup = |c: &Record, k: usize, j: usize| -> Result<usize> {
        element_of.get(c).copied().ok_or_else(|| {
            violated(Assumption::Completeness, format!("class of vector {j} on level {k} has no level-0 vector"))
        })
    };

    // Covers, with the level-1 vector witnessing each.
    let mut witness: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut weights: BTreeMap<(usize, usize), RatFunc> = BTreeMap::new();
    for k in 1..data.levels.len() {
        for (j, (r, _)) in down[k].iter().enumerate() {
            let src = lookup(&classes[k][j], k, j)?;
            let dst = lookup(&classes[k - 1][*r], k - 1, *r)?;
            let x = data.levels[k].zeta[j][k - 1].clone();
            if let Some(old) = weights.insert((src, dst), x.clone()) {
                if old != x {
                    return Err(violated(Assumption::DMinus, format!("two weights {old} and {x} on one cover")));
                }
            }
            if k == 1 {
                witness.insert((src, dst), j);
            }
        }
    }
    for (&(src, dst), x) in &weights {
        if !witness.contains_key(&(src, dst)) {
            return Err(violated(
                Assumption::Completeness,
                format!("the chain [e{src}; {x}] is missing from level 1"),
            ));
        }
    }

    let mut scales: Vec<Vec<RatFunc>> = vec![vec![RatFunc::one(); level0.zeta.len()]];
    for k in 1..data.levels.len() {
        let s = down[k].iter().map(|(r, a)| &scales[k - 1][*r] / a).collect();
        scales.push(s);
    }

    let mut values = Vec::with_capacity(weights.len());
    for &(src, dst) in weights.keys() {
        let j = witness[&(src, dst)];
        let m = level0
            .d_plus
            .as_ref()
            .map(|dp| dp.get(j, src))
            .unwrap_or_else(RatFunc::zero);
        if m.is_zero() {
            return Err(violated(
                Assumption::Completeness,
                format!("d_+ coefficient of vector {j} on level 1 in d_+ of vector {src} vanishes"),
            ));
        }
        values.push(m / &scales[1][j]);
    }

    let dualized = classes[0].iter().any(|c| c.values().any(|&n| n < 0));
    let mut elements = Vec::with_capacity(classes[0].len());
    for (i, c) in classes[0].iter().enumerate() {
        let mut contents = Vec::new();
        for (b, &n) in c {
            if (n < 0) != dualized {
                return Err(violated(Assumption::Completeness, format!("class of e{i} mixes signs")));
            }
            let b = if dualized { b.theta() } else { b.clone() };
            contents.extend(std::iter::repeat_n(b, n.unsigned_abs() as usize));
        }
        let size = contents.len() as i64;
        elements.push(Element { label: format!("e{i}"), grade: if dualized { -size } else { size }, contents });
    }
    let covers: Vec<Cover> =
        weights.iter().map(|(&(src, dst), x)| Cover { src, dst, weight: x.clone() }).collect();
    let poset = WeightedPoset::new("reconstructed", elements, covers, dualized)?;
    let edge = EdgeFunction::new(values)?;

    let chains = (0..data.levels.len())
        .map(|k| {
            (0..data.levels[k].zeta.len())
                .map(|j| {
                    let mut word: Vec<RatFunc> = data.levels[k].zeta[j].clone();
                    word.reverse();
                    let base = element_of[&classes[k][j]];
                    GoodChain::new(&poset, base, word).expect("weights follow covers")
                })
                .collect()
        })
        .collect();
    Ok(Reconstruction { poset, edge, chains, scales })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReconstructionReport {
    pub elements: usize,
    pub covers: usize,
    /// The recovered poset matches the source poset, weights and contents included.
    pub isomorphic: bool,
    /// Rebuilding from the recovered data reproduces the input up to the
    /// diagonal rescaling that makes `d_-` coefficients 1.
    pub round_trip: bool,
    pub detail: Option<String>,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.isomorphic && self.round_trip
    }
}

/// Matches elements by their signed content records and compares the covers.
pub fn isomorphic(a: &WeightedPoset, b: &WeightedPoset) -> bool {
    if a.len() != b.len() || a.covers().len() != b.covers().len() {
        return false;
    }
    let index: HashMap<BTreeMap<RatFunc, i64>, usize> = (0..b.len()).map(|i| (b.signed_contents(i), i)).collect();
    let Some(map) = (0..a.len()).map(|i| index.get(&a.signed_contents(i)).copied()).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let covers_b: BTreeSet<(usize, usize, &RatFunc)> = b.covers().iter().map(|c| (c.src, c.dst, &c.weight)).collect();
    a.covers().iter().all(|c| covers_b.contains(&(map[c.src], map[c.dst], &c.weight)))
}

fn compare_round_trip(rep: &Representation, rec: &Reconstruction) -> Result<Option<String>> {
    let rebuilt = build_rep(&rec.poset, &rec.edge, rep.top())?;
    for k in 0..=rep.top() {
        if rebuilt.dim(k) != rep.dim(k) {
            return Ok(Some(format!("level {k} has dimension {:?} after rebuilding", rebuilt.dim(k))));
        }
    }
    let perms: Vec<Vec<usize>> = (0..=rep.top())
        .map(|k| rec.chains[k].iter().map(|c| rebuilt.levels()[k].index_of(c).expect("rebuilt basis")).collect())
        .collect();
    for k in 0..=rep.top() {
        for g in Gen::generators_at(k) {
            let Some(kt) = g.target(k).filter(|&kt| kt <= rep.top()) else { continue };
            let (Some(m), Some(r)) = (rep.matrix(g, k), rebuilt.matrix(g, k)) else { continue };
            let m = m.change_basis(&rec.scales[kt], &rec.scales[k]);
            let mut moved = SparseMatrix::zeros(r.rows(), r.cols());
            for (i, j, v) in m.triples() {
                moved.set(perms[kt][i], perms[k][j], v.clone());
            }
            if let Some((i, j, res)) = moved.first_difference(&r) {
                return Ok(Some(format!("{} on level {k}: entry ({i},{j}) off by {res}", g.name())));
            }
        }
    }
    Ok(None)
}

/// Reconstructs the poset of `rep` and checks it against the source.
pub fn reconstruct_poset(rep: &Representation) -> Result<(Reconstruction, ReconstructionReport)> {
    let rec = reconstruct_from_data(&CalibratedData::from_rep(rep))?;
    let iso = isomorphic(&rec.poset, rep.poset());
    let detail = compare_round_trip(rep, &rec)?;
    let report = ReconstructionReport {
        elements: rec.poset.len(),
        covers: rec.poset.covers().len(),
        isomorphic: iso,
        round_trip: detail.is_none(),
        detail,
    };
    Ok((rec, report))
}
