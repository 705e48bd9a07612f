use bqt_field::RatFunc;
use rayon::prelude::*;

use super::{fill_y, Level, Representation, SparseMatrix, SparseVec};
use crate::chains::{apply_transposition, enumerate_good_chains, transposition_status, GoodChain, TranspositionStatus};
use crate::edge::EdgeFunction;
use crate::error::{Error, Result};
use crate::posets::{check_excellent, WeightedPoset};

/// `Π_{i=1}^{k} (x - t w_i)/(x - qt w_i)` over the weights of `chain`, leaving out
/// the first-added weight when `skip_first` is set.
fn weight_product(chain: &GoodChain, x: &RatFunc, skip_first: bool) -> RatFunc {
    let t = RatFunc::t();
    let qt = &RatFunc::q() * &t;
    let k = chain.k();
    let upto = if skip_first { k.saturating_sub(1) } else { k };
    (1..=upto)
        .map(|i| {
            let w = chain.w(i);
            (x - &(&t * w)) / (x - &(&qt * w))
        })
        .product()
}

/// `c(λ; w, x) = q^k c(λ ∪ w; x) Π_{i=1}^{k} (x - t w_i)/(x - qt w_i)`: the
/// coefficient of `[λ; w, x]` in `d_+ [λ; w]`.
pub fn extension_coefficient(e: &WeightedPoset, c: &EdgeFunction, chain: &GoodChain, x: &RatFunc) -> Option<RatFunc> {
    let cx = c.at(e, chain.end, x)?;
    Some(RatFunc::q_pow(chain.k() as i32) * cx * weight_product(chain, x, false))
}

/// `γ(λ; w) = c(λ; w_k) c(λ; w_k, w_{k-1}) ⋯ c(λ; w)`, the product of the
/// extension coefficients along the prefixes of the chain.
pub fn gamma(e: &WeightedPoset, c: &EdgeFunction, chain: &GoodChain) -> RatFunc {
    let mut prefix = GoodChain::trivial(chain.base);
    let mut acc = RatFunc::one();
    for x in &chain.word {
        acc = acc * extension_coefficient(e, c, &prefix, x).expect("prefix extends along a cover");
        prefix = GoodChain::new(e, chain.base, [prefix.word.clone(), vec![x.clone()]].concat())
            .expect("prefix of a chain is a chain");
    }
    acc
}

/// `[λ ∪ w_k; w_{k-1}, ..., w_1]`.
pub fn drop_first(e: &WeightedPoset, chain: &GoodChain) -> GoodChain {
    let base = e.step(chain.base, &chain.word[0]).expect("chain steps are covers");
    GoodChain { base, word: chain.word[1..].to_vec(), end: chain.end }
}

/// `[λ; w, x]` when it is a good chain.
pub fn extend(e: &WeightedPoset, chain: &GoodChain, x: &RatFunc) -> Option<GoodChain> {
    let end = e.step(chain.end, x)?;
    let mut word = chain.word.clone();
    word.push(x.clone());
    let g = GoodChain { base: chain.base, word, end };
    g.is_good().then_some(g)
}

fn t_column(level: &Level, e: &WeightedPoset, chain: &GoodChain, i: usize) -> SparseVec {
    let q = RatFunc::q();
    let (a, b) = (chain.w(i), chain.w(i + 1));
    let den = a - b;
    let j = level.index_of(chain).expect("basis chain");
    let mut col = SparseVec::new();
    col.insert(j, (&q - &RatFunc::one()) * b / &den);
    if transposition_status(chain, i) == Ok(TranspositionStatus::Excellent) {
        let s = apply_transposition(e, chain, i).expect("admissible transposition of a good chain");
        let r = level.index_of(&s).expect("admissible transpositions preserve good chains");
        col.insert(r, (a - &(&q * b)) / den);
    }
    col
}

fn phi_column(e: &WeightedPoset, c: &EdgeFunction, chain: &GoodChain, target: &Level) -> SparseVec {
    let q = RatFunc::q();
    let mut col = SparseVec::new();
    if chain.k() == 0 {
        let s = -(&q - &RatFunc::one()).inv().expect("q - 1 is nonzero");
        for &ci in e.up(chain.base) {
            let cv = e.cover(ci);
            let r = target.index_of(&GoodChain::trivial(cv.dst)).expect("level 0 holds every element");
            col.insert(r, &s * c.get(ci));
        }
        return col;
    }
    let qt = &q * &RatFunc::t();
    let k = chain.k();
    let lowered = drop_first(e, chain);
    let wk = chain.w(k);
    for &ci in e.up(chain.end) {
        let x = &e.cover(ci).weight;
        let Some(dst) = extend(e, &lowered, x) else { continue };
        let r = target.index_of(&dst).expect("good chains are basis vectors");
        let v = -RatFunc::q_pow(k as i32 - 1) * c.get(ci) * weight_product(chain, x, true) * x / (x - &(&qt * wk));
        col.insert(r, v);
    }
    col
}

/// Builds the representation on good chains of length at most `max_level` with
/// operators given by the edge function `c`.
pub fn build_rep(e: &WeightedPoset, c: &EdgeFunction, max_level: usize) -> Result<Representation> {
    if let Some(w) = check_excellent(e).witness {
        return Err(Error::NotExcellent(format!("[{}; {}, {}]: {}", e.label(w.base), w.x, w.y, w.detail)));
    }
    if c.values().len() != e.covers().len() {
        return Err(Error::InvalidPoset("edge function does not match the covers".into()));
    }
    let longest = e.longest_chain();
    let complete = max_level >= longest;
    let top = max_level.min(longest);
    let stored = if complete { top + 3 } else { top + 1 };
    let mut levels: Vec<Level> = (0..stored).map(|k| Level::new(enumerate_good_chains(e, k))).collect();

    for (k, lvl) in levels.iter_mut().enumerate() {
        lvl.z = (1..=k).map(|i| lvl.basis.iter().map(|ch| ch.w(i).clone()).collect()).collect();
        lvl.records = lvl.basis.iter().map(|ch| e.signed_contents(ch.end)).collect();
        let t: Vec<SparseMatrix> = (1..k)
            .map(|i| {
                let cols = lvl.basis.par_iter().map(|ch| t_column(lvl, e, ch, i)).collect();
                SparseMatrix::from_columns(lvl.dim(), cols)
            })
            .collect();
        lvl.t = t;
    }
    for k in 0..stored {
        let (lower, rest) = levels.split_at_mut(k);
        let (cur, upper) = rest.split_first_mut().expect("level exists");
        if k > 0 {
            let below = &lower[k - 1];
            let cols = cur
                .basis
                .par_iter()
                .map(|ch| {
                    let r = below.index_of(&drop_first(e, ch)).expect("lowering keeps chains good");
                    SparseVec::from([(r, RatFunc::one())])
                })
                .collect();
            cur.d_minus = Some(SparseMatrix::from_columns(below.dim(), cols));
        }
        if let Some(above) = upper.first() {
            let cols = cur
                .basis
                .par_iter()
                .map(|ch| {
                    let mut col = SparseVec::new();
                    for &ci in e.up(ch.end) {
                        let x = &e.cover(ci).weight;
                        if let Some(dst) = extend(e, ch, x) {
                            let r = above.index_of(&dst).expect("good chains are basis vectors");
                            col.insert(r, extension_coefficient(e, c, ch, x).expect("addable weight"));
                        }
                    }
                    col
                })
                .collect();
            cur.d_plus = Some(SparseMatrix::from_columns(above.dim(), cols));
        }
        let cols = cur.basis.par_iter().map(|ch| phi_column(e, c, ch, cur)).collect();
        cur.phi = Some(SparseMatrix::from_columns(cur.dim(), cols));
    }
    fill_y(&mut levels);
    let label = format!("V({})", e.name());
    Ok(Representation::from_parts(e.clone(), c.clone(), levels, top, complete, label))
}
