//! Saturated chains `[λ; w_k, ..., w_1]` and the good chains that index the basis.

use std::fmt;

use bqt_field::RatFunc;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::posets::WeightedPoset;

/// A chain `λ → λ∪w_k → ... → λ∪w_k∪...∪w_1`. The word is stored in the order the
/// weights are added, `(w_k, ..., w_1)`, so `w(i)` is `word[k - i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoodChain {
    pub base: usize,
    pub word: Vec<RatFunc>,
    pub end: usize,
}

impl GoodChain {
    pub fn trivial(base: usize) -> Self {
        GoodChain { base, word: Vec::new(), end: base }
    }

    /// Follows `word` from `base`; `None` when some step is not a cover.
    pub fn new(e: &WeightedPoset, base: usize, word: Vec<RatFunc>) -> Option<Self> {
        let end = e.walk(base, &word)?;
        Some(GoodChain { base, word, end })
    }

    pub fn k(&self) -> usize {
        self.word.len()
    }

    /// The weight `w_i` for `1 ≤ i ≤ k`.
    pub fn w(&self, i: usize) -> &RatFunc {
        &self.word[self.k() - i]
    }

    /// The elements visited, from the base to the endpoint.
    pub fn path(&self, e: &WeightedPoset) -> Vec<usize> {
        let mut out = vec![self.base];
        let mut at = self.base;
        for x in &self.word {
            at = e.step(at, x).expect("chain steps are covers");
            out.push(at);
        }
        out
    }

    pub fn is_good(&self) -> bool {
        is_good_word(&self.word)
    }

    pub fn display(&self, e: &WeightedPoset) -> String {
        let ws: Vec<String> = self.word.iter().map(|w| w.to_string()).collect();
        if ws.is_empty() {
            format!("[{}]", e.label(self.base))
        } else {
            format!("[{}; {}]", e.label(self.base), ws.join(", "))
        }
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson { base: self.base, word: self.word.iter().map(|w| w.to_string()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainJson {
    pub base: usize,
    pub word: Vec<String>,
}

impl fmt::Display for GoodChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.word.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}; {}]", self.base, ws.join(", "))
    }
}

/// `w_i ≠ t·w_j` for all `i, j`.
pub fn is_good_word(word: &[RatFunc]) -> bool {
    let t = RatFunc::t();
    word.iter().all(|a| word.iter().all(|b| *a != &t * b))
}

fn extends_goodly(word: &[RatFunc], x: &RatFunc, t: &RatFunc) -> bool {
    word.iter().all(|w| *x != t * w && *w != t * x)
}

fn sort_chains(chains: &mut Vec<GoodChain>) {
    let mut keyed: Vec<((usize, Vec<String>), GoodChain)> = chains
        .drain(..)
        .map(|c| ((c.base, c.word.iter().map(|w| w.to_string()).collect()), c))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    chains.extend(keyed.into_iter().map(|(_, c)| c));
}

fn dfs(e: &WeightedPoset, at: usize, k: usize, good_only: bool, word: &mut Vec<RatFunc>, base: usize, out: &mut Vec<GoodChain>) {
    if word.len() == k {
        out.push(GoodChain { base, word: word.clone(), end: at });
        return;
    }
    let t = RatFunc::t();
    for &ci in e.up(at) {
        let c = e.cover(ci);
        if good_only && !extends_goodly(word, &c.weight, &t) {
            continue;
        }
        word.push(c.weight.clone());
        dfs(e, c.dst, k, good_only, word, base, out);
        word.pop();
    }
}

/// All good chains with `k` steps, ordered by base index and then by the canonical
/// strings of the word.
pub fn enumerate_good_chains(e: &WeightedPoset, k: usize) -> Vec<GoodChain> {
    let mut out = Vec::new();
    for base in 0..e.len() {
        dfs(e, base, k, true, &mut Vec::new(), base, &mut out);
    }
    sort_chains(&mut out);
    out
}

/// All saturated chains with `k` steps, good or not, in the same order.
pub fn enumerate_chains(e: &WeightedPoset, k: usize) -> Vec<GoodChain> {
    let mut out = Vec::new();
    for base in 0..e.len() {
        dfs(e, base, k, false, &mut Vec::new(), base, &mut out);
    }
    sort_chains(&mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TranspositionStatus {
    NonAdmissible,
    Excellent,
}

/// Whether swapping `w_i` and `w_{i+1}` is admissible on a good chain.
pub fn transposition_status(chain: &GoodChain, i: usize) -> Result<TranspositionStatus> {
    let k = chain.k();
    if i == 0 || i + 1 > k {
        return Err(Error::IndexOutOfRange { index: i, max: k.saturating_sub(1) });
    }
    let q = RatFunc::q();
    let (a, b) = (chain.w(i), chain.w(i + 1));
    if *a == &q * b || *b == &q * a {
        Ok(TranspositionStatus::NonAdmissible)
    } else {
        Ok(TranspositionStatus::Excellent)
    }
}

/// The chain with `w_i` and `w_{i+1}` exchanged.
pub fn apply_transposition(e: &WeightedPoset, chain: &GoodChain, i: usize) -> Result<GoodChain> {
    if transposition_status(chain, i)? != TranspositionStatus::Excellent {
        return Err(Error::NotExcellent(format!("s_{i} is not admissible for {}", chain.display(e))));
    }
    let k = chain.k();
    let mut word = chain.word.clone();
    word.swap(k - i, k - i - 1);
    GoodChain::new(e, chain.base, word)
        .ok_or_else(|| Error::NotExcellent(format!("s_{i} does not give a chain from {}", chain.display(e))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posets::build_partition_ideal;

    #[test]
    fn indexing_follows_subscripts() {
        let p = build_partition_ideal(2, None, None);
        let c = enumerate_good_chains(&p, 2);
        assert_eq!(c.len(), 1);
        assert_eq!(*c[0].w(2), RatFunc::one());
        assert_eq!(*c[0].w(1), RatFunc::q());
        assert_eq!(c[0].display(&p), "[∅; 1, q]");
    }
}
