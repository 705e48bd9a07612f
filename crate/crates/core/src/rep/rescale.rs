//! Diagonal changes of basis: the rescaled basis `γ(λ; w)[λ; w]` and the gauge
//! intertwiners between representations built from different edge functions.

use bqt_field::RatFunc;
use serde::Serialize;

use super::build::gamma;
use super::{Representation, SparseMatrix};
use crate::chains::{transposition_status, TranspositionStatus};

/// The same representation written in the basis `e'_j = s_k[j] e_j` on level `k`.
pub fn change_basis(rep: &Representation, scales: &[Vec<RatFunc>], label: &str) -> Representation {
    let mut out = rep.clone();
    let n = out.levels().len();
    for k in 0..n {
        let s = &scales[k];
        let lvl = &mut out.levels_mut()[k];
        lvl.t = lvl.t.iter().map(|t| t.change_basis(s, s)).collect();
        lvl.phi = lvl.phi.as_ref().map(|m| m.change_basis(s, s));
        lvl.y = lvl.y.as_ref().map(|ys| ys.iter().map(|m| m.change_basis(s, s)).collect());
        if k > 0 {
            let below = scales[k - 1].clone();
            let lvl = &mut out.levels_mut()[k];
            lvl.d_minus = lvl.d_minus.as_ref().map(|m| m.change_basis(&below, &scales[k]));
        }
        if k + 1 < n {
            let above = scales[k + 1].clone();
            let lvl = &mut out.levels_mut()[k];
            lvl.d_plus = lvl.d_plus.as_ref().map(|m| m.change_basis(&above, &scales[k]));
        }
    }
    out.set_label(label);
    out
}

/// `γ(λ; w)` for every stored basis vector.
pub fn gammas(rep: &Representation) -> Vec<Vec<RatFunc>> {
    rep.levels()
        .iter()
        .map(|l| l.basis.iter().map(|ch| gamma(rep.poset(), rep.edge(), ch)).collect())
        .collect()
}

/// The representation in the rescaled basis `[λ; w]^resc = γ(λ; w)[λ; w]`.
pub fn rescale(rep: &Representation) -> Representation {
    change_basis(rep, &gammas(rep), &format!("{} rescaled", rep.label()))
}

/// Undoes [`rescale`] on a representation built from the same poset and edge function.
pub fn unrescale(resc: &Representation) -> Representation {
    let inv: Vec<Vec<RatFunc>> = gammas(resc)
        .into_iter()
        .map(|g| g.into_iter().map(|x| x.inv().expect("γ is nonzero")).collect())
        .collect();
    let label = resc.label().trim_end_matches(" rescaled").to_string();
    change_basis(resc, &inv, &label)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RescaleReport {
    pub entries_checked: usize,
    pub failure: Option<String>,
}

impl RescaleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compares a rescaled representation with the closed forms in the rescaled basis:
/// `d_+` has all coefficients 1, `d_-[λ; w] = q^{k-1} c(λ; w_k) Π_{i<k} (w_i - t w_k)/(w_i - qt w_k)`,
/// and the off-diagonal part of `T_i` is `(q w_i - w_{i+1})/(w_i - w_{i+1})`.
pub fn check_rescaled_forms(resc: &Representation) -> RescaleReport {
    let e = resc.poset();
    let c = resc.edge();
    let q = RatFunc::q();
    let t = RatFunc::t();
    let qt = &q * &t;
    let mut checked = 0;
    let fail = |msg: String, checked| RescaleReport { entries_checked: checked, failure: Some(msg) };
    for k in 0..=resc.top() {
        let lvl = resc.level(k).expect("stored level");
        if let Some(dp) = &lvl.d_plus {
            for (i, j, v) in dp.triples() {
                checked += 1;
                if !v.is_one() {
                    return fail(format!("d_+ entry ({i},{j}) on level {k} is {v}"), checked);
                }
            }
        }
        if let Some(dm) = &lvl.d_minus {
            for (j, ch) in lvl.basis.iter().enumerate() {
                checked += 1;
                let wk = ch.w(k);
                let ck = c.at(e, ch.base, wk).expect("first step is a cover");
                let expected = RatFunc::q_pow(k as i32 - 1)
                    * ck
                    * (1..k)
                        .map(|i| {
                            let wi = ch.w(i);
                            (wi - &(&t * wk)) / (wi - &(&qt * wk))
                        })
                        .product::<RatFunc>();
                let col = dm.column(j);
                if col.len() != 1 || col.values().next() != Some(&expected) {
                    return fail(format!("d_- on {} is not {}", ch.display(e), expected), checked);
                }
            }
        }
        for (idx, tm) in lvl.t.iter().enumerate() {
            let i = idx + 1;
            for (j, ch) in lvl.basis.iter().enumerate() {
                checked += 1;
                let (a, b) = (ch.w(i), ch.w(i + 1));
                let admissible = transposition_status(ch, i) == Ok(TranspositionStatus::Excellent);
                let col = tm.column(j);
                let diag = (&q - &RatFunc::one()) * b / (a - b);
                if col.get(&j) != Some(&diag) {
                    return fail(format!("T_{i} diagonal on {}", ch.display(e)), checked);
                }
                let off: Vec<&RatFunc> = col.iter().filter(|(&r, _)| r != j).map(|(_, v)| v).collect();
                let expected_off = (&(&q * a) - b) / (a - b);
                let ok = if admissible { off == vec![&expected_off] } else { off.is_empty() };
                if !ok {
                    return fail(format!("T_{i} off-diagonal on {}", ch.display(e)), checked);
                }
            }
        }
    }
    RescaleReport { entries_checked: checked, failure: None }
}

/// `diag(a(endpoint))` on every stored level: the intertwiner from the
/// representation built with `c1 = c2 · a(λ)/a(λ ∪ x)` to the one built with `c2`.
pub fn gauge_intertwiner(rep: &Representation, a: &[RatFunc]) -> Vec<SparseMatrix> {
    rep.levels()
        .iter()
        .map(|l| SparseMatrix::diagonal(&l.basis.iter().map(|ch| a[ch.end].clone()).collect::<Vec<_>>()))
        .collect()
}
