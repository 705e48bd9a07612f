//! The operators `E_i = (-1)^{i-1} d_- y_1^{i-1} d_+` on level 0, which realize
//! the elementary symmetric functions and therefore commute pairwise.

use bqt_field::RatFunc;
use serde::Serialize;

use super::{Gen, Representation, SparseMatrix};
use crate::error::{Error, Result};

/// `E_1, ..., E_{i_max}` as matrices on `V_0`.
pub fn sym_generators(rep: &Representation, i_max: usize) -> Result<Vec<SparseMatrix>> {
    let missing = |what: &str| Error::IllTypedWord(format!("{what} is not stored for {}", rep.label()));
    let dp = rep.matrix(Gen::DPlus, 0).ok_or_else(|| missing("d_+ on level 0"))?;
    let dm = rep.matrix(Gen::DMinus, 1).ok_or_else(|| missing("d_- on level 1"))?;
    let y1 = rep.matrix(Gen::Y(1), 1).ok_or_else(|| missing("y_1 on level 1"))?;
    let mut out = Vec::with_capacity(i_max);
    let mut middle = dp;
    for i in 1..=i_max {
        let sign = if i % 2 == 1 { RatFunc::one() } else { RatFunc::from_int(-1) };
        out.push(dm.mul(&middle).scale(&sign));
        middle = y1.mul(&middle);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymReport {
    pub i_max: usize,
    pub pairs_checked: usize,
    /// Nonzero operators among `E_1, ..., E_{i_max}`.
    pub nonzero: usize,
    pub failure: Option<String>,
}

impl SymReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `[E_i, E_j] = 0` for all `i < j ≤ i_max`.
pub fn check_sym_commute(rep: &Representation, i_max: usize) -> Result<SymReport> {
    let es = sym_generators(rep, i_max)?;
    let mut pairs = 0;
    let nonzero = es.iter().filter(|m| !m.is_zero()).count();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            pairs += 1;
            let ab = es[i].mul(&es[j]);
            let ba = es[j].mul(&es[i]);
            if let Some((r, c, res)) = ab.first_difference(&ba) {
                return Ok(SymReport {
                    i_max,
                    pairs_checked: pairs,
                    nonzero,
                    failure: Some(format!("[E_{}, E_{}] has entry ({r},{c}) equal to {res}", i + 1, j + 1)),
                });
            }
        }
    }
    Ok(SymReport { i_max, pairs_checked: pairs, nonzero, failure: None })
}
