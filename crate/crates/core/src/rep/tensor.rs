//! Dimension count for products: good chains of `E_1 × E_2` are shuffles of good
//! chains of the factors, so `dim V_k(E_1 × E_2) = Σ_i C(k, i) dim V_i(E_1) dim V_{k-i}(E_2)`.

use serde::Serialize;

use crate::chains::{enumerate_chains, enumerate_good_chains};
use crate::error::{Error, Result};
use crate::posets::{check_general_position, product, WeightedPoset};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorDimRow {
    pub k: usize,
    /// Good chains of the product, enumerated directly.
    pub product_count: usize,
    /// The shuffle sum over the factors.
    pub shuffle_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorDimReport {
    pub rows: Vec<TensorDimRow>,
}

impl TensorDimReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.product_count == r.shuffle_count)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Counts good chains by filtering all saturated chains, independently of the
/// pruned enumeration used for the product.
fn filtered_count(e: &WeightedPoset, k: usize) -> usize {
    enumerate_chains(e, k).iter().filter(|c| c.is_good()).count()
}

pub fn tensor_dim_check(e1: &WeightedPoset, e2: &WeightedPoset, k_max: usize) -> Result<TensorDimReport> {
    let gp = check_general_position(e1, e2);
    if let Some(w) = gp.witness {
        return Err(Error::NotInGeneralPosition(w));
    }
    let prod = product(e1, e2)?;
    let c1: Vec<usize> = (0..=k_max).map(|i| filtered_count(e1, i)).collect();
    let c2: Vec<usize> = (0..=k_max).map(|i| filtered_count(e2, i)).collect();
    let rows = (0..=k_max)
        .map(|k| TensorDimRow {
            k,
            product_count: enumerate_good_chains(&prod, k).len(),
            shuffle_count: (0..=k).map(|i| binomial(k, i) * c1[i] * c2[k - i]).sum(),
        })
        .collect();
    Ok(TensorDimReport { rows })
}
