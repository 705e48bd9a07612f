//! Sparse matrices over the rational function field, stored by columns, and an
//! incremental row-echelon subspace for exact rank and membership questions.

use std::collections::BTreeMap;

use bqt_field::RatFunc;
use rayon::prelude::*;

pub type SparseVec = BTreeMap<usize, RatFunc>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![RatFunc::one(); n])
    }

    pub fn diagonal(d: &[RatFunc]) -> Self {
        let cols = d
            .iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { SparseVec::new() } else { SparseVec::from([(i, v.clone())]) })
            .collect();
        SparseMatrix { rows: d.len(), cols }
    }

    /// Builds a matrix from columns, dropping explicit zeros.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| {
                debug_assert!(c.keys().all(|&r| r < rows));
                c.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> RatFunc {
        self.cols[c].get(&r).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFunc) {
        if v.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Entries as `(row, col, value)` in column-major order.
    pub fn triples(&self) -> Vec<(usize, usize, &RatFunc)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(&i, v)| (i, j, v)))
            .collect()
    }

    /// `self · v` for a sparse column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, b) in v {
            for (&i, a) in &self.cols[k] {
                add_into(&mut out, i, a * b);
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let cols = other.cols.par_iter().map(|c| self.apply(c)).collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, true)
    }

    fn combine(&self, other: &SparseMatrix, negate: bool) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "dimension mismatch in sum");
        let cols = self
            .cols
            .par_iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut out = a.clone();
                for (&i, v) in b {
                    add_into(&mut out, i, if negate { -v } else { v.clone() });
                }
                out
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn scale(&self, s: &RatFunc) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols());
        }
        self.map(|v| v * s)
    }

    /// Applies `f` to every stored entry.
    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc + Sync) -> SparseMatrix {
        let cols = self
            .cols
            .par_iter()
            .map(|c| c.iter().map(|(&i, v)| (i, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![SparseVec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (&i, v) in c {
                cols[i].insert(j, v.clone());
            }
        }
        SparseMatrix { rows: self.cols(), cols }
    }

    /// `M'_{ij} = M_{ij} · col[j] / row[i]`: the matrix in the basis `e'_j = col[j] e_j`
    /// of the domain and `e'_i = row[i] e_i` of the codomain.
    pub fn change_basis(&self, row: &[RatFunc], col: &[RatFunc]) -> SparseMatrix {
        let cols = self
            .cols
            .par_iter()
            .enumerate()
            .map(|(j, c)| c.iter().map(|(&i, v)| (i, v * &col[j] / &row[i])).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    /// The first entry (column-major) where `self` and `other` differ, with the
    /// residual `self - other` there.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize, RatFunc)> {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "dimension mismatch in comparison");
        for (j, (a, b)) in self.cols.iter().zip(&other.cols).enumerate() {
            if a == b {
                continue;
            }
            let rows: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
            for i in rows {
                let x = a.get(&i).cloned().unwrap_or_else(RatFunc::zero);
                let y = b.get(&i).cloned().unwrap_or_else(RatFunc::zero);
                if x != y {
                    return Some((i, j, x - y));
                }
            }
        }
        None
    }

    /// The diagonal, when every off-diagonal entry is zero.
    pub fn as_diagonal(&self) -> Option<Vec<RatFunc>> {
        if self.rows != self.cols() {
            return None;
        }
        let mut d = vec![RatFunc::zero(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (&i, v) in c {
                if i != j {
                    return None;
                }
                d[j] = v.clone();
            }
        }
        Some(d)
    }
}

fn add_into(v: &mut SparseVec, i: usize, x: RatFunc) {
    if x.is_zero() {
        return;
    }
    match v.get_mut(&i) {
        Some(cur) => {
            let s = &*cur + &x;
            if s.is_zero() {
                v.remove(&i);
            } else {
                *cur = s;
            }
        }
        None => {
            v.insert(i, x);
        }
    }
}

/// A subspace kept in echelon form: each stored vector has a distinct pivot (its
/// smallest index) with coefficient 1, and no stored vector has a nonzero entry at
/// another vector's pivot.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    basis: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn new() -> Self {
        Subspace::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (&p, b) in &self.basis {
            if let Some(c) = v.get(&p).cloned() {
                for (&i, x) in b {
                    add_into(&mut v, i, -(&c * x));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else { return false };
        let inv = lead.inv().expect("pivot is nonzero");
        let r: SparseVec = r.iter().map(|(&i, x)| (i, x * &inv)).collect();
        for b in self.basis.values_mut() {
            if let Some(c) = b.get(&p).cloned() {
                for (&i, x) in &r {
                    add_into(b, i, -(&c * x));
                }
            }
        }
        self.basis.insert(p, r);
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.basis.values()
    }
}

/// The rank of a matrix by exact elimination over its columns.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut s = Subspace::new();
    m.columns().iter().filter(|c| s.insert(c)).count()
}

pub fn unit(i: usize) -> SparseVec {
    SparseVec::from([(i, RatFunc::one())])
}
