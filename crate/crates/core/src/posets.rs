//! Weighted posets: finite graded posets whose elements carry content multisets.
//!
//! An element λ stores the multiset `B_λ`, so its power sums are
//! `p_m(λ) = Σ_{b ∈ B_λ} b^m`. A cover `λ → μ` labeled `x` means `B_μ = B_λ ⊎ {x}`.
//! Dual posets keep the multiset of the original element and a flag; their power
//! sums are `-θ(p_m(B_λ))` and a dual cover labeled `θ(x)` removes `x`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use bqt_field::{parse, RatFunc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub label: String,
    pub grade: i64,
    /// The content multiset, kept sorted.
    pub contents: Vec<RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub src: usize,
    pub dst: usize,
    pub weight: RatFunc,
}

#[derive(Clone, Debug)]
pub struct WeightedPoset {
    name: String,
    elements: Vec<Element>,
    covers: Vec<Cover>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    dualized: bool,
}

/// Multiset union of two sorted vectors.
pub(crate) fn merge_sorted(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let mut out: Vec<RatFunc> = a.iter().chain(b).cloned().collect();
    out.sort();
    out
}

/// Removes one copy of `x` from a sorted multiset.
fn remove_one(a: &[RatFunc], x: &RatFunc) -> Option<Vec<RatFunc>> {
    let pos = a.iter().position(|b| b == x)?;
    let mut out = a.to_vec();
    out.remove(pos);
    Some(out)
}

fn fmt_list(xs: &[RatFunc]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

impl WeightedPoset {
    /// Builds a poset and validates grading, the edge condition, simple spectrum
    /// and nonzero weights.
    pub fn new(name: impl Into<String>, mut elements: Vec<Element>, covers: Vec<Cover>, dualized: bool) -> Result<Self> {
        let n = elements.len();
        for e in &mut elements {
            e.contents.sort();
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (ci, c) in covers.iter().enumerate() {
            if c.src >= n || c.dst >= n {
                return Err(Error::InvalidPoset(format!("cover {ci} refers to a missing element")));
            }
            if c.weight.is_zero() {
                return Err(Error::InvalidPoset(format!("cover {ci} has zero weight")));
            }
            if !seen.insert((c.src, c.dst)) {
                return Err(Error::InvalidPoset(format!("duplicate cover {} -> {}", c.src, c.dst)));
            }
            let (s, d) = (&elements[c.src], &elements[c.dst]);
            if d.grade != s.grade + 1 {
                return Err(Error::InvalidPoset(format!(
                    "cover {} -> {} does not raise the grade by one",
                    s.label, d.label
                )));
            }
            let ok = if dualized {
                remove_one(&s.contents, &c.weight.theta()).as_deref() == Some(&d.contents[..])
            } else {
                remove_one(&d.contents, &c.weight).as_deref() == Some(&s.contents[..])
            };
            if !ok {
                return Err(Error::InvalidPoset(format!(
                    "cover {} -> {} with weight {} violates the edge condition",
                    s.label, d.label, c.weight
                )));
            }
            up[c.src].push(ci);
            down[c.dst].push(ci);
        }
        let mut spectra = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if let Some(j) = spectra.insert(&e.contents, i) {
                return Err(Error::InvalidPoset(format!(
                    "elements {} and {} share the content multiset {}",
                    elements[j].label,
                    e.label,
                    fmt_list(&e.contents)
                )));
            }
        }
        let mut labels = HashSet::new();
        for e in &elements {
            if !labels.insert(&e.label) {
                return Err(Error::InvalidPoset(format!("duplicate label {}", e.label)));
            }
        }
        Ok(WeightedPoset { name: name.into(), elements, covers, up, down, dualized })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i].label
    }

    pub fn grade(&self, i: usize) -> i64 {
        self.elements[i].grade
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn cover(&self, ci: usize) -> &Cover {
        &self.covers[ci]
    }

    /// Indices of covers leaving `i`.
    pub fn up(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Indices of covers arriving at `i`.
    pub fn down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn is_dualized(&self) -> bool {
        self.dualized
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    /// Index of the cover leaving `src` with weight `x`.
    pub fn cover_with(&self, src: usize, x: &RatFunc) -> Option<usize> {
        self.up[src].iter().copied().find(|&ci| self.covers[ci].weight == *x)
    }

    /// `λ ∪ x` when `x` is addable for `λ`.
    pub fn step(&self, src: usize, x: &RatFunc) -> Option<usize> {
        self.cover_with(src, x).map(|ci| self.covers[ci].dst)
    }

    /// Follows a weight word `(w_k, ..., w_1)` from `base`, `w_k` first.
    pub fn walk(&self, base: usize, word: &[RatFunc]) -> Option<usize> {
        word.iter().try_fold(base, |at, x| self.step(at, x))
    }

    /// All `(x, λ ∪ x)` with `x` addable for `λ`.
    pub fn addable_weights(&self, i: usize) -> Vec<(RatFunc, usize)> {
        self.up[i].iter().map(|&ci| (self.covers[ci].weight.clone(), self.covers[ci].dst)).collect()
    }

    /// `p_m(λ)`.
    pub fn power_sum(&self, i: usize, m: i32) -> RatFunc {
        let s: RatFunc = self.elements[i].contents.iter().map(|b| b.pow(m)).sum();
        if self.dualized {
            -s.theta()
        } else {
            s
        }
    }

    /// The signed multiset whose power sums are `p_m(λ)`: `+1` per content, or `-1`
    /// per θ-image of a content for dual posets.
    pub fn signed_contents(&self, i: usize) -> BTreeMap<RatFunc, i64> {
        let mut out = BTreeMap::new();
        for b in &self.elements[i].contents {
            if self.dualized {
                *out.entry(b.theta()).or_insert(0) -= 1;
            } else {
                *out.entry(b.clone()).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// Element indices sorted by grade (a topological order of the cover graph).
    pub fn by_grade(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.elements[i].grade, i));
        order
    }

    /// Number of covers in the longest saturated chain.
    pub fn longest_chain(&self) -> usize {
        let mut best = vec![0usize; self.len()];
        let mut out = 0;
        for i in self.by_grade() {
            for &ci in &self.up[i] {
                let d = self.covers[ci].dst;
                best[d] = best[d].max(best[i] + 1);
                out = out.max(best[d]);
            }
        }
        out
    }

    /// True when the set is closed upward along covers.
    pub fn is_coideal(&self, set: &[bool]) -> bool {
        self.covers.iter().all(|c| !set[c.src] || set[c.dst])
    }

    /// True when the set is closed downward along covers.
    pub fn is_ideal(&self, set: &[bool]) -> bool {
        self.covers.iter().all(|c| !set[c.dst] || set[c.src])
    }

    /// The smallest coideal containing `seeds`.
    pub fn coideal_generated(&self, seeds: &[usize]) -> Vec<bool> {
        let mut set = vec![false; self.len()];
        let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
        while let Some(i) = queue.pop_front() {
            if set[i] {
                continue;
            }
            set[i] = true;
            for &ci in &self.up[i] {
                queue.push_back(self.covers[ci].dst);
            }
        }
        set
    }

    /// All coideals, as membership vectors (exponential; for small posets).
    pub fn all_coideals(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        assert!(n <= 20, "too many elements to enumerate coideals");
        (0u32..(1 << n))
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|s| self.is_coideal(s))
            .collect()
    }

    /// The subposet on `keep`, with elements renumbered in order. Returns the poset
    /// and the map from old to new indices.
    pub fn restrict(&self, keep: &[bool], name: impl Into<String>) -> Result<(WeightedPoset, Vec<Option<usize>>)> {
        let mut map = vec![None; self.len()];
        let mut elements = Vec::new();
        for i in 0..self.len() {
            if keep[i] {
                map[i] = Some(elements.len());
                elements.push(self.elements[i].clone());
            }
        }
        let covers = self
            .covers
            .iter()
            .filter_map(|c| Some(Cover { src: map[c.src]?, dst: map[c.dst]?, weight: c.weight.clone() }))
            .collect();
        Ok((WeightedPoset::new(name, elements, covers, self.dualized)?, map))
    }

    /// Equality of everything except names and labels.
    pub fn same_structure(&self, other: &WeightedPoset) -> bool {
        if self.len() != other.len() || self.dualized != other.dualized {
            return false;
        }
        let same_elems = self
            .elements
            .iter()
            .zip(&other.elements)
            .all(|(a, b)| a.grade == b.grade && a.contents == b.contents);
        let key = |p: &WeightedPoset| {
            let mut v: Vec<(usize, usize, RatFunc)> =
                p.covers.iter().map(|c| (c.src, c.dst, c.weight.clone())).collect();
            v.sort();
            v
        };
        same_elems && key(self) == key(other)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            name: self.name.clone(),
            dualized: self.dualized,
            elements: self
                .elements
                .iter()
                .enumerate()
                .map(|(id, e)| ElementJson {
                    id,
                    label: e.label.clone(),
                    grade: e.grade,
                    contents: e.contents.iter().map(|b| b.to_string()).collect(),
                })
                .collect(),
            covers: self
                .covers
                .iter()
                .map(|c| CoverJson { src: c.src, dst: c.dst, weight: c.weight.to_string() })
                .collect(),
        }
    }

    /// Rebuilds a poset from its JSON form, re-validating every invariant.
    pub fn from_json(j: &PosetJson) -> Result<Self> {
        let mut elements = Vec::with_capacity(j.elements.len());
        for (i, e) in j.elements.iter().enumerate() {
            if e.id != i {
                return Err(Error::Json(format!("element ids must be 0..n in order; found {} at {i}", e.id)));
            }
            let contents = e.contents.iter().map(|s| parse(s)).collect::<std::result::Result<Vec<_>, _>>()?;
            elements.push(Element { label: e.label.clone(), grade: e.grade, contents });
        }
        let covers = j
            .covers
            .iter()
            .map(|c| Ok(Cover { src: c.src, dst: c.dst, weight: parse(&c.weight)? }))
            .collect::<Result<Vec<_>>>()?;
        WeightedPoset::new(j.name.clone(), elements, covers, j.dualized)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetJson {
    pub name: String,
    #[serde(default)]
    pub dualized: bool,
    pub elements: Vec<ElementJson>,
    pub covers: Vec<CoverJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub id: usize,
    pub label: String,
    pub grade: i64,
    pub contents: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverJson {
    pub src: usize,
    pub dst: usize,
    pub weight: String,
}

fn partition_label(p: &[usize]) -> String {
    if p.is_empty() {
        "∅".to_string()
    } else {
        let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Content of the cell in row `r`, column `c` (both 1-based): `q^(c-1) t^(r-1)`.
pub fn cell_content(r: usize, c: usize) -> RatFunc {
    RatFunc::q_pow(c as i32 - 1) * RatFunc::t().pow(r as i32 - 1)
}

/// Partitions of `n` with at most `rows` parts, each at most `cols`, in decreasing
/// lexicographic order.
fn partitions_of(n: usize, rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max_part: usize, rows: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if rows == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, rows - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, cols, rows, &mut Vec::new(), &mut out);
    out
}

/// The ideal of Young diagrams with at most `max_boxes` cells, optionally bounded
/// in rows and columns, ordered by inclusion.
pub fn build_partition_ideal(max_boxes: usize, max_rows: Option<usize>, max_cols: Option<usize>) -> WeightedPoset {
    let rows = max_rows.unwrap_or(max_boxes);
    let cols = max_cols.unwrap_or(max_boxes);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for n in 0..=max_boxes {
        parts.extend(partitions_of(n, rows, cols));
    }
    let index: HashMap<Vec<usize>, usize> = parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let elements = parts
        .iter()
        .map(|p| Element {
            label: partition_label(p),
            grade: p.iter().sum::<usize>() as i64,
            contents: p
                .iter()
                .enumerate()
                .flat_map(|(r, &len)| (1..=len).map(move |c| cell_content(r + 1, c)))
                .collect(),
        })
        .collect();
    let mut covers = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for r in 0..=p.len() {
            let cur = p.get(r).copied().unwrap_or(0);
            if r > 0 && p[r - 1] == cur {
                continue;
            }
            let mut q = p.clone();
            if r == p.len() {
                q.push(1);
            } else {
                q[r] += 1;
            }
            if let Some(&j) = index.get(&q) {
                covers.push(Cover { src: i, dst: j, weight: cell_content(r + 1, cur + 1) });
            }
        }
    }
    let mut name = format!("partitions({max_boxes}");
    if let Some(r) = max_rows {
        name += &format!(",rows={r}");
    }
    if let Some(c) = max_cols {
        name += &format!(",cols={c}");
    }
    name += ")";
    WeightedPoset::new(name, elements, covers, false).expect("partition ideals are valid weighted posets")
}

/// Decodes a partition from a content multiset built with [`cell_content`].
pub fn partition_from_contents(contents: &[RatFunc]) -> Option<Vec<usize>> {
    let mut rows: Vec<usize> = Vec::new();
    for b in contents {
        let (c, m) = b.as_monomial()?;
        if c != 1.into() {
            return None;
        }
        let (v, t) = (m.0[bqt_field::VAR_V], m.0[bqt_field::VAR_T]);
        if v < 0 || v % 2 != 0 || t < 0 || m.0[2..].iter().any(|&e| e != 0) {
            return None;
        }
        let r = t as usize;
        if rows.len() <= r {
            rows.resize(r + 1, 0);
        }
        rows[r] += 1;
    }
    Some(rows)
}

/// The chain `0 < 1 < ... < n-1` with weight `q^i x0` on step `i`.
pub fn build_linear(n: usize, x0: &RatFunc) -> Result<WeightedPoset> {
    if n == 0 {
        return Err(Error::InvalidPoset("a linear poset needs at least one element".into()));
    }
    if x0.is_zero() {
        return Err(Error::InvalidPoset("linear poset base weight must be nonzero".into()));
    }
    let w = |i: usize| RatFunc::q_pow(i as i32) * x0;
    let elements = (0..n)
        .map(|i| Element { label: i.to_string(), grade: i as i64, contents: (0..i).map(w).collect() })
        .collect();
    let covers = (0..n - 1).map(|i| Cover { src: i, dst: i + 1, weight: w(i) }).collect();
    WeightedPoset::new(format!("linear({n},{x0})"), elements, covers, false)
}

fn subset_label(s: &[usize]) -> String {
    if s.is_empty() {
        "∅".to_string()
    } else {
        let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Subsets of `{1..n}` ordered by inclusion; adding `i` has weight `weights[i-1]`.
pub fn build_boolean(weights: &[RatFunc]) -> Result<WeightedPoset> {
    let n = weights.len();
    if n > 16 {
        return Err(Error::InvalidPoset("boolean posets are limited to 16 generators".into()));
    }
    if weights.iter().any(|w| w.is_zero()) {
        return Err(Error::InvalidPoset("boolean weights must be nonzero".into()));
    }
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| {
        let members: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), members)
    });
    let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let members = |m: u32| (0..n).filter(move |i| m >> i & 1 == 1);
    let elements = masks
        .iter()
        .map(|&m| {
            let s: Vec<usize> = members(m).collect();
            Element {
                label: subset_label(&s),
                grade: s.len() as i64,
                contents: s.iter().map(|&i| weights[i].clone()).collect(),
            }
        })
        .collect();
    let mut covers = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        for j in 0..n {
            if m >> j & 1 == 0 {
                covers.push(Cover { src: i, dst: index[&(m | 1 << j)], weight: weights[j].clone() });
            }
        }
    }
    let ws: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
    WeightedPoset::new(format!("boolean({})", ws.join(",")), elements, covers, false)
}

/// A single element with the given contents and no covers.
pub fn build_singleton(contents: &[RatFunc]) -> WeightedPoset {
    let e = Element { label: "•".into(), grade: 0, contents: contents.to_vec() };
    WeightedPoset::new(format!("singleton{}", fmt_list(contents)), vec![e], vec![], false)
        .expect("a singleton is a valid weighted poset")
}

/// The twisted poset `E(a)`: every weight multiplied by `a`.
pub fn twist(e: &WeightedPoset, a: &RatFunc) -> Result<WeightedPoset> {
    if a.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let scale = if e.dualized { a.theta() } else { a.clone() };
    let elements = e
        .elements
        .iter()
        .map(|el| Element {
            label: el.label.clone(),
            grade: el.grade,
            contents: el.contents.iter().map(|b| b * &scale).collect(),
        })
        .collect();
    let covers = e
        .covers
        .iter()
        .map(|c| Cover { src: c.src, dst: c.dst, weight: &c.weight * a })
        .collect();
    WeightedPoset::new(format!("twist({},{a})", e.name), elements, covers, e.dualized)
}

/// The order-reversed poset with θ applied to weights.
pub fn dual(e: &WeightedPoset) -> WeightedPoset {
    let elements = e
        .elements
        .iter()
        .map(|el| {
            let label = match el.label.strip_suffix("^v") {
                Some(s) if e.dualized => s.to_string(),
                _ => format!("{}^v", el.label),
            };
            Element { label, grade: -el.grade, contents: el.contents.clone() }
        })
        .collect();
    let covers = e
        .covers
        .iter()
        .map(|c| Cover { src: c.dst, dst: c.src, weight: c.weight.theta() })
        .collect();
    let name = match e.name.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) if e.dualized => inner.to_string(),
        _ => format!("dual({})", e.name),
    };
    WeightedPoset::new(name, elements, covers, !e.dualized).expect("duals of valid posets are valid")
}

/// The weight ratios excluded between covers of two posets in general position.
fn forbidden_ratios() -> Vec<RatFunc> {
    let q = RatFunc::q();
    let t = RatFunc::t();
    let qt = &q * &t;
    vec![RatFunc::one(), q.clone(), q.pow(-1), t.clone(), t.pow(-1), qt.clone(), qt.pow(-1)]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralPositionReport {
    /// `None` when the check passes.
    pub witness: Option<String>,
}

impl GeneralPositionReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks the ratio condition on all pairs of cover weights and distinctness of
/// the summed content multisets over all pairs of elements.
pub fn check_general_position(e1: &WeightedPoset, e2: &WeightedPoset) -> GeneralPositionReport {
    if e1.dualized != e2.dualized {
        return GeneralPositionReport { witness: Some("one poset is dualized and the other is not".into()) };
    }
    let weights = |e: &WeightedPoset| {
        let mut v: Vec<RatFunc> = e.covers.iter().map(|c| c.weight.clone()).collect();
        v.sort();
        v.dedup();
        v
    };
    let forbidden = forbidden_ratios();
    for z1 in weights(e1) {
        for z2 in weights(e2) {
            let r = &z1 / &z2;
            if forbidden.contains(&r) {
                return GeneralPositionReport {
                    witness: Some(format!("cover weights {z1} and {z2} have ratio {r}")),
                };
            }
        }
    }
    let mut seen: HashMap<Vec<RatFunc>, (usize, usize)> = HashMap::new();
    for i in 0..e1.len() {
        for j in 0..e2.len() {
            let m = merge_sorted(&e1.elements[i].contents, &e2.elements[j].contents);
            if let Some((a, b)) = seen.insert(m, (i, j)) {
                return GeneralPositionReport {
                    witness: Some(format!(
                        "({}, {}) and ({}, {}) have equal power sums",
                        e1.label(a),
                        e2.label(b),
                        e1.label(i),
                        e2.label(j)
                    )),
                };
            }
        }
    }
    GeneralPositionReport { witness: None }
}

/// Index of `(i, j)` in a product with `n2` elements in the second factor.
pub fn product_index(i: usize, j: usize, n2: usize) -> usize {
    i * n2 + j
}

/// The product poset `E1 × E2` with summed weightings.
pub fn product(e1: &WeightedPoset, e2: &WeightedPoset) -> Result<WeightedPoset> {
    let report = check_general_position(e1, e2);
    if let Some(w) = report.witness {
        return Err(Error::NotInGeneralPosition(w));
    }
    let n2 = e2.len();
    let mut elements = Vec::with_capacity(e1.len() * n2);
    for a in &e1.elements {
        for b in &e2.elements {
            elements.push(Element {
                label: format!("{}|{}", a.label, b.label),
                grade: a.grade + b.grade,
                contents: merge_sorted(&a.contents, &b.contents),
            });
        }
    }
    let mut covers = Vec::new();
    for i in 0..e1.len() {
        for j in 0..n2 {
            let src = product_index(i, j, n2);
            for &ci in &e1.up[i] {
                let c = &e1.covers[ci];
                covers.push(Cover { src, dst: product_index(c.dst, j, n2), weight: c.weight.clone() });
            }
            for &ci in &e2.up[j] {
                let c = &e2.covers[ci];
                covers.push(Cover { src, dst: product_index(i, c.dst, n2), weight: c.weight.clone() });
            }
        }
    }
    WeightedPoset::new(format!("product({},{})", e1.name, e2.name), elements, covers, e1.dualized)
}

/// Which excellence clause a 2-step chain violates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcellenceWitness {
    pub base: usize,
    pub x: String,
    pub y: String,
    pub clause: u8,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcellenceReport {
    pub witness: Option<ExcellenceWitness>,
}

impl ExcellenceReport {
    pub fn is_excellent(&self) -> bool {
        self.witness.is_none()
    }
}

/// Tests every 2-step chain `[λ; x, y]` for `y ∉ {x, qt·x, x/qt}` and for exactly
/// one of `y = qx`, `y = tx`, `[λ; y, x]` a chain.
pub fn check_excellent(e: &WeightedPoset) -> ExcellenceReport {
    let q = RatFunc::q();
    let t = RatFunc::t();
    let qt = &q * &t;
    for lam in 0..e.len() {
        for &c1 in &e.up[lam] {
            let x = &e.covers[c1].weight;
            let mid = e.covers[c1].dst;
            for &c2 in &e.up[mid] {
                let y = &e.covers[c2].weight;
                let end = e.covers[c2].dst;
                let witness = |clause: u8, detail: String| ExcellenceReport {
                    witness: Some(ExcellenceWitness {
                        base: lam,
                        x: x.to_string(),
                        y: y.to_string(),
                        clause,
                        detail,
                    }),
                };
                if y == x {
                    return witness(1, "y = x".into());
                }
                if *y == x * &qt {
                    return witness(1, "y = qt x".into());
                }
                if *y == x / &qt {
                    return witness(1, "y = x / qt".into());
                }
                let by_q = *y == x * &q;
                let by_t = *y == x * &t;
                let swapped = e.walk(lam, &[y.clone(), x.clone()]);
                if let Some(s) = swapped {
                    if s != end {
                        return witness(2, "the swapped chain ends elsewhere".into());
                    }
                }
                let count = by_q as u8 + by_t as u8 + swapped.is_some() as u8;
                if count != 1 {
                    return witness(
                        2,
                        format!("y = qx: {by_q}, y = tx: {by_t}, [λ; y, x] a chain: {}", swapped.is_some()),
                    );
                }
            }
        }
    }
    ExcellenceReport { witness: None }
}

/// A partial map `E → E'` (`None` is the extra top element `0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    pub map: Vec<Option<usize>>,
}

impl PosetMap {
    pub fn identity(n: usize) -> Self {
        PosetMap { map: (0..n).map(Some).collect() }
    }

    /// The map from `e` onto the ideal `target`, matching elements by content and
    /// sending everything else to `0`.
    pub fn by_contents(e: &WeightedPoset, target: &WeightedPoset) -> Self {
        let index: HashMap<&Vec<RatFunc>, usize> =
            target.elements.iter().enumerate().map(|(i, el)| (&el.contents, i)).collect();
        PosetMap { map: e.elements.iter().map(|el| index.get(&el.contents).copied()).collect() }
    }

    /// Checks the five conditions for inducing a homomorphism.
    pub fn check(&self, e: &WeightedPoset, f: &WeightedPoset) -> Result<()> {
        if self.map.len() != e.len() {
            return Err(Error::InvalidPoset("map length does not match the source poset".into()));
        }
        if let Some(&Some(j)) = self.map.iter().find(|m| matches!(m, Some(j) if *j >= f.len())) {
            return Err(Error::InvalidPoset(format!("map target {j} out of range")));
        }
        for c in &e.covers {
            if self.map[c.src].is_none() && self.map[c.dst].is_some() {
                return Err(Error::MapConditionViolated(
                    1,
                    format!("{} maps to 0 but {} does not", e.label(c.src), e.label(c.dst)),
                ));
            }
        }
        let mut image = vec![false; f.len()];
        for j in self.map.iter().flatten() {
            image[*j] = true;
        }
        for c in &f.covers {
            if image[c.src] && !image[c.dst] {
                return Err(Error::MapConditionViolated(
                    2,
                    format!("{} is in the image but {} is not", f.label(c.src), f.label(c.dst)),
                ));
            }
        }
        for (i, m) in self.map.iter().enumerate() {
            if let Some(j) = m {
                if e.dualized != f.dualized || e.elements[i].contents != f.elements[*j].contents {
                    return Err(Error::MapConditionViolated(
                        3,
                        format!("{} and {} have different weights", e.label(i), f.label(*j)),
                    ));
                }
            }
        }
        for c in &e.covers {
            if let Some(fm) = self.map[c.dst] {
                let ok = self.map[c.src].is_some_and(|fl| f.up[fl].iter().any(|&ci| f.covers[ci].dst == fm));
                if !ok {
                    return Err(Error::MapConditionViolated(
                        4,
                        format!("{} covers {} but the images do not", e.label(c.dst), e.label(c.src)),
                    ));
                }
            }
        }
        let mut preimages = vec![Vec::new(); f.len()];
        for (i, m) in self.map.iter().enumerate() {
            if let Some(j) = m {
                preimages[*j].push(i);
            }
        }
        for c in &f.covers {
            for &l in &preimages[c.src] {
                for &m in &preimages[c.dst] {
                    if !e.up[l].iter().any(|&ci| e.covers[ci].dst == m) {
                        return Err(Error::MapConditionViolated(
                            5,
                            format!("images of {} and {} form a cover but they do not", e.label(l), e.label(m)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let p = build_partition_ideal(4, None, None);
        assert_eq!(p.len(), 1 + 1 + 2 + 3 + 5);
        let p = build_partition_ideal(6, None, Some(2));
        assert_eq!(p.len(), 1 + 1 + 2 + 2 + 3 + 3 + 4);
        assert!(p.elements().iter().all(|e| !e.label.contains('3')));
    }

    #[test]
    fn contents_decode() {
        let p = build_partition_ideal(4, None, None);
        for e in p.elements() {
            let part = partition_from_contents(&e.contents).unwrap();
            let want = if part.is_empty() { "∅".to_string() } else { partition_label(&part) };
            assert_eq!(want, e.label);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = twist(&build_partition_ideal(3, None, None), &RatFunc::a(1)).unwrap();
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back = WeightedPoset::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert!(back.same_structure(&p));
    }

    #[test]
    fn json_loader_revalidates() {
        let mut j = build_linear(3, &RatFunc::one()).unwrap().to_json();
        j.covers[1].weight = "t".into();
        assert!(matches!(WeightedPoset::from_json(&j), Err(Error::InvalidPoset(_))));
    }
}
