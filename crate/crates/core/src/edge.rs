//! Edge functions `c(λ; x)` on covers: synthesis from the square equation, the
//! closed forms for partitions and boolean posets, and edge functions on products
//! built from ψ-cocycles.

use std::collections::{BTreeMap, VecDeque};

use bqt_field::{Character, Monomial, RatFunc};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::posets::{check_excellent, product_index, WeightedPoset};

/// Nonzero values indexed by the cover indices of a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFunction {
    values: Vec<RatFunc>,
}

impl EdgeFunction {
    pub fn new(values: Vec<RatFunc>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| v.is_zero()) {
            return Err(Error::InvalidPoset(format!("edge value on cover {i} is zero")));
        }
        Ok(EdgeFunction { values })
    }

    /// The constant edge function 1.
    pub fn ones(e: &WeightedPoset) -> Self {
        EdgeFunction { values: vec![RatFunc::one(); e.covers().len()] }
    }

    pub fn values(&self) -> &[RatFunc] {
        &self.values
    }

    pub fn get(&self, cover: usize) -> &RatFunc {
        &self.values[cover]
    }

    pub fn set(&mut self, cover: usize, v: RatFunc) {
        assert!(!v.is_zero(), "edge values are nonzero");
        self.values[cover] = v;
    }

    /// `c(λ; x)`, or `None` when `x` is not addable for `λ`.
    pub fn at(&self, e: &WeightedPoset, lam: usize, x: &RatFunc) -> Option<&RatFunc> {
        e.cover_with(lam, x).map(|ci| &self.values[ci])
    }

    /// Multiplies by the coboundary of `a`: `c(λ; x) a(λ) / a(λ ∪ x)`.
    pub fn gauge(&self, e: &WeightedPoset, a: &[RatFunc]) -> Self {
        let values = e
            .covers()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| v * &a[c.src] / &a[c.dst])
            .collect();
        EdgeFunction { values }
    }

    pub fn to_json(&self, e: &WeightedPoset) -> Vec<EdgeValueJson> {
        e.covers()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| EdgeValueJson {
                src: c.src,
                dst: c.dst,
                weight: c.weight.to_string(),
                value: v.to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeValueJson {
    pub src: usize,
    pub dst: usize,
    pub weight: String,
    pub value: String,
}

/// `-(x - ty)(x - qy)(y - qtx) / ((y - tx)(y - qx)(x - qty))`.
pub fn upsilon(x: &RatFunc, y: &RatFunc) -> Result<RatFunc> {
    let q = RatFunc::q();
    let t = RatFunc::t();
    let qt = &q * &t;
    let den = (y - &(&t * x)) * (y - &(&q * x)) * (x - &(&qt * y));
    if den.is_zero() {
        return Err(Error::PoleAtInput(format!("upsilon({x}, {y})")));
    }
    let num = (x - &(&t * y)) * (x - &(&q * y)) * (y - &(&qt * x));
    Ok(-(num / den))
}

/// A commuting square: `[λ; x, y]` and `[λ; y, x]` are both chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub base: usize,
    pub x: RatFunc,
    pub y: RatFunc,
}

/// All commuting squares, each listed once.
pub fn squares(e: &WeightedPoset) -> Vec<Square> {
    let mut out = Vec::new();
    for lam in 0..e.len() {
        let up = e.up(lam);
        for (a, &ca) in up.iter().enumerate() {
            for &cb in &up[a + 1..] {
                let x = &e.cover(ca).weight;
                let y = &e.cover(cb).weight;
                let xy = e.walk(lam, &[x.clone(), y.clone()]);
                let yx = e.walk(lam, &[y.clone(), x.clone()]);
                if xy.is_some() && xy == yx {
                    out.push(Square { base: lam, x: x.clone(), y: y.clone() });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareFailure {
    pub base: String,
    pub x: String,
    pub y: String,
    pub ratio: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyReport {
    pub squares_checked: usize,
    pub failure: Option<SquareFailure>,
}

impl MonodromyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `c(λ;x)c(λ∪x;y) / (c(λ;y)c(λ∪y;x)) = Υ(x, y)` on every square.
pub fn verify_monodromy(e: &WeightedPoset, c: &EdgeFunction) -> MonodromyReport {
    let sq = squares(e);
    for s in &sq {
        let mx = e.step(s.base, &s.x).expect("square edge");
        let my = e.step(s.base, &s.y).expect("square edge");
        let lhs = c.at(e, s.base, &s.x).unwrap() * c.at(e, mx, &s.y).unwrap()
            / (c.at(e, s.base, &s.y).unwrap() * c.at(e, my, &s.x).unwrap());
        let rhs = upsilon(&s.x, &s.y);
        if rhs.as_ref() != Ok(&lhs) {
            return MonodromyReport {
                squares_checked: sq.len(),
                failure: Some(SquareFailure {
                    base: e.label(s.base).to_string(),
                    x: s.x.to_string(),
                    y: s.y.to_string(),
                    ratio: lhs.to_string(),
                    expected: rhs.map(|r| r.to_string()).unwrap_or_else(|err| err.to_string()),
                }),
            };
        }
    }
    MonodromyReport { squares_checked: sq.len(), failure: None }
}

/// Some edge function satisfying the square equation, built grade by grade: at
/// each element the incoming edges are linked by the squares they close, one edge
/// per linked group is set to 1, and the rest are forced.
fn raw_solution(e: &WeightedPoset) -> Result<Vec<RatFunc>> {
    let mut vals: Vec<Option<RatFunc>> = vec![None; e.covers().len()];
    for mu in e.by_grade() {
        let incoming = e.down(mu);
        // links[a] = (b, factor) meaning value(b) = factor * value(a)
        let mut links: Vec<Vec<(usize, RatFunc)>> = vec![Vec::new(); incoming.len()];
        for (a, &ca) in incoming.iter().enumerate() {
            for (b, &cb) in incoming.iter().enumerate().skip(a + 1) {
                // ca: λ∪y → μ with weight x; cb: λ∪x → μ with weight y.
                let x = &e.cover(ca).weight;
                let y = &e.cover(cb).weight;
                let ly = e.cover(ca).src;
                let Some(cl) = e.down(ly).iter().copied().find(|&c| e.cover(c).weight == *y) else {
                    continue;
                };
                let lam = e.cover(cl).src;
                let Some(lx_cover) = e.cover_with(lam, x) else { continue };
                if e.cover(lx_cover).dst != e.cover(cb).src {
                    continue;
                }
                let c_lam_x = vals[lx_cover].clone().expect("lower grades are assigned");
                let c_lam_y = vals[cl].clone().expect("lower grades are assigned");
                // c(λ∪x;y) = Υ(x,y) c(λ;y) c(λ∪y;x) / c(λ;x)
                let f = upsilon(x, y)? * c_lam_y / c_lam_x;
                links[a].push((b, f.clone()));
                links[b].push((a, f.inv()?));
            }
        }
        let mut local: Vec<Option<RatFunc>> = vec![None; incoming.len()];
        for start in 0..incoming.len() {
            if local[start].is_some() {
                continue;
            }
            local[start] = Some(RatFunc::one());
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                let va = local[a].clone().unwrap();
                for (b, f) in &links[a] {
                    let vb = f * &va;
                    match &local[*b] {
                        None => {
                            local[*b] = Some(vb);
                            queue.push_back(*b);
                        }
                        Some(old) if *old != vb => {
                            return Err(Error::InconsistentCycles(e.label(mu).to_string()));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        for (a, &ca) in incoming.iter().enumerate() {
            vals[ca] = local[a].take();
        }
    }
    Ok(vals.into_iter().map(|v| v.expect("every cover has a target")).collect())
}

/// Cover indices in the order a breadth-first search from the minimal elements
/// discovers them, with neighbor order shuffled by `seed`.
fn bfs_edge_order(e: &WeightedPoset, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = vec![false; e.len()];
    let mut used = vec![false; e.covers().len()];
    let mut order = Vec::new();
    let mut roots = e.minimal_elements();
    roots.extend(0..e.len());
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            let mut nbrs: Vec<usize> = e.up(v).iter().chain(e.down(v)).copied().collect();
            nbrs.shuffle(&mut rng);
            for ci in nbrs {
                if used[ci] {
                    continue;
                }
                used[ci] = true;
                order.push(ci);
                let c = e.cover(ci);
                let w = if c.src == v { c.dst } else { c.src };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[rb] = ra;
        true
    }
}

/// The spanning forest of the cover graph taking `first` edges with priority and
/// then the remaining edges in seeded breadth-first order.
pub fn spanning_forest(e: &WeightedPoset, seed: u64, first: &[usize]) -> Vec<usize> {
    let mut uf = UnionFind::new(e.len());
    let mut tree = Vec::new();
    for ci in first.iter().copied().chain(bfs_edge_order(e, seed)) {
        let c = e.cover(ci);
        if uf.union(c.src, c.dst) {
            tree.push(ci);
        }
    }
    tree
}

/// Solves `target(edge) = raw(edge) a(src) / a(dst)` along a forest, with `a = 1`
/// at the first vertex reached in each component.
fn solve_gauge(e: &WeightedPoset, tree: &[usize], ratio: impl Fn(usize) -> RatFunc) -> Vec<RatFunc> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); e.len()];
    for &ci in tree {
        adj[e.cover(ci).src].push(ci);
        adj[e.cover(ci).dst].push(ci);
    }
    let mut a: Vec<Option<RatFunc>> = vec![None; e.len()];
    let mut roots = e.minimal_elements();
    roots.extend(0..e.len());
    for r in roots {
        if a[r].is_some() {
            continue;
        }
        a[r] = Some(RatFunc::one());
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            let av = a[v].clone().unwrap();
            for &ci in &adj[v] {
                let c = e.cover(ci);
                // target = raw a(src)/a(dst)  ⇒  a(dst) = a(src) / ratio, ratio = target / raw
                let (w, aw) = if c.src == v { (c.dst, &av / &ratio(ci)) } else { (c.src, &av * &ratio(ci)) };
                if a[w].is_none() {
                    a[w] = Some(aw);
                    queue.push_back(w);
                }
            }
        }
    }
    a.into_iter().map(|x| x.unwrap()).collect()
}

/// An edge function equal to 1 on a seeded breadth-first spanning forest and
/// forced by the square equation elsewhere.
pub fn synthesize_edge(e: &WeightedPoset, seed: u64) -> Result<EdgeFunction> {
    synthesize_edge_with(e, seed, &BTreeMap::new())
}

/// Like [`synthesize_edge`], but with prescribed values on some covers. The
/// prescribed covers are placed in the spanning forest first; the remaining
/// prescribed values must agree with what the square equation forces.
pub fn synthesize_edge_with(e: &WeightedPoset, seed: u64, prescribed: &BTreeMap<usize, RatFunc>) -> Result<EdgeFunction> {
    if let Some(w) = check_excellent(e).witness {
        return Err(Error::NotExcellent(format!(
            "[{}; {}, {}] fails clause {}: {}",
            e.label(w.base),
            w.x,
            w.y,
            w.clause,
            w.detail
        )));
    }
    let raw = raw_solution(e)?;
    let first: Vec<usize> = prescribed.keys().copied().collect();
    let tree = spanning_forest(e, seed, &first);
    let target = |ci: usize| prescribed.get(&ci).cloned().unwrap_or_else(RatFunc::one);
    let a = solve_gauge(e, &tree, |ci| &target(ci) / &raw[ci]);
    let c = EdgeFunction { values: raw }.gauge(e, &a);
    for (&ci, v) in prescribed {
        if c.get(ci) != v {
            let cv = e.cover(ci);
            return Err(Error::IncompatibleEdgeFunctions(format!(
                "prescribed value {v} on {} -> {} conflicts with the forced value {}",
                e.label(cv.src),
                e.label(cv.dst),
                c.get(ci)
            )));
        }
    }
    Ok(c)
}

/// Recovers `a` with `c1(λ; x) = c2(λ; x) a(λ) / a(λ ∪ x)` on every cover.
pub fn coboundary(e: &WeightedPoset, c1: &EdgeFunction, c2: &EdgeFunction) -> Result<Vec<RatFunc>> {
    let tree = spanning_forest(e, 0, &[]);
    let a = solve_gauge(e, &tree, |ci| c1.get(ci) / c2.get(ci));
    if c2.gauge(e, &a) != *c1 {
        return Err(Error::IncompatibleEdgeFunctions("the ratio is not a coboundary".into()));
    }
    Ok(a)
}

fn monomial_of(x: &RatFunc) -> Result<Monomial> {
    match x.as_monomial() {
        Some((c, m)) if c == 1.into() => Ok(m),
        _ => Err(Error::NotAddable(format!("{x} (closed forms need monomial weights)"))),
    }
}

/// `-Λ(-A x⁻¹ + (1-q)(1-t) B x⁻¹ + 1)` for a content multiset `B`.
pub fn lambda_closed_form(contents: &[RatFunc], a: &Character, x: &RatFunc) -> Result<RatFunc> {
    let xm = monomial_of(x)?;
    let mut b = Character::new();
    for c in contents {
        b.add_term(monomial_of(c)?, 1);
    }
    let one = Monomial::ONE;
    let qt_factor = Character::from_terms([(one, 1), (Monomial::q(1), -1), (Monomial::t(1), -1), (Monomial::qt(1, 1), 1)]);
    let xinv = xm.inv();
    let arg = a
        .mul_monomial(&xinv)
        .neg()
        .add(&qt_factor.mul(&b).mul_monomial(&xinv))
        .add(&Character::monomial(one));
    Ok(-arg.lambda()?)
}

/// Addable contents of a partition given by its row lengths.
pub fn addable_contents(lambda: &[usize]) -> Vec<RatFunc> {
    let mut out = Vec::new();
    for r in 0..=lambda.len() {
        let cur = lambda.get(r).copied().unwrap_or(0);
        if r == 0 || lambda[r - 1] > cur {
            out.push(crate::posets::cell_content(r + 1, cur + 1));
        }
    }
    out
}

/// The closed-form edge value for partitions.
pub fn partition_edge(lambda: &[usize], x: &RatFunc) -> Result<RatFunc> {
    if !addable_contents(lambda).contains(x) {
        return Err(Error::NotAddable(x.to_string()));
    }
    let contents: Vec<RatFunc> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (1..=len).map(move |c| crate::posets::cell_content(r + 1, c)))
        .collect();
    lambda_closed_form(&contents, &Character::monomial(Monomial::ONE), x)
}

/// The closed form applied to every cover, with the linear term `A`.
pub fn closed_form_edge(e: &WeightedPoset, a: &Character) -> Result<EdgeFunction> {
    let values = e
        .covers()
        .iter()
        .map(|c| lambda_closed_form(&e.element(c.src).contents, a, &c.weight))
        .collect::<Result<Vec<_>>>()?;
    EdgeFunction::new(values)
}

/// The partition closed form on a (possibly bounded) partition ideal.
pub fn partition_edge_function(e: &WeightedPoset) -> Result<EdgeFunction> {
    closed_form_edge(e, &Character::monomial(Monomial::ONE))
}

/// `(1 - y/u)(1 - qt y/u) / ((1 - q y/u)(1 - t y/u))`.
pub fn psi_std(y: &RatFunc, u: &RatFunc) -> Result<RatFunc> {
    if u.is_zero() {
        return Err(Error::PoleAtInput(format!("psi({y}, 0)")));
    }
    let q = RatFunc::q();
    let t = RatFunc::t();
    let r = y / u;
    let one = RatFunc::one();
    let den = (&one - &(&q * &r)) * (&one - &(&t * &r));
    if den.is_zero() {
        return Err(Error::PoleAtInput(format!("psi({y}, {u})")));
    }
    Ok((&one - &r) * (&one - &(&q * &t * &r)) / den)
}

/// The product of ψ-values over a boolean subset: `Π_{j ∈ S} ψ(a_j, x)`.
pub fn boolean_edge(weights: &[RatFunc], subset: &[usize], x: &RatFunc) -> Result<RatFunc> {
    let l = weights.iter().position(|w| w == x).ok_or_else(|| Error::NotAddable(x.to_string()))?;
    if subset.contains(&l) {
        return Err(Error::NotAddable(x.to_string()));
    }
    subset.iter().map(|&j| psi_std(&weights[j], x)).product()
}

/// The boolean closed form on every cover of a boolean poset.
pub fn boolean_edge_function(e: &WeightedPoset) -> Result<EdgeFunction> {
    let values = e
        .covers()
        .iter()
        .map(|c| {
            e.element(c.src)
                .contents
                .iter()
                .map(|b| psi_std(b, &c.weight))
                .product::<Result<RatFunc>>()
        })
        .collect::<Result<Vec<_>>>()?;
    EdgeFunction::new(values)
}

/// A bivariate function `ψ(y, u)`. Custom expressions are written in the spare
/// variables `a7` (for `y`) and `a8` (for `u`).
#[derive(Clone, Debug, PartialEq)]
pub enum Psi {
    Std,
    Expr(RatFunc),
}

pub const PSI_Y: usize = 7;
pub const PSI_U: usize = 8;

fn substitute(f: &RatFunc, y: &RatFunc, u: &RatFunc) -> Result<RatFunc> {
    let (n, d) = f.fraction();
    let eval = |p: &bqt_field::Poly| -> RatFunc {
        p.terms()
            .iter()
            .map(|(e, c)| {
                let mut rest = *e;
                let ey = rest[bqt_field::var_a(PSI_Y)];
                let eu = rest[bqt_field::var_a(PSI_U)];
                rest[bqt_field::var_a(PSI_Y)] = 0;
                rest[bqt_field::var_a(PSI_U)] = 0;
                RatFunc::from_bigint(c.clone())
                    * RatFunc::monomial(Monomial::from_exps(&rest))
                    * y.pow(ey as i32)
                    * u.pow(eu as i32)
            })
            .sum()
    };
    let den = eval(&d);
    if den.is_zero() {
        return Err(Error::PoleAtInput(format!("psi({y}, {u})")));
    }
    Ok(eval(&n) / den)
}

impl Psi {
    pub fn eval(&self, y: &RatFunc, u: &RatFunc) -> Result<RatFunc> {
        match self {
            Psi::Std => psi_std(y, u),
            Psi::Expr(f) => substitute(f, y, u),
        }
    }
}

/// Checks `ψ1(x, y) / ψ2(y, x) = Υ(x, y)` with `x`, `y` symbolic.
pub fn check_psi_pair(psi1: &Psi, psi2: &Psi) -> Result<()> {
    let x = RatFunc::a(PSI_Y);
    let y = RatFunc::a(PSI_U);
    let lhs = psi1.eval(&x, &y)? / psi2.eval(&y, &x)?;
    if lhs != upsilon(&x, &y)? {
        return Err(Error::IncompatibleEdgeFunctions(format!("psi pair ratio is {lhs}, not upsilon")));
    }
    Ok(())
}

/// Per-component base elements: the first minimal element reached in each
/// connected component, for every element.
pub fn component_roots(e: &WeightedPoset) -> Vec<usize> {
    let mut root = vec![usize::MAX; e.len()];
    let mut starts = e.minimal_elements();
    starts.extend(0..e.len());
    for s in starts {
        if root[s] != usize::MAX {
            continue;
        }
        root[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &ci in e.up(v).iter().chain(e.down(v)) {
                let c = e.cover(ci);
                let w = if c.src == v { c.dst } else { c.src };
                if root[w] == usize::MAX {
                    root[w] = s;
                    queue.push_back(w);
                }
            }
        }
    }
    root
}

/// `M_ψ(λ; u) = base(root, u) · Π ψ(b, u)^(n_λ(b) - n_root(b))` over the signed
/// content records, so that `M_ψ(λ ∪ y; u) = M_ψ(λ; u) ψ(y, u)`.
pub fn m_psi(
    e: &WeightedPoset,
    lam: usize,
    psi: &Psi,
    base: &dyn Fn(usize, &RatFunc) -> Result<RatFunc>,
    u: &RatFunc,
) -> Result<RatFunc> {
    let root = component_roots(e)[lam];
    let mut diff = e.signed_contents(lam);
    for (b, n) in e.signed_contents(root) {
        *diff.entry(b).or_insert(0) -= n;
    }
    let mut acc = base(root, u)?;
    for (b, n) in diff {
        if n == 0 {
            continue;
        }
        let p = psi.eval(&b, u)?;
        if p.is_zero() && n < 0 {
            return Err(Error::PoleAtInput(format!("psi({b}, {u}) vanishes")));
        }
        acc = acc * p.pow(n as i32);
    }
    Ok(acc)
}

/// The default base: 1 at every component root.
pub fn unit_base(_root: usize, _u: &RatFunc) -> Result<RatFunc> {
    Ok(RatFunc::one())
}

/// Inputs for the edge function on a product of two posets.
pub struct ProductEdgeInput<'a> {
    pub e1: &'a WeightedPoset,
    pub c1: &'a EdgeFunction,
    pub e2: &'a WeightedPoset,
    pub c2: &'a EdgeFunction,
    pub psi1: &'a Psi,
    pub psi2: &'a Psi,
    pub base1: &'a dyn Fn(usize, &RatFunc) -> Result<RatFunc>,
    pub base2: &'a dyn Fn(usize, &RatFunc) -> Result<RatFunc>,
}

/// `c((λ, μ); x) = c1(λ; x) M_ψ2(μ; x)` when `x` is addable for `λ`, and
/// `c2(μ; x) M_ψ1(λ; x)` otherwise, on the cover order of `product(e1, e2)`.
pub fn product_edge(p: &WeightedPoset, inp: &ProductEdgeInput) -> Result<EdgeFunction> {
    check_psi_pair(inp.psi1, inp.psi2)?;
    let n2 = inp.e2.len();
    let mut values = Vec::with_capacity(p.covers().len());
    for c in p.covers() {
        let (i, j) = (c.src / n2, c.src % n2);
        let (di, dj) = (c.dst / n2, c.dst % n2);
        debug_assert_eq!(c.dst, product_index(di, dj, n2));
        let violated = |err: Error, other: &WeightedPoset, at: usize| match err {
            Error::PoleAtInput(_) => Error::VeryGeneralPositionViolated(
                c.weight.to_string(),
                other.element(at).contents.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","),
            ),
            other => other,
        };
        let v = if di != i {
            let ci = inp.c1.at(inp.e1, i, &c.weight).ok_or_else(|| Error::NotAddable(c.weight.to_string()))?;
            let m = m_psi(inp.e2, j, inp.psi2, inp.base2, &c.weight).map_err(|err| violated(err, inp.e2, j))?;
            ci * &m
        } else {
            let cj = inp.c2.at(inp.e2, j, &c.weight).ok_or_else(|| Error::NotAddable(c.weight.to_string()))?;
            let m = m_psi(inp.e1, i, inp.psi1, inp.base1, &c.weight).map_err(|err| violated(err, inp.e1, i))?;
            cj * &m
        };
        if v.is_zero() {
            return Err(Error::VeryGeneralPositionViolated(c.weight.to_string(), p.label(c.src).to_string()));
        }
        values.push(v);
    }
    EdgeFunction::new(values)
}
