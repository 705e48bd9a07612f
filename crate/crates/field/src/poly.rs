//! Sparse multivariate polynomials over Z in the fixed variable list.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::NVARS;

/// Exponent vector of a polynomial term (non-negative).
pub type Exps = [u32; NVARS];

pub const ZERO_EXPS: Exps = [0; NVARS];

fn total(e: &Exps) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

/// Graded lexicographic order with v > t > a1 > ... when degrees tie.
pub fn grlex(a: &Exps, b: &Exps) -> Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

/// A polynomial stored as terms sorted by decreasing [`grlex`], no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: Vec<(Exps, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(ZERO_EXPS, c)
    }

    pub fn term(e: Exps, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(e, c)] }
        }
    }

    pub fn var(i: usize) -> Self {
        let mut e = ZERO_EXPS;
        e[i] = 1;
        Self::term(e, BigInt::one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Exps, BigInt)>) -> Self {
        terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
        let mut out: Vec<(Exps, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS)
    }

    /// Constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.terms[0].0 == ZERO_EXPS => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                prods.push((add_exps(ea, eb), ca * cb));
            }
        }
        Self::from_terms(prods)
    }

    /// Multiplies by a single term; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, e: &Exps, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(te, tc)| (add_exps(te, e), tc * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&ZERO_EXPS, c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by an integer; panics if some coefficient is not divisible.
    pub fn div_int(&self, c: &BigInt) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, tc)| {
                    let (q, r) = tc.div_rem(c);
                    assert!(r.is_zero(), "inexact integer division");
                    (*e, q)
                })
                .collect(),
        }
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent over all terms (the largest monomial divisor).
    pub fn monomial_content(&self) -> Exps {
        let mut m = match self.terms.first() {
            Some(t) => t.0,
            None => return ZERO_EXPS,
        };
        for (e, _) in &self.terms[1..] {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    /// Divides every exponent vector by `m`, which must divide all terms.
    pub fn div_monomial(&self, m: &Exps) -> Self {
        if *m == ZERO_EXPS {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = *e;
                    for i in 0..NVARS {
                        ne[i] -= m[i];
                    }
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Componentwise maximum exponent.
    pub fn degrees(&self) -> Exps {
        let mut m = ZERO_EXPS;
        for (e, _) in &self.terms {
            for i in 0..NVARS {
                m[i] = m[i].max(e[i]);
            }
        }
        m
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    /// Bitmask of variables occurring with positive exponent.
    pub fn support(&self) -> u32 {
        let mut s = 0u32;
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    s |= 1 << i;
                }
            }
        }
        s
    }

    pub fn max_norm(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Substitutes `x_var -> 1/x_var` and clears denominators by the degree vector.
    pub fn reverse(&self) -> Self {
        let d = self.degrees();
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = *e;
                    for i in 0..NVARS {
                        ne[i] = d[i] - e[i];
                    }
                    (ne, c.clone())
                })
                .collect(),
        )
    }

    /// Substitutes an integer for one variable.
    pub fn eval_var(&self, var: usize, x: &BigInt) -> Self {
        let deg = self.degree_in(var) as usize;
        let mut powers = Vec::with_capacity(deg + 1);
        powers.push(BigInt::one());
        for i in 1..=deg {
            let p = &powers[i - 1] * x;
            powers.push(p);
        }
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = *e;
                    ne[var] = 0;
                    (ne, c * &powers[e[var] as usize])
                })
                .collect(),
        )
    }

    /// Coefficients with respect to one variable, indexed by its exponent.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[var] = 0;
            buckets[e[var] as usize].push((ne, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    /// Replaces every exponent of `var` by `e / k`; all exponents must be multiples of `k`.
    pub fn deflate(&self, var: usize, k: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = *e;
                    ne[var] /= k;
                    (ne, c.clone())
                })
                .collect(),
        )
    }

    pub fn inflate(&self, var: usize, k: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = *e;
                    ne[var] *= k;
                    (ne, c.clone())
                })
                .collect(),
        )
    }

    /// Gcd of the exponents of `var` across all terms (0 if the variable is absent).
    pub fn exponent_gcd(&self, var: usize) -> u32 {
        self.terms.iter().fold(0u32, |g, (e, _)| g.gcd(&e[var]))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (de, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let ne = sub_exps(e, de)?;
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((ne, q));
            }
            return Some(Poly { terms: out });
        }
        let dd = d.degrees();
        let sd = self.degrees();
        for i in 0..NVARS {
            if dd[i] > sd[i] {
                return None;
            }
        }
        let (dlm, dlc) = (&d.terms[0].0, &d.terms[0].1);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while !rem.is_zero() {
            let (re, rc) = &rem.terms[0];
            let qe = sub_exps(re, dlm)?;
            let (qc, r) = rc.div_rem(dlc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&d.mul_term(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Pseudo-remainder of `self` by `g` with respect to `var`.
    pub fn prem(&self, g: &Poly, var: usize) -> Poly {
        let dg = g.degree_in(var);
        let lcg = g.coeffs_in(var).pop().expect("nonzero divisor");
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(var);
            if dr < dg {
                break;
            }
            let lcr = r.coeffs_in(var).pop().expect("nonzero");
            let mut shift = ZERO_EXPS;
            shift[var] = dr - dg;
            let sub = g.mul(&lcr).mul_term(&shift, &BigInt::one());
            r = r.mul(&lcg).sub(&sub);
        }
        r
    }

    /// Makes the leading coefficient positive.
    pub fn normalize_sign(self) -> Self {
        if !self.is_zero() && self.lc().is_negative() {
            self.neg()
        } else {
            self
        }
    }
}

pub fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut out = *a;
    for i in 0..NVARS {
        out[i] += b[i];
    }
    out
}

pub fn sub_exps(a: &Exps, b: &Exps) -> Option<Exps> {
    let mut out = *a;
    for i in 0..NVARS {
        out[i] = a[i].checked_sub(b[i])?;
    }
    Some(out)
}

pub fn min_exps(a: &Exps, b: &Exps) -> Exps {
    let mut out = *a;
    for i in 0..NVARS {
        out[i] = a[i].min(b[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[(usize, u32)], i64)]) -> Poly {
        Poly::from_terms(
            terms
                .iter()
                .map(|(vs, c)| {
                    let mut e = ZERO_EXPS;
                    for &(i, k) in vs.iter() {
                        e[i] = k;
                    }
                    (e, BigInt::from(*c))
                })
                .collect(),
        )
    }

    #[test]
    fn mul_then_divide() {
        let a = p(&[(&[(0, 2)], 1), (&[(1, 1)], -1)]);
        let b = p(&[(&[], 1), (&[(0, 1), (2, 3)], 5)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
    }

    #[test]
    fn add_cancels() {
        let a = p(&[(&[(0, 2)], 3), (&[], -1)]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&a.neg()), Poly::zero());
    }

    #[test]
    fn reverse_is_involutive_without_monomial_factor() {
        let a = p(&[(&[(0, 2)], 3), (&[(1, 1)], -1), (&[], 7)]);
        assert_eq!(a.reverse().reverse(), a);
    }

    #[test]
    fn pseudo_remainder_vanishes_on_multiples() {
        let a = p(&[(&[(0, 1)], 1), (&[(1, 1)], -1)]);
        let b = p(&[(&[(0, 1)], 2), (&[(1, 2)], 1)]);
        assert!(a.mul(&b).prem(&a, 0).is_zero());
    }
}
