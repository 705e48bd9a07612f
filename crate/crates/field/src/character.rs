//! Characters: finite integer combinations of Laurent monomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::FieldError;
use crate::monomial::Monomial;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Character {
    terms: BTreeMap<Monomial, i64>,
}

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(it: I) -> Self {
        let mut c = Self::new();
        for (m, n) in it {
            c.add_term(m, n);
        }
        c
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_terms([(m, 1)])
    }

    pub fn add_term(&mut self, m: Monomial, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn multiplicity(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.clone();
        for (m, n) in &other.terms {
            c.add_term(*m, *n);
        }
        c
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, n)| (*m, -n)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, n)| (*m, n * k)))
    }

    pub fn mul_monomial(&self, x: &Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, n)| (*m * *x, *n)))
    }

    /// Product of two characters (convolution of multiplicities).
    pub fn mul(&self, other: &Self) -> Self {
        let mut c = Self::new();
        for (m1, n1) in &self.terms {
            for (m2, n2) in &other.terms {
                c.add_term(*m1 * *m2, n1 * n2);
            }
        }
        c
    }

    /// `prod (1 - m)^(n_m)`; rejects a nonzero multiplicity of the trivial monomial.
    pub fn lambda(&self) -> Result<RatFunc, FieldError> {
        let c0 = self.multiplicity(&Monomial::ONE);
        if c0 != 0 {
            return Err(FieldError::NonzeroConstantTerm(c0));
        }
        let mut num = RatFunc::one();
        let mut den = RatFunc::one();
        for (m, &n) in &self.terms {
            let f = RatFunc::one() - RatFunc::monomial(*m);
            let p = f.pow(n.unsigned_abs() as i32);
            if n > 0 {
                num = num * p;
            } else {
                den = den * p;
            }
        }
        num.checked_div(&den)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, n) in &self.terms {
            let mono = RatFunc::monomial(*m).to_string();
            let (sign, abs) = if *n < 0 { ("-", -n) } else { ("+", *n) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if abs == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}
