//! Laurent monomials in v, t, a1, ..., a8.

use std::ops::{Div, Mul};

use crate::poly::{Exps, ZERO_EXPS};
use crate::{NVARS, VAR_T, VAR_V};

/// A Laurent monomial; entry 0 is the exponent of v, so q^i is stored as v^(2i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize, e: i32) -> Self {
        let mut m = [0; NVARS];
        m[i] = e;
        Monomial(m)
    }

    /// q^e t^f.
    pub fn qt(e: i32, f: i32) -> Self {
        let mut m = [0; NVARS];
        m[VAR_V] = 2 * e;
        m[VAR_T] = f;
        Monomial(m)
    }

    pub fn q(e: i32) -> Self {
        Self::qt(e, 0)
    }

    pub fn t(e: i32) -> Self {
        Self::qt(0, e)
    }

    /// The framing parameter a_i (1-based).
    pub fn a(i: usize, e: i32) -> Self {
        Self::var(crate::var_a(i), e)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn inv(&self) -> Self {
        let mut m = self.0;
        for x in m.iter_mut() {
            *x = -*x;
        }
        Monomial(m)
    }

    pub fn pow(&self, k: i32) -> Self {
        let mut m = self.0;
        for x in m.iter_mut() {
            *x *= k;
        }
        Monomial(m)
    }

    /// Image under v -> 1/v, t -> 1/t, a_i -> 1/a_i.
    pub fn theta(&self) -> Self {
        self.inv()
    }

    /// Splits into (positive part, negative part) as polynomial exponent vectors.
    pub fn split(&self) -> (Exps, Exps) {
        let mut pos = ZERO_EXPS;
        let mut neg = ZERO_EXPS;
        for i in 0..NVARS {
            if self.0[i] >= 0 {
                pos[i] = self.0[i] as u32;
            } else {
                neg[i] = (-self.0[i]) as u32;
            }
        }
        (pos, neg)
    }

    pub fn from_exps(e: &Exps) -> Self {
        let mut m = [0; NVARS];
        for i in 0..NVARS {
            m[i] = e[i] as i32;
        }
        Monomial(m)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = (*a).min(b);
        }
        Monomial(m)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(m)
    }
}

impl Div for Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Monomial) -> Monomial {
        self * rhs.inv()
    }
}
