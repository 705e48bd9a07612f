//! Canonical rational functions.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::FieldError;
use crate::gcd::gcd;
use crate::monomial::Monomial;
use crate::poly::{Exps, Poly};

/// `shift * num / den` with `num`, `den` free of monomial factors, coprime, and the
/// leading coefficient of `den` positive. Zero is `0/1` with trivial shift, so equal
/// values have identical representations. The derived order is structural; it is
/// only used to make collections deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    shift: Monomial,
    num: Poly,
    den: Poly,
}

fn coprime_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        let ca = a.content();
        let cb = b.content();
        Poly::constant(num_integer::Integer::gcd(&ca, &cb))
    } else {
        gcd(a, b)
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { shift: Monomial::ONE, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { shift: Monomial::ONE, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn monomial(m: Monomial) -> Self {
        RatFunc { shift: m, num: Poly::one(), den: Poly::one() }
    }

    pub fn term(c: i64, m: Monomial) -> Self {
        Self::from_int(c).mul_monomial(&m)
    }

    /// The half power q^(1/2).
    pub fn v() -> Self {
        Self::monomial(Monomial::var(crate::VAR_V, 1))
    }

    pub fn q() -> Self {
        Self::monomial(Monomial::q(1))
    }

    pub fn t() -> Self {
        Self::monomial(Monomial::t(1))
    }

    /// The framing parameter a_i (1-based).
    pub fn a(i: usize) -> Self {
        Self::monomial(Monomial::a(i, 1))
    }

    /// q^e as a rational function.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Monomial::q(e))
    }

    /// Builds `num / den` from arbitrary polynomials.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = coprime_gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Self::finish(Monomial::ONE, num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::finish(Monomial::ONE, p, Poly::one())
    }

    /// Normalizes monomial factors and sign of an already coprime pair.
    fn finish(shift: Monomial, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mn = num.monomial_content();
        let md = den.monomial_content();
        let shift = shift * Monomial::from_exps(&mn) / Monomial::from_exps(&md);
        let mut num = num.div_monomial(&mn);
        let mut den = den.div_monomial(&md);
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// Monomial shift, numerator and denominator of the canonical form.
    pub fn parts(&self) -> (&Monomial, &Poly, &Poly) {
        (&self.shift, &self.num, &self.den)
    }

    /// Numerator and denominator as ordinary polynomials (shift distributed).
    pub fn fraction(&self) -> (Poly, Poly) {
        let (pos, neg) = self.shift.split();
        (self.num.mul_term(&pos, &BigInt::one()), self.den.mul_term(&neg, &BigInt::one()))
    }

    /// `Some((c, m))` when the value is `c * m` for a Laurent monomial `m`.
    pub fn as_monomial(&self) -> Option<(BigInt, Monomial)> {
        if self.is_zero() || !self.den.is_one() {
            return None;
        }
        let c = self.num.as_constant()?;
        Some((c, self.shift))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        RatFunc { shift: self.shift * *m, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        RatFunc { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { shift: self.shift.inv(), num, den })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift * other.shift;
        if self.den.is_one() && other.den.is_one() {
            return Self::finish(shift, self.num.mul(&other.num), Poly::one());
        }
        let g1 = coprime_gcd(&self.num, &other.den);
        let g2 = coprime_gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::finish(shift, n1.mul(&n2), d1.mul(&d2))
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m = self.shift.meet(&other.shift);
        let ea: Exps = (self.shift / m).split().0;
        let eb: Exps = (other.shift / m).split().0;
        let one = BigInt::one();
        let an = self.num.mul_term(&ea, &one);
        let bn = other.num.mul_term(&eb, &one);
        let d1 = coprime_gcd(&self.den, &other.den);
        if d1.is_one() {
            let num = an.mul(&other.den).add(&bn.mul(&self.den));
            return Self::finish(m, num, self.den.mul(&other.den));
        }
        let ad = self.den.div_exact(&d1).expect("gcd divides");
        let bd = other.den.div_exact(&d1).expect("gcd divides");
        let t = an.mul(&bd).add(&bn.mul(&ad));
        if t.is_zero() {
            return Self::zero();
        }
        let d2 = coprime_gcd(&t, &d1);
        let num = t.div_exact(&d2).expect("gcd divides");
        let den = ad.mul(&other.den.div_exact(&d2).expect("gcd divides"));
        Self::finish(m, num, den)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        if self.is_zero() {
            return if e == 0 { Self::one() } else { Self::zero() };
        }
        RatFunc {
            shift: self.shift.pow(e),
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        }
        .renormalize_sign()
    }

    fn renormalize_sign(self) -> Self {
        if self.den.lc().is_negative() {
            RatFunc { shift: self.shift, num: self.num.neg(), den: self.den.neg() }
        } else {
            self
        }
    }

    /// The field automorphism v -> 1/v, t -> 1/t, a_i -> 1/a_i.
    pub fn theta(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = Monomial::from_exps(&self.num.degrees());
        let dd = Monomial::from_exps(&self.den.degrees());
        let shift = self.shift.inv() / dn * dd;
        RatFunc { shift, num: self.num.reverse(), den: self.den.reverse() }.renormalize_sign()
    }

    /// True when every exponent of v in the value is even (no half powers of q).
    pub fn is_integral_in_q(&self) -> bool {
        self.shift.0[crate::VAR_V] % 2 == 0
            && self.num.exponent_gcd(crate::VAR_V).is_multiple_of(2)
            && self.den.exponent_gcd(crate::VAR_V).is_multiple_of(2)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<Monomial> for RatFunc {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &'a RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &'a RatFunc) -> RatFunc {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc, b: &RatFunc| a.add_ref(b));
forward_binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| a.add_ref(&b.neg()));
forward_binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| a.mul_ref(b));
forward_binop!(Div, div, |a: &RatFunc, b: &RatFunc| a
    .checked_div(b)
    .expect("division by zero"));

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::one(), |a, b| a * b)
    }
}
