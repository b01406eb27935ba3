//! Binary floating point with an arbitrary-length mantissa.
//!
//! A value is `mant * 2^exp`. The mantissa is kept to at most `prec` bits;
//! results of `+ - * / sqrt` are rounded to nearest at that length, so the
//! relative error of one operation is below `2^(1-prec)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{self, Rational};
use super::NumError;

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: u32 = 24;

/// Working precision shared by every HP/HPC constructor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision {
    bits: u32,
    digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 60;

    /// `digits` decimal digits plus a few guard bits.
    pub fn digits(digits: u32) -> Self {
        let digits = digits.max(4);
        let bits = (f64::from(digits) * LOG2_10).ceil() as u32 + GUARD_BITS;
        Precision { bits, digits }
    }

    pub fn decimal_digits(self) -> u32 {
        self.digits
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Same nominal digits, `extra` more mantissa bits. Used for internal
    /// evaluations that lose bits to cancellation.
    pub fn extended(self, extra: u32) -> Self {
        Precision {
            bits: self.bits + extra,
            digits: self.digits,
        }
    }

    /// `10^(offset - P)`, the unit most tolerances are expressed in.
    pub fn tolerance(self, offset: i64) -> Hp {
        Hp::pow10(offset - i64::from(self.digits), self)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::digits(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone)]
pub struct Hp {
    mant: BigInt,
    exp: i64,
    prec: Precision,
}

fn bit_len(x: &BigInt) -> i64 {
    x.bits() as i64
}

/// Shift right by `shift` bits, rounding half away from zero.
fn shr_round(x: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return x.clone();
    }
    let (sign, mag) = (x.sign(), x.magnitude());
    let half = num_bigint::BigUint::one() << (shift - 1);
    let rounded: num_bigint::BigUint = (mag + half) >> shift;
    BigInt::from_biguint(if rounded.is_zero() { Sign::NoSign } else { sign }, rounded)
}

impl Hp {
    fn raw(mant: BigInt, exp: i64, prec: Precision) -> Self {
        let mut v = Hp { mant, exp, prec };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let excess = bit_len(&self.mant) - i64::from(self.prec.bits);
        if excess > 0 {
            self.mant = shr_round(&self.mant, excess as u64);
            self.exp += excess;
            // rounding may carry into a new bit
            if bit_len(&self.mant) > i64::from(self.prec.bits) {
                self.mant >>= 1u32;
                self.exp += 1;
            }
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Hp {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: Precision) -> Self {
        Hp::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Hp::raw(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        Hp::raw(v.clone(), 0, prec)
    }

    /// Exact up to one rounding.
    pub fn from_rational(q: &Rational, prec: Precision) -> Self {
        if q.is_integer() {
            return Hp::from_bigint(q.numer(), prec);
        }
        let num = q.numer();
        let den = q.denom();
        let shift = i64::from(prec.bits) + 2 + bit_len(den) - bit_len(num);
        let shift = shift.max(0);
        let scaled: BigInt = num << (shift as u64);
        let (quot, rem) = scaled.div_rem(den);
        // fold the remainder into a sticky bit so the final rounding is correct
        let mant = (quot << 1u32) + rem.signum();
        Hp::raw(mant, -shift - 1, prec)
    }

    pub fn from_f64(v: f64, prec: Precision) -> Self {
        if v == 0.0 {
            return Hp::zero(prec);
        }
        let q = rational::from_f64(v).expect("finite f64");
        Hp::from_rational(&q, prec)
    }

    /// `10^k`, correctly rounded.
    pub fn pow10(k: i64, prec: Precision) -> Self {
        let p = BigInt::from(10).pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Hp::from_bigint(&p, prec)
        } else {
            Hp::from_rational(&Rational::new(BigInt::one(), p), prec)
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Re-round to another precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        Hp::raw(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Hp {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Hp {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// Position of the leading bit: `|x|` lies in `[2^(t-1), 2^t)`.
    /// Returns `None` for zero.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bit_len(&self.mant))
        }
    }

    /// Exact rational value of this binary float.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << (self.exp as u64))
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = bit_len(&self.mant);
        let keep = len.min(60);
        let m = shr_round(&self.mant, (len - keep) as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + (len - keep);
        m * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            shr_round(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn sqrt(&self) -> Result<Self, NumError> {
        if self.is_negative() {
            return Err(NumError::NegativeSqrt(self.to_sci_string(12)));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let want = 2 * i64::from(self.prec.bits) + 4;
        let mut shift = (want - bit_len(&self.mant)).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m: BigInt = &self.mant << (shift as u64);
        let root = m.sqrt();
        let exact = &root * &root == m;
        let mant = (root << 1u32) + if exact { 0 } else { 1 };
        Ok(Hp::raw(mant, (self.exp - shift) / 2 - 1, self.prec))
    }

    pub fn recip(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(Hp::one(self.prec) / self)
    }

    pub fn powi(&self, k: i64) -> Self {
        let mut base = if k < 0 {
            Hp::one(self.prec) / self
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Hp::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn common_prec(&self, other: &Hp) -> Precision {
        if self.prec.bits >= other.prec.bits {
            self.prec
        } else {
            other.prec
        }
    }

    fn add_signed(&self, other: &Hp, negate_other: bool) -> Hp {
        let prec = self.common_prec(other);
        let rhs_mant = if negate_other {
            -other.mant.clone()
        } else {
            other.mant.clone()
        };
        if other.is_zero() {
            return self.with_precision(prec);
        }
        if self.is_zero() {
            return Hp::raw(rhs_mant, other.exp, prec);
        }
        let (ta, tb) = (self.top_bit().unwrap(), other.top_bit().unwrap());
        let margin = i64::from(prec.bits) + 4;
        if ta - tb > margin {
            return self.with_precision(prec);
        }
        if tb - ta > margin {
            return Hp::raw(rhs_mant, other.exp, prec);
        }
        let exp = self.exp.min(other.exp);
        let a: BigInt = &self.mant << ((self.exp - exp) as u64);
        let b: BigInt = rhs_mant << ((other.exp - exp) as u64);
        Hp::raw(a + b, exp, prec)
    }

    /// Scientific-notation decimal string with `digits` significant digits,
    /// e.g. `-1.2345e-7`. Zero is rendered as `0`.
    pub fn to_sci_string(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let q = self.to_rational().abs();
        let mut e10 = ((self.top_bit().unwrap() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let scaled = loop {
            let k = i64::from(digits) - 1 - e10;
            let s = rational::round_half_away(&(&q * rational::pow10(k)));
            let len = s.to_string().len() as i64;
            if len > i64::from(digits) {
                e10 += 1;
            } else if len < i64::from(digits) {
                e10 -= 1;
            } else {
                break s;
            }
        };
        let s = scaled.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Parse a decimal literal (`-12.5`, `3e-4`, `1.25E+2`) or a rational `p/q`.
    pub fn parse(s: &str, prec: Precision) -> Result<Self, NumError> {
        let q = rational::parse_decimal(s).or_else(|_| rational::parse_rational(s))?;
        Ok(Hp::from_rational(&q, prec))
    }
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hp({})", self.to_sci_string(self.prec.digits))
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|d| d as u32).unwrap_or(self.prec.digits);
        f.write_str(&self.to_sci_string(digits))
    }
}

impl PartialEq for Hp {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Hp {}

impl PartialOrd for Hp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hp {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.add_signed(other, true);
        d.signum().cmp(&0)
    }
}

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp {
            mant: -self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for &Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl $trait<&Hp> for &Hp {
            type Output = Hp;
            fn $method(self, rhs: &Hp) -> Hp {
                let f: fn(&Hp, &Hp) -> Hp = $imp;
                f(self, rhs)
            }
        }
        impl $trait<Hp> for Hp {
            type Output = Hp;
            fn $method(self, rhs: Hp) -> Hp {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Hp> for Hp {
            type Output = Hp;
            fn $method(self, rhs: &Hp) -> Hp {
                (&self).$method(rhs)
            }
        }
        impl $trait<Hp> for &Hp {
            type Output = Hp;
            fn $method(self, rhs: Hp) -> Hp {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_signed(b, false));
forward_binop!(Sub, sub, |a, b| a.add_signed(b, true));
forward_binop!(Mul, mul, |a, b| {
    let prec = a.common_prec(b);
    Hp::raw(&a.mant * &b.mant, a.exp + b.exp, prec)
});
forward_binop!(Div, div, |a, b| {
    assert!(!b.is_zero(), "Hp division by zero");
    let prec = a.common_prec(b);
    if a.is_zero() {
        return Hp::zero(prec);
    }
    let shift = (i64::from(prec.bits) + 3 + bit_len(&b.mant) - bit_len(&a.mant)).max(0);
    let num: BigInt = &a.mant << (shift as u64);
    let (quot, rem) = num.div_rem(&b.mant);
    // truncated quotient plus a sticky bit carrying the sign of the true value
    let sticky = if rem.is_zero() { 0 } else { a.signum() * b.signum() };
    let mant = (quot << 1u32) + sticky;
    Hp::raw(mant, a.exp - b.exp - shift - 1, prec)
});

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::digits(60)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn third_times_three_is_one() {
        let third = Hp::from_rational(&q(1, 3), p());
        let three = Hp::from_i64(3, p());
        let err = (&third * &three - Hp::one(p())).abs();
        assert!(err < p().tolerance(1));
    }

    #[test]
    fn promotion_is_one_rounding() {
        let x = q(22, 7);
        let h = Hp::from_rational(&x, p());
        let back = h.to_rational();
        let rel = ((back - &x) / &x).abs();
        let ulp = Rational::new(BigInt::one(), BigInt::one() << (p().bits() - 1) as u64);
        assert!(rel <= ulp);
    }

    #[test]
    fn sqrt_two_squared() {
        let two = Hp::from_i64(2, p());
        let r = two.sqrt().unwrap();
        assert!((&r * &r - &two).abs() < p().tolerance(1));
        assert!(r.to_sci_string(20).starts_with("1.414213562373095048"));
    }

    #[test]
    fn sqrt_of_negative_is_an_error() {
        assert!(Hp::from_i64(-4, p()).sqrt().is_err());
    }

    #[test]
    fn cancellation_and_tiny_addends() {
        let big = Hp::pow10(40, p());
        let one = Hp::one(p());
        let s = &(&big + &one) - &big;
        assert_eq!(s, one);
        let tiny = Hp::pow10(-200, p());
        assert_eq!(&one + &tiny, one);
    }

    #[test]
    fn ordering_and_sign() {
        let a = Hp::from_rational(&q(-1, 7), p());
        let b = Hp::from_rational(&q(1, 9), p());
        assert!(a < b);
        assert_eq!(a.signum(), -1);
        assert_eq!(a.abs().signum(), 1);
    }

    #[test]
    fn decimal_round_trip() {
        let x = Hp::from_rational(&q(-355, 113), p());
        let s = x.to_sci_string(p().decimal_digits() + 10);
        let y = Hp::parse(&s, p()).unwrap();
        assert!((&x - &y).abs() <= x.abs() * p().tolerance(-8));
        assert_eq!(Hp::from_i64(1000, p()).to_sci_string(5), "1e3");
        assert_eq!(Hp::from_rational(&q(1, 8), p()).to_sci_string(5), "1.25e-1");
    }

    #[test]
    fn division_sign_and_exactness() {
        let a = Hp::from_i64(-7, p());
        let b = Hp::from_i64(2, p());
        assert_eq!((&a / &b).to_rational(), q(-7, 2));
        let c = Hp::from_i64(1, p()) / Hp::from_i64(-3, p());
        assert!(c.is_negative());
    }
}
