use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Hp, NumError, Precision, Rational};

/// Complex number with [`Hp`] parts.
#[derive(Clone, PartialEq, Eq)]
pub struct Hpc {
    pub re: Hp,
    pub im: Hp,
}

impl Hpc {
    pub fn new(re: Hp, im: Hp) -> Self {
        Hpc { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Hpc::new(Hp::zero(prec), Hp::zero(prec))
    }

    pub fn one(prec: Precision) -> Self {
        Hpc::from_real(Hp::one(prec))
    }

    pub fn i(prec: Precision) -> Self {
        Hpc::new(Hp::zero(prec), Hp::one(prec))
    }

    pub fn from_real(re: Hp) -> Self {
        let prec = re.precision();
        Hpc::new(re, Hp::zero(prec))
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: Precision) -> Self {
        Hpc::new(Hp::from_rational(re, prec), Hp::from_rational(im, prec))
    }

    pub fn precision(&self) -> Precision {
        self.re.precision().max(self.im.precision())
    }

    pub fn conj(&self) -> Self {
        Hpc::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Hp {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Hp {
        self.norm_sqr().sqrt().expect("non-negative")
    }

    pub fn scale(&self, k: &Hp) -> Self {
        Hpc::new(&self.re * k, &self.im * k)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Hpc::one(self.precision());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let prec = self.precision();
        if self.im.is_zero() && !self.re.is_negative() {
            return Hpc::from_real(self.re.sqrt().expect("non-negative"));
        }
        let r = self.abs();
        let half = Hp::from_rational(&super::rational::half(), prec);
        let a = ((&r + &self.re) * &half).sqrt().expect("non-negative");
        let b = ((&r - &self.re) * &half).sqrt().expect("non-negative");
        if self.im.is_negative() {
            Hpc::new(a, -b)
        } else {
            Hpc::new(a, b)
        }
    }

    pub fn recip(&self) -> Result<Self, NumError> {
        let d = self.norm_sqr();
        if d.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(Hpc::new(&self.re / &d, -(&self.im / &d)))
    }
}

impl fmt::Debug for Hpc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?} i)", self.re, self.im)
    }
}

impl fmt::Display for Hpc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(self.precision().decimal_digits() as usize);
        write!(f, "{:.*} + {:.*}i", d, self.re, d, self.im)
    }
}

impl Neg for Hpc {
    type Output = Hpc;
    fn neg(self) -> Hpc {
        Hpc::new(-self.re, -self.im)
    }
}

impl Neg for &Hpc {
    type Output = Hpc;
    fn neg(self) -> Hpc {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl $trait<&Hpc> for &Hpc {
            type Output = Hpc;
            fn $method(self, rhs: &Hpc) -> Hpc {
                let f: fn(&Hpc, &Hpc) -> Hpc = $imp;
                f(self, rhs)
            }
        }
        impl $trait<Hpc> for Hpc {
            type Output = Hpc;
            fn $method(self, rhs: Hpc) -> Hpc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Hpc> for Hpc {
            type Output = Hpc;
            fn $method(self, rhs: &Hpc) -> Hpc {
                (&self).$method(rhs)
            }
        }
        impl $trait<Hpc> for &Hpc {
            type Output = Hpc;
            fn $method(self, rhs: Hpc) -> Hpc {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Hpc::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| Hpc::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| Hpc::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
forward_binop!(Div, div, |a, b| a * b.recip().expect("Hpc division by zero"));

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::rational::int;

    fn p() -> Precision {
        Precision::digits(60)
    }

    #[test]
    fn i_squared() {
        let i = Hpc::i(p());
        let m = &i * &i;
        assert_eq!(m, Hpc::from_real(Hp::from_i64(-1, p())));
    }

    #[test]
    fn sqrt_squares_back() {
        for (a, b) in [(3, 4), (-5, 2), (-1, -7), (-9, 0), (2, 0)] {
            let z = Hpc::from_rationals(&int(a), &int(b), p());
            let r = z.sqrt();
            assert!(!r.re.is_negative());
            let back = &r * &r;
            assert!((&back - &z).abs() < p().tolerance(2), "{a} {b}");
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Hpc::from_rationals(&int(2), &int(-3), p());
        let b = Hpc::from_rationals(&int(-1), &int(5), p());
        let q = &(&a * &b) / &b;
        assert!((&q - &a).abs() < p().tolerance(2));
    }
}
