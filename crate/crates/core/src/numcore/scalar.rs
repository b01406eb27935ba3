use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Hp, Hpc, Rational};

/// Field arithmetic shared by exact rationals and HP reals/complexes, so the
/// polynomial kernels can run in any of them. Constants are lifted "like"
/// an existing value to inherit its precision.
pub trait Field:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn lift(&self, q: &Rational) -> Self;

    fn zero_like(&self) -> Self {
        self.lift(&Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.lift(&Rational::one())
    }
}

impl Field for Rational {
    fn lift(&self, q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Hp {
    fn lift(&self, q: &Rational) -> Self {
        Hp::from_rational(q, self.precision())
    }
}

impl Field for Hpc {
    fn lift(&self, q: &Rational) -> Self {
        Hpc::from_real(Hp::from_rational(q, self.precision()))
    }
}

/// Fields that can absorb an [`Hp`] value (the real and complex floats).
pub trait HpField: Field {
    fn lift_hp(&self, v: &Hp) -> Self;
}

impl HpField for Hp {
    fn lift_hp(&self, v: &Hp) -> Self {
        v.with_precision(self.precision())
    }
}

impl HpField for Hpc {
    fn lift_hp(&self, v: &Hp) -> Self {
        Hpc::from_real(v.with_precision(self.precision()))
    }
}

impl Field for f64 {
    fn lift(&self, q: &Rational) -> Self {
        super::rational::to_f64(q)
    }
}
