//! Gamma function at rational arguments via Spouge's approximation.
//!
//! For `z > 0`
//!
//! ```text
//! Gamma(z + 1) = (z + a)^(z + 1/2) e^-(z + a) [c_0 + sum_{k=1}^{a-1} c_k / (z + k) + eps]
//! c_0 = sqrt(2 pi),  c_k = (-1)^(k-1) / (k-1)! (a - k)^(k - 1/2) e^(a - k)
//! ```
//!
//! with `|eps| < a^(-1/2) (2 pi)^-(a + 1/2)` relative. The parameter `a` is
//! picked from the target bit count; the coefficients alternate and reach
//! about `2^(0.72 bits)`, so the sum is carried at roughly twice the target
//! precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, ToPrimitive};

use super::rational::{self, Rational};
use super::{elementary, Hp, NumError, Precision};

struct Spouge {
    a: i64,
    work: Precision,
    coeffs: Vec<Hp>,
}

impl Spouge {
    fn new(target_bits: u32, base: Precision) -> Self {
        let log2_2pi = (2.0 * std::f64::consts::PI).log2();
        let a = ((f64::from(target_bits) + 8.0) / log2_2pi).ceil() as i64 + 1;
        let work = base.extended(target_bits + 64);
        let mut coeffs = Vec::with_capacity(a as usize);
        let two_pi = elementary::pi(work).mul_pow2(1);
        coeffs.push(two_pi.sqrt().expect("positive"));
        let mut fact = Hp::one(work); // (k-1)!
        for k in 1..a {
            if k > 1 {
                fact = fact * Hp::from_i64(k - 1, work);
            }
            let base = Hp::from_i64(a - k, work);
            let power = elementary::exp(&(elementary::ln(&base).unwrap() * Hp::from_rational(&(rational::int(k) - rational::half()), work)));
            let mut c = power * elementary::exp(&Hp::from_i64(a - k, work)) / &fact;
            if k % 2 == 0 {
                c = -c;
            }
            coeffs.push(c);
        }
        Spouge { a, work, coeffs }
    }

    /// Gamma(z + 1) for z >= 0.
    fn gamma_shifted(&self, z: &Rational) -> Hp {
        let w = self.work;
        let zh = Hp::from_rational(z, w);
        let mut sum = self.coeffs[0].clone();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            sum = sum + c / Hp::from_rational(&(z + rational::int(k as i64)), w);
        }
        let za = &zh + Hp::from_i64(self.a, w);
        let expo = &zh + Hp::from_rational(&rational::half(), w);
        let lead = elementary::exp(&(expo * elementary::ln(&za).unwrap() - za));
        lead * sum
    }
}

fn spouge_for(prec: Precision) -> Arc<Spouge> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Spouge>>>> = OnceLock::new();
    let map = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = map.lock().unwrap().get(&prec.bits()) {
        return s.clone();
    }
    let s = Arc::new(Spouge::new(prec.bits() + 8, prec));
    map.lock().unwrap().insert(prec.bits(), s.clone());
    s
}

/// Gamma at a rational argument, rounded to `prec`.
///
/// Positive integers are exact factorials. Everything else is shifted to
/// `[1, inf)` with the functional equation before Spouge's formula applies.
pub fn gamma_hp(x: &Rational, prec: Precision) -> Result<Hp, NumError> {
    if rational::is_nonpositive_integer(x) {
        return Err(NumError::GammaPole(rational::to_string(x)));
    }
    if x.is_integer() {
        if let Some(n) = x.to_integer().to_u64() {
            if n <= 400 {
                return Ok(Hp::from_bigint(&rational::factorial(n - 1), prec));
            }
        }
    }
    // Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1))
    let mut shifted = x.clone();
    let mut divisor = Rational::one();
    while shifted < Rational::one() {
        divisor *= &shifted;
        shifted += Rational::one();
    }
    let spouge = spouge_for(prec);
    let g = spouge.gamma_shifted(&(shifted - Rational::one()));
    let g = if divisor.is_one() {
        g
    } else {
        g / Hp::from_rational(&divisor, spouge.work)
    };
    Ok(g.with_precision(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::rational::{int, pochhammer, ratio};

    fn p() -> Precision {
        Precision::digits(60)
    }

    fn rel(a: &Hp, b: &Hp) -> Hp {
        ((a - b) / b).abs()
    }

    #[test]
    fn integer_and_half_values() {
        assert_eq!(gamma_hp(&int(1), p()).unwrap(), Hp::one(p()));
        assert_eq!(gamma_hp(&int(5), p()).unwrap(), Hp::from_i64(24, p()));
        let sqrt_pi = elementary::pi(p()).sqrt().unwrap();
        let g = gamma_hp(&ratio(1, 2), p()).unwrap();
        assert!(rel(&g, &sqrt_pi) < p().tolerance(5));
        assert!(g.to_sci_string(11).starts_with("1.7724538509"));
    }

    #[test]
    fn poles_are_rejected() {
        for n in [0, -1, -7] {
            assert!(matches!(gamma_hp(&int(n), p()), Err(NumError::GammaPole(_))));
        }
        // negative non-integers are fine
        let g = gamma_hp(&ratio(-1, 2), p()).unwrap();
        let expected = elementary::pi(p()).sqrt().unwrap() * Hp::from_i64(-2, p());
        assert!(rel(&g, &expected) < p().tolerance(5));
    }

    #[test]
    fn reference_values() {
        // Gamma(1/3), Gamma(7/4), Gamma(41/3) to 50 digits (mpmath)
        let cases = [
            (ratio(1, 3), "2.6789385347077476336556929409746776441286893779573"),
            (ratio(7, 4), "0.91906252684888323384682372752216789513842943608105"),
            (ratio(41, 3), "2625854188.2698768712936173606282027017029775532432"),
        ];
        for (x, s) in cases {
            let g = gamma_hp(&x, p()).unwrap();
            let r = Hp::parse(s, p()).unwrap();
            assert!(rel(&g, &r) < Precision::digits(48).tolerance(0), "{x}: {g}");
        }
    }

    #[test]
    fn functional_equation_on_a_grid() {
        for num in 1..=40 {
            let x = ratio(num * 7, 13);
            let lhs = gamma_hp(&(&x + int(1)), p()).unwrap();
            let rhs = Hp::from_rational(&x, p()) * gamma_hp(&x, p()).unwrap();
            assert!(rel(&lhs, &rhs) < p().tolerance(10), "x = {x}");
        }
    }

    #[test]
    fn ratio_matches_pochhammer() {
        for num in [1, 5, 9, 17] {
            let a = ratio(num, 6);
            for m in 0..7u64 {
                let g = gamma_hp(&(&a + int(m as i64)), p()).unwrap() / gamma_hp(&a, p()).unwrap();
                let poch = Hp::from_rational(&pochhammer(&a, m), p());
                assert!(rel(&g, &poch) < p().tolerance(10));
            }
        }
    }
}
