//! Exact rational arithmetic and the classical integer-step kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::NumError;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Rising factorial `a (a+1) ... (a+m-1)`; `m = 0` gives 1.
pub fn pochhammer(a: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..m {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `a (a-1) ... (a-k+1) / k!` for `k >= 0`, and 0 for negative `k`.
pub fn binom_general(a: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    let mut x = a.clone();
    for j in 1..=k {
        acc = acc * &x / int(j);
        x -= Rational::one();
    }
    acc
}

/// `(-1)^k` as an i64.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn pow10(k: i64) -> Rational {
    let p = BigInt::from(10).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Nearest integer, ties away from zero.
pub fn round_half_away(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    let n = q.numer() * &two + q.numer().signum() * q.denom();
    let d = q.denom() * two;
    // truncating division after the half shift
    let (quot, _) = n.div_rem(&d);
    quot
}

pub fn to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

pub fn from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Parses `p`, `p/q` or `-p/q` with integer `p`, `q`. Anything else,
/// including `1//2` or a zero denominator, is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, NumError> {
    let bad = || NumError::Parse(s.to_string());
    let t = s.trim();
    let parse_int = |x: &str| -> Result<BigInt, NumError> {
        let body = x.strip_prefix(['-', '+']).unwrap_or(x);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Parses a plain decimal literal such as `-0.125` or `2.5e-3` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational, NumError> {
    let bad = || NumError::Parse(s.to_string());
    let t = s.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.bytes().chain(fp.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let mut q = Rational::from_integer(digits) * pow10(exponent - fp.len() as i64);
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Canonical `p/q` form (`p` alone for integers).
pub fn to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_positive()
}
