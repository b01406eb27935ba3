//! Transcendental kernels at HP precision: pi, ln 2, exp, ln, sin/cos, atan.
//!
//! Every routine works internally with extra guard bits and rounds the result
//! back to the caller's precision.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{Hp, NumError, Precision};

const EXTRA: u32 = 32;

type ConstCache = Mutex<HashMap<u32, Hp>>;

fn cached(cache: &'static OnceLock<ConstCache>, prec: Precision, compute: fn(Precision) -> Hp) -> Hp {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&prec.bits()) {
        return v.with_precision(prec);
    }
    let v = compute(prec);
    map.lock().unwrap().insert(prec.bits(), v.clone());
    v
}

/// True when `term` no longer changes a sum of magnitude ~1 at `prec`.
fn negligible(term: &Hp, prec: Precision) -> bool {
    match term.top_bit() {
        None => true,
        Some(t) => t < -(i64::from(prec.bits()) + 4),
    }
}

/// `sum_k (-1)^k / ((2k+1) m^(2k+1))`, or without the alternating sign.
fn arctan_recip(m: i64, alternating: bool, prec: Precision) -> Hp {
    let mm = Hp::from_i64(m * m, prec);
    let mut power = Hp::one(prec) / Hp::from_i64(m, prec);
    let mut sum = Hp::zero(prec);
    let mut k = 0i64;
    loop {
        let term = &power / Hp::from_i64(2 * k + 1, prec);
        if negligible(&term, prec) {
            break;
        }
        if alternating && k % 2 == 1 {
            sum = sum - term;
        } else {
            sum = sum + term;
        }
        power = power / &mm;
        k += 1;
    }
    sum
}

pub fn pi(prec: Precision) -> Hp {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let w = prec.extended(EXTRA);
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let v = arctan_recip(5, true, w).mul_pow2(4) - arctan_recip(239, true, w).mul_pow2(2);
        v.with_precision(prec)
    })
}

pub fn ln2(prec: Precision) -> Hp {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let w = prec.extended(EXTRA);
        // ln 2 = 2 atanh(1/3)
        arctan_recip(3, false, w).mul_pow2(1).with_precision(prec)
    })
}

pub fn exp(x: &Hp) -> Hp {
    let prec = x.precision();
    if x.is_zero() {
        return Hp::one(prec);
    }
    let halvings: u32 = 12;
    let w = prec.extended(EXTRA + halvings);
    let xw = x.with_precision(w);
    let l2 = ln2(w);
    let k = (&xw / &l2).round_to_int();
    let k: i64 = k.try_into().expect("exp argument out of range");
    let r = (xw - &l2 * Hp::from_i64(k, w)).mul_pow2(-i64::from(halvings));
    let mut sum = Hp::one(w);
    let mut term = Hp::one(w);
    let mut j = 1i64;
    loop {
        term = &term * &r / Hp::from_i64(j, w);
        if negligible(&term, w) {
            break;
        }
        sum = sum + &term;
        j += 1;
    }
    for _ in 0..halvings {
        sum = &sum * &sum;
    }
    sum.mul_pow2(k).with_precision(prec)
}

pub fn ln(x: &Hp) -> Result<Hp, NumError> {
    let prec = x.precision();
    if x.signum() <= 0 {
        return Err(NumError::Domain(x.to_sci_string(12), "ln"));
    }
    let w = prec.extended(EXTRA);
    let xw = x.with_precision(w);
    // x = m 2^e with m in [2/3, 4/3)
    let mut e = xw.top_bit().unwrap();
    let mut m = xw.mul_pow2(-e);
    if m < Hp::from_rational(&super::rational::ratio(2, 3), w) {
        m = m.mul_pow2(1);
        e -= 1;
    }
    let one = Hp::one(w);
    let t = (&m - &one) / (&m + &one);
    let t2 = &t * &t;
    let mut power = t;
    let mut sum = Hp::zero(w);
    let mut k = 0i64;
    loop {
        let term = &power / Hp::from_i64(2 * k + 1, w);
        if negligible(&term, w) {
            break;
        }
        sum = sum + term;
        power = &power * &t2;
        k += 1;
    }
    let v = sum.mul_pow2(1) + ln2(w) * Hp::from_i64(e, w);
    Ok(v.with_precision(prec))
}

fn sin_cos_reduced(r: &Hp, w: Precision) -> (Hp, Hp) {
    let r2 = r * r;
    let mut s = r.clone();
    let mut c = Hp::one(w);
    let mut ts = r.clone();
    let mut tc = Hp::one(w);
    let mut j = 1i64;
    loop {
        tc = -(&tc * &r2) / Hp::from_i64((2 * j - 1) * (2 * j), w);
        ts = -(&ts * &r2) / Hp::from_i64((2 * j) * (2 * j + 1), w);
        if negligible(&tc, w) && negligible(&ts, w) {
            break;
        }
        c = c + &tc;
        s = s + &ts;
        j += 1;
    }
    (s, c)
}

/// `(sin x, cos x)`.
pub fn sin_cos(x: &Hp) -> (Hp, Hp) {
    let prec = x.precision();
    let extra = x.top_bit().map(|t| t.max(0) as u32).unwrap_or(0);
    let w = prec.extended(EXTRA + extra);
    let xw = x.with_precision(w);
    let half_pi = pi(w).mul_pow2(-1);
    let k = (&xw / &half_pi).round_to_int();
    let quadrant: i64 = (&k % num_bigint::BigInt::from(4)).try_into().unwrap();
    let r = xw - half_pi * Hp::from_bigint(&k, w);
    let (s, c) = sin_cos_reduced(&r, w);
    let (s, c) = match quadrant.rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    (s.with_precision(prec), c.with_precision(prec))
}

pub fn sin(x: &Hp) -> Hp {
    sin_cos(x).0
}

pub fn cos(x: &Hp) -> Hp {
    sin_cos(x).1
}

pub fn atan(x: &Hp) -> Hp {
    let prec = x.precision();
    if x.is_zero() {
        return x.clone();
    }
    let w = prec.extended(EXTRA);
    let one = Hp::one(w);
    let mut y = x.with_precision(w);
    let mut offset = Hp::zero(w);
    let mut negate = false;
    if y.is_negative() {
        y = -y;
        negate = true;
    }
    if y > one {
        // atan(y) = pi/2 - atan(1/y)
        offset = pi(w).mul_pow2(-1);
        y = -(&one / &y);
    }
    // argument halving: atan(y) = 2 atan(y / (1 + sqrt(1 + y^2)))
    let halvings = 3;
    for _ in 0..halvings {
        let root = (&one + &y * &y).sqrt().expect("positive");
        y = &y / (&one + root);
    }
    let y2 = &y * &y;
    let mut power = y;
    let mut sum = Hp::zero(w);
    let mut k = 0i64;
    loop {
        let term = &power / Hp::from_i64(2 * k + 1, w);
        if negligible(&term, w) {
            break;
        }
        if k % 2 == 1 {
            sum = sum - term;
        } else {
            sum = sum + term;
        }
        power = &power * &y2;
        k += 1;
    }
    let mut v = offset + sum.mul_pow2(halvings);
    if negate {
        v = -v;
    }
    v.with_precision(prec)
}

/// Angle of the point `(x, y)` in `(-pi, pi]`.
pub fn atan2(y: &Hp, x: &Hp) -> Result<Hp, NumError> {
    let prec = x.precision().max(y.precision());
    if x.is_zero() && y.is_zero() {
        return Err(NumError::Domain("(0, 0)".into(), "atan2"));
    }
    if x.is_zero() {
        let hp = pi(prec).mul_pow2(-1);
        return Ok(if y.is_negative() { -hp } else { hp });
    }
    let base = atan(&(y / x));
    if !x.is_negative() {
        Ok(base)
    } else if y.is_negative() {
        Ok(base - pi(prec))
    } else {
        Ok(base + pi(prec))
    }
}

/// Principal arccosine in `[0, pi]`.
pub fn acos(c: &Hp) -> Result<Hp, NumError> {
    let prec = c.precision();
    let one = Hp::one(prec);
    if c.abs() > one {
        return Err(NumError::Domain(c.to_sci_string(12), "acos"));
    }
    let s = (&one - c * c).sqrt()?;
    atan2(&s, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::rational::ratio;

    fn p() -> Precision {
        Precision::digits(60)
    }

    fn close(a: &Hp, b: &Hp, offset: i64) -> bool {
        let scale = a.abs().max(Hp::one(a.precision()));
        (a - b).abs() <= scale * a.precision().tolerance(offset)
    }

    // 70 digits of pi and ln 2 from the standard tables
    const PI: &str = "3.141592653589793238462643383279502884197169399375105820974944592307816";
    const LN2: &str = "0.6931471805599453094172321214581765680755001343602552541206800094933936";

    #[test]
    fn constants() {
        assert!(close(&pi(p()), &Hp::parse(PI, p()).unwrap(), 1));
        assert!(close(&ln2(p()), &Hp::parse(LN2, p()).unwrap(), 1));
    }

    #[test]
    fn exp_ln_inverse() {
        for (n, d) in [(1, 3), (-7, 2), (25, 1), (1, 1000), (-40, 3)] {
            let x = Hp::from_rational(&ratio(n, d), p());
            let y = ln(&exp(&x)).unwrap();
            assert!(close(&x, &y, 2), "{n}/{d}");
        }
        let e = exp(&Hp::one(p()));
        assert!(e.to_sci_string(30).starts_with("2.71828182845904523536028747135"));
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert!(ln(&Hp::zero(p())).is_err());
        assert!(ln(&Hp::from_i64(-1, p())).is_err());
    }

    #[test]
    fn trig_identities() {
        for (n, d) in [(1, 7), (3, 2), (-5, 4), (11, 2), (13, 1)] {
            let x = Hp::from_rational(&ratio(n, d), p());
            let (s, c) = sin_cos(&x);
            let one = &s * &s + &c * &c;
            assert!(close(&one, &Hp::one(p()), 2));
            let back = atan2(&s, &c).unwrap();
            // compare modulo 2 pi
            let two_pi = pi(p()).mul_pow2(1);
            let k = ((&x - &back) / &two_pi).round_to_int();
            let diff = &x - &back - two_pi * Hp::from_bigint(&k, p());
            assert!(diff.abs() < p().tolerance(3), "{n}/{d}");
        }
        let sixth = pi(p()) / Hp::from_i64(6, p());
        assert!(close(&sin(&sixth), &Hp::from_rational(&ratio(1, 2), p()), 1));
    }

    #[test]
    fn inverse_trig_special_values() {
        let one = Hp::one(p());
        assert!(close(&atan(&one), &pi(p()).mul_pow2(-2), 1));
        assert!(close(&acos(&Hp::zero(p())).unwrap(), &pi(p()).mul_pow2(-1), 1));
        assert!(close(&acos(&-one.clone()).unwrap(), &pi(p()), 1));
        assert!(acos(&Hp::from_i64(2, p())).is_err());
        assert!(atan2(&Hp::zero(p()), &Hp::zero(p())).is_err());
    }
}
