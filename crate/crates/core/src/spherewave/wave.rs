use super::jacobi::jacobi;
use super::RacahContext;
use crate::numcore::rational::{factorial, half, int, Rational};
use crate::numcore::{acos, atan2, gamma_hp, pi, sin_cos, Hp, HpField, Precision};
use crate::{Error, Result};

/// Which of the two `F_K` functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Normalization constants of `Y_K^N` for one `K = 2k + p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveNorms {
    pub a: Hp,
    pub b: Hp,
    pub xi_plus: Hp,
    pub xi_minus: Hp,
    pub e: Hp,
    pub f: Hp,
}

fn sqrt_checked(v: Hp, what: &str) -> Result<Hp> {
    if v.is_negative() {
        return Err(Error::NegativeRadicand {
            what: what.to_string(),
            value: v.to_sci_string(12),
        });
    }
    Ok(v.sqrt()?)
}

/// `q^(e/2)` for `e` in {-1, 0, 1}.
fn half_power(q: &Rational, e: i64, prec: Precision, what: &str) -> Result<Hp> {
    if e == 0 {
        return Ok(Hp::one(prec));
    }
    let root = sqrt_checked(Hp::from_rational(q, prec), what)?;
    Ok(if e > 0 { root } else { root.recip()? })
}

impl WaveNorms {
    pub fn compute(mus: &[Rational; 3], truncation: usize, k_index: usize, prec: Precision) -> Result<Self> {
        let [m1, m2, m3] = mus;
        let (n, t) = ((truncation / 2) as i64, (truncation % 2) as i64);
        let (k, p) = ((k_index / 2) as i64, (k_index % 2) as i64);
        let g = |x: Rational| gamma_hp(&x, prec);
        let fact = |m: i64| Hp::from_bigint(&factorial(m as u64), prec);
        let h = half();
        let m12 = m1 + m2;

        let a_sq = fact(n - k + p * (t - 1)) * g(int(n + k + p * t) + &m12 + m3 + int(3) * &h)?
            / (g(int(n + k + 1 + p * t) + &m12)? * g(int(n - k + p * (t - 1)) + m3 + &h)?);
        let mut a = sqrt_checked(a_sq, "A_K")?;
        if (t * k_index as i64) % 2 == 1 {
            a = -a;
        }
        let b = half_power(
            &((int(n - k + t) + m3 - &h) / (int(n + k + 1) + &m12)),
            p - t,
            prec,
            "B_K",
        )?;
        let xi_plus = sqrt_checked(
            fact(k + p) * g(int(k + 1 + p) + &m12)? / (g(int(k + p) + m1 + &h)? * g(int(k + p) + m2 + &h)?).mul_pow2(1),
            "xi_K^+",
        )?;
        let xi_minus = sqrt_checked(
            fact(k) * g(int(k + 1) + &m12)? / (g(int(k) + m1 + &h)? * g(int(k) + m2 + &h)?).mul_pow2(1),
            "xi_K^-",
        )?;
        let e = half_power(&(int(k + 1) / (int(k + 1) + &m12)), p, prec, "E_K")?;
        let f = half_power(&((int(k) + m1 + &h) / (int(k) + m2 + &h)), p, prec, "F_K")?;
        Ok(WaveNorms {
            a,
            b,
            xi_plus,
            xi_minus,
            e,
            f,
        })
    }
}

/// Normalization tables for both wavefunction bases of a context: `Y` uses
/// `(mu1, mu2, mu3)` and `Z` uses the cycled `(mu2, mu3, mu1)`.
#[derive(Debug, Clone)]
pub struct WaveBasis {
    ctx: RacahContext,
    prec: Precision,
    y_norms: Vec<WaveNorms>,
    z_norms: Vec<WaveNorms>,
}

impl WaveBasis {
    pub fn new(ctx: &RacahContext, prec: Precision) -> Result<Self> {
        let size = ctx.truncation() + 1;
        let cyc = ctx.cycled();
        let y_norms = (0..size)
            .map(|k| WaveNorms::compute(ctx.mus(), ctx.truncation(), k, prec))
            .collect::<Result<Vec<_>>>()?;
        let z_norms = (0..size)
            .map(|k| WaveNorms::compute(cyc.mus(), ctx.truncation(), k, prec))
            .collect::<Result<Vec<_>>>()?;
        Ok(WaveBasis {
            ctx: ctx.clone(),
            prec,
            y_norms,
            z_norms,
        })
    }

    pub fn context(&self) -> &RacahContext {
        &self.ctx
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Constants of `Y_K^N`.
    pub fn y_norms(&self, k: usize) -> &WaveNorms {
        &self.y_norms[k]
    }

    /// Constants of `Z_S^N`, i.e. of `Y_S^N` with cycled parameters.
    pub fn z_norms(&self, s: usize) -> &WaveNorms {
        &self.z_norms[s]
    }
}

/// Raw `F_K^{+/-}` given `cos phi` and `sin phi`, which may be complex.
pub(crate) fn fk_raw<T: HpField>(nm: &WaveNorms, mus: &[Rational; 3], k_index: usize, sign: Sign, c: &T, s: &T) -> T {
    let [m1, m2, _] = mus;
    let (k, p) = ((k_index / 2) as i64, (k_index % 2) as i64);
    let h = half();
    let c2 = c.clone() * c.clone() - s.clone() * s.clone();
    let alt = if p == 1 { -c.one_like() } else { c.one_like() };
    match sign {
        Sign::Plus => {
            let first = c.lift_hp(&nm.e) * jacobi(k + p, &(m2 - &h), &(m1 - &h), &c2);
            let second = alt * c.lift_hp(&nm.e.recip().expect("E_K > 0")) * c.clone() * s.clone()
                * jacobi(k + p - 1, &(m2 + &h), &(m1 + &h), &c2);
            c.lift_hp(&nm.xi_plus) * (first - second)
        }
        Sign::Minus => {
            let first = c.lift_hp(&nm.f) * s.clone() * jacobi(k, &(m2 + &h), &(m1 - &h), &c2);
            let second = alt * c.lift_hp(&nm.f.recip().expect("F_K > 0")) * c.clone()
                * jacobi(k, &(m2 - &h), &(m1 + &h), &c2);
            c.lift_hp(&nm.xi_minus) * (first + second)
        }
    }
}

fn powu<T: HpField>(x: &T, e: i64) -> T {
    let mut acc = x.one_like();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// The `theta` factor multiplying `F_K^{+/-}` inside `Y_K^N`, without `A_K`.
pub(crate) fn theta_part<T: HpField>(
    nm: &WaveNorms,
    mus: &[Rational; 3],
    truncation: usize,
    k_index: usize,
    sign: Sign,
    ct: &T,
    st: &T,
) -> T {
    let [m1, m2, m3] = mus;
    let (n, t) = ((truncation / 2) as i64, (truncation % 2) as i64);
    let (k, p) = ((k_index / 2) as i64, (k_index % 2) as i64);
    let h = half();
    let m12 = m1 + m2;
    let c2 = ct.clone() * ct.clone() - st.clone() * st.clone();
    match sign {
        Sign::Plus => {
            ct.lift_hp(&nm.b)
                * powu(ct, t)
                * powu(st, 2 * k + 2 * p)
                * jacobi(n - k - p, &(int(2 * k + 2 * p) + &m12), &(m3 - &h + int(t)), &c2)
        }
        Sign::Minus => {
            let v = ct.lift_hp(&nm.b.recip().expect("B_K > 0"))
                * powu(ct, 1 - t)
                * powu(st, 2 * k + 1)
                * jacobi(n + t - k - 1, &(int(2 * k + 1) + &m12), &(m3 + &h - int(t)), &c2);
            if t == 1 {
                -v
            } else {
                v
            }
        }
    }
}

/// Raw `Y_K^N` given the trigonometric values of both angles.
pub(crate) fn y_raw<T: HpField>(
    nm: &WaveNorms,
    mus: &[Rational; 3],
    truncation: usize,
    k_index: usize,
    trig: [&T; 4],
) -> T {
    let [ct, st, cp, sp] = trig;
    let plus = theta_part(nm, mus, truncation, k_index, Sign::Plus, ct, st) * fk_raw(nm, mus, k_index, Sign::Plus, cp, sp);
    let minus =
        theta_part(nm, mus, truncation, k_index, Sign::Minus, ct, st) * fk_raw(nm, mus, k_index, Sign::Minus, cp, sp);
    ct.lift_hp(&nm.a) * (plus + minus)
}

/// `F_K^{+/-}` from `cos phi`, `sin phi`; complex values are allowed.
pub fn fk_trig<T: HpField>(basis: &WaveBasis, k: usize, sign: Sign, cos_phi: &T, sin_phi: &T) -> T {
    fk_raw(basis.y_norms(k), basis.ctx.mus(), k, sign, cos_phi, sin_phi)
}

/// `F_K^{+/-}(phi)` at a real angle.
pub fn fk(basis: &WaveBasis, k: usize, sign: Sign, phi: &Hp) -> Hp {
    let (s, c) = sin_cos(phi);
    fk_trig(basis, k, sign, &c, &s)
}

/// `Y_K^N` from the cosines and sines of `theta` and `phi`.
pub fn y_trig<T: HpField>(basis: &WaveBasis, k: usize, cos_theta: &T, sin_theta: &T, cos_phi: &T, sin_phi: &T) -> T {
    y_raw(
        basis.y_norms(k),
        basis.ctx.mus(),
        basis.ctx.truncation(),
        k,
        [cos_theta, sin_theta, cos_phi, sin_phi],
    )
}

/// `Y_K^N(theta, phi)`.
pub fn y_eval(basis: &WaveBasis, k: usize, theta: &Hp, phi: &Hp) -> Hp {
    let (st, ct) = sin_cos(theta);
    let (sp, cp) = sin_cos(phi);
    y_trig(basis, k, &ct, &st, &cp, &sp)
}

/// `Z_S^N` from the cosines and sines of `alpha` and `beta`.
pub fn z_trig<T: HpField>(basis: &WaveBasis, s: usize, cos_alpha: &T, sin_alpha: &T, cos_beta: &T, sin_beta: &T) -> T {
    let cyc = basis.ctx.cycled();
    // N even: evaluate at pi - alpha
    let ca = if basis.ctx.parity() == 0 {
        -cos_alpha.clone()
    } else {
        cos_alpha.clone()
    };
    y_raw(
        basis.z_norms(s),
        cyc.mus(),
        basis.ctx.truncation(),
        s,
        [&ca, sin_alpha, cos_beta, sin_beta],
    )
}

/// `Z_S^N(alpha, beta)`.
pub fn z_eval(basis: &WaveBasis, s: usize, alpha: &Hp, beta: &Hp) -> Hp {
    let (sa, ca) = sin_cos(alpha);
    let (sb, cb) = sin_cos(beta);
    z_trig(basis, s, &ca, &sa, &cb, &sb)
}

/// `(alpha, beta)` with `cos alpha = sin theta cos phi`,
/// `sin alpha cos beta = sin theta sin phi`, `sin alpha sin beta = cos theta`.
pub fn coord_map(theta: &Hp, phi: &Hp) -> Result<(Hp, Hp)> {
    let prec = theta.precision();
    let (st, ct) = sin_cos(theta);
    let (sp, cp) = sin_cos(phi);
    let cos_alpha = &st * &cp;
    let sin_alpha_sq = Hp::one(prec) - &cos_alpha * &cos_alpha;
    if sin_alpha_sq.abs() <= prec.tolerance(2) {
        return Err(Error::Pole(format!(
            "sin(alpha) = 0 at theta = {}, phi = {}",
            theta.to_sci_string(12),
            phi.to_sci_string(12)
        )));
    }
    let one = Hp::one(prec);
    let clamped = if cos_alpha > one {
        one
    } else if cos_alpha < -one.clone() {
        -one
    } else {
        cos_alpha
    };
    let alpha = acos(&clamped)?;
    let beta = atan2(&ct, &(&st * &sp))?;
    Ok((alpha, beta))
}

/// `pi - x`, used for the even-`N` reflection.
pub fn reflect(x: &Hp) -> Hp {
    pi(x.precision()) - x
}
