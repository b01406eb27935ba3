//! The `z` layer: asymptotic wavefunctions, the monomial coefficients
//! `C_{K,N}`, the `z`-form of `Z_S^N` and its disentangled version
//! `Ztilde_S^N(z)`, whose Taylor coefficients are `R_{S,K,N} C_{K,N}`.

mod expand;
mod identity;

pub use expand::{ztilde_expand, ztilde_expand_with, PolyZ};
pub use identity::{select_genfun_form, verify_identity, IdentityOptions, IdentityReport, IdentityRow, SignAgreement};

use num_complex::Complex;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::numcore::rational::{binom_general, factorial, half, int, Rational};
use crate::numcore::{gamma_hp, Hp, Hpc, Precision};
use crate::spherewave::{jacobi, RacahContext, Sign, WaveBasis};
use crate::{Error, Result};

/// Exact complex rational.
pub type RationalComplex = Complex<Rational>;

/// `Psi_+` or `Psi_-` for `K = 2k + p`, exactly.
pub fn psi_exact(k: usize, p: usize, mu1: &Rational, mu2: &Rational, sign: Sign) -> RationalComplex {
    let kk = int(k as i64);
    let pp = int(p as i64);
    let alt = if p == 1 { int(-1) } else { int(1) };
    match sign {
        Sign::Plus => {
            let mut r = (&kk + &pp) / (&kk + &pp + mu1 + mu2);
            if p == 1 {
                r = r * (&kk + mu1 + mu2 + int(1)) / (&kk + int(1));
            }
            Complex::new(Rational::one(), -(alt * r))
        }
        Sign::Minus => {
            let mut r = Rational::one();
            if p == 1 {
                r = (&kk + mu2 + half()) / (&kk + mu1 + half());
            }
            Complex::new(alt * r, Rational::one())
        }
    }
}

pub fn to_hpc(v: &RationalComplex, prec: Precision) -> Hpc {
    Hpc::from_rationals(&v.re, &v.im, prec)
}

/// `Psi_+` or `Psi_-` as an HP complex.
pub fn psi(k: usize, p: usize, mu1: &Rational, mu2: &Rational, sign: Sign, prec: Precision) -> Hpc {
    to_hpc(&psi_exact(k, p, mu1, mu2, sign), prec)
}

/// The `Psi` that carries `z^K` in the asymptotic `Y_K^N`, and the one that
/// carries the neighbouring power of the other parity.
pub fn psi_matched(k_index: usize, mu1: &Rational, mu2: &Rational) -> (RationalComplex, RationalComplex) {
    let (k, p) = (k_index / 2, k_index % 2);
    let plus = psi_exact(k, p, mu1, mu2, Sign::Plus);
    let minus = psi_exact(k, p, mu1, mu2, Sign::Minus);
    if p == 0 {
        (plus, minus)
    } else {
        (minus, plus)
    }
}

/// `Re(e^{i pi/4} v) = (Re v - Im v) / sqrt 2`.
pub fn disentangle(v: &Hpc) -> Hp {
    let prec = v.precision();
    let root2 = Hp::from_i64(2, prec).sqrt().expect("positive");
    (&v.re - &v.im) / root2
}

/// Closed form of `C_{K,N}`.
pub fn monomial_coeff(ctx: &RacahContext, k_index: usize, prec: Precision) -> Result<Hp> {
    let [m1, m2, m3] = ctx.mus();
    let (n, t) = (ctx.half_degree() as i64, ctx.parity() as i64);
    let (k, p) = ((k_index / 2) as i64, (k_index % 2) as i64);
    let h = half();
    let m12 = m1 + m2;
    let g = |x: Rational| gamma_hp(&x, prec);
    let fact = |m: i64| Hp::from_bigint(&factorial(m as u64), prec);
    let ratio1 = g(int(n + k + 1 + p + t - p * t) + &m12)? / (g(int(k + p) + m1 + &h)? * g(int(k + p) + m2 + &h)?);
    let ratio2 = g(int(n + k + p * t) + &m12 + m3 + int(3) * &h)? / (g(int(n - k + t * (1 - p)) + m3 + &h)? * g(int(k + 1) + &m12)?);
    let root = (ratio1 * ratio2).sqrt()?;
    let den = (fact(k) * fact(n - k + p * t - p)).sqrt()?.mul_pow2(1);
    let v = root / den;
    Ok(if p == 1 { -v } else { v })
}

/// `C_{K,N}` rebuilt from the asymptotic wavefunction: normalizations, the
/// two binomials and the disentangled matched `Psi`.
pub fn monomial_coeff_assembled(basis: &WaveBasis, k_index: usize) -> Hp {
    let ctx = basis.context();
    let prec = basis.precision();
    let [m1, m2, _] = ctx.mus();
    let (n, t) = (ctx.half_degree() as i64, ctx.parity() as i64);
    let (k, p) = ((k_index / 2) as i64, (k_index % 2) as i64);
    let nm = basis.y_norms(k_index);
    let m12 = m1 + m2;
    let (matched, _) = psi_matched(k_index, m1, m2);
    let d = disentangle(&to_hpc(&matched, prec));
    if p == 0 {
        let b1 = binom_general(&(int(n + k + p) + &m12), n - k - p);
        let b2 = binom_general(&(int(2 * k + 2 * p - 1) + &m12), k + p);
        &nm.a * &nm.xi_plus * &nm.b * &nm.e * Hp::from_rational(&(b1 * b2), prec) * d
    } else {
        let b1 = binom_general(&(int(n + t + k) + &m12), n + t - k - 1);
        let b2 = binom_general(&(int(2 * k) + &m12), k);
        let v = &nm.a * &nm.xi_minus / &nm.b * &nm.f * Hp::from_rational(&(b1 * b2), prec) * d;
        if t == 1 {
            -v
        } else {
            v
        }
    }
}

fn zpow(z: &Hpc, e: i64) -> Hpc {
    z.powi(e as u32)
}

/// `base^e` for a possibly negative integer `e`.
fn ipow(base: &Hpc, e: i64) -> Result<Hpc> {
    if e >= 0 {
        Ok(base.powi(e as u32))
    } else {
        Ok(base.powi((-e) as u32).recip()?)
    }
}

fn lift(v: &Hp, prec: Precision) -> Hpc {
    Hpc::from_real(v.with_precision(prec))
}

/// The asymptotic `Y_K^N(z)`: two monomials, `z^{2k+2p}` and `z^{2k+1}`.
pub fn y_asymptotic(basis: &WaveBasis, k_index: usize, z: &Hpc) -> Hpc {
    let ctx = basis.context();
    let prec = basis.precision();
    let [m1, m2, _] = ctx.mus();
    let (n, t) = (ctx.half_degree() as i64, ctx.parity() as i64);
    let (k, p) = ((k_index / 2) as i64, (k_index % 2) as i64);
    let nm = basis.y_norms(k_index);
    let m12 = m1 + m2;
    let bp = binom_general(&(int(n + k + p) + &m12), n - k - p) * binom_general(&(int(2 * k + 2 * p - 1) + &m12), k + p);
    let bm = binom_general(&(int(n + t + k) + &m12), n + t - k - 1) * binom_general(&(int(2 * k) + &m12), k);
    let plus = lift(&(&nm.xi_plus * &nm.b * &nm.e * Hp::from_rational(&bp, prec)), prec)
        * psi(k as usize, p as usize, m1, m2, Sign::Plus, prec)
        * zpow(z, 2 * k + 2 * p);
    let mut minus = lift(&(&nm.xi_minus / &nm.b * &nm.f * Hp::from_rational(&bm, prec)), prec)
        * psi(k as usize, p as usize, m1, m2, Sign::Minus, prec)
        * zpow(z, 2 * k + 1);
    if t == 1 {
        minus = -minus;
    }
    lift(&nm.a, prec) * (plus + minus)
}

fn check_pole(z: &Hpc) -> Result<Hpc> {
    let one = Hpc::one(z.precision());
    let d = &one - z * z;
    if d.abs() <= z.precision().tolerance(2) {
        return Err(Error::Pole(format!("z = {z:?}")));
    }
    Ok(d)
}

/// `F_S^{+/-}(z)` with cycled parameters.
pub fn fs_z(basis: &WaveBasis, s_index: usize, sign: Sign, z: &Hpc) -> Result<Hpc> {
    let prec = z.precision();
    let [_, m2, m3] = basis.context().mus();
    let nm = basis.z_norms(s_index);
    let (s, p) = ((s_index / 2) as i64, (s_index % 2) as i64);
    let h = half();
    let one_minus = check_pole(z)?;
    let z2 = z * z;
    let w = (&z2 + Hpc::one(prec)) / (&z2 - Hpc::one(prec));
    let iz = &Hpc::i(prec) * z;
    let alt = if p == 1 { -Hpc::one(prec) } else { Hpc::one(prec) };
    match sign {
        Sign::Plus => {
            let first = lift(&nm.e, prec) * jacobi(s + p, &(m3 - &h), &(m2 - &h), &w);
            let second = &iz / &one_minus * alt * lift(&nm.e.recip()?, prec) * jacobi(s + p - 1, &(m3 + &h), &(m2 + &h), &w);
            Ok(lift(&nm.xi_plus, prec) * (first - second))
        }
        Sign::Minus => {
            let first = lift(&nm.f, prec) * jacobi(s, &(m3 + &h), &(m2 - &h), &w);
            let second = iz * alt * lift(&nm.f.recip()?, prec) * jacobi(s, &(m3 - &h), &(m2 + &h), &w);
            Ok(lift(&nm.xi_minus, prec) / one_minus.sqrt() * (first + second))
        }
    }
}

/// `Z_S^N` written in `z = cos alpha` on the asymptotic branch, before
/// disentangling.
pub fn z_form(basis: &WaveBasis, s_index: usize, z: &Hpc) -> Result<Hpc> {
    let ctx = basis.context();
    let prec = z.precision();
    let [m1, m2, m3] = ctx.mus();
    let (n, t) = (ctx.half_degree() as i64, ctx.parity() as i64);
    let (s, p) = ((s_index / 2) as i64, (s_index % 2) as i64);
    let nm = basis.z_norms(s_index);
    let h = half();
    let m23 = m2 + m3;
    let one_minus = check_pole(z)?;
    let x2 = z * z * Hpc::from_real(Hp::from_i64(2, prec)) - Hpc::one(prec);
    let plus = zpow(z, t)
        * lift(&nm.b, prec)
        * jacobi(n - s - p, &(int(2 * s + 2 * p) + &m23), &(m1 - &h + int(t)), &x2)
        * fs_z(basis, s_index, Sign::Plus, z)?
        * one_minus.powi((s + p) as u32);
    let minus = zpow(z, 1 - t)
        * lift(&nm.b.recip()?, prec)
        * jacobi(n + t - s - 1, &(int(2 * s + 1) + &m23), &(m1 + &h - int(t)), &x2)
        * fs_z(basis, s_index, Sign::Minus, z)?
        * one_minus.powi(s as u32)
        * one_minus.sqrt();
    Ok(lift(&nm.a, prec) * (plus - minus))
}

/// Scope of the `(1 - z^2)^{p-u}` factor inside the `u` sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketScope {
    UTermOnly,
    BothTerms,
}

/// Extra image of the even-`N` reflection `alpha -> pi - alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reflection {
    /// Already contained in the `z^{1-t}` factor; nothing further.
    Absorbed,
    /// Additionally send `z -> -z` in the odd factor of the `L` term for even `N`.
    NegateEvenL,
}

/// Power of `z` in front of the `L` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LTermPower {
    /// `z^{1-t+u}`, inherited from the `z^{1-t}` of the undisentangled form.
    ParityAware,
    /// `z^{t+u+1}`; agrees with the above only for even `N`.
    Uniform,
}

/// Reading of the disentangled generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenfunForm {
    pub scope: BracketScope,
    pub reflection: Reflection,
    pub l_power: LTermPower,
}

impl Default for GenfunForm {
    fn default() -> Self {
        GenfunForm {
            scope: BracketScope::UTermOnly,
            reflection: Reflection::Absorbed,
            l_power: LTermPower::ParityAware,
        }
    }
}

impl GenfunForm {
    pub fn all() -> Vec<GenfunForm> {
        let mut out = Vec::new();
        for scope in [BracketScope::UTermOnly, BracketScope::BothTerms] {
            for reflection in [Reflection::Absorbed, Reflection::NegateEvenL] {
                for l_power in [LTermPower::ParityAware, LTermPower::Uniform] {
                    out.push(GenfunForm {
                        scope,
                        reflection,
                        l_power,
                    });
                }
            }
        }
        out
    }
}

/// `Ztilde_S^N(z)`, the disentangled generating function, as a sum over
/// `u in {0, 1}` of `U` and `L` terms.
pub fn ztilde_eval(basis: &WaveBasis, s_index: usize, z: &Hpc, form: GenfunForm) -> Result<Hpc> {
    let ctx = basis.context();
    let prec = z.precision();
    let [m1, m2, m3] = ctx.mus();
    let (n, t) = (ctx.half_degree() as i64, ctx.parity() as i64);
    let (s, p) = ((s_index / 2) as i64, (s_index % 2) as i64);
    let nm = basis.z_norms(s_index);
    let h = half();
    let m23 = m2 + m3;
    let one_minus = check_pole(z)?;
    let z2 = z * z;
    let one = Hpc::one(prec);
    let w = (&z2 + &one) / (&z2 - &one);
    let x2 = &z2 * Hpc::from_real(Hp::from_i64(2, prec)) - &one;
    let inv_root2 = Hp::from_i64(2, prec).sqrt()?.recip()?;
    let p_u = jacobi(n - s - p, &(int(2 * s + 2 * p) + &m23), &(m1 - &h + int(t)), &x2);
    let p_l = jacobi(n + t - s - 1, &(int(2 * s + 1) + &m23), &(m1 + &h - int(t)), &x2);
    let mut total = Hpc::zero(prec);
    for u in 0..2i64 {
        let ef = if u == 0 { nm.e.clone() } else { nm.e.recip()? };
        let ff = if u == 0 { nm.f.clone() } else { nm.f.recip()? };
        let mut uc = &inv_root2 * &nm.a * &nm.b * ef * &nm.xi_plus;
        if (p * u) % 2 == 1 {
            uc = -uc;
        }
        let mut lc = &inv_root2 * &nm.a / &nm.b * ff * &nm.xi_minus;
        if (u * (p + 1)) % 2 == 1 {
            lc = -lc;
        }
        let bracket = ipow(&one_minus, p - u)?;
        let uterm = zpow(z, t + u)
            * &bracket
            * lift(&uc, prec)
            * p_u.clone()
            * jacobi(s + p - u, &(m3 - &h + int(u)), &(m2 - &h + int(u)), &w);
        let lpow = match form.l_power {
            LTermPower::ParityAware => 1 - t + u,
            LTermPower::Uniform => t + u + 1,
        };
        let mut lterm = zpow(z, lpow)
            * lift(&lc, prec)
            * p_l.clone()
            * jacobi(s, &(m3 + &h - int(u)), &(m2 - &h + int(u)), &w);
        if form.scope == BracketScope::BothTerms {
            lterm = lterm * &bracket;
        }
        if form.reflection == Reflection::NegateEvenL && t == 0 {
            lterm = -lterm;
        }
        total = total + uterm - lterm;
    }
    Ok(total * one_minus.powi(s as u32))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::rational::ratio;

    fn p() -> Precision {
        Precision::digits(50)
    }

    #[test]
    fn psi_base_values() {
        let (a, b) = (ratio(1, 4), ratio(3, 4));
        assert_eq!(psi_exact(0, 0, &a, &b, Sign::Plus), Complex::new(int(1), int(0)));
        assert_eq!(psi_exact(0, 0, &a, &b, Sign::Minus), Complex::new(int(1), int(1)));
    }

    #[test]
    fn mismatched_psi_is_one_plus_i() {
        for (a, b) in [(ratio(1, 2), ratio(1, 2)), (ratio(1, 4), ratio(3, 4)), (ratio(2, 3), ratio(1, 3))] {
            for kk in 0..8 {
                let (matched, other) = psi_matched(kk, &a, &b);
                assert_eq!(other, Complex::new(int(1), int(1)));
                let k = int((kk / 2) as i64);
                let expected = if kk % 2 == 0 {
                    Complex::new(int(1), -(&k / (&k + &a + &b)))
                } else {
                    Complex::new(-((&k + &b + half()) / (&k + &a + half())), int(1))
                };
                assert_eq!(matched, expected);
            }
        }
    }

    #[test]
    fn disentangle_values() {
        let prec = p();
        assert!(disentangle(&Hpc::from_rationals(&int(1), &int(1), prec)).is_zero());
        let half_root2 = Hp::from_i64(2, prec).sqrt().unwrap().mul_pow2(-1);
        assert!((disentangle(&Hpc::one(prec)) - half_root2).abs() < prec.tolerance(2));
    }

    #[test]
    fn disentangled_matched_psi() {
        let prec = p();
        let (a, b) = (ratio(2, 3), ratio(1, 3));
        let root2 = Hp::from_i64(2, prec).sqrt().unwrap();
        for k in 0..5usize {
            let kk = int(k as i64);
            let v = disentangle(&psi(k, 0, &a, &b, Sign::Plus, prec));
            let expected = Hp::from_rational(&(int(1) + &kk / (&kk + &a + &b)), prec) / &root2;
            assert!((v - expected).abs() < prec.tolerance(2));
        }
    }

    #[test]
    fn monomial_sign_follows_parity() {
        let ctx = RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), 5).unwrap();
        for k in 0..=5 {
            let c = monomial_coeff(&ctx, k, p()).unwrap();
            assert_eq!(c.signum(), if k % 2 == 1 { -1 } else { 1 });
        }
    }

    #[test]
    fn fs_at_s_zero() {
        let ctx = RacahContext::new(ratio(1, 2), ratio(1, 2), ratio(1, 2), 2).unwrap();
        let basis = WaveBasis::new(&ctx, p()).unwrap();
        let z = Hpc::from_rationals(&ratio(3, 10), &ratio(-1, 7), p());
        let v = fs_z(&basis, 0, Sign::Plus, &z).unwrap();
        assert!((v - lift(&basis.z_norms(0).xi_plus, p())).abs() < p().tolerance(3));
        assert!(fs_z(&basis, 0, Sign::Plus, &Hpc::one(p())).is_err());
    }
}
