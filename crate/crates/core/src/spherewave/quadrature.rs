//! Gauss-Jacobi rules at HP precision and the Gram matrix of the `Y_K^N`
//! under the Dunkl surface measure
//! `|cos theta|^(2 mu3) |sin theta|^(2 mu1 + 2 mu2 + 1) |cos phi|^(2 mu1) |sin phi|^(2 mu2) dtheta dphi`.

use super::jacobi::{jacobi, jacobi_derivative};
use super::wave::{fk_raw, theta_part, Sign, WaveBasis};
use crate::numcore::rational::{factorial, half, int, Rational};
use crate::numcore::{exp, gamma_hp, ln2, Hp, Precision};
use crate::{Error, Result};

/// Nodes and weights of an `n`-point rule for `(1-x)^a (1+x)^b` on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<Hp>,
    pub weights: Vec<Hp>,
}

/// `n`-point Gauss-Jacobi rule. Zeros are bracketed in double precision and
/// polished by safeguarded Newton steps at `prec`.
pub fn gauss_jacobi(n: usize, a: &Rational, b: &Rational, prec: Precision) -> Result<GaussRule> {
    let deg = n as i64;
    let work = prec.extended(32);
    let samples = 40 * n + 40;
    let xs: Vec<f64> = (0..samples)
        .map(|j| (std::f64::consts::PI * (j as f64 + 0.5) / samples as f64).cos())
        .collect();
    let vals: Vec<f64> = xs.iter().map(|x| jacobi(deg, a, b, x)).collect();
    let mut brackets = Vec::with_capacity(n);
    for j in 1..samples {
        if vals[j - 1] == 0.0 || vals[j - 1].signum() != vals[j].signum() {
            brackets.push((xs[j], xs[j - 1]));
        }
    }
    if brackets.len() != n {
        return Err(Error::IllConditioned(format!(
            "found {} of {} Gauss-Jacobi zeros",
            brackets.len(),
            n
        )));
    }
    let tol = work.tolerance(4);
    let mut nodes = Vec::with_capacity(n);
    for (lo, hi) in brackets {
        let mut lo = Hp::from_f64(lo, work);
        let mut hi = Hp::from_f64(hi, work);
        let f_lo = jacobi(deg, a, b, &lo).signum();
        let mut x = (&lo + &hi).mul_pow2(-1);
        for _ in 0..200 {
            let f = jacobi(deg, a, b, &x);
            if f.is_zero() {
                break;
            }
            if f.signum() == f_lo {
                lo = x.clone();
            } else {
                hi = x.clone();
            }
            let df = jacobi_derivative(deg, a, b, &x);
            let mut next = &x - &f / &df;
            let outside = if lo < hi {
                next <= lo || next >= hi
            } else {
                next <= hi || next >= lo
            };
            if df.is_zero() || outside {
                next = (&lo + &hi).mul_pow2(-1);
            }
            let step = (&next - &x).abs();
            x = next;
            if step < tol {
                break;
            }
        }
        nodes.push(x);
    }
    // w_i = G 2^(a+b+1) / ((1 - x_i^2) P_n'(x_i)^2)
    let g = gamma_hp(&(int(deg + 1) + a), work)? * gamma_hp(&(int(deg + 1) + b), work)?
        / (gamma_hp(&(int(deg + 1) + a + b), work)? * Hp::from_bigint(&factorial(n as u64), work));
    let pow2 = exp(&(ln2(work) * Hp::from_rational(&(a + b + int(1)), work)));
    let scale = g * pow2;
    let one = Hp::one(work);
    let weights = nodes
        .iter()
        .map(|x| {
            let d = jacobi_derivative(deg, a, b, x);
            (&scale / ((&one - x * x) * &d * &d)).with_precision(prec)
        })
        .collect();
    let nodes = nodes.into_iter().map(|x| x.with_precision(prec)).collect();
    Ok(GaussRule { nodes, weights })
}

/// Gram matrix `[<Y_K, Y_K'>]` under the Dunkl surface measure, in the
/// folded variables. The folding contributes a factor
/// `2^(mu1 + mu2 + mu3 + 7/2)`, so an orthonormal basis gives that constant
/// times the identity.
///
/// Both angles are folded onto `cos 2 theta` and `cos 2 phi`, where the
/// measure becomes a Jacobi weight; the two `theta` half-ranges and the four
/// `phi` quadrants are summed explicitly so that odd cross terms cancel. The
/// tensor rule factorizes, so the sum is taken term by term.
pub fn wave_gram_matrix(basis: &WaveBasis, order: usize) -> Result<Vec<Vec<Hp>>> {
    let prec = basis.precision();
    let ctx = basis.context();
    let mus = ctx.mus();
    let [m1, m2, m3] = mus;
    let size = ctx.truncation() + 1;
    let h = half();
    let theta_rule = gauss_jacobi(order, &(m1 + m2), &(m3 - &h), prec)?;
    let phi_rule = gauss_jacobi(order, &(m2 - &h), &(m1 - &h), prec)?;
    let signs = [Sign::Plus, Sign::Minus];

    // samples[K][sign][point] with the quadrature weight kept separately
    let half_cos_sin = |x: &Hp| -> (Hp, Hp) {
        let one = Hp::one(prec);
        let c = ((&one + x).mul_pow2(-1)).sqrt().expect("x <= 1");
        let s = ((&one - x).mul_pow2(-1)).sqrt().expect("x >= -1");
        (c, s)
    };
    let mut theta_pts = Vec::new();
    for (x, w) in theta_rule.nodes.iter().zip(&theta_rule.weights) {
        let (c, s) = half_cos_sin(x);
        theta_pts.push((c.clone(), s.clone(), w.clone()));
        theta_pts.push((-c, s, w.clone()));
    }
    let mut phi_pts = Vec::new();
    for (y, w) in phi_rule.nodes.iter().zip(&phi_rule.weights) {
        let (c, s) = half_cos_sin(y);
        for (sc, ss) in [(1, 1), (-1, 1), (-1, -1), (1, -1)] {
            let cc = if sc < 0 { -c.clone() } else { c.clone() };
            let s2 = if ss < 0 { -s.clone() } else { s.clone() };
            phi_pts.push((cc, s2, w.clone()));
        }
    }
    let theta_vals: Vec<Vec<Vec<Hp>>> = (0..size)
        .map(|k| {
            signs
                .iter()
                .map(|&sg| {
                    theta_pts
                        .iter()
                        .map(|(c, s, _)| theta_part(basis.y_norms(k), mus, ctx.truncation(), k, sg, c, s))
                        .collect()
                })
                .collect()
        })
        .collect();
    let phi_vals: Vec<Vec<Vec<Hp>>> = (0..size)
        .map(|k| {
            signs
                .iter()
                .map(|&sg| phi_pts.iter().map(|(c, s, _)| fk_raw(basis.y_norms(k), mus, k, sg, c, s)).collect())
                .collect()
        })
        .collect();
    let integrate = |pts: &[(Hp, Hp, Hp)], f: &[Hp], g: &[Hp]| -> Hp {
        pts.iter()
            .zip(f.iter().zip(g))
            .fold(Hp::zero(prec), |acc, ((_, _, w), (u, v))| acc + w * u * v)
    };
    let mut gram = vec![vec![Hp::zero(prec); size]; size];
    for k1 in 0..size {
        for k2 in k1..size {
            let mut acc = Hp::zero(prec);
            for i in 0..2 {
                for j in 0..2 {
                    let th = integrate(&theta_pts, &theta_vals[k1][i], &theta_vals[k2][j]);
                    let ph = integrate(&phi_pts, &phi_vals[k1][i], &phi_vals[k2][j]);
                    acc = acc + th * ph;
                }
            }
            let v = &basis.y_norms(k1).a * &basis.y_norms(k2).a * acc;
            gram[k1][k2] = v.clone();
            gram[k2][k1] = v;
        }
    }
    Ok(gram)
}
