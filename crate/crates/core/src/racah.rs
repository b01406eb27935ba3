//! osp(1|2) Racah coefficients as normalized Bannai-Ito polynomials:
//!
//! ```text
//! R_{S,K,N} = Phi_S^N sqrt(w_S / (h_N u_1 ... u_K)) B_K(x_S)
//! ```

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bannai::{BiError, BiParams};
use crate::numcore::rational::{self, half, int, Rational};
use crate::numcore::{Hp, Precision};
use crate::spherewave::RacahContext;
use crate::{Error, Result};

/// Which product of recurrence coefficients plays the role of `u_i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UCandidate {
    /// `a_{i-1} c_i`
    #[default]
    PrevA,
    /// `a_i c_i`
    SameIndex,
    /// `a_{i-1} c_{i-1}`
    PrevBoth,
}

impl UCandidate {
    pub const ALL: [UCandidate; 3] = [UCandidate::PrevA, UCandidate::SameIndex, UCandidate::PrevBoth];
}

/// `u_i` for `i >= 1`.
pub fn u_factor(p: &BiParams, i: usize, which: UCandidate) -> std::result::Result<Rational, BiError> {
    let (ai, ci) = p.recurrence_coeffs(i)?;
    let (ap, cp) = p.recurrence_coeffs(i - 1)?;
    Ok(match which {
        UCandidate::PrevA => ap * ci,
        UCandidate::SameIndex => ai * ci,
        UCandidate::PrevBoth => ap * cp,
    })
}

/// `u_1 ... u_K`; the empty product is 1.
pub fn u_product(p: &BiParams, k: usize, which: UCandidate) -> std::result::Result<Rational, BiError> {
    (1..=k).try_fold(Rational::one(), |acc, i| Ok(acc * u_factor(p, i, which)?))
}

/// Bannai-Ito parameters of the threefold coupling, and the coupled `mu`.
pub fn param_map(mu1: &Rational, mu2: &Rational, mu3: &Rational, n: usize) -> std::result::Result<(BiParams, Rational), BiError> {
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let mu = sign * (int(n as i64 + 1) + mu1 + mu2 + mu3);
    let h = half();
    let rho1 = (mu2 + mu3) * &h;
    let rho2 = (mu1 + &mu) * &h;
    let r1 = (mu3 - mu2) * &h;
    let r2 = (&mu - mu1) * &h;
    Ok((BiParams::new(rho1, rho2, r1, r2, n)?, mu))
}

/// `|rho2 + r2| + r2 - rho2 - 2 rho1 - 1`, which recovers `N` from the
/// parameters of [`param_map`].
pub fn n_from_params(p: &BiParams) -> Rational {
    (p.rho2() + p.r2()).abs() + p.r2() - p.rho2() - p.rho1() * int(2) - int(1)
}

/// `Phi_S^N = (-1)^(n + t(1-p))` with `N = 2n + t`, `S = 2s + p`.
pub fn phase(s: usize, n: usize) -> i32 {
    let (half_n, t) = (n / 2, n % 2);
    let p = s % 2;
    if (half_n + t * (1 - p)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Knobs for mutation testing; the defaults give the genuine coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RacahOptions {
    pub u: UCandidate,
    /// Flip the phase of every odd-`S` row.
    pub corrupt_phase: bool,
}

/// The full `(N+1) x (N+1)` coefficient array, rows indexed by `S`.
#[derive(Debug, Clone)]
pub struct RacahMatrix {
    pub entries: Vec<Vec<Hp>>,
    pub context: RacahContext,
    pub precision: Precision,
    /// `max(|R R^T - I|, |R^T R - I|)` over all entries.
    pub orthogonality_residual: Hp,
}

fn row_phase(s: usize, n: usize, opts: RacahOptions) -> i32 {
    let ph = phase(s, n);
    if opts.corrupt_phase && s % 2 == 1 {
        -ph
    } else {
        ph
    }
}

fn row(ctx: &RacahContext, s: usize, prec: Precision, opts: RacahOptions, u_prefix: &[Rational], h_n: &Rational) -> Result<Vec<Hp>> {
    let p = ctx.bi();
    let w = p.weight(s)?;
    let b = p.bi_values(&p.grid(s));
    let ph = row_phase(s, ctx.truncation(), opts);
    b.iter()
        .zip(u_prefix)
        .enumerate()
        .map(|(k, (bk, up))| {
            if up.is_zero() {
                return Err(Error::ZeroNorm(format!("u_1 ... u_{k}")));
            }
            let radicand = &w / (h_n * up);
            if radicand.is_negative() {
                return Err(Error::NegativeRadicand {
                    what: format!("R_(S={s}, K={k})"),
                    value: rational::to_string(&radicand),
                });
            }
            let mut v = Hp::from_rational(&radicand, prec).sqrt()? * Hp::from_rational(bk, prec);
            if ph < 0 {
                v = -v;
            }
            Ok(v)
        })
        .collect()
}

fn prefixes(p: &BiParams, which: UCandidate) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(p.truncation() + 1);
    out.push(Rational::one());
    for i in 1..=p.truncation() {
        let next = &out[i - 1] * u_factor(p, i, which)?;
        out.push(next);
    }
    Ok(out)
}

/// A single coefficient `R_{S,K,N}`.
pub fn racah_coeff(ctx: &RacahContext, s: usize, k: usize, prec: Precision) -> Result<Hp> {
    racah_coeff_with(ctx, s, k, prec, RacahOptions::default())
}

pub fn racah_coeff_with(ctx: &RacahContext, s: usize, k: usize, prec: Precision, opts: RacahOptions) -> Result<Hp> {
    let n = ctx.truncation();
    if s > n || k > n {
        return Err(BiError::OutOfRange {
            degree: s.max(k),
            truncation: n,
        }
        .into());
    }
    let h_n = ctx.bi().h_n()?;
    let pre = prefixes(ctx.bi(), opts.u)?;
    Ok(row(ctx, s, prec, opts, &pre, &h_n)?.swap_remove(k))
}

pub fn racah_matrix(ctx: &RacahContext, prec: Precision) -> Result<RacahMatrix> {
    racah_matrix_with(ctx, prec, RacahOptions::default())
}

pub fn racah_matrix_with(ctx: &RacahContext, prec: Precision, opts: RacahOptions) -> Result<RacahMatrix> {
    let h_n = ctx.bi().h_n()?;
    let pre = prefixes(ctx.bi(), opts.u)?;
    let entries = (0..=ctx.truncation())
        .map(|s| row(ctx, s, prec, opts, &pre, &h_n))
        .collect::<Result<Vec<_>>>()?;
    let orthogonality_residual = orthogonality_residual(&entries, prec);
    Ok(RacahMatrix {
        entries,
        context: ctx.clone(),
        precision: prec,
        orthogonality_residual,
    })
}

/// `max(|M M^T - I|, |M^T M - I|)` entrywise.
pub fn orthogonality_residual(m: &[Vec<Hp>], prec: Precision) -> Hp {
    let size = m.len();
    let mut worst = Hp::zero(prec);
    for i in 0..size {
        for j in 0..size {
            let target = if i == j { Hp::one(prec) } else { Hp::zero(prec) };
            let rows = (0..size).fold(Hp::zero(prec), |acc, k| acc + &m[i][k] * &m[j][k]);
            let cols = (0..size).fold(Hp::zero(prec), |acc, k| acc + &m[k][i] * &m[k][j]);
            worst = worst.max((&rows - &target).abs()).max((cols - target).abs());
        }
    }
    worst
}

/// The `u_i` candidate under which the Racah matrix of `ctx` is orthonormal
/// to `tol`, if exactly one is.
pub fn select_u_candidate(ctx: &RacahContext, prec: Precision, tol: &Hp) -> Option<UCandidate> {
    let passing: Vec<UCandidate> = UCandidate::ALL
        .into_iter()
        .filter(|&u| {
            racah_matrix_with(ctx, prec, RacahOptions { u, corrupt_phase: false })
                .map(|m| &m.orthogonality_residual <= tol)
                .unwrap_or(false)
        })
        .collect();
    match passing.as_slice() {
        [one] => Some(*one),
        _ => None,
    }
}
