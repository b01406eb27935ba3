use serde::{Deserialize, Serialize};

use super::{monomial_coeff, ztilde_expand_with, GenfunForm};
use crate::numcore::{Hp, Precision};
use crate::racah::{racah_matrix_with, RacahOptions};
use crate::spherewave::{RacahContext, WaveBasis};
use crate::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityOptions {
    pub form: GenfunForm,
    pub racah: RacahOptions,
}

/// Sign comparison of one expanded coefficient against `R_{S,K} C_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignAgreement {
    Agree,
    Mismatch,
    /// The prediction is zero to working precision.
    Zero,
}

#[derive(Debug, Clone)]
pub struct IdentityRow {
    pub s: usize,
    pub max_abs_err: Hp,
    pub max_rel_err: Hp,
    /// Largest coefficient above `z^N`.
    pub degree_excess: Hp,
    pub fit_residual: Hp,
    pub signs: Vec<SignAgreement>,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub rows: Vec<IdentityRow>,
    pub tolerance: Hp,
    pub degree_tolerance: Hp,
    pub pass: bool,
}

impl IdentityReport {
    pub fn max_abs_err(&self) -> Hp {
        self.fold(|r| &r.max_abs_err)
    }

    pub fn max_rel_err(&self) -> Hp {
        self.fold(|r| &r.max_rel_err)
    }

    pub fn degree_excess(&self) -> Hp {
        self.fold(|r| &r.degree_excess)
    }

    pub fn degree_pass(&self) -> bool {
        self.degree_excess() <= self.degree_tolerance
    }

    /// `(S, K)` cells whose signs disagree.
    pub fn sign_mismatches(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .flat_map(|r| {
                r.signs
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a == SignAgreement::Mismatch)
                    .map(move |(k, _)| (r.s, k))
            })
            .collect()
    }

    fn fold(&self, f: impl Fn(&IdentityRow) -> &Hp) -> Hp {
        let prec = self.tolerance.precision();
        self.rows.iter().fold(Hp::zero(prec), |acc, r| acc.max(f(r).clone()))
    }
}

/// Expands every `Ztilde_S^N` and compares its coefficients with
/// `R_{S,K,N} C_{K,N}`. Passes when the relative error of every row is at
/// most `10^(25-P)`; the degree check uses `10^(20-P)`.
pub fn verify_identity(ctx: &RacahContext, prec: Precision, opts: IdentityOptions) -> Result<IdentityReport> {
    let basis = WaveBasis::new(ctx, prec)?;
    let racah = racah_matrix_with(ctx, prec, opts.racah)?;
    let c: Vec<Hp> = (0..=ctx.truncation())
        .map(|k| monomial_coeff(ctx, k, prec))
        .collect::<Result<_>>()?;
    let tolerance = prec.tolerance(25);
    let degree_tolerance = prec.tolerance(20);
    let tiny = prec.tolerance(10);
    let mut rows = Vec::new();
    for s in 0..=ctx.truncation() {
        let poly = ztilde_expand_with(&basis, s, opts.form)?;
        let predicted: Vec<Hp> = c.iter().zip(&racah.entries[s]).map(|(ck, r)| r * ck).collect();
        let scale = predicted.iter().fold(Hp::zero(prec), |acc, v| acc.max(v.abs()));
        let mut max_abs = Hp::zero(prec);
        let mut signs = Vec::new();
        for (k, pk) in predicted.iter().enumerate() {
            let got = poly.coeff(k);
            max_abs = max_abs.max((got.clone() - crate::numcore::Hpc::from_real(pk.clone())).abs());
            let agreement = if pk.abs() <= &scale * &tiny {
                SignAgreement::Zero
            } else if got.re.signum() == pk.signum() {
                SignAgreement::Agree
            } else {
                SignAgreement::Mismatch
            };
            signs.push(agreement);
        }
        let max_rel = if scale.is_zero() { max_abs.clone() } else { &max_abs / &scale };
        rows.push(IdentityRow {
            s,
            max_abs_err: max_abs,
            max_rel_err: max_rel,
            degree_excess: poly.excess_above(ctx.truncation()),
            fit_residual: poly.fit_residual.clone(),
            signs,
        });
    }
    let pass = rows.iter().all(|r| r.max_rel_err <= tolerance);
    Ok(IdentityReport {
        rows,
        tolerance,
        degree_tolerance,
        pass,
    })
}

/// The reading of the generating function under which the identity and
/// the degree bound hold on every given context, if exactly one does.
pub fn select_genfun_form(contexts: &[RacahContext], prec: Precision) -> Option<GenfunForm> {
    let passing: Vec<GenfunForm> = GenfunForm::all()
        .into_iter()
        .filter(|&form| {
            contexts.iter().all(|ctx| {
                let opts = IdentityOptions {
                    form,
                    racah: RacahOptions::default(),
                };
                verify_identity(ctx, prec, opts)
                    .map(|r| r.pass && r.degree_pass())
                    .unwrap_or(false)
            })
        })
        .collect();
    match passing.as_slice() {
        [one] => Some(*one),
        _ => None,
    }
}
