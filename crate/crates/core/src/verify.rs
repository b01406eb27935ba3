//! Invariant suites over a [`RacahContext`], each producing a [`VerifyReport`].

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bannai::{poly_eval, ShiftOrder};
use crate::genfun::{verify_identity, GenfunForm, IdentityOptions};
use crate::numcore::rational::{int, ratio, Rational};
use crate::numcore::{Hp, Precision};
use crate::racah::{racah_matrix_with, RacahOptions, UCandidate};
use crate::report::{CheckResult, Flags, ReportConfig, SignCell, VerifyReport};
use crate::spherewave::{coord_map, y_eval, z_eval, RacahContext, WaveBasis};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Orthogonality,
    Eigen,
    Unitarity,
    Decomposition,
    Genfun,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Eigen => "eigen",
            Suite::Unitarity => "unitarity",
            Suite::Decomposition => "decomposition",
            Suite::Genfun => "genfun",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub prec: Precision,
    pub seed: u64,
    pub shift: ShiftOrder,
    pub racah: RacahOptions,
    pub form: GenfunForm,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            prec: Precision::digits(60),
            seed: 0,
            shift: ShiftOrder::ReflectAfterShift,
            racah: RacahOptions::default(),
            form: GenfunForm::default(),
        }
    }
}

impl VerifyOptions {
    pub fn with_corrupt_phase(mut self, on: bool) -> Self {
        self.racah.corrupt_phase = on;
        self
    }

    pub fn with_u(mut self, u: UCandidate) -> Self {
        self.racah.u = u;
        self
    }

    fn config(&self) -> ReportConfig {
        ReportConfig {
            precision: self.prec.decimal_digits(),
            seed: self.seed,
            flags: Flags {
                shift_order: self.shift,
                u_candidate: self.racah.u,
                genfun_form: self.form,
                corrupt_phase: self.racah.corrupt_phase,
            },
        }
    }
}

/// Runs one suite and wraps the checks in a report.
pub fn run(ctx: &RacahContext, suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let mut signs = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::Orthogonality) {
        checks.extend(orthogonality(ctx)?);
    }
    if wants(Suite::Eigen) {
        checks.push(eigen(ctx, opts)?);
    }
    if wants(Suite::Unitarity) {
        checks.push(unitarity(ctx, opts)?);
    }
    if wants(Suite::Decomposition) {
        checks.push(decomposition(ctx, opts, 20)?);
    }
    if wants(Suite::Genfun) {
        let (c, s) = genfun(ctx, opts)?;
        checks.extend(c);
        signs = s;
    }
    Ok(VerifyReport::new(suite.name(), ctx.echo(), opts.config(), checks, signs))
}

fn exact_rel(abs: &Rational, scale: &Rational) -> Rational {
    if scale.is_zero() {
        abs.clone()
    } else {
        abs / scale
    }
}

/// `sum_S w_S B_n(x_S) B_m(x_S) = 0` for `n != m`, and the diagonal against
/// the closed-form norm.
pub fn orthogonality(ctx: &RacahContext) -> Result<Vec<CheckResult>> {
    let p = ctx.bi();
    let gram = p.gram_matrix()?;
    let mut off = Rational::zero();
    let mut diag_scale = Rational::zero();
    let mut norm_err = Rational::zero();
    for (n, row) in gram.iter().enumerate() {
        for (m, v) in row.iter().enumerate() {
            if n == m {
                let closed = p.norm_closed_form(n)?;
                norm_err = norm_err.max((v - &closed).abs());
                diag_scale = diag_scale.max(v.abs());
            } else {
                off = off.max(v.abs());
            }
        }
    }
    Ok(vec![
        CheckResult::exact("orthogonality", &off, &exact_rel(&off, &diag_scale)),
        CheckResult::exact("norm", &norm_err, &exact_rel(&norm_err, &diag_scale)),
    ])
}

fn random_point(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = ratio(rng.gen_range(-60..=60), rng.gen_range(1..=17));
        let two_x = &x * int(2);
        if !two_x.is_zero() && !(two_x + int(1)).is_zero() {
            return x;
        }
    }
}

/// The operator applied to `B_n` equals `lambda_n B_n` at 10 seeded rational
/// points per degree.
pub fn eigen(ctx: &RacahContext, opts: &VerifyOptions) -> Result<CheckResult> {
    let p = ctx.bi();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = Rational::zero();
    let mut scale = Rational::zero();
    for n in 0..=p.truncation() {
        let b = p.bi_coefficients(n)?;
        let lambda = p.eigenvalue(n);
        for _ in 0..10 {
            let x = random_point(&mut rng);
            let lhs = p.bi_operator_apply(&b, &x, opts.shift)?;
            let rhs = &lambda * poly_eval(&b, &x);
            worst = worst.max((&lhs - &rhs).abs());
            scale = scale.max(rhs.abs());
        }
    }
    Ok(CheckResult::exact("eigen", &worst, &exact_rel(&worst, &scale)))
}

/// `max |R R^T - I|` against `10^(15-P)`.
pub fn unitarity(ctx: &RacahContext, opts: &VerifyOptions) -> Result<CheckResult> {
    let m = racah_matrix_with(ctx, opts.prec, opts.racah)?;
    let r = &m.orthogonality_residual;
    Ok(CheckResult::new("unitarity", r, r, &opts.prec.tolerance(15)))
}

/// Seeded angle pairs in `(0.2, pi/2 - 0.2)^2`.
pub fn sample_angles(seed: u64, count: usize, prec: Precision) -> Vec<(Hp, Hp)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = std::f64::consts::FRAC_PI_2 - 0.2;
    (0..count)
        .map(|_| {
            let th = rng.gen_range(0.2..hi);
            let ph = rng.gen_range(0.2..hi);
            (Hp::from_f64(th, prec), Hp::from_f64(ph, prec))
        })
        .collect()
}

/// `Z_S(alpha, beta) = sum_K R_{S,K} Y_K(theta, phi)` at `count` seeded
/// angle pairs; the relative error is taken against `max(1, |Z|)`.
pub fn decomposition(ctx: &RacahContext, opts: &VerifyOptions, count: usize) -> Result<CheckResult> {
    let prec = opts.prec;
    let basis = WaveBasis::new(ctx, prec)?;
    let m = racah_matrix_with(ctx, prec, opts.racah)?;
    let mut worst = Hp::zero(prec);
    let mut scale = Hp::one(prec);
    for (theta, phi) in sample_angles(opts.seed, count, prec) {
        let (alpha, beta) = coord_map(&theta, &phi)?;
        let ys: Vec<Hp> = (0..=ctx.truncation()).map(|k| y_eval(&basis, k, &theta, &phi)).collect();
        for (s, row) in m.entries.iter().enumerate() {
            let z = z_eval(&basis, s, &alpha, &beta);
            let sum = row.iter().zip(&ys).fold(Hp::zero(prec), |acc, (r, y)| acc + r * y);
            worst = worst.max((&z - &sum).abs());
            scale = scale.max(z.abs());
        }
    }
    let rel = &worst / &scale;
    Ok(CheckResult::new("decomposition", &worst, &rel, &prec.tolerance(15)))
}

/// The generating-function identity, its degree bound, and the sign table.
pub fn genfun(ctx: &RacahContext, opts: &VerifyOptions) -> Result<(Vec<CheckResult>, Vec<SignCell>)> {
    let report = verify_identity(
        ctx,
        opts.prec,
        IdentityOptions {
            form: opts.form,
            racah: opts.racah,
        },
    )?;
    let excess = report.degree_excess();
    let checks = vec![
        CheckResult::new("genfun", &report.max_abs_err(), &report.max_rel_err(), &report.tolerance),
        CheckResult::new("degree", &excess, &excess, &report.degree_tolerance),
    ];
    let signs = report
        .rows
        .iter()
        .flat_map(|r| {
            r.signs.iter().enumerate().map(move |(k, a)| SignCell {
                s: r.s,
                k,
                agreement: *a,
            })
        })
        .collect();
    Ok((checks, signs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> RacahContext {
        RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), n).unwrap()
    }

    #[test]
    fn exact_suites_report_zero() {
        let opts = VerifyOptions::default();
        let r = run(&ctx(3), Suite::Eigen, &opts).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks[0].max_abs_err, "0");
        let r = run(&ctx(3), Suite::Orthogonality, &opts).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn wrong_shift_order_fails_eigen() {
        let opts = VerifyOptions {
            shift: ShiftOrder::ShiftAfterReflect,
            ..Default::default()
        };
        assert!(!eigen(&ctx(2), &opts).unwrap().pass);
    }

    #[test]
    fn angles_are_seeded_and_in_range() {
        let p = Precision::digits(20);
        let a = sample_angles(7, 5, p);
        assert_eq!(a, sample_angles(7, 5, p));
        assert_ne!(a, sample_angles(8, 5, p));
        for (t, f) in a {
            for v in [t.to_f64(), f.to_f64()] {
                assert!(v > 0.2 && v < std::f64::consts::FRAC_PI_2 - 0.2);
            }
        }
    }

    #[test]
    fn small_decomposition_passes() {
        let opts = VerifyOptions {
            prec: Precision::digits(40),
            ..Default::default()
        };
        assert!(decomposition(&ctx(2), &opts, 3).unwrap().pass);
    }
}
