mod common;

use biracah::genfun::{
    disentangle, fs_z, psi_exact, psi_matched, select_genfun_form, verify_identity, y_asymptotic, z_form, ztilde_eval,
    ztilde_expand, GenfunForm, IdentityOptions, SignAgreement,
};
use biracah::numcore::rational::{half, int, ratio, Rational};
use biracah::racah::{racah_matrix, RacahOptions};
use biracah::spherewave::{fk_trig, z_trig, Sign, WaveBasis};
use biracah::{Hp, Hpc, Precision, RacahContext};
use common::{contexts, label};
use num_complex::Complex;

fn prec() -> Precision {
    Precision::digits(50)
}

fn samples() -> Vec<Hpc> {
    let p = prec();
    [(3, 10, 0, 1), (-9, 20, 0, 1), (1, 5, 1, 10), (-1, 4, -1, 3), (2, 3, 1, 7)]
        .iter()
        .map(|&(a, b, c, d)| Hpc::from_rationals(&ratio(a, b), &ratio(c, d), p))
        .collect()
}

/// `(cos beta, sin beta)` on the branch `cos alpha = z`.
fn beta_of(z: &Hpc) -> (Hpc, Hpc) {
    let one = Hpc::one(z.precision());
    let root = (&one - z * z).sqrt();
    let sin_b = root.recip().unwrap();
    let cos_b = Hpc::i(z.precision()) * z * &sin_b;
    (cos_b, sin_b)
}

#[test]
fn psi_mismatched_branch_is_one_plus_i() {
    let one_plus_i = Complex::new(int(1), int(1));
    for (m1, m2) in [(half(), half()), (ratio(1, 4), ratio(3, 4)), (ratio(2, 3), ratio(1, 3))] {
        for k_index in 0..9 {
            let (_, other) = psi_matched(k_index, &m1, &m2);
            assert_eq!(other, one_plus_i, "K = {k_index}");
        }
    }
    assert_eq!(psi_exact(0, 0, &half(), &half(), Sign::Plus), Complex::new(int(1), int(0)));
    assert_eq!(psi_exact(0, 0, &half(), &half(), Sign::Minus), Complex::new(int(1), int(1)));
}

#[test]
fn disentangle_examples() {
    let p = prec();
    let one_plus_i = Hpc::from_rationals(&int(1), &int(1), p);
    assert!(disentangle(&one_plus_i).abs() < p.tolerance(2));
    let half_root2 = Hp::from_i64(2, p).sqrt().unwrap().mul_pow2(-1);
    assert!((disentangle(&Hpc::one(p)) - half_root2).abs() < p.tolerance(2));

    // matched even branch: (1 + k/(k + mu1 + mu2)) / sqrt 2
    let (m1, m2) = (ratio(1, 4), ratio(3, 4));
    for k in 0..4usize {
        let (matched, _) = psi_matched(2 * k, &m1, &m2);
        let v = disentangle(&Hpc::from_rationals(&matched.re, &matched.im, p));
        let kk = int(k as i64);
        let expected = Hp::from_rational(&(int(1) + &kk / (&kk + &m1 + &m2)), p) / Hp::from_i64(2, p).sqrt().unwrap();
        assert!((v - expected).abs() < p.tolerance(3), "k = {k}");
    }
}

#[test]
fn fs_z_is_fk_at_complex_beta() {
    for ctx in contexts(5) {
        let basis = WaveBasis::new(&ctx, prec()).unwrap();
        let cyc = WaveBasis::new(&ctx.cycled(), prec()).unwrap();
        for s in 0..=ctx.truncation() {
            for z in samples() {
                let (cb, sb) = beta_of(&z);
                for sign in [Sign::Plus, Sign::Minus] {
                    let a = fs_z(&basis, s, sign, &z).unwrap();
                    let b = fk_trig(&cyc, s, sign, &cb, &sb);
                    assert!((&a - &b).abs() < prec().tolerance(12), "{} S={s} {sign:?}: {a} vs {b}", label(&ctx));
                }
            }
        }
    }
}

#[test]
fn z_form_is_z_at_complex_angles() {
    for ctx in contexts(5) {
        let basis = WaveBasis::new(&ctx, prec()).unwrap();
        for s in 0..=ctx.truncation() {
            for z in samples() {
                let (cb, sb) = beta_of(&z);
                let sa = (Hpc::one(prec()) - &z * &z).sqrt();
                let a = z_form(&basis, s, &z).unwrap();
                let b = z_trig(&basis, s, &z, &sa, &cb, &sb);
                assert!((&a - &b).abs() < prec().tolerance(12), "{} S={s}: {a} vs {b}", label(&ctx));
            }
        }
    }
}

#[test]
fn entangled_identity_holds_pointwise() {
    for ctx in contexts(6) {
        let basis = WaveBasis::new(&ctx, prec()).unwrap();
        let r = racah_matrix(&ctx, prec()).unwrap();
        for (s, row) in r.entries.iter().enumerate() {
            for z in samples() {
                let lhs = z_form(&basis, s, &z).unwrap();
                let rhs = row
                    .iter()
                    .enumerate()
                    .fold(Hpc::zero(prec()), |acc, (k, rk)| acc + y_asymptotic(&basis, k, &z).scale(rk));
                assert!((&lhs - &rhs).abs() < prec().tolerance(20), "{} S={s}", label(&ctx));
            }
        }
    }
}

#[test]
fn ztilde_is_disentangled_z_form_on_real_axis() {
    let reals: Vec<Rational> = vec![ratio(3, 10), ratio(-9, 20), ratio(7, 10), ratio(1, 100)];
    for ctx in contexts(6) {
        let basis = WaveBasis::new(&ctx, prec()).unwrap();
        for s in 0..=ctx.truncation() {
            for x in &reals {
                let z = Hpc::from_rationals(x, &int(0), prec());
                let zt = ztilde_eval(&basis, s, &z, GenfunForm::default()).unwrap();
                let expected = disentangle(&z_form(&basis, s, &z).unwrap());
                assert!((&zt.re - &expected).abs() < prec().tolerance(20), "{} S={s} z={x}", label(&ctx));
                assert!(zt.im.abs() < prec().tolerance(5), "imaginary part at real z");
            }
        }
    }
}

#[test]
fn ztilde_pole_at_unit_z() {
    let ctx = RacahContext::new(half(), half(), half(), 2).unwrap();
    let basis = WaveBasis::new(&ctx, prec()).unwrap();
    for z in [Hpc::one(prec()), -Hpc::one(prec())] {
        assert!(ztilde_eval(&basis, 0, &z, GenfunForm::default()).is_err());
    }
}

#[test]
fn smallest_expansion_is_a_constant() {
    let ctx = RacahContext::new(half(), half(), half(), 0).unwrap();
    let basis = WaveBasis::new(&ctx, prec()).unwrap();
    let poly = ztilde_expand(&basis, 0).unwrap();
    assert!(poly.excess_above(0) < prec().tolerance(20));
    assert!(!poly.coeff(0).abs().is_zero());
    let report = verify_identity(&ctx, prec(), IdentityOptions::default()).unwrap();
    assert!(report.pass);
}

#[test]
fn identity_holds_up_to_six() {
    for n in 0..=6 {
        let ctx = RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), n).unwrap();
        let report = verify_identity(&ctx, prec(), IdentityOptions::default()).unwrap();
        assert!(report.pass && report.degree_pass(), "N = {n}: {}", report.max_rel_err());
        assert!(report.sign_mismatches().is_empty());
    }
}

#[test]
fn corrupted_phase_mismatches_only_odd_rows() {
    let opts = IdentityOptions {
        racah: RacahOptions {
            corrupt_phase: true,
            ..Default::default()
        },
        ..Default::default()
    };
    for n in 1..=5 {
        let ctx = RacahContext::new(ratio(2, 3), ratio(1, 3), ratio(5, 4), n).unwrap();
        let report = verify_identity(&ctx, prec(), opts).unwrap();
        assert!(!report.pass);
        let bad = report.sign_mismatches();
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|&(s, _)| s % 2 == 1), "N = {n}: {bad:?}");
        for row in report.rows.iter().filter(|r| r.s % 2 == 1) {
            assert!(row.signs.iter().all(|a| *a != SignAgreement::Agree));
        }
    }
}

#[test]
fn oracle_selects_the_default_form() {
    let ctxs: Vec<RacahContext> = (1..=3)
        .flat_map(|n| {
            [
                RacahContext::new(half(), half(), half(), n).unwrap(),
                RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), n).unwrap(),
            ]
        })
        .collect();
    assert_eq!(select_genfun_form(&ctxs, Precision::digits(40)), Some(GenfunForm::default()));
}

#[test]
fn every_other_form_fails_somewhere() {
    let ctxs: Vec<RacahContext> = (1..=3).map(|n| RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), n).unwrap()).collect();
    for form in GenfunForm::all().into_iter().filter(|f| *f != GenfunForm::default()) {
        let fails = ctxs.iter().any(|ctx| {
            verify_identity(ctx, Precision::digits(40), IdentityOptions { form, ..Default::default() })
                .map(|r| !(r.pass && r.degree_pass()))
                .unwrap_or(true)
        });
        assert!(fails, "{form:?} should be rejected");
    }
}
