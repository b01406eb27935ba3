use super::{ztilde_eval, GenfunForm};
use crate::numcore::{pi, sin_cos, Hp, Hpc, Precision};
use crate::spherewave::WaveBasis;
use crate::{Error, Result};

/// Coefficients of a polynomial in `z` recovered from samples.
#[derive(Debug, Clone)]
pub struct PolyZ {
    /// `coeffs[j]` multiplies `z^j`, `j = 0..=degree_bound`.
    pub coeffs: Vec<Hpc>,
    pub degree_bound: usize,
    /// Largest sample misfit, relative to `max(1, max |f|)`.
    pub fit_residual: Hp,
}

impl PolyZ {
    pub fn coeff(&self, j: usize) -> Hpc {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| Hpc::zero(self.fit_residual.precision()))
    }

    /// Largest `|c_j|` with `j > n`.
    pub fn excess_above(&self, n: usize) -> Hp {
        let prec = self.fit_residual.precision();
        self.coeffs
            .iter()
            .skip(n + 1)
            .fold(Hp::zero(prec), |acc, c| acc.max(c.abs()))
    }

    pub fn eval(&self, z: &Hpc) -> Hpc {
        let prec = z.precision();
        self.coeffs.iter().rev().fold(Hpc::zero(prec), |acc, c| acc * z + c)
    }
}

/// Expands `f` on `m` equispaced points of the circle `|z| = radius`,
/// keeping `z^0 .. z^degree_bound`.
///
/// On roots of unity the Vandermonde system is unitary up to scaling, so
/// its solution is the discrete Fourier transform.
pub fn expand_on_circle<F>(f: F, m: usize, radius: &Hp, degree_bound: usize, prec: Precision) -> Result<PolyZ>
where
    F: Fn(&Hpc) -> Result<Hpc>,
{
    let work = prec.extended(16);
    let two_pi = pi(work).mul_pow2(1);
    let roots: Vec<Hpc> = (0..m)
        .map(|j| {
            let (s, c) = sin_cos(&(&two_pi * Hp::from_i64(j as i64, work) / Hp::from_i64(m as i64, work)));
            Hpc::new(c, s)
        })
        .collect();
    let r = radius.with_precision(work);
    let points: Vec<Hpc> = roots.iter().map(|w| w.scale(&r)).collect();
    let values = points
        .iter()
        .map(|z| f(&z.clone()).map(|v| Hpc::new(v.re.with_precision(work), v.im.with_precision(work))))
        .collect::<Result<Vec<_>>>()?;
    let inv_m = Hp::from_i64(m as i64, work).recip()?;
    let inv_r = r.recip()?;
    let mut coeffs = Vec::with_capacity(degree_bound + 1);
    let mut rpow = Hp::one(work);
    for j in 0..=degree_bound {
        let mut acc = Hpc::zero(work);
        for (idx, v) in values.iter().enumerate() {
            acc = acc + v * roots[(j * idx) % m].conj();
        }
        coeffs.push(acc.scale(&(&inv_m * &rpow)));
        rpow = rpow * &inv_r;
    }
    let poly = PolyZ {
        coeffs,
        degree_bound,
        fit_residual: Hp::zero(work),
    };
    let mut scale = Hp::one(work);
    let mut misfit = Hp::zero(work);
    for (z, v) in points.iter().zip(&values) {
        scale = scale.max(v.abs());
        misfit = misfit.max((poly.eval(z) - v).abs());
    }
    let fit_residual = (misfit / scale).with_precision(prec);
    let coeffs = poly
        .coeffs
        .into_iter()
        .map(|c| Hpc::new(c.re.with_precision(prec), c.im.with_precision(prec)))
        .collect();
    Ok(PolyZ {
        coeffs,
        degree_bound,
        fit_residual,
    })
}

/// Taylor coefficients of `Ztilde_S^N` up to `z^{2N+4}` from `2N+9` samples
/// on `|z| = 1/2`.
pub fn ztilde_expand(basis: &WaveBasis, s: usize) -> Result<PolyZ> {
    ztilde_expand_with(basis, s, GenfunForm::default())
}

pub fn ztilde_expand_with(basis: &WaveBasis, s: usize, form: GenfunForm) -> Result<PolyZ> {
    let prec = basis.precision();
    let n = basis.context().truncation();
    let radius = Hp::one(prec).mul_pow2(-1);
    let poly = expand_on_circle(|z| ztilde_eval(basis, s, z, form), 2 * n + 9, &radius, 2 * n + 4, prec)?;
    let limit = prec.tolerance(20);
    if poly.fit_residual > limit {
        return Err(Error::IllConditioned(poly.fit_residual.to_sci_string(6)));
    }
    Ok(poly)
}
