//! Bannai-Ito polynomials `B_n(x; rho1, rho2, r1, r2)` truncated at size `N`.
//!
//! Everything here is exact rational arithmetic. The monic polynomials obey
//!
//! ```text
//! x B_n = B_{n+1} + (rho1 - a_n - c_n) B_n + a_{n-1} c_n B_{n-1},   B_{-1} = 0, B_0 = 1
//! ```
//!
//! and are orthogonal on the grid `x_S`, `S = 0..N`, with weights `w_S`.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numcore::rational::{self, half, int, pochhammer, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiError {
    #[error("truncation condition {condition} violated for N = {truncation} (left side is {actual})")]
    Truncation {
        truncation: usize,
        condition: &'static str,
        actual: String,
    },
    #[error("recurrence denominator vanishes at n = {0}")]
    ZeroDenominator(usize),
    #[error("grid points x_{0} and x_{1} coincide")]
    GridCollision(usize, usize),
    #[error("weight denominator vanishes at S = {0}")]
    DegenerateMeasure(usize),
    #[error("normalization h_N has a vanishing denominator")]
    DegenerateNorm,
    #[error("operator is singular at x = {0}")]
    SingularPoint(String),
    #[error("degree {degree} exceeds truncation size {truncation}")]
    OutOfRange { degree: usize, truncation: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// How `P_x D_x` acts on `f`, with `P_x f(x) = f(-x)` and `D_x f(x) = f(x-1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftOrder {
    /// `f(-x-1)`: shift first, then reflect.
    #[default]
    ReflectAfterShift,
    /// `f(1-x)`: reflect first, then shift.
    ShiftAfterReflect,
}

impl ShiftOrder {
    pub const ALL: [ShiftOrder; 2] = [ShiftOrder::ReflectAfterShift, ShiftOrder::ShiftAfterReflect];

    fn image(self, x: &Rational) -> Rational {
        match self {
            ShiftOrder::ReflectAfterShift => -x - Rational::one(),
            ShiftOrder::ShiftAfterReflect => Rational::one() - x,
        }
    }
}

/// Validated Bannai-Ito parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiParams {
    rho1: Rational,
    rho2: Rational,
    r1: Rational,
    r2: Rational,
    truncation: usize,
    // (a_n, c_n) for n = 0..=N
    coeffs: Vec<(Rational, Rational)>,
}

impl BiParams {
    pub fn new(rho1: Rational, rho2: Rational, r1: Rational, r2: Rational, truncation: usize) -> Result<Self, BiError> {
        let n1 = int(truncation as i64 + 1);
        if truncation % 2 == 0 {
            let lhs = (&r2 - &rho1) * int(2);
            if lhs != n1 {
                return Err(BiError::Truncation {
                    truncation,
                    condition: "2(r2 - rho1) = N + 1",
                    actual: rational::to_string(&lhs),
                });
            }
        } else {
            let lhs = &rho1 + &rho2;
            if lhs != -n1 * half() {
                return Err(BiError::Truncation {
                    truncation,
                    condition: "rho1 + rho2 = -(N + 1)/2",
                    actual: rational::to_string(&lhs),
                });
            }
        }
        let d = &rho1 + &rho2 - &r1 - &r2;
        for n in 1..=truncation {
            let m = int(n as i64) + &d;
            if m.is_zero() || (&m + Rational::one()).is_zero() {
                return Err(BiError::ZeroDenominator(n));
            }
        }
        let mut p = BiParams {
            rho1,
            rho2,
            r1,
            r2,
            truncation,
            coeffs: Vec::new(),
        };
        for s in 0..=truncation {
            let xs = p.grid(s);
            for t in 0..s {
                if p.grid(t) == xs {
                    return Err(BiError::GridCollision(t, s));
                }
            }
        }
        p.coeffs = (0..=truncation).map(|n| p.raw_coeffs(n)).collect();
        Ok(p)
    }

    pub fn rho1(&self) -> &Rational {
        &self.rho1
    }

    pub fn rho2(&self) -> &Rational {
        &self.rho2
    }

    pub fn r1(&self) -> &Rational {
        &self.r1
    }

    pub fn r2(&self) -> &Rational {
        &self.r2
    }

    /// The truncation size `N`; the family is `B_0, ..., B_N`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn raw_coeffs(&self, n: usize) -> (Rational, Rational) {
        let nn = int(n as i64);
        let two = int(2);
        let four = int(4);
        let (r1, r2, p1, p2) = (&self.r1, &self.r2, &self.rho1, &self.rho2);
        let d = p1 + p2 - r1 - r2;
        let a = if n % 2 == 0 {
            (&nn + &two * p1 - &two * r1 + int(1)) * (&nn + &two * p1 - &two * r2 + int(1)) / (&four * (&nn + &d + int(1)))
        } else {
            (&nn + &two * (p1 + p2 - r1 - r2) + int(1)) * (&nn + &two * (p1 + p2) + int(1)) / (&four * (&nn + &d + int(1)))
        };
        let c = if n == 0 {
            Rational::zero()
        } else if n % 2 == 0 {
            -(&nn * (&nn - &two * (r1 + r2))) / (&four * (&nn + &d))
        } else {
            -((&nn + &two * p2 - &two * r2) * (&nn + &two * p2 - &two * r1)) / (&four * (&nn + &d))
        };
        (a, c)
    }

    /// `(a_n, c_n)`. Indices past `N` are computed on demand and may hit a
    /// vanishing denominator.
    pub fn recurrence_coeffs(&self, n: usize) -> Result<(Rational, Rational), BiError> {
        if let Some(ac) = self.coeffs.get(n) {
            return Ok(ac.clone());
        }
        let d = &self.rho1 + &self.rho2 - &self.r1 - &self.r2 + int(n as i64);
        if d.is_zero() || (&d + Rational::one()).is_zero() {
            return Err(BiError::ZeroDenominator(n));
        }
        Ok(self.raw_coeffs(n))
    }

    fn check_degree(&self, n: usize) -> Result<(), BiError> {
        if n > self.truncation {
            return Err(BiError::OutOfRange {
                degree: n,
                truncation: self.truncation,
            });
        }
        Ok(())
    }

    /// `B_n(x)` via the three-term recurrence.
    pub fn bi_eval(&self, n: usize, x: &Rational) -> Result<Rational, BiError> {
        self.check_degree(n)?;
        Ok(self.bi_values(x).swap_remove(n))
    }

    /// `[B_0(x), ..., B_N(x)]`.
    pub fn bi_values(&self, x: &Rational) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.truncation + 1);
        out.push(Rational::one());
        for j in 0..self.truncation {
            let (a, c) = &self.coeffs[j];
            let mut next = (x - (&self.rho1 - a - c)) * &out[j];
            if j > 0 {
                next -= &self.coeffs[j - 1].0 * c * &out[j - 1];
            }
            out.push(next);
        }
        out
    }

    /// Monomial coefficients of `B_n`, lowest degree first.
    pub fn bi_coefficients(&self, n: usize) -> Result<Vec<Rational>, BiError> {
        self.check_degree(n)?;
        let mut prev: Vec<Rational> = Vec::new();
        let mut cur = vec![Rational::one()];
        for j in 0..n {
            let (a, c) = &self.coeffs[j];
            let shift = &self.rho1 - a - c;
            let mut next = vec![Rational::zero(); j + 2];
            for (i, v) in cur.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= &shift * v;
            }
            if j > 0 {
                let u = &self.coeffs[j - 1].0 * c;
                for (i, v) in prev.iter().enumerate() {
                    next[i] -= &u * v;
                }
            }
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(cur)
    }

    /// `lambda_n`: `n/2` for even `n`, `r1 + r2 - rho1 - rho2 - (n+1)/2` for odd `n`.
    pub fn eigenvalue(&self, n: usize) -> Rational {
        let nn = int(n as i64);
        if n % 2 == 0 {
            nn * half()
        } else {
            &self.r1 + &self.r2 - &self.rho1 - &self.rho2 - (nn + int(1)) * half()
        }
    }

    /// Applies the Bannai-Ito difference operator to the polynomial with
    /// coefficients `f` (lowest degree first) and evaluates at `x`.
    pub fn bi_operator_apply(&self, f: &[Rational], x: &Rational, order: ShiftOrder) -> Result<Rational, BiError> {
        let two_x = x * int(2);
        if two_x.is_zero() || (&two_x + Rational::one()).is_zero() {
            return Err(BiError::SingularPoint(rational::to_string(x)));
        }
        let fx = poly_eval(f, x);
        let first = (x - &self.rho1) * (x - &self.rho2) / &two_x * (&fx - poly_eval(f, &-x));
        let second = (x - &self.r1 + half()) * (x - &self.r2 + half()) / (&two_x + int(1))
            * (poly_eval(f, &order.image(x)) - &fx);
        Ok(first + second)
    }

    /// Grid point `x_S = ((-1)^S (S + 2 rho1 + 1/2) - 1/2) / 2`.
    pub fn grid(&self, s: usize) -> Rational {
        let v = int(s as i64) + &self.rho1 * int(2) + half();
        let v = if s % 2 == 0 { v } else { -v };
        (v - half()) * half()
    }

    /// Weight `w_S` of the orthogonality measure, normalized to `w_0 = 1`.
    pub fn weight(&self, s_index: usize) -> Result<Rational, BiError> {
        self.check_degree(s_index)?;
        let (s, p) = ((s_index / 2) as u64, (s_index % 2) as u64);
        let (r1, r2, p1, p2) = (&self.r1, &self.r2, &self.rho1, &self.rho2);
        let h = half();
        let num = pochhammer(&(p1 - r1 + &h), s + p)
            * pochhammer(&(p1 - r2 + &h), s + p)
            * pochhammer(&(p1 + p2 + int(1)), s)
            * pochhammer(&(p1 * int(2) + int(1)), s);
        let den = pochhammer(&(p1 + r1 + &h), s + p)
            * pochhammer(&(p1 + r2 + &h), s + p)
            * pochhammer(&Rational::one(), s)
            * pochhammer(&(p1 - p2 + int(1)), s);
        if den.is_zero() {
            return Err(BiError::DegenerateMeasure(s_index));
        }
        let w = num / den;
        Ok(if p == 1 { -w } else { w })
    }

    /// All weights `w_0..w_N`.
    pub fn weights(&self) -> Result<Vec<Rational>, BiError> {
        (0..=self.truncation).map(|s| self.weight(s)).collect()
    }

    /// Closed-form total mass `h_N` of the measure.
    pub fn h_n(&self) -> Result<Rational, BiError> {
        let (r1, r2, p1, p2) = (&self.r1, &self.r2, &self.rho1, &self.rho2);
        let h = half();
        let (num, den) = if self.truncation % 2 == 0 {
            let m = (self.truncation / 2) as u64;
            (
                pochhammer(&(p1 * int(2) + int(1)), m) * pochhammer(&(r1 - p2 + &h), m),
                pochhammer(&(p1 - p2 + int(1)), m) * pochhammer(&(p1 + r1 + &h), m),
            )
        } else {
            let m = (self.truncation as u64).div_ceil(2);
            (
                pochhammer(&(p1 * int(2) + int(1)), m) * pochhammer(&(r1 + r2), m),
                pochhammer(&(p1 + r1 + &h), m) * pochhammer(&(p1 + r2 + &h), m),
            )
        };
        if den.is_zero() {
            return Err(BiError::DegenerateNorm);
        }
        Ok(num / den)
    }

    /// `sum_S w_S B_n(x_S) B_m(x_S)`, exactly.
    pub fn inner_product(&self, n: usize, m: usize) -> Result<Rational, BiError> {
        self.check_degree(n.max(m))?;
        let mut acc = Rational::zero();
        for s in 0..=self.truncation {
            let b = self.bi_values(&self.grid(s));
            acc += self.weight(s)? * &b[n] * &b[m];
        }
        Ok(acc)
    }

    /// Squared norm of `B_n` by direct summation over the grid.
    pub fn norm(&self, n: usize) -> Result<Rational, BiError> {
        self.inner_product(n, n)
    }

    /// The product form `h_N u_1 ... u_n` of the squared norm.
    pub fn norm_closed_form(&self, n: usize) -> Result<Rational, BiError> {
        self.check_degree(n)?;
        Ok(self.h_n()? * crate::racah::u_product(self, n, crate::racah::UCandidate::default())?)
    }

    /// Full Gram matrix `[<B_n, B_m>]` in one pass over the grid.
    pub fn gram_matrix(&self) -> Result<Vec<Vec<Rational>>, BiError> {
        let size = self.truncation + 1;
        let mut g = vec![vec![Rational::zero(); size]; size];
        for s in 0..size {
            let w = self.weight(s)?;
            let b = self.bi_values(&self.grid(s));
            for n in 0..size {
                let wb = &w * &b[n];
                for m in n..size {
                    g[n][m] += &wb * &b[m];
                }
            }
        }
        for n in 1..size {
            let (upper, lower) = g.split_at_mut(n);
            for (m, row) in upper.iter().enumerate() {
                lower[0][m] = row[n].clone();
            }
        }
        Ok(g)
    }

    /// True when every weight is positive, i.e. the measure is a genuine
    /// positive discrete measure.
    pub fn is_positive_measure(&self) -> Result<bool, BiError> {
        Ok(self.weights()?.iter().all(|w| w.is_positive()))
    }
}

/// Horner evaluation, coefficients lowest degree first.
pub fn poly_eval(f: &[Rational], x: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// The shift order under which `B_1` is an eigenfunction of the operator.
pub fn select_shift_order(p: &BiParams) -> Option<ShiftOrder> {
    if p.truncation() == 0 {
        return Some(ShiftOrder::default());
    }
    let b1 = p.bi_coefficients(1).ok()?;
    let lambda = p.eigenvalue(1);
    let probes = [rational::ratio(1, 3), rational::ratio(-2, 7), rational::ratio(5, 2)];
    ShiftOrder::ALL.into_iter().find(|&order| {
        probes.iter().all(|x| {
            p.bi_operator_apply(&b1, x, order)
                .map(|v| v == &lambda * poly_eval(&b1, x))
                .unwrap_or(false)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::rational::ratio;

    // rho1 = 1/2, rho2 = 5/2, r1 = 0, r2 = 2, N = 2
    fn sample() -> BiParams {
        BiParams::new(ratio(1, 2), ratio(5, 2), int(0), int(2), 2).unwrap()
    }

    #[test]
    fn recurrence_start() {
        let p = sample();
        let (a0, c0) = p.recurrence_coeffs(0).unwrap();
        assert_eq!(a0, ratio(-1, 2));
        assert!(c0.is_zero());
        let x = ratio(3, 7);
        assert_eq!(p.bi_eval(0, &x).unwrap(), int(1));
        assert_eq!(p.bi_eval(1, &x).unwrap(), &x - (p.rho1() - a0 - c0));
    }

    #[test]
    fn eigenvalues() {
        let p = sample();
        assert_eq!(p.eigenvalue(0), int(0));
        assert_eq!(p.eigenvalue(2), int(1));
        assert_eq!(p.eigenvalue(1), int(-2));
    }

    #[test]
    fn grid_points() {
        let p = sample();
        assert_eq!(p.grid(0), ratio(1, 2));
        assert_eq!(p.grid(1), ratio(-3, 2));
        assert_eq!(p.grid(2), ratio(3, 2));
    }

    #[test]
    fn first_weights() {
        let p = sample();
        assert_eq!(p.weight(0).unwrap(), int(1));
        let h = half();
        let (r1, r2, p1) = (p.r1(), p.r2(), p.rho1());
        let expected = -((p1 - r1 + &h) * (p1 - r2 + &h)) / ((p1 + r1 + &h) * (p1 + r2 + &h));
        assert_eq!(p.weight(1).unwrap(), expected);
    }

    #[test]
    fn truncation_is_enforced() {
        let err = BiParams::new(ratio(1, 2), ratio(5, 2), int(0), int(3), 2).unwrap_err();
        assert!(matches!(err, BiError::Truncation { condition, .. } if condition.contains("r2 - rho1")));
        let err = BiParams::new(int(0), int(0), int(0), int(0), 1).unwrap_err();
        assert!(matches!(err, BiError::Truncation { condition, .. } if condition.contains("rho1 + rho2")));
    }

    #[test]
    fn coefficients_agree_with_values() {
        let p = sample();
        let x = ratio(-5, 11);
        for n in 0..=2 {
            let c = p.bi_coefficients(n).unwrap();
            assert_eq!(c.len(), n + 1);
            assert_eq!(c[n], int(1));
            assert_eq!(poly_eval(&c, &x), p.bi_eval(n, &x).unwrap());
        }
    }

    #[test]
    fn operator_kills_constants_and_rejects_poles() {
        let p = sample();
        let one = [int(1)];
        assert!(p.bi_operator_apply(&one, &ratio(2, 3), ShiftOrder::default()).unwrap().is_zero());
        assert!(p.bi_operator_apply(&one, &int(0), ShiftOrder::default()).is_err());
        assert!(p.bi_operator_apply(&one, &ratio(-1, 2), ShiftOrder::default()).is_err());
    }

    #[test]
    fn operator_on_identity_at_one() {
        // f = x at x = 1: (1-rho1)(1-rho2) + (3/2-r1)(3/2-r2)/3 * (f(-2) - f(1))
        let p = sample();
        let f = [int(0), int(1)];
        let v = p.bi_operator_apply(&f, &int(1), ShiftOrder::ReflectAfterShift).unwrap();
        let expected = (int(1) - p.rho1()) * (int(1) - p.rho2()) + (ratio(3, 2) - p.r1()) * (ratio(3, 2) - p.r2()) / int(3) * int(-3);
        assert_eq!(v, expected);
    }

    #[test]
    fn shift_order_selection() {
        assert_eq!(select_shift_order(&sample()), Some(ShiftOrder::ReflectAfterShift));
    }

    #[test]
    fn out_of_range_degree() {
        assert!(matches!(sample().bi_eval(3, &int(0)), Err(BiError::OutOfRange { .. })));
    }
}
