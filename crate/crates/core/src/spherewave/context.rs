use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bannai::{BiError, BiParams};
use crate::numcore::rational::{self, Rational};
use crate::racah::param_map;

/// Three positive Dunkl parameters and a total degree `N = 2n + t`, with the
/// Bannai-Ito parameters they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RacahContext {
    mu: [Rational; 3],
    truncation: usize,
    bi: BiParams,
    total_mu: Rational,
}

impl RacahContext {
    pub fn new(mu1: Rational, mu2: Rational, mu3: Rational, truncation: usize) -> Result<Self, BiError> {
        for (i, m) in [&mu1, &mu2, &mu3].into_iter().enumerate() {
            if !m.is_positive() {
                return Err(BiError::InvalidParameter(format!(
                    "mu{} = {} must be positive",
                    i + 1,
                    rational::to_string(m)
                )));
            }
        }
        let (bi, total_mu) = param_map(&mu1, &mu2, &mu3, truncation)?;
        Ok(RacahContext {
            mu: [mu1, mu2, mu3],
            truncation,
            bi,
            total_mu,
        })
    }

    /// The context whose parameter map gives `p`:
    /// `mu1 = rho2 - r2`, `mu2 = rho1 - r1`, `mu3 = rho1 + r1`. Any truncated
    /// parameter set with positive `mu_i` is in the image.
    pub fn from_bi(p: &BiParams) -> Result<Self, BiError> {
        let mu1 = p.rho2() - p.r2();
        let mu2 = p.rho1() - p.r1();
        let mu3 = p.rho1() + p.r1();
        let ctx = RacahContext::new(mu1, mu2, mu3, p.truncation())?;
        if ctx.bi() != p {
            return Err(BiError::InvalidParameter(format!(
                "rho2 + r2 = {} but the coupled mu is {}",
                rational::to_string(&(p.rho2() + p.r2())),
                rational::to_string(ctx.total_mu())
            )));
        }
        Ok(ctx)
    }

    pub fn mu1(&self) -> &Rational {
        &self.mu[0]
    }

    pub fn mu2(&self) -> &Rational {
        &self.mu[1]
    }

    pub fn mu3(&self) -> &Rational {
        &self.mu[2]
    }

    pub fn mus(&self) -> &[Rational; 3] {
        &self.mu
    }

    /// `N`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `n` in `N = 2n + t`.
    pub fn half_degree(&self) -> usize {
        self.truncation / 2
    }

    /// `t` in `N = 2n + t`.
    pub fn parity(&self) -> usize {
        self.truncation % 2
    }

    pub fn bi(&self) -> &BiParams {
        &self.bi
    }

    /// The coupled parameter `mu = (-1)^N (N + 1 + mu1 + mu2 + mu3)`.
    pub fn total_mu(&self) -> &Rational {
        &self.total_mu
    }

    /// Same degree with `(mu1, mu2, mu3)` replaced by `(mu2, mu3, mu1)`.
    pub fn cycled(&self) -> Self {
        let [a, b, c] = self.mu.clone();
        RacahContext::new(b, c, a, self.truncation).expect("cycling keeps parameters valid")
    }

    pub fn echo(&self) -> ContextEcho {
        ContextEcho {
            mu1: rational::to_string(&self.mu[0]),
            mu2: rational::to_string(&self.mu[1]),
            mu3: rational::to_string(&self.mu[2]),
            n: self.truncation,
        }
    }
}

/// Serializable copy of a context with exact `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextEcho {
    pub mu1: String,
    pub mu2: String,
    pub mu3: String,
    #[serde(rename = "N")]
    pub n: usize,
}

impl ContextEcho {
    pub fn to_context(&self) -> Result<RacahContext, BiError> {
        let parse = |s: &str| rational::parse_rational(s).map_err(|e| BiError::InvalidParameter(e.to_string()));
        RacahContext::new(parse(&self.mu1)?, parse(&self.mu2)?, parse(&self.mu3)?, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::numcore::rational::{int, ratio};

    #[test]
    fn inverts_the_parameter_map() {
        for n in 0..5 {
            let ctx = RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), n).unwrap();
            assert_eq!(RacahContext::from_bi(ctx.bi()).unwrap(), ctx);
        }
        // truncated, but mu2 = rho1 - r1 < 0
        let p = BiParams::new(ratio(1, 2), ratio(5, 2), int(1), int(2), 2).unwrap();
        assert!(RacahContext::from_bi(&p).is_err());
    }

    #[test]
    fn rejects_nonpositive_mu() {
        assert!(RacahContext::new(int(0), int(1), int(1), 2).is_err());
        assert!(RacahContext::new(int(1), ratio(-1, 2), int(1), 2).is_err());
    }

    #[test]
    fn cycle_and_split() {
        let c = RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), 5).unwrap();
        assert_eq!((c.half_degree(), c.parity()), (2, 1));
        let d = c.cycled();
        assert_eq!(d.mus(), &[ratio(3, 4), int(1), ratio(1, 4)]);
        assert_eq!(d.cycled().cycled(), c);
        assert!(!c.total_mu().is_zero());
    }

    #[test]
    fn echo_round_trip() {
        let c = RacahContext::new(ratio(2, 3), ratio(1, 3), ratio(5, 4), 4).unwrap();
        assert_eq!(c.echo().to_context().unwrap(), c);
    }
}
