//! Closed-form limit distributions.
//!
//! The in-degree laws of Simon, II-PA and Price and the Yule genus-size law
//! are all Yule–Simon laws `rho * B(k, 1 + rho)` for some `rho`:
//!
//! | model  | rho           |
//! |--------|---------------|
//! | Simon  | `1/(1-alpha)` |
//! | II-PA  | `1 + 1/m`     |
//! | Price  | `1 + 1/E(M)`  |
//! | Yule   | `beta/lambda` |
//!
//! The Barabási–Albert degree law is `m(m+1) B(k, 3)` on `k >= m`.

use serde::{Deserialize, Serialize};

use super::special::{ln_beta, ln_gamma, ln_gamma_ratio};
use crate::error::{Error, Result};
use crate::stats::DegreeKind;

fn check_k(k: u64, k_min: u64) -> Result<()> {
    if k >= k_min {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "k = {k} is below the support start {k_min}"
        )))
    }
}

fn yule_simon(k: u64, rho: f64) -> f64 {
    (rho.ln() + ln_beta(k as f64, 1.0 + rho)).exp()
}

// P(K >= k) = Γ(k) Γ(1+rho) / Γ(k+rho)
fn yule_simon_survival(k: u64, rho: f64) -> f64 {
    if k <= 1 {
        return 1.0;
    }
    (ln_gamma(1.0 + rho) - ln_gamma_ratio(k as f64, rho)).exp()
}

/// `(1/(1-alpha)) B(k, 1 + 1/(1-alpha))`, `k >= 1`.
pub fn simon_limit_pmf(k: u64, alpha: f64) -> Result<f64> {
    crate::model::check_alpha(alpha)?;
    check_k(k, 1)?;
    let c = 1.0 / (1.0 - alpha);
    Ok((c.ln() + ln_beta(k as f64, 1.0 + c)).exp())
}

/// `(1 + 1/m) B(k, 2 + 1/m)`, `k >= 1`.
pub fn iipa_limit_pmf(k: u64, m: u32) -> Result<f64> {
    crate::model::check_m(m)?;
    check_k(k, 1)?;
    let inv = 1.0 / f64::from(m);
    Ok(((1.0 + inv).ln() + ln_beta(k as f64, 2.0 + inv)).exp())
}

/// `(1 + 1/m) B(k, 2 + 1/m)` with `m = E(M_i)` a positive real.
pub fn price_limit_pmf(k: u64, mean_out_degree: f64) -> Result<f64> {
    if !(mean_out_degree.is_finite() && mean_out_degree > 0.0) {
        return Err(Error::invalid(format!(
            "mean out-degree must be > 0, got {mean_out_degree}"
        )));
    }
    check_k(k, 1)?;
    let inv = 1.0 / mean_out_degree;
    Ok(((1.0 + inv).ln() + ln_beta(k as f64, 2.0 + inv)).exp())
}

/// `m(m+1) B(k, 3)`, `k >= m`.
pub fn ba_limit_pmf(k: u64, m: u32) -> Result<f64> {
    crate::model::check_m(m)?;
    check_k(k, u64::from(m))?;
    let m = f64::from(m);
    Ok(((m * (m + 1.0)).ln() + ln_beta(k as f64, 3.0)).exp())
}

/// `rho B(k, 1 + rho)`, `k >= 1`.
pub fn yule_limit_pmf(k: u64, rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::invalid(format!("rho must be > 0, got {rho}")));
    }
    check_k(k, 1)?;
    Ok(yule_simon(k, rho))
}

/// A limit law with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum LimitLaw {
    Simon { alpha: f64 },
    Iipa { m: u32 },
    Price { mean_out_degree: f64 },
    Ba { m: u32 },
    Yule { rho: f64 },
}

/// An evaluated limit pmf. Construction validates the parameters, so
/// evaluation never fails; below the support it returns 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryPmf {
    law: LimitLaw,
}

impl TheoryPmf {
    pub fn new(law: LimitLaw) -> Result<Self> {
        match law {
            LimitLaw::Simon { alpha } => simon_limit_pmf(1, alpha).map(|_| ()),
            LimitLaw::Iipa { m } => iipa_limit_pmf(1, m).map(|_| ()),
            LimitLaw::Price { mean_out_degree } => price_limit_pmf(1, mean_out_degree).map(|_| ()),
            LimitLaw::Ba { m } => ba_limit_pmf(u64::from(m.max(1)), m).map(|_| ()),
            LimitLaw::Yule { rho } => yule_limit_pmf(1, rho).map(|_| ()),
        }?;
        Ok(TheoryPmf { law })
    }

    pub fn law(&self) -> LimitLaw {
        self.law
    }

    pub fn k_min(&self) -> u64 {
        match self.law {
            LimitLaw::Ba { m } => u64::from(m),
            _ => 1,
        }
    }

    pub fn kind(&self) -> DegreeKind {
        match self.law {
            LimitLaw::Simon { .. } | LimitLaw::Iipa { .. } | LimitLaw::Price { .. } => {
                DegreeKind::InDegree
            }
            LimitLaw::Ba { .. } => DegreeKind::Degree,
            LimitLaw::Yule { .. } => DegreeKind::GenusSize,
        }
    }

    /// The Yule–Simon exponent `rho`, if the law is of that family.
    pub fn rho(&self) -> Option<f64> {
        match self.law {
            LimitLaw::Simon { alpha } => Some(1.0 / (1.0 - alpha)),
            LimitLaw::Iipa { m } => Some(1.0 + 1.0 / f64::from(m)),
            LimitLaw::Price { mean_out_degree } => Some(1.0 + 1.0 / mean_out_degree),
            LimitLaw::Yule { rho } => Some(rho),
            LimitLaw::Ba { .. } => None,
        }
    }

    /// Power-law exponent `gamma` of the tail, `pmf(k) ~ C k^{-gamma}`.
    pub fn tail_exponent(&self) -> f64 {
        self.rho().map_or(3.0, |rho| 1.0 + rho)
    }

    pub fn pmf(&self, k: u64) -> f64 {
        if k < self.k_min() {
            return 0.0;
        }
        let r = match self.law {
            LimitLaw::Simon { alpha } => simon_limit_pmf(k, alpha),
            LimitLaw::Iipa { m } => iipa_limit_pmf(k, m),
            LimitLaw::Price { mean_out_degree } => price_limit_pmf(k, mean_out_degree),
            LimitLaw::Ba { m } => ba_limit_pmf(k, m),
            LimitLaw::Yule { rho } => yule_limit_pmf(k, rho),
        };
        r.expect("parameters validated at construction")
    }

    /// `P(K >= k)`, in closed form.
    pub fn survival(&self, k: u64) -> f64 {
        if k <= self.k_min() {
            return 1.0;
        }
        match self.law {
            LimitLaw::Ba { m } => {
                let (m, k) = (f64::from(m), k as f64);
                m * (m + 1.0) / (k * (k + 1.0))
            }
            _ => yule_simon_survival(k, self.rho().expect("yule-simon family")),
        }
    }

    pub fn name(&self) -> String {
        match self.law {
            LimitLaw::Simon { alpha } => format!("simon(alpha={alpha})"),
            LimitLaw::Iipa { m } => format!("iipa(m={m})"),
            LimitLaw::Price { mean_out_degree } => format!("price(m={mean_out_degree})"),
            LimitLaw::Ba { m } => format!("ba(m={m})"),
            LimitLaw::Yule { rho } => format!("yule(rho={rho})"),
        }
    }
}
