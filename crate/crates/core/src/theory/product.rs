//! Numeric check of `prod_{r=s+1}^{t} (1 - b/r) = (s/t)^b (1 + O((t-s)/(st)))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductCheck {
    pub exact: f64,
    pub approximation: f64,
    pub relative_error: f64,
    /// `(t - s) / (s t)`, the scale of the error term.
    pub scale: f64,
    /// `relative_error / scale`; 0 when the scale is 0.
    pub fitted_constant: f64,
}

pub fn product_asymptotic_check(s: u64, t: u64, b: f64) -> Result<ProductCheck> {
    if s < 1 || t < s {
        return Err(Error::invalid(format!("need 1 <= s <= t, got s={s} t={t}")));
    }
    if !b.is_finite() {
        return Err(Error::invalid("b must be finite"));
    }
    // the smallest r in (s, t] is s + 1
    if t > s && b.abs() >= (s + 1) as f64 {
        return Err(Error::invalid(format!(
            "|b/r| < 1 fails at r = {} for b = {b}",
            s + 1
        )));
    }
    let log_exact: f64 = (s + 1..=t).map(|r| (-b / r as f64).ln_1p()).sum();
    let exact = log_exact.exp();
    let approximation = (b * ((s as f64).ln() - (t as f64).ln())).exp();
    let relative_error = ((exact - approximation) / approximation).abs();
    let scale = (t - s) as f64 / (s as f64 * t as f64);
    let fitted_constant = if scale > 0.0 {
        relative_error / scale
    } else {
        0.0
    };
    Ok(ProductCheck {
        exact,
        approximation,
        relative_error,
        scale,
        fitted_constant,
    })
}
