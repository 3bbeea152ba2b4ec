//! Log-Gamma and log-Beta with care for large first arguments.

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

// Stirling correction ln Γ(x) - [(x - 1/2) ln x - x + ln(2π)/2], x >= 10.
fn stirling_tail(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))))
}

/// `ln Γ(x + y) - ln Γ(x)` for `x > 0`, `y >= 0`.
///
/// For `x >= 10` the difference is assembled from `ln_1p(y/x)` and the
/// Stirling tails so the large `ln Γ` terms never cancel.
pub fn ln_gamma_ratio(x: f64, y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    if x < 10.0 {
        return ln_gamma(x + y) - ln_gamma(x);
    }
    let xy = x + y;
    (x - 0.5) * (y / x).ln_1p() + y * xy.ln() - y + (stirling_tail(xy) - stirling_tail(x))
}

/// `ln B(x, y)`.
pub fn ln_beta(x: f64, y: f64) -> f64 {
    if x >= y {
        ln_gamma(y) - ln_gamma_ratio(x, y)
    } else {
        ln_gamma(x) - ln_gamma_ratio(y, x)
    }
}

pub fn beta(x: f64, y: f64) -> f64 {
    ln_beta(x, y).exp()
}
