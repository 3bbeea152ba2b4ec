use super::{FitReport, Statistic};
use crate::error::{Error, Result};

const MIN_SAMPLES: usize = 100;

fn exp_cdf(rate: f64, z: f64) -> f64 {
    -(-rate * z).exp_m1()
}

fn check_rate(rate: f64) -> Result<()> {
    if rate.is_finite() && rate > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("rate must be > 0, got {rate}")))
    }
}

/// `sup_z |F_hat(z) - (1 - e^{-rate z})|` for a fully observed sample.
pub fn ks_statistic(samples: &[f64], rate: f64) -> Result<FitReport> {
    check_rate(rate)?;
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{} samples, need at least {MIN_SAMPLES}",
            samples.len()
        )));
    }
    let mut z = samples.to_vec();
    z.sort_by(f64::total_cmp);
    let d = sup_distance(&z, z.len(), rate, f64::INFINITY);
    Ok(FitReport::new(Statistic::Ks, d, z.len() as u64))
}

/// KS distance for a sample censored at `z_cap`.
///
/// `n_at_risk` units were each followed for at least `z_cap`; `observed`
/// holds the values that fell at or below `z_cap`. The empirical CDF
/// `#{z_i <= z} / n_at_risk` is compared with the exponential CDF on `[0, z_cap)`.
pub fn ks_statistic_censored(
    observed: &[f64],
    n_at_risk: usize,
    rate: f64,
    z_cap: f64,
) -> Result<FitReport> {
    check_rate(rate)?;
    if z_cap.is_nan() || z_cap <= 0.0 {
        return Err(Error::invalid(format!("z_cap must be > 0, got {z_cap}")));
    }
    if n_at_risk < MIN_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{n_at_risk} units at risk, need at least {MIN_SAMPLES}"
        )));
    }
    let mut z: Vec<f64> = observed.iter().copied().filter(|&x| x <= z_cap).collect();
    if z.len() > n_at_risk {
        return Err(Error::invalid("more observations than units at risk"));
    }
    z.sort_by(f64::total_cmp);
    let d = sup_distance(&z, n_at_risk, rate, z_cap);
    Ok(FitReport::new(Statistic::Ks, d, n_at_risk as u64))
}

// sorted z, ECDF denominator n, supremum over [0, cap)
fn sup_distance(z: &[f64], n: usize, rate: f64, cap: f64) -> f64 {
    let n = n as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < z.len() {
        let x = z[i];
        let mut j = i;
        while j < z.len() && z[j] == x {
            j += 1;
        }
        let f = exp_cdf(rate, x);
        if x < cap {
            d = d.max((j as f64 / n - f).abs());
        }
        d = d.max((f - i as f64 / n).abs());
        i = j;
    }
    // just below the cap, or at infinity for an uncensored sample
    let tail = if cap.is_finite() {
        exp_cdf(rate, cap)
    } else {
        1.0
    };
    d.max((tail - z.len() as f64 / n).abs())
}

/// Rate estimate `events / exposure` for exponential waits censored at `z_cap`.
/// `observed` are completed values; every unit contributes `min(z, z_cap)`
/// exposure, censored ones exactly `z_cap`.
pub fn exponential_rate_mle(observed: &[f64], n_at_risk: usize, z_cap: f64) -> Result<f64> {
    let events: Vec<f64> = observed.iter().copied().filter(|&x| x <= z_cap).collect();
    if events.is_empty() || n_at_risk < events.len() {
        return Err(Error::InsufficientData(
            "no completed waits below the cap".into(),
        ));
    }
    let exposure: f64 = events.iter().sum::<f64>() + (n_at_risk - events.len()) as f64 * z_cap;
    Ok(events.len() as f64 / exposure)
}
