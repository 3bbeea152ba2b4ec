use std::collections::BTreeMap;

use super::{DegreeHistogram, FitReport, Statistic};
use crate::error::{Error, Result};
use crate::theory::TheoryPmf;

/// Total variation between an empirical histogram and a limit law over
/// `k <= k_cap`. The value is `(1/2) sum_{k <= k_cap} |p_hat(k) - p(k)|`; the
/// mass above `k_cap` is compared separately and reported as the remainder
/// `(1/2) |P_hat(K > k_cap) - P(K > k_cap)|`.
///
/// Fails on a kind mismatch; see [`total_variation_unchecked`].
pub fn total_variation(
    empirical: &DegreeHistogram,
    theory: &TheoryPmf,
    k_cap: u64,
) -> Result<FitReport> {
    if empirical.kind() != theory.kind() {
        return Err(Error::KindMismatch {
            run: empirical.kind().to_string(),
            theory: theory.kind().to_string(),
        });
    }
    total_variation_unchecked(empirical, theory, k_cap)
}

pub fn total_variation_unchecked(
    empirical: &DegreeHistogram,
    theory: &TheoryPmf,
    k_cap: u64,
) -> Result<FitReport> {
    if empirical.is_empty() {
        return Err(Error::InsufficientData("empty histogram".into()));
    }
    let n = empirical.total() as f64;
    let (head, remainder) = tv_parts(|k| empirical.count(k) as f64 / n, theory, k_cap)?;
    let mut report = FitReport::new(Statistic::Tv, head, empirical.total());
    report.remainder = Some(remainder);
    Ok(report.labelled(theory.name()))
}

/// Total variation of a pmf given as `k -> p(k)` pairs, in the same split as
/// [`total_variation`]. The sample size is reported as 0.
pub fn total_variation_pmf(
    pmf: &BTreeMap<u64, f64>,
    theory: &TheoryPmf,
    k_cap: u64,
) -> Result<FitReport> {
    if pmf.is_empty() {
        return Err(Error::InsufficientData("empty pmf".into()));
    }
    let (head, remainder) = tv_parts(|k| pmf.get(&k).copied().unwrap_or(0.0), theory, k_cap)?;
    let mut report = FitReport::new(Statistic::Tv, head, 0);
    report.remainder = Some(remainder);
    Ok(report.labelled(theory.name()))
}

fn tv_parts(p_hat: impl Fn(u64) -> f64, theory: &TheoryPmf, k_cap: u64) -> Result<(f64, f64)> {
    if k_cap < 1 {
        return Err(Error::invalid("k_cap must be >= 1"));
    }
    let mut head = 0.0;
    let mut emp_head = 0.0;
    for k in 0..=k_cap {
        let p = p_hat(k);
        head += (p - theory.pmf(k)).abs();
        emp_head += p;
    }
    let emp_tail = (1.0 - emp_head).max(0.0);
    let theory_tail = theory.survival(k_cap + 1);
    Ok((0.5 * head, 0.5 * (emp_tail - theory_tail).abs()))
}

/// Least-squares slope of `y` on `x`.
pub fn fit_log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InsufficientData(
            "need at least two points for a slope".into(),
        ));
    }
    let n = points.len() as f64;
    let (mx, my) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.0 / n, b + p.1 / n));
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), p| {
        (sxy + (p.0 - mx) * (p.1 - my), sxx + (p.0 - mx).powi(2))
    });
    if sxx == 0.0 {
        return Err(Error::InsufficientData(
            "all points share one abscissa".into(),
        ));
    }
    Ok(sxy / sxx)
}

/// Power-law exponent of the histogram over `[k_lo, k_hi]`.
///
/// Counts are modelled as independent Poisson with mean `C k^s`, and `s` is
/// the maximum-likelihood value over every integer `k` in the range, empty
/// bins included. A least-squares fit on `ln` counts would drop the empty
/// bins and flatten the tail.
pub fn tail_slope(histogram: &DegreeHistogram, k_lo: u64, k_hi: u64) -> Result<FitReport> {
    let k_lo = k_lo.max(1);
    let occupied = histogram
        .iter()
        .filter(|&(k, c)| k >= k_lo && k <= k_hi && c > 0)
        .count();
    if occupied < 5 {
        return Err(Error::InsufficientData(format!(
            "{occupied} occupied bins in [{k_lo}, {k_hi}], need at least 5"
        )));
    }
    let xs: Vec<f64> = (k_lo..=k_hi).map(|k| (k as f64).ln()).collect();
    let cs: Vec<f64> = (k_lo..=k_hi).map(|k| histogram.count(k) as f64).collect();
    let x_mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let xs: Vec<f64> = xs.iter().map(|x| x - x_mean).collect();

    let log_lik = |a: f64, s: f64| -> f64 {
        xs.iter()
            .zip(&cs)
            .map(|(x, c)| c * (a + s * x) - (a + s * x).exp())
            .sum()
    };
    let mut a = (cs.iter().sum::<f64>() / cs.len() as f64).ln();
    let mut s = 0.0;
    let mut ll = log_lik(a, s);
    for _ in 0..200 {
        let (mut ga, mut gs, mut haa, mut has, mut hss) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (x, c) in xs.iter().zip(&cs) {
            let lam = (a + s * x).exp();
            ga += c - lam;
            gs += (c - lam) * x;
            haa += lam;
            has += lam * x;
            hss += lam * x * x;
        }
        let det = haa * hss - has * has;
        if det.is_nan() || det <= 0.0 {
            return Err(Error::InsufficientData("degenerate slope fit".into()));
        }
        let (da, ds) = ((hss * ga - has * gs) / det, (haa * gs - has * ga) / det);
        let mut step = 1.0;
        let (mut na, mut ns, mut nll) = (a + da, s + ds, log_lik(a + da, s + ds));
        while nll < ll && step > 1e-6 {
            step /= 2.0;
            (na, ns) = (a + step * da, s + step * ds);
            nll = log_lik(na, ns);
        }
        let done = (na - a).abs() < 1e-12 && (ns - s).abs() < 1e-12;
        (a, s, ll) = (na, ns, nll);
        if done {
            break;
        }
    }
    Ok(FitReport::new(Statistic::Slope, s, histogram.total())
        .labelled(format!("k in [{k_lo}, {k_hi}]")))
}
