use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{build_process, ModelSpec};
use crate::rng::{Purpose, StreamRng};

/// Across-seed spread of `N_{k,t} / t` at one `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationPoint {
    pub t: u64,
    pub mean: f64,
    pub std: f64,
    /// `sqrt(ln t / t)`.
    pub epsilon: f64,
}

const MIN_SEEDS: usize = 50;

/// Runs `n_seeds` replicas of `spec` (replica `i` uses stream `i` of `seed`)
/// and reports, for each `t` in `t_list`, the sample standard deviation of
/// `N_{k,t} / t` where `N_{k,t}` counts vertices of weight `k`.
pub fn concentration_scan(
    spec: &ModelSpec,
    k: u32,
    t_list: &[u64],
    n_seeds: usize,
    seed: u64,
) -> Result<Vec<ConcentrationPoint>> {
    if n_seeds < MIN_SEEDS {
        return Err(Error::invalid(format!(
            "need at least {MIN_SEEDS} seeds, got {n_seeds}"
        )));
    }
    if t_list.is_empty() || t_list.contains(&0) {
        return Err(Error::invalid("t_list must be non-empty and positive"));
    }
    spec.validate()?;
    let mut ts = t_list.to_vec();
    ts.sort_unstable();
    ts.dedup();

    let runs: Vec<Vec<f64>> = (0..n_seeds as u64)
        .into_par_iter()
        .map(|replica| -> Result<Vec<f64>> {
            let mut p = build_process(spec, StreamRng::new(seed, replica, Purpose::Concentration))?;
            let mut out = Vec::with_capacity(ts.len());
            for &t in &ts {
                while p.state().t() < t {
                    p.step_into(&mut |_| {});
                }
                let n_k = p.state().weights().iter().filter(|&&w| w == k).count();
                out.push(n_k as f64 / p.state().t() as f64);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    Ok(ts
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let xs: Vec<f64> = runs.iter().map(|r| r[i]).collect();
            let n = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / n;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            let tf = t as f64;
            ConcentrationPoint {
                t,
                mean,
                std: var.sqrt(),
                epsilon: (tf.ln() / tf).sqrt(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_start_has_no_spread() {
        // one II-PA vertex always ends with in-degree m+1
        let pts = concentration_scan(&ModelSpec::Iipa { m: 2 }, 3, &[3], 50, 1).unwrap();
        assert!(pts[0].std < 1e-12);
        assert!((pts[0].mean - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn too_few_seeds() {
        assert!(concentration_scan(&ModelSpec::Simon { alpha: 0.5 }, 1, &[100], 10, 1).is_err());
    }

    #[test]
    fn std_is_below_epsilon() {
        let pts =
            concentration_scan(&ModelSpec::Simon { alpha: 0.5 }, 1, &[2000, 8000], 60, 3).unwrap();
        for p in &pts {
            assert!(p.std < p.epsilon);
        }
        assert!(pts[1].std < pts[0].std);
    }
}
