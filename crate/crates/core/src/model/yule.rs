//! The two-level Yule model in continuous time.
//!
//! Genera appear as a pure birth process of rate `beta * (number of genera)`
//! started from one genus at time 0. Each genus grows from one species as an
//! independent pure birth process of rate `lambda * (its size)`. The
//! event-driven samplers build both levels from exponential inter-event
//! times; [`yule_sample_genus_direct`] skips the simulation and draws a
//! uniform genus from the closed-form birth-time and size laws.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Geometric};

use super::check_rate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YuleParams {
    pub beta: f64,
    pub lambda: f64,
}

impl YuleParams {
    pub fn new(beta: f64, lambda: f64) -> Result<Self> {
        check_rate("beta", beta)?;
        check_rate("lambda", lambda)?;
        Ok(YuleParams { beta, lambda })
    }

    pub fn rho(&self) -> f64 {
        self.beta / self.lambda
    }
}

/// Explosion guards for the event-driven sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YuleCaps {
    pub max_genera: u64,
    pub max_species: u64,
}

impl Default for YuleCaps {
    fn default() -> Self {
        YuleCaps {
            max_genera: 10_000_000,
            max_species: 10_000_000,
        }
    }
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon.is_finite() && horizon >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "time horizon must be finite and >= 0, got {horizon}"
        )))
    }
}

/// Size at the end of `duration` of a rate-`lambda` pure birth process
/// started from one individual, built from `Exp(lambda * k)` waits.
pub fn yule_grow<R: Rng + ?Sized>(
    lambda: f64,
    duration: f64,
    cap: u64,
    rng: &mut R,
) -> Result<u64> {
    let mut size = 1u64;
    let mut clock = 0.0;
    loop {
        let wait: f64 = Exp1.sample(rng);
        clock += wait / (lambda * size as f64);
        if clock > duration {
            return Ok(size);
        }
        size += 1;
        if size > cap {
            return Err(Error::ResourceCap(format!("genus size exceeded {cap}")));
        }
    }
}

/// Birth times of all genera in `[0, horizon]`, the founder at 0 first.
pub fn yule_genus_birth_times<R: Rng + ?Sized>(
    beta: f64,
    horizon: f64,
    caps: YuleCaps,
    rng: &mut R,
    out: &mut Vec<f64>,
) -> Result<()> {
    out.clear();
    out.push(0.0);
    let mut clock = 0.0;
    loop {
        let wait: f64 = Exp1.sample(rng);
        clock += wait / (beta * out.len() as f64);
        if clock > horizon {
            return Ok(());
        }
        if out.len() as u64 >= caps.max_genera {
            return Err(Error::ResourceCap(format!(
                "genus count exceeded {}",
                caps.max_genera
            )));
        }
        out.push(clock);
    }
}

/// Sizes at time `horizon` of every genus, in order of appearance.
pub fn yule_simulate_event_driven<R: Rng + ?Sized>(
    params: YuleParams,
    horizon: f64,
    caps: YuleCaps,
    rng: &mut R,
) -> Result<Vec<u64>> {
    check_horizon(horizon)?;
    let mut births = Vec::new();
    yule_genus_birth_times(params.beta, horizon, caps, rng, &mut births)?;
    let mut species = 0u64;
    let mut sizes = Vec::with_capacity(births.len());
    for &b in &births {
        let remaining = caps.max_species.saturating_sub(species);
        let size = yule_grow(params.lambda, horizon - b, remaining, rng)?;
        species += size;
        sizes.push(size);
    }
    Ok(sizes)
}

/// Reusable buffer for [`yule_sample_uniform_genus`].
#[derive(Debug, Default)]
pub struct YuleScratch {
    births: Vec<f64>,
}

/// Size of one genus chosen uniformly among all genera at `horizon`, with the
/// genus tree built event by event. Only the chosen genus is grown; the
/// others are independent of it and do not affect its law.
pub fn yule_sample_uniform_genus<R: Rng + ?Sized>(
    params: YuleParams,
    horizon: f64,
    caps: YuleCaps,
    scratch: &mut YuleScratch,
    rng: &mut R,
) -> Result<u64> {
    check_horizon(horizon)?;
    yule_genus_birth_times(params.beta, horizon, caps, rng, &mut scratch.births)?;
    let pick = scratch.births[rng.random_range(0..scratch.births.len())];
    yule_grow(params.lambda, horizon - pick, caps.max_species, rng)
}

/// Inverse of `P(tau <= x) = (e^{beta x} - 1) / (e^{beta T} - 1)` on `[0, T]`.
pub fn birth_time_by_inversion(beta: f64, horizon: f64, u: f64) -> f64 {
    if horizon == 0.0 {
        return 0.0;
    }
    // tau = T + ln(u + (1 - u) e^{-beta T}) / beta, stable for large beta T
    let tau = horizon + (u + (1.0 - u) * (-beta * horizon).exp()).ln() / beta;
    tau.clamp(0.0, horizon)
}

/// Size of a uniformly chosen genus drawn from the order-statistics law of
/// birth times and the geometric law of a Yule population.
pub fn yule_sample_genus_direct<R: Rng + ?Sized>(
    params: YuleParams,
    horizon: f64,
    rng: &mut R,
) -> Result<u64> {
    check_horizon(horizon)?;
    let u: f64 = rng.random();
    let tau = birth_time_by_inversion(params.beta, horizon, u);
    Ok(geometric_size(params.lambda, horizon - tau, rng))
}

/// `P(size = k) = e^{-lambda s} (1 - e^{-lambda s})^{k-1}`, `k >= 1`.
pub fn geometric_size<R: Rng + ?Sized>(lambda: f64, elapsed: f64, rng: &mut R) -> u64 {
    let p = (-lambda * elapsed).exp();
    if p >= 1.0 {
        return 1;
    }
    let geo = Geometric::new(p).expect("p in (0, 1]");
    geo.sample(rng).saturating_add(1)
}
