#![allow(dead_code)]

use std::collections::BTreeMap;

use prefattach::model::{ba, iipa, price, simon};
use prefattach::theory::{
    ba_single_expected, enumerate_exact, iipa_expected, price_expected, simon_expected, EnumSpec,
    ExactLaw, Schedule,
};
use prefattach::{OutDegreeLaw, Purpose, StreamRng};

/// Final weight vector of one small sampled run.
pub fn sample_weights(spec: &EnumSpec, rng: &mut StreamRng) -> Vec<u32> {
    match *spec {
        EnumSpec::Simon { alpha, t } => simon::simon_run(t, alpha, rng).unwrap().weights().to_vec(),
        EnumSpec::Iipa { m, n } => iipa::iipa_run(n, m, rng).unwrap().weights().to_vec(),
        EnumSpec::PriceConst { k0, m, n } => {
            price::price_run(n, k0, OutDegreeLaw::Constant { m }, rng)
                .unwrap()
                .graph
                .weights()
                .to_vec()
        }
        EnumSpec::BaSingle { t } => ba::ba_run_single(t, rng).weights().to_vec(),
        EnumSpec::BaRescaled { m, n } => ba::ba_run_rescaled(n, m, rng).unwrap().weights().to_vec(),
        EnumSpec::BaIdentified { m, n } => {
            ba::ba_run_identified(n, m, rng).unwrap().weights().to_vec()
        }
    }
}

/// Largest `|freq - p| / se` over outcomes, with `se = sqrt(p (1 - p) / runs)`.
/// Panics if a sampled outcome has probability zero.
pub fn monte_carlo_z(spec: &EnumSpec, runs: u64, seed: u64) -> f64 {
    let law = enumerate_exact(spec).unwrap();
    let exact: BTreeMap<Vec<u32>, f64> = law.outcomes.iter().cloned().collect();
    let mut rng = StreamRng::seeded(seed, Purpose::Oracle);
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for _ in 0..runs {
        *counts.entry(sample_weights(spec, &mut rng)).or_default() += 1;
    }
    for w in counts.keys() {
        assert!(
            exact.contains_key(w),
            "{spec:?}: sampled {w:?}, which has probability zero"
        );
    }
    exact
        .iter()
        .filter(|(_, &p)| p < 1.0)
        .map(|(w, &p)| {
            let freq = counts.get(w).copied().unwrap_or(0) as f64 / runs as f64;
            (freq - p).abs() / (p * (1.0 - p) / runs as f64).sqrt()
        })
        .fold(0.0, f64::max)
}

/// Largest gap between enumerated `E N_k` and the expectation recurrence.
pub fn recurrence_gap(spec: &EnumSpec) -> f64 {
    let law: ExactLaw = enumerate_exact(spec).unwrap();
    let k_max = law
        .outcomes
        .iter()
        .flat_map(|(w, _)| w.iter())
        .copied()
        .max()
        .unwrap() as usize
        + 2;
    let (time, table) = match *spec {
        EnumSpec::Simon { alpha, t } => (
            t,
            simon_expected(t, k_max, alpha, &Schedule::Every).unwrap(),
        ),
        EnumSpec::Iipa { m, n } => (n, iipa_expected(n, k_max, m, &Schedule::Every).unwrap()),
        EnumSpec::PriceConst { k0, m, n } => (
            n,
            price_expected(n, k_max, k0, OutDegreeLaw::Constant { m }, &Schedule::Every).unwrap(),
        ),
        EnumSpec::BaSingle { t } => (t, ba_single_expected(t, k_max, &Schedule::Every).unwrap()),
        _ => panic!("no recurrence for {spec:?}"),
    };
    let row = table.row(time).unwrap();
    law.expected_counts(k_max)
        .iter()
        .zip(row)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// The small cases the oracles cover.
pub fn oracle_specs() -> Vec<EnumSpec> {
    let mut specs = Vec::new();
    for alpha in [0.25, 0.5, 0.8] {
        for t in 1..=6 {
            specs.push(EnumSpec::Simon { alpha, t });
        }
    }
    for m in 1..=2 {
        for n in 1..=3 {
            specs.push(EnumSpec::Iipa { m, n });
        }
    }
    for t in 1..=6 {
        specs.push(EnumSpec::BaSingle { t });
    }
    for n in 1..=3 {
        specs.push(EnumSpec::PriceConst { k0: 1, m: 1, n });
    }
    specs
}
