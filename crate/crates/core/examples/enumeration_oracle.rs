//! Exact laws of tiny runs, checked against expectation recurrences and a sampler.

use std::collections::BTreeMap;

use prefattach::model::iipa::iipa_run;
use prefattach::theory::{enumerate_exact, iipa_expected, EnumSpec, Schedule};
use prefattach::{Purpose, StreamRng};

fn main() -> prefattach::Result<()> {
    let (m, n) = (2, 3);
    let law = enumerate_exact(&EnumSpec::Iipa { m, n })?;
    let table = iipa_expected(n, 10, m, &Schedule::Every)?;
    println!("II-PA m={m}, n={n}: {} outcomes", law.outcomes.len());
    for k in 1..=7 {
        println!(
            "  E N_{k}: enumerated {:.6}, recurrence {:.6}",
            law.expected_count(k),
            table.get(n, u64::from(k)).unwrap()
        );
    }

    let runs = 200_000;
    let mut rng = StreamRng::seeded(1, Purpose::Oracle);
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for _ in 0..runs {
        *counts
            .entry(iipa_run(n, m, &mut rng)?.in_degree().to_vec())
            .or_default() += 1;
    }
    for (w, p) in law.outcomes.iter().take(5) {
        let f = counts.get(w).copied().unwrap_or(0) as f64 / runs as f64;
        let se = (p * (1.0 - p) / runs as f64).sqrt();
        println!(
            "  {w:?}: exact {p:.5}, sampled {f:.5} ({:+.2} SE)",
            (f - p) / se
        );
    }
    Ok(())
}
