//! Price's model with geometric out-degree.
//!
//! Batches draw distinct targets; a batch larger than the number of older
//! vertices is cut short and counted.

use prefattach::model::price::price_run;
use prefattach::stats::{total_variation, DegreeHistogram};
use prefattach::theory::{LimitLaw, TheoryPmf};
use prefattach::{OutDegreeLaw, Purpose, StreamRng};

fn main() -> prefattach::Result<()> {
    let (k0, mean, n) = (1, 2.0, 1_000_000);
    let state = price_run(
        n,
        k0,
        OutDegreeLaw::Geometric { mean },
        &mut StreamRng::seeded(1, Purpose::Price),
    )?;
    let hist = DegreeHistogram::from_state(&state.graph);
    let theory = TheoryPmf::new(LimitLaw::Price {
        mean_out_degree: mean,
    })?;
    println!(
        "n={n}, k0={k0}, mean out-degree {mean}: {} truncated batches",
        state.truncations
    );
    for k in 1..=6 {
        println!(
            "  weight {k}: {:.5} vs {:.5}",
            hist.fraction(k),
            theory.pmf(k)
        );
    }
    println!("TV: {:.4}", total_variation(&hist, &theory, 200)?.value);
    Ok(())
}
