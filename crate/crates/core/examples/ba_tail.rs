//! Barabasi-Albert degrees and the fitted tail exponent.

use prefattach::model::ba::ba_run_identified;
use prefattach::stats::{tail_slope, total_variation, DegreeHistogram};
use prefattach::theory::{LimitLaw, TheoryPmf};
use prefattach::{Purpose, StreamRng};

fn main() -> prefattach::Result<()> {
    for m in [1, 3] {
        let state = ba_run_identified(
            300_000,
            m,
            &mut StreamRng::seeded(u64::from(m), Purpose::BaSingle),
        )?;
        let hist = DegreeHistogram::from_state(&state);
        let theory = TheoryPmf::new(LimitLaw::Ba { m })?;
        let tv = total_variation(&hist, &theory, 200)?;
        let slope = tail_slope(&hist, 10 * u64::from(m), 100 * u64::from(m))?;
        println!(
            "m={m}: TV {:.4}, tail exponent {:.3} ({})",
            tv.value,
            slope.value,
            slope.label.unwrap_or_default()
        );
    }
    Ok(())
}
