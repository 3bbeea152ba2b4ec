//! Simon model against its Yule-Simon limit.
//!
//! cargo run --release --example simon -- 0.5 1000000

use prefattach::model::simon::simon_run;
use prefattach::stats::{total_variation, DegreeHistogram};
use prefattach::theory::{LimitLaw, TheoryPmf};
use prefattach::{Purpose, StreamRng};

fn main() -> prefattach::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(0.5, |a| a.parse().expect("alpha"));
    let t: u64 = args.next().map_or(1_000_000, |a| a.parse().expect("steps"));

    let state = simon_run(t, alpha, &mut StreamRng::seeded(1, Purpose::Simon))?;
    let hist = DegreeHistogram::from_state(&state);
    let theory = TheoryPmf::new(LimitLaw::Simon { alpha })?;

    println!("{} vertices after {t} steps", state.n_vertices());
    println!("{:>4} {:>10} {:>10}", "k", "observed", "limit");
    for k in 1..=10 {
        println!("{k:>4} {:>10.5} {:>10.5}", hist.fraction(k), theory.pmf(k));
    }
    let tv = total_variation(&hist, &theory, 200)?;
    println!(
        "TV over k <= 200: {:.4} (tail remainder {:.2e})",
        tv.value,
        tv.remainder.unwrap_or(0.0)
    );
    Ok(())
}
