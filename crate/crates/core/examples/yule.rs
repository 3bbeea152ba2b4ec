//! Yule genus sizes from the event-driven and the direct sampler.

use prefattach::model::yule::{
    yule_sample_genus_direct, yule_sample_uniform_genus, YuleCaps, YuleParams, YuleScratch,
};
use prefattach::stats::{total_variation, DegreeHistogram, DegreeKind};
use prefattach::theory::{LimitLaw, TheoryPmf};
use prefattach::{Purpose, StreamRng};

fn main() -> prefattach::Result<()> {
    let params = YuleParams::new(1.0, 1.0)?;
    let (horizon, samples) = (8.0, 50_000);
    let theory = TheoryPmf::new(LimitLaw::Yule { rho: params.rho() })?;

    let mut scratch = YuleScratch::default();
    let mut rng = StreamRng::seeded(1, Purpose::YuleEventDriven);
    let event = (0..samples)
        .map(|_| {
            yule_sample_uniform_genus(params, horizon, YuleCaps::default(), &mut scratch, &mut rng)
        })
        .collect::<prefattach::Result<Vec<u64>>>()?;
    let mut rng = StreamRng::seeded(1, Purpose::YuleDirect);
    let direct = (0..samples)
        .map(|_| yule_sample_genus_direct(params, horizon, &mut rng))
        .collect::<prefattach::Result<Vec<u64>>>()?;

    for (name, sizes) in [("event-driven", event), ("direct", direct)] {
        let hist = DegreeHistogram::from_values(DegreeKind::GenusSize, 0, sizes);
        let tv = total_variation(&hist, &theory, 20)?;
        println!(
            "{name:>12}: P(1)={:.4} P(2)={:.4} TV(k<=20)={:.4}",
            hist.fraction(1),
            hist.fraction(2),
            tv.value
        );
    }
    println!(
        "{:>12}: P(1)={:.4} P(2)={:.4}",
        "limit",
        theory.pmf(1),
        theory.pmf(2)
    );
    Ok(())
}
