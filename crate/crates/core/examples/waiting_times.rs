//! Log-time waits between in-degree increments, and descendant waits in the
//! genealogy form, tested against exponential laws.

use prefattach::model::simon::{simon_run_with_genealogy, SimonProcess};
use prefattach::stats::{collect_descendant_waiting_times, WaitingTimeCollector};
use prefattach::{Purpose, StreamRng};

fn main() -> prefattach::Result<()> {
    let (alpha, t, t_star) = (0.5, 1_000_000, 10_000);

    let mut p = SimonProcess::new(alpha, StreamRng::seeded(1, Purpose::Simon))?;
    let mut collector = WaitingTimeCollector::new(t_star)?;
    while p.state().t() < t {
        collector.record(&p.next().expect("endless"));
    }
    let waits = collector.finish(alpha);
    let z_cap = waits.default_z_cap();
    for k in 1..=3 {
        let level = waits.censored_level(k, z_cap);
        let ks = level.ks(waits.rate(k))?;
        println!(
            "k={k}: rate {:.2}, MLE {:.3}, KS {:.4}, {} at risk",
            waits.rate(k),
            level.rate_mle()?,
            ks.value,
            level.n_at_risk
        );
    }

    let run = simon_run_with_genealogy(t, alpha, &mut StreamRng::seeded(1, Purpose::Genealogy))?;
    let desc = collect_descendant_waiting_times(&run, t_star)?;
    let level = desc.censored_level(1, desc.default_z_cap());
    println!(
        "descendants k=1: MLE {:.3}, KS {:.4}",
        level.rate_mle()?,
        level.ks(1.0)?.value
    );
    Ok(())
}
