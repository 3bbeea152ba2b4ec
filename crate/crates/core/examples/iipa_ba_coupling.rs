//! II-PA with m = 1 and rescaled BA with m = 1 driven by one random stream.
//!
//! Both draw the same uniform index into endpoint pools of equal length, so
//! the II-PA in-degree histogram and the BA degree histogram agree exactly.

use prefattach::model::ba::BaRescaledProcess;
use prefattach::model::iipa::IipaProcess;
use prefattach::stats::DegreeHistogram;
use prefattach::{Purpose, StreamRng};

fn main() -> prefattach::Result<()> {
    let seed = 42;
    let mut iipa = IipaProcess::new(1, StreamRng::seeded(seed, Purpose::Coupling))?;
    let mut ba = BaRescaledProcess::new(1, StreamRng::seeded(seed, Purpose::Coupling))?;
    for n in [10, 1_000, 100_000] {
        iipa.run_until_complete(n);
        ba.run_until_complete(n)?;
        let a = DegreeHistogram::from_state(iipa.state());
        let b = DegreeHistogram::from_state(ba.state());
        let same = a.iter().eq(b.iter());
        println!(
            "n={n:>6}: in-degree vs degree histograms identical: {same} (max k {:?})",
            a.max_k()
        );
        assert!(same);
    }
    Ok(())
}
