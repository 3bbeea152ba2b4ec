//! Spread of N_1 / t across seeds shrinks like t^(-1/2).

use prefattach::stats::concentration_scan;
use prefattach::ModelSpec;

fn main() -> prefattach::Result<()> {
    let ts = [2_500, 10_000, 40_000];
    let points = concentration_scan(&ModelSpec::Simon { alpha: 0.5 }, 1, &ts, 200, 1)?;
    for p in &points {
        println!(
            "t={:>6}: mean {:.4}, std {:.5}, sqrt(ln t / t) {:.4}",
            p.t, p.mean, p.std, p.epsilon
        );
    }
    for w in points.windows(2) {
        println!(
            "std ratio t={} -> t={}: {:.3} (expect about 0.5)",
            w[0].t,
            w[1].t,
            w[1].std / w[0].std
        );
    }
    Ok(())
}
