//! Limit laws, their identities, finite-time expectations and the product asymptotic.

use prefattach::theory::{
    iipa_expected, iipa_limit_pmf, product_asymptotic_check, simon_limit_pmf, yule_limit_pmf,
    LimitLaw, Schedule, TheoryPmf,
};

fn main() -> prefattach::Result<()> {
    let m = 2;
    let alpha = 1.0 / f64::from(m + 1);
    println!("{:>3} {:>12} {:>12} {:>12}", "k", "simon", "iipa", "yule");
    for k in 1..=6 {
        println!(
            "{k:>3} {:>12.8} {:>12.8} {:>12.8}",
            simon_limit_pmf(k, alpha)?,
            iipa_limit_pmf(k, m)?,
            yule_limit_pmf(k, 1.0 / (1.0 - alpha))?
        );
    }
    for law in [
        LimitLaw::Simon { alpha: 0.5 },
        LimitLaw::Ba { m: 1 },
        LimitLaw::Price {
            mean_out_degree: 3.0,
        },
    ] {
        let t = TheoryPmf::new(law)?;
        println!(
            "{}: tail exponent {:.3}, P(K >= 100) = {:.3e}",
            t.name(),
            t.tail_exponent(),
            t.survival(100)
        );
    }

    let table = iipa_expected(100_000, 5, m, &Schedule::Geometric { ratio: 10.0 })?;
    for row in &table.rows {
        let per_vertex: Vec<String> = row
            .values
            .iter()
            .map(|v| format!("{:.4}", v / row.time as f64))
            .collect();
        println!("n={:>6}: E N_k / n = {}", row.time, per_vertex.join(" "));
    }
    println!("limit:      {:.4}", iipa_limit_pmf(1, m)?);

    let c = product_asymptotic_check(10, 100_000, 0.5)?;
    println!(
        "product check: exact {:.6e}, approximation {:.6e}, relative error {:.2e}",
        c.exact, c.approximation, c.relative_error
    );
    Ok(())
}
