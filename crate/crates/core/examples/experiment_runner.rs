//! The experiment runner driven from code: a config file, a flag override
//! and a comparison, with the exit codes the binary would return.

use prefattach::experiment::run_cli;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("prefattach-example");
    std::fs::create_dir_all(&dir)?;
    let conf = dir.join("simon.conf");
    std::fs::write(
        &conf,
        "model = simon\nalpha = 0.5\nsteps = 1000000\nseed = 7\ntv-threshold = 0.01\n",
    )?;
    let out = dir.join("run");

    let code = run_cli([
        "prefattach",
        "simulate",
        "--config",
        conf.to_str().unwrap(),
        "--replicas",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    println!("simulate exit {code}; files in {}", out.display());

    let summary = out.join("summary.json");
    let code = run_cli([
        "prefattach",
        "compare",
        "--run",
        summary.to_str().unwrap(),
        "--theory",
        "iipa",
        "--m",
        "1",
        "--tv-threshold",
        "0.01",
    ]);
    println!("compare against II-PA m=1 exit {code}");
    let code = run_cli([
        "prefattach",
        "compare",
        "--run",
        summary.to_str().unwrap(),
        "--theory",
        "ba",
        "--m",
        "1",
    ]);
    println!("compare against BA without --override-kind exit {code}");
    Ok(())
}
