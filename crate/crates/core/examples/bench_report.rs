//! A full seeded benchmark: run a grid of algorithms and k values, then write the per-run
//! CSV, the summary CSV and the SVG plot.

use submax::harness::{
    render_svg, run_experiment, summarize, write_records_csv, write_summary_csv, ExperimentSpec, InstanceSource,
};
use submax::objectives::{ObjectiveKind, SyntheticSpec};
use submax::solvers::Algorithm;

fn main() -> submax::Result<()> {
    let source = InstanceSource::Synthetic(SyntheticSpec::new(ObjectiveKind::CoverageDiversity, 300).lambda(0.75));
    let mut spec = ExperimentSpec::new(
        source,
        vec![
            Algorithm::Main,
            Algorithm::Warmup,
            Algorithm::SampleGreedy,
            Algorithm::RandomGreedy,
        ],
        vec![5, 10, 20, 30],
    );
    spec.reps = 4;
    spec.seed = 2024;

    let records = run_experiment(&spec)?;
    let rows = summarize(&records)?;
    let dir = std::env::temp_dir().join("submax_bench");
    std::fs::create_dir_all(&dir).map_err(|source| submax::Error::Io {
        path: dir.clone(),
        source,
    })?;
    write_records_csv(&records, dir.join("records.csv"))?;
    write_summary_csv(&rows, dir.join("summary.csv"))?;
    render_svg(&rows, dir.join("plot.svg"))?;

    for r in &rows {
        println!(
            "{:<14} k={:<3} mean {:>9.2} ± {:>7.2}  queries {:>9.0}",
            r.algo, r.k, r.mean_value, r.std_value, r.mean_queries
        );
    }
    println!("reports written to {}", dir.display());
    Ok(())
}
