//! Benchmark plumbing: instance files, seeded experiments, and CSV/SVG reports.

pub mod config;
pub mod experiment;
pub mod io;
pub mod report;

pub use experiment::{cell_seed, run_experiment, run_on, ExperimentSpec, InstanceSource, RunRecord};
pub use io::{load_edge_list, load_instance, load_similarity_csv, write_instance};
pub use report::{
    read_records_csv, read_summary_csv, render_svg, summarize, svg_string, write_records_csv, write_summary_csv,
    PlotLayout, SummaryRow,
};
