//! Sweeps over `p`, CSV and SVG output, and the command-line interface.
//!
//! Every `(p, rep)` cell draws from its own seed, derived from the master seed
//! and the cell coordinates, so output bytes do not depend on worker count.

pub mod cli;
pub mod config;
pub mod csv;
pub mod plot;
pub mod sweep;

pub use config::{parse_p_grid, parse_theta_mode, read_theta_file};
pub use csv::{emit_csv, emit_verdicts_csv, summary_path};
pub use plot::{emit_plot, plot_svg};
pub use sweep::{
    run_cell, run_sweep, MeanSe, SummaryRow, SweepResult, SweepRow, SweepSpec, ThetaMode,
    DEFAULT_P_GRID,
};
