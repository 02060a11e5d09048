//! Scenario generators, δ-sweeps, slope fits, table reproduction and plot
//! scripts.

mod plot;
mod scenario;
mod sweep;
mod tables;

pub use plot::{emit_plotscript, REFERENCE_PREFACTOR};
pub use scenario::{generate_scenario, scenario_points, trial_rng, ScenarioKind, RNG_ID};
pub use sweep::{
    bound_values, fit_slope, sweep, sweep_csv, BoundValue, DeltaGrid, SlopeFit, SweepConfig, SweepRecord,
};
pub use tables::{
    exponent_csv, exponent_row, table_exponents, table_prelim, ExponentProtocol, ExponentRow,
};
