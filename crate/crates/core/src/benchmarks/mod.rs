//! The transport benchmarks, their exact solutions, error measures and
//! parameter sweeps.

mod definitions;
mod metrics;
mod report;
mod solve;

pub use definitions::{
    advection_reaction, boundary_layer, internal_layers, parabolic_layers, pure_advection, rotating_flow,
    rotating_inflow, TestId,
};
pub use metrics::{
    error_norms, layer_indicators, layer_indicators_on, oscillation_amplitude, rates, sample_on_grid,
    uniform_points, ErrorNorms, INDICATOR_GRID,
};
pub use report::{
    condition_of, condition_sweep, convergence_sweep, fill_rates, run_case, BenchmarkCase, BenchmarkReport,
    ConditionEntry, CONDITION_LIMIT,
};
pub use solve::{
    assemble_system, solve, solve_assembled, solve_linear, AssembledSystem, DiscreteSolution,
    RESIDUAL_TOLERANCE,
};
