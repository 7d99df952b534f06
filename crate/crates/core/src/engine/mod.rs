//! Contraction planning and exact execution.

mod execute;
mod factor;
mod plan;
mod separator;

pub use execute::{
    contract_full, execute_plan, execute_plan_with_cap, open_function_table, ContractionStats,
    Strategy, DEFAULT_RANK_CAP,
};
pub use plan::{
    build_plan_greedy, build_plan_separator, build_plan_separator_traced, build_plan_separator_with,
    ContractionPlan, PlanNode, PlanNodeKind, SeparatorTrace, TraceEntry, COARSEN_FACTOR, DEFAULT_LEAF_CUTOFF,
};
pub use separator::{planar_separator, SeparatorResult};
