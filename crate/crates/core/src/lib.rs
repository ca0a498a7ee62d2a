//! Budgeted maximum weight independent set on bipartite graphs: instance
//! model and file format, exact MWIS oracles, the Lagrangian
//! 2-approximation, exact and heuristic baselines, and instance generators.

pub mod baselines;
pub mod error;
pub mod flow;
pub mod format;
pub mod generators;
pub mod instance;
pub mod lagrangian;
pub mod oracles;
pub mod ratio;
pub mod solution;

pub use error::{Error, Result};
pub use instance::{BudgetedInstance, InstanceData, Side, ValidationReport, ViolationCode};
pub use lagrangian::{msp_solve, LagrangianConfig, OracleKind};
pub use ratio::Ratio;
pub use solution::Solution;
