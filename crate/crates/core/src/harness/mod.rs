//! Verification harness: operator expressions, scenario configuration, suite
//! orchestration and reports.

pub mod config;
pub mod expr;
pub mod report;
pub mod suites;

pub use config::ScenarioConfig;
pub use expr::{parse_expr, parse_operator, print_operator, OperatorExpr};
pub use report::{CheckRecord, Format, Status, VerificationReport};
pub use suites::{resolve, run_suite, SUITES};
