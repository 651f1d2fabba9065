//! Command-line layer: check orchestration, seeded sampling, and
//! report rendering. Kept in the library so the whole pipeline is
//! testable without spawning the binary.

pub mod report;
pub mod sample;
pub mod verify;

pub use report::Report;
pub use verify::{CheckKind, CheckResult, Options, Residual, Status};
