//! Verification harness: experiment configs, suite runners, and report
//! plumbing around the `minbasis` kernel. The binary in `main.rs` is a
//! thin CLI over [`suites`].

pub mod config;
pub mod oracle;
pub mod report;
pub mod sampling;
pub mod suites;
