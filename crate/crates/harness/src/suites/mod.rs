//! One module per verification suite; each exposes
//! `run(&Config) -> Result<SuiteOutcome>`.

pub mod metric;
pub mod minimal_basis;
pub mod projection;
pub mod sandwich;
pub mod sharpness;
pub mod slice;
pub mod tau_decay;
