//! Command-line companion to the `sl2free` core: the experiment drivers
//! (pair censuses, rate estimates, counting checks) plus the reproducibility
//! plumbing — config files, seeds, thread pools, run manifests.

use std::fmt;

pub mod census;
pub mod cli;
pub mod config;
pub mod fit;
pub mod fr;
pub mod gamma0;
pub mod manifest;
pub mod matrices;
pub mod output;
pub mod phi3;
pub mod rate;

/// A mathematical assertion the run was supposed to verify did not hold.
/// Distinguished from usage errors so the binary can exit with code 2.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check failed: {}", self.0)
    }
}

impl std::error::Error for CheckFailed {}
