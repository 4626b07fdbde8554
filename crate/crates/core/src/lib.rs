//! Exact arithmetic for SL(2,Z): enumeration of norm balls, uniform
//! sampling, ping-pong freeness certificates, and relation search — all
//! decided over integers and rationals, never floating point.
//!
//! The crate is `no_std` (with `alloc`): every predicate here is a pure
//! decision procedure, so the OS-facing pieces (CLI, file formats, thread
//! pools) live in the companion binary crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ball;
pub mod int;
pub mod mat2;
pub mod pingpong;
pub mod rat;
pub mod sample;
pub mod words;

pub use ball::{count_c_bounded, count_fixed_trace, enumerate_fixed_trace};
pub use ball::{BallSpec, Norm, SpecError};
pub use int::Int;
pub use mat2::{Mat2, SubgroupKind, SubgroupSpec};
pub use pingpong::{HalfDisk, PingPongReport, Verdict};
pub use rat::{QComplex, Rat};
pub use sample::{SampleIndex, SampleSeed};
pub use words::{Letter, RelationReport, Word};
