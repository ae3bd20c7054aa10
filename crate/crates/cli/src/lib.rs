//! Library surface of the verification bench: run configuration, the named
//! suites, on-disk export formats, and report aggregation. The `fockbench`
//! binary is a thin command-line shell over these modules.

// Guards written as `!(x > 0.0)` are deliberate: they reject NaN along with
// the out-of-range values, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod export;
pub mod report;
pub mod suites;
