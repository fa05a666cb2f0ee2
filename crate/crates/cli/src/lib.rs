//! Library side of the command-line laboratory: the sweep harness and the
//! small IO helpers the binary builds on. Kept as a library so integration
//! and acceptance tests can drive sweeps in-process.

pub mod io_util;
pub mod sweep;
