//! Benchmark helpers live in `lotsize_core::bench`; this crate only hosts
//! the criterion targets.

pub use lotsize_core::bench::bench_instance;
