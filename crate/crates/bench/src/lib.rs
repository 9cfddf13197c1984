//! Benchmarks for the `berge-core` kernels; see `benches/kernels.rs`.
