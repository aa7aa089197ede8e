//! Benchmark-only crate; the benches live in `benches/kernels.rs`.
