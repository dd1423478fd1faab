//! Benchmark-only package; see `benches/measure_ops.rs`.
