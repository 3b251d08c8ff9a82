//! Benchmarks for qleaf-core; see `benches/core.rs`.
