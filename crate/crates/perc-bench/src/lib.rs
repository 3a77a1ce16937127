//! Benchmark-only crate; see `benches/perc.rs`.
