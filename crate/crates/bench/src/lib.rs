//! Criterion benchmarks for the operator engine; see `benches/engine.rs`.
