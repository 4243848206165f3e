//! Criterion benchmarks for the engine and harness live under `benches/`.
