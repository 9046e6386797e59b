//! Criterion benchmarks for `fuzzsemi` live under `benches/`.
