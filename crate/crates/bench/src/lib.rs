//! Criterion benchmarks for the median solvers and distances; see `benches/`.
