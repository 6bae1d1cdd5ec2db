//! Criterion benchmarks for `prop-core`; see `benches/`.
