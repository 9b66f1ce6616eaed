//! Criterion benchmarks for `deals-core`; see `benches/`.
