//! Criterion benchmarks for `reparam-core` live in `benches/`.
