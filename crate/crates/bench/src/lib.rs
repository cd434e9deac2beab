//! Benchmarks for `squeeze-core`; see `benches/`.
