//! Benchmarks for `ambient-cycles`; see `benches/`.
