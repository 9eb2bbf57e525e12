//! Criterion benchmarks for the convolution core; see `benches/`.
