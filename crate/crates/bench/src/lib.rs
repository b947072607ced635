//! Criterion benchmarks for `ehrenfest-core`. Run with `cargo bench -p ehrenfest-bench`.
