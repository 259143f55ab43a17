//! Benchmarks for `punctel`; see `benches/pipeline.rs`. Run with `cargo bench -p punctel-bench`.
