//! Criterion benchmarks for the solver, enumerator and counter checks live
//! in `benches/`; run them with `cargo bench -p tbn-bench`.
