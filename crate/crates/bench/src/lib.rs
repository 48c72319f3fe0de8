//! Benchmark-only crate; see benches/paths.rs.
