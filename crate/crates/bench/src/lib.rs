//! Benchmark-only crate; see `benches/solvers.rs`. The library exists so the
//! package has a build target, and re-exports the solver crate for
//! convenience in benchmark code.

pub use cookie_monster;
