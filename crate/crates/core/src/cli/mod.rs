pub mod grammar;
pub mod registry;

pub use grammar::{parse_letters, parse_word, render, render_formation};
pub use registry::{builtin_registry, parse_manifest, run_verify, RunConfig, TheoremCase};
