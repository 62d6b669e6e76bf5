//! Formation width, greedy metrics and small extremal values for forbidden
//! sequence patterns.
//!
//! - [`word`]: words, permutations, containment and the named sequences
//! - [`formation`]: binary formations, `fw`, `fl`, and avoider constructions
//! - [`metrics`]: `l(u)`, `r(u)` and closed forms on binary formations
//! - [`extremal`]: exhaustive search for `Ex_c(u, n)`
//! - [`cli`]: text grammar and the verification registry

pub mod cli;
pub mod error;
pub mod extremal;
pub mod formation;
pub mod matcher;
pub mod metrics;
pub mod word;

pub use error::{Error, Result};
pub use extremal::{check_klazar_inequality, ex_bruteforce, ex_search, ExError, ExQuery, ExResult};
pub use formation::{
    binary_formations, build_alt_avoider, build_es_avoider, build_two_letter_avoider, fl_bounded,
    fl_upper_bound, formation_contains, fw, fw_with, fw_witness, gamma, k_swap, Formation,
    FwConfig, FwOutcome, SignPattern,
};
pub use metrics::{
    binary_closed_forms, l_metric, l_pi, pi_overlap, r_metric, BinaryFormationSpec, MetricBounds,
};
pub use word::{contains, is_r_sparse, is_reduced, normalize, Letter, Permutation, Word};
