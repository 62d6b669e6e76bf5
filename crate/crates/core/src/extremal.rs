//! Exhaustive search for `Ex_c(u, n)`: the longest `c`-sparse word on at most
//! `n` letters that avoids `u`.
//!
//! Words are grown letter by letter in lexicographic order. A letter not
//! yet used may only enter as the smallest unused id, which quotients out
//! renamings. Avoidance is tracked incrementally with a [`Matcher`] per
//! branch; if its state set grows past [`MATCHER_STATE_LIMIT`] the branch
//! falls back to full containment checks.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::Matcher;
use crate::word::{contains_in, Letter, Word};

pub const DEFAULT_LENGTH_CAP: usize = 64;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const MATCHER_STATE_LIMIT: usize = 4096;

/// Depth at which the parallel search splits into independent subtrees.
const SPLIT_DEPTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExQuery {
    pub pattern: Word,
    pub n: usize,
    pub sparsity: usize,
    pub length_cap: usize,
}

impl ExQuery {
    /// Query with sparsity equal to the pattern's alphabet size.
    pub fn new(pattern: Word, n: usize) -> Result<Self> {
        let sparsity = pattern.alphabet_size();
        Self::with_sparsity(pattern, n, sparsity)
    }

    pub fn with_sparsity(pattern: Word, n: usize, sparsity: usize) -> Result<Self> {
        let q = ExQuery {
            pattern,
            n,
            sparsity,
            length_cap: DEFAULT_LENGTH_CAP.max(n),
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pattern.is_empty() {
            return Err(Error::EmptyWord);
        }
        if self.sparsity < self.pattern.alphabet_size().max(1) {
            return Err(Error::InvalidParameter(format!(
                "sparsity {} is below the pattern's {} letters",
                self.sparsity,
                self.pattern.alphabet_size()
            )));
        }
        if self.length_cap < self.n {
            return Err(Error::InvalidParameter(format!(
                "length cap {} is below n = {}",
                self.length_cap, self.n
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExResult {
    pub max_length: usize,
    pub witness: Word,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExError {
    #[error("an avoider reached the length cap of {0}")]
    CapHit(usize),
    #[error("node budget exhausted; best so far has length {}", .best.max_length)]
    Infeasible { best: ExResult },
    #[error(transparent)]
    Query(#[from] Error),
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            parallel: false,
        }
    }
}

pub fn ex_bruteforce(q: &ExQuery) -> Result<ExResult, ExError> {
    ex_search(q, &SearchConfig::default())
}

pub fn ex_search(q: &ExQuery, config: &SearchConfig) -> Result<ExResult, ExError> {
    q.validate()?;
    let nodes = AtomicU64::new(0);
    let search = Search {
        q,
        pattern: q.pattern.canonical(),
        budget: config.node_budget,
        nodes: &nodes,
    };
    let root = Node {
        word: Vec::new(),
        used: 0,
        avoid: Avoidance::Incremental(Matcher::new(&q.pattern)),
    };

    let outcome = if config.parallel {
        let mut prefixes = Vec::new();
        let mut shallow = Best::default();
        let split = search.collect_prefixes(root, &mut prefixes, &mut shallow);
        match split {
            Err(stop) => Err((stop, shallow)),
            Ok(()) => {
                let results: Vec<_> = prefixes
                    .into_par_iter()
                    .map(|node| {
                        let mut best = Best::default();
                        match search.dfs(node, &mut best) {
                            Ok(()) => Ok(best),
                            Err(e) => Err((e, best)),
                        }
                    })
                    .collect();
                let mut best = shallow;
                let mut stop = None;
                for r in results {
                    match r {
                        Ok(b) => best.merge(b),
                        Err((e, b)) => {
                            best.merge(b);
                            // a cap hit outranks budget exhaustion
                            if stop.is_none() || matches!(e, Stop::Cap) {
                                stop = Some(e);
                            }
                        }
                    }
                }
                match stop {
                    None => Ok(best),
                    Some(e) => Err((e, best)),
                }
            }
        }
    } else {
        let mut best = Best::default();
        match search.dfs(root, &mut best) {
            Ok(()) => Ok(best),
            Err(e) => Err((e, best)),
        }
    };

    let explored = nodes.load(Ordering::Relaxed);
    let finish = |best: Best| ExResult {
        max_length: best.word.len(),
        witness: Word::from_letters(best.word).expect("canonical letters"),
        nodes_explored: explored,
    };
    match outcome {
        Ok(best) => Ok(finish(best)),
        Err((Stop::Cap, _)) => Err(ExError::CapHit(q.length_cap)),
        Err((Stop::Budget, best)) => Err(ExError::Infeasible { best: finish(best) }),
    }
}

#[derive(Clone, Debug)]
enum Avoidance {
    Incremental(Matcher),
    Full,
}

#[derive(Clone, Debug)]
struct Node {
    word: Vec<Letter>,
    used: usize,
    avoid: Avoidance,
}

#[derive(Clone, Debug, Default)]
struct Best {
    word: Vec<Letter>,
}

impl Best {
    fn offer(&mut self, word: &[Letter]) {
        if word.len() > self.word.len() {
            self.word = word.to_vec();
        }
    }

    /// `other` comes later in lexicographic order, so it wins only if longer.
    fn merge(&mut self, other: Best) {
        if other.word.len() > self.word.len() {
            self.word = other.word;
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Stop {
    Cap,
    Budget,
}

struct Search<'a> {
    q: &'a ExQuery,
    pattern: Word,
    budget: u64,
    nodes: &'a AtomicU64,
}

impl Search<'_> {
    fn visit(&self, node: &Node, best: &mut Best) -> Result<(), Stop> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Stop::Budget);
        }
        best.offer(&node.word);
        if node.word.len() >= self.q.length_cap {
            return Err(Stop::Cap);
        }
        Ok(())
    }

    fn children(&self, node: &Node) -> Vec<Node> {
        let window = self.q.sparsity.saturating_sub(1);
        let recent = &node.word[node.word.len().saturating_sub(window)..];
        let fresh = if node.used < self.q.n {
            node.used + 1
        } else {
            node.used
        };
        let mut out = Vec::new();
        for x in 0..fresh as Letter {
            if recent.contains(&x) {
                continue;
            }
            let mut word = node.word.clone();
            word.push(x);
            let avoid = match &node.avoid {
                Avoidance::Incremental(m) => {
                    let mut m = m.clone();
                    if m.push(x) {
                        continue;
                    }
                    if m.state_count() > MATCHER_STATE_LIMIT {
                        Avoidance::Full
                    } else {
                        Avoidance::Incremental(m)
                    }
                }
                Avoidance::Full => {
                    let used = node.used.max(x as usize + 1);
                    if contains_in(&word, used, &self.pattern) {
                        continue;
                    }
                    Avoidance::Full
                }
            };
            out.push(Node {
                used: node.used.max(x as usize + 1),
                word,
                avoid,
            });
        }
        out
    }

    fn dfs(&self, node: Node, best: &mut Best) -> Result<(), Stop> {
        self.visit(&node, best)?;
        for child in self.children(&node) {
            self.dfs(child, best)?;
        }
        Ok(())
    }

    /// Visits every node shallower than the split depth and gathers the
    /// subtree roots at that depth, in lexicographic order.
    fn collect_prefixes(
        &self,
        node: Node,
        out: &mut Vec<Node>,
        best: &mut Best,
    ) -> Result<(), Stop> {
        if node.word.len() == SPLIT_DEPTH {
            out.push(node);
            return Ok(());
        }
        self.visit(&node, best)?;
        for child in self.children(&node) {
            self.collect_prefixes(child, out, best)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlazarReport {
    /// `Ex_d(u, n)`
    pub ex_d: usize,
    /// `Ex_c(u, n)`
    pub ex_c: usize,
    /// `Ex_c(u, d - 1)`
    pub ex_c_small: usize,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl KlazarReport {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Checks `Ex_d(u, n) <= Ex_c(u, n) <= (1 + Ex_c(u, d-1)) * Ex_d(u, n)` by
/// computing all three values exhaustively.
pub fn check_klazar_inequality(
    u: &Word,
    c: usize,
    d: usize,
    n: usize,
) -> Result<KlazarReport, ExError> {
    if c < u.alphabet_size() || d < c {
        return Err(Error::InvalidParameter(format!(
            "need d >= c >= {}, got c={c} d={d}",
            u.alphabet_size()
        ))
        .into());
    }
    let ex = |n: usize, sparsity: usize| -> Result<usize, ExError> {
        let q = ExQuery::with_sparsity(u.clone(), n, sparsity)?;
        Ok(ex_bruteforce(&q)?.max_length)
    };
    let ex_d = ex(n, d)?;
    let ex_c = ex(n, c)?;
    let ex_c_small = ex(d - 1, c)?;
    Ok(KlazarReport {
        ex_d,
        ex_c,
        ex_c_small,
        lower_holds: ex_d <= ex_c,
        upper_holds: ex_c <= (1 + ex_c_small) * ex_d,
    })
}
