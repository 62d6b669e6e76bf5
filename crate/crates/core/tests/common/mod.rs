//! Slow reference implementations shared by the integration tests. None of
//! them go through the library's search code.

#![allow(dead_code)]

pub mod invariants;

use std::collections::HashMap;

use formwidth::{normalize, Letter, Word};
use itertools::Itertools;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Tries every choice of positions and checks for an injective renaming.
pub fn brute_contains(text: &[Letter], pattern: &[Letter]) -> bool {
    if pattern.len() > text.len() {
        return false;
    }
    (0..text.len())
        .combinations(pattern.len())
        .any(|positions| {
            let mut forward = HashMap::new();
            let mut backward = HashMap::new();
            positions.iter().zip(pattern).all(|(&i, &p)| {
                let t = text[i];
                *forward.entry(p).or_insert(t) == t && *backward.entry(t).or_insert(p) == p
            })
        })
}

/// Binary formation over letters `0..r` with first row ascending; bit `j`
/// of `mask` reverses row `j + 1`.
pub fn binary_formation(r: usize, s: usize, mask: u64) -> Vec<Letter> {
    let mut out = Vec::with_capacity(r * s);
    for row in 0..s {
        let reversed = row > 0 && mask >> (row - 1) & 1 == 1;
        if reversed {
            out.extend((0..r as Letter).rev());
        } else {
            out.extend(0..r as Letter);
        }
    }
    out
}

/// Least `s` such that every binary `(r, s)`-formation contains `u`.
pub fn brute_fw(u: &Word, s_max: usize) -> Option<usize> {
    let r = u.alphabet_size();
    (1..=s_max).find(|&s| {
        (0..1u64 << (s - 1)).all(|mask| brute_contains(&binary_formation(r, s, mask), u.letters()))
    })
}

/// Longest sequence on at most `n` letters in which every `sparsity`
/// consecutive letters differ and `pattern` is avoided, by breadth-first
/// extension of every canonical sequence.
pub fn brute_ex(pattern: &Word, n: usize, sparsity: usize) -> usize {
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut best = 0;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for seq in &layer {
            let used = seq.iter().map(|&x| x + 1).max().unwrap_or(0) as usize;
            for x in 0..(used + 1).min(n) as Letter {
                let window = seq.len().saturating_sub(sparsity - 1);
                if seq[window..].contains(&x) {
                    continue;
                }
                let mut longer = seq.clone();
                longer.push(x);
                if !brute_contains(&longer, pattern.letters()) {
                    best = best.max(longer.len());
                    next.push(longer);
                }
            }
        }
        layer = next;
    }
    best
}

pub fn word(s: &str) -> Word {
    normalize(s.as_bytes()).unwrap()
}

/// Random word on at most `letters` letters with length in `1..=max_len`.
pub fn word_strategy(letters: u32, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..letters, 1..=max_len).prop_map(|raw| normalize(&raw).unwrap())
}

/// Deterministic runner: the same `seed` always yields the same cases.
pub fn seeded_runner(cases: u32, seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

/// Draws `count` values from `strategy` with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, count: usize, seed: u8) -> Vec<S::Value> {
    let mut runner = seeded_runner(count as u32, seed);
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}
