//! Seed-fixed invariant suites. Each returns the number of cases checked,
//! or a description of the first counterexample.

use formwidth::extremal::SearchConfig;
use formwidth::{
    contains, ex_search, fw, fw_with, fw_witness, l_metric, normalize, r_metric, ExQuery, FwConfig,
    Letter, Word,
};
use proptest::prelude::*;

use super::{brute_contains, brute_fw, sample, word_strategy};

pub const CASES: usize = 200;
const S_MAX: usize = 16;

type Outcome = Result<usize, String>;
pub type Suite = fn(u8) -> Outcome;

fn width(u: &Word) -> Result<usize, String> {
    fw(u, S_MAX)
        .width()
        .ok_or_else(|| format!("fw({:?}) did not finish", u.letters()))
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

pub fn fw_matches_enumeration(seed: u8) -> Outcome {
    let words = sample(word_strategy(3, 6), CASES, seed);
    for u in &words {
        let s = width(u)?;
        let oracle = brute_fw(u, 8);
        ensure(Some(s) == oracle, || {
            format!("fw({:?}) = {s}, enumeration gives {oracle:?}", u.letters())
        })?;
    }
    Ok(words.len())
}

pub fn monotone_under_containment(seed: u8) -> Outcome {
    let cases = sample((word_strategy(4, 9), any::<u64>()), CASES, seed);
    for (u, mask) in &cases {
        let kept: Vec<Letter> = u
            .letters()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i == 0 || mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        let v = normalize(&kept).unwrap();
        ensure(contains(u, &v), || {
            format!("{:?} lost a subsequence", u.letters())
        })?;
        let (small, big) = (width(&v)?, width(u)?);
        ensure(small <= big, || {
            format!(
                "fw({:?}) = {small} > fw({:?}) = {big}",
                v.letters(),
                u.letters()
            )
        })?;
    }
    Ok(cases.len())
}

pub fn prefix_law(seed: u8) -> Outcome {
    let words = sample(word_strategy(4, 9), CASES, seed);
    for u in &words {
        let mut longer = vec![u.letters()[0]];
        longer.extend_from_slice(u.letters());
        let v = normalize(&longer).unwrap();
        let (before, after) = (width(u)?, width(&v)?);
        ensure(after == before + 1, || {
            format!("fw({:?}) = {after}, fw of the tail = {before}", v.letters())
        })?;
    }
    Ok(words.len())
}

pub fn fresh_letter_insertion(seed: u8) -> Outcome {
    let cases = sample(
        (word_strategy(4, 9), any::<prop::sample::Index>()),
        CASES,
        seed,
    );
    for (u, at) in &cases {
        let mut letters = u.letters().to_vec();
        letters.insert(at.index(letters.len() + 1), u.alphabet_size() as Letter);
        let v = normalize(&letters).unwrap();
        let (before, after) = (width(u)?, width(&v)?);
        ensure(before == after, || {
            format!(
                "inserting into {:?} moved fw {before} -> {after}",
                u.letters()
            )
        })?;
    }
    Ok(cases.len())
}

pub fn witness_consistency(seed: u8) -> Outcome {
    let words = sample(word_strategy(4, 8), CASES, seed);
    for u in &words {
        let s = width(u)?;
        let at = fw_witness(u, s).map_err(|e| e.to_string())?;
        ensure(at.is_none(), || {
            format!("avoider of {:?} at s = fw", u.letters())
        })?;
        if s > 1 {
            let below = fw_witness(u, s - 1).map_err(|e| e.to_string())?;
            let ok = below.is_some_and(|f| !brute_contains(&f.letters(), u.letters()));
            ensure(ok, || {
                format!("no valid avoider of {:?} at s = fw - 1", u.letters())
            })?;
        }
    }
    Ok(words.len())
}

pub fn reversal_symmetry(seed: u8) -> Outcome {
    let cases = sample((word_strategy(4, 10), word_strategy(3, 5)), CASES, seed);
    for (text, pattern) in &cases {
        let forward = contains(text, pattern);
        let mirrored = contains(&text.reversed(), &pattern.reversed());
        let oracle = brute_contains(text.letters(), pattern.letters());
        ensure(forward == mirrored && forward == oracle, || {
            format!("contains({:?}, {:?})", text.letters(), pattern.letters())
        })?;
    }
    Ok(cases.len())
}

pub fn metrics_below_fw(seed: u8) -> Outcome {
    let words = sample(word_strategy(4, 9), CASES, seed);
    for u in &words {
        let s = width(u)?;
        let (l, r) = (l_metric(u), r_metric(u));
        ensure(l <= s && r <= s, || {
            format!("{:?}: l = {l}, r = {r}, fw = {s}", u.letters())
        })?;
    }
    Ok(words.len())
}

pub fn parallel_fw(seed: u8) -> Outcome {
    let words = sample(word_strategy(5, 11), CASES, seed);
    for u in &words {
        let seq = fw_with(
            u,
            &FwConfig {
                s_max: S_MAX,
                parallel: false,
            },
        );
        let par = fw_with(
            u,
            &FwConfig {
                s_max: S_MAX,
                parallel: true,
            },
        );
        ensure(seq == par, || {
            format!("{:?}: {seq:?} vs {par:?}", u.letters())
        })?;
    }
    Ok(words.len())
}

pub fn parallel_ex(seed: u8) -> Outcome {
    let cases = sample((word_strategy(3, 5), 1usize..=4, 0usize..=1), CASES, seed);
    for (pattern, n, extra) in &cases {
        let sparsity = pattern.alphabet_size() + extra;
        let q = ExQuery::with_sparsity(pattern.clone(), *n, sparsity).map_err(|e| e.to_string())?;
        let run = |parallel| {
            ex_search(
                &q,
                &SearchConfig {
                    node_budget: 2_000_000,
                    parallel,
                },
            )
            .map(|r| (r.max_length, r.witness))
        };
        let (seq, par) = (run(false), run(true));
        ensure(seq == par, || format!("{q:?}: {seq:?} vs {par:?}"))?;
    }
    Ok(cases.len())
}

/// Every suite with its name, for runners that report them one by one.
pub fn all() -> Vec<(&'static str, Suite)> {
    vec![
        ("fw against enumeration", fw_matches_enumeration),
        ("monotone under containment", monotone_under_containment),
        ("repeated first letter adds one", prefix_law),
        ("fresh letter insertion", fresh_letter_insertion),
        ("witness consistency", witness_consistency),
        ("containment reversal symmetry", reversal_symmetry),
        ("l and r below fw", metrics_below_fw),
        ("parallel fw", parallel_fw),
        ("parallel Ex", parallel_ex),
    ]
}
