//! The greedy lower bounds `l(u)` and `r(u)` and their closed forms on
//! binary formations.
//!
//! `l(u)` is the least `k` with `up(c, k)` containing `u`, and `r(u)` the least
//! `k` with `alt(c, k)` containing `u`. Both are computed by a left-to-right
//! greedy embedding against `I_pi I_pi ...` (resp. `I_pi D_pi I_pi ...`),
//! minimized over every base permutation `pi`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Permutation, Word};

/// Greedy number of copies of `I_pi` needed to hold `u` as a plain subsequence.
pub fn l_pi(u: &Word, pi: &Permutation) -> usize {
    let position = pi.inverse();
    let mut rows = 0;
    let mut cursor = None;
    for &x in u.letters() {
        let p = position.apply(x);
        match cursor {
            Some(c) if p > c => {}
            _ => rows += 1,
        }
        cursor = Some(p);
    }
    rows
}

pub fn l_metric(u: &Word) -> usize {
    Permutation::all(u.alphabet_size())
        .map(|pi| l_pi(u, &pi))
        .min()
        .unwrap_or(0)
}

/// Rows of `I_pi D_pi I_pi ...` touched by the greedy embedding of `u`.
pub fn r_pi(u: &Word, pi: &Permutation) -> usize {
    let c = pi.len();
    let position = pi.inverse();
    let at = |row: usize, x: Letter| {
        let p = position.apply(x) as usize;
        if row.is_multiple_of(2) {
            p
        } else {
            c - 1 - p
        }
    };
    let mut row = 0;
    let mut cursor: Option<usize> = None;
    for &x in u.letters() {
        match cursor {
            Some(cur) if at(row, x) > cur => {}
            Some(_) => row += 1,
            None => {}
        }
        cursor = Some(at(row, x));
    }
    if cursor.is_some() {
        row + 1
    } else {
        0
    }
}

pub fn r_metric(u: &Word) -> usize {
    Permutation::all(u.alphabet_size())
        .map(|pi| r_pi(u, &pi))
        .min()
        .unwrap_or(0)
}

/// Whether `head` comes strictly after `tail` in `I_pi`, so that a word
/// ending in `tail` followed by one starting with `head` shares a row.
pub fn pi_overlap(tail: Letter, head: Letter, pi: &Permutation) -> bool {
    let position = pi.inverse();
    position.apply(head) > position.apply(tail)
}

/// `I_c^e1 D_c^e2 I_c^e3 ...`, runs alternating and starting with `I_c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryFormationSpec {
    pub c: usize,
    pub exponents: Vec<usize>,
}

impl BinaryFormationSpec {
    pub fn new(c: usize, exponents: Vec<usize>) -> Result<Self> {
        if c < 2 {
            return Err(Error::InvalidParameter("c must be at least 2".into()));
        }
        if exponents.is_empty() || exponents.contains(&0) {
            return Err(Error::InvalidParameter(
                "exponents must be a non-empty list of positive integers".into(),
            ));
        }
        Ok(BinaryFormationSpec { c, exponents })
    }

    /// Sum of the odd-numbered runs (the `I_c` runs).
    pub fn increasing_total(&self) -> usize {
        self.exponents.iter().step_by(2).sum()
    }

    pub fn decreasing_total(&self) -> usize {
        self.exponents.iter().skip(1).step_by(2).sum()
    }

    pub fn rows(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn runs(&self) -> usize {
        self.exponents.len()
    }

    pub fn realize(&self) -> Word {
        let mut letters = Vec::with_capacity(self.c * self.rows());
        for (i, &e) in self.exponents.iter().enumerate() {
            for _ in 0..e {
                if i % 2 == 0 {
                    letters.extend(0..self.c as Letter);
                } else {
                    letters.extend((0..self.c as Letter).rev());
                }
            }
        }
        Word::from_letters(letters).expect("c >= 2")
    }

    /// Every spec with alphabet `c` and at most `max_rows` rows.
    pub fn enumerate(c: usize, max_rows: usize) -> Vec<BinaryFormationSpec> {
        fn compositions(total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if total == 0 {
                out.push(prefix.clone());
                return;
            }
            for part in 1..=total {
                prefix.push(part);
                compositions(total - part, prefix, out);
                prefix.pop();
            }
        }
        let mut all = Vec::new();
        for total in 1..=max_rows {
            compositions(total, &mut Vec::new(), &mut all);
        }
        all.into_iter()
            .map(|exponents| BinaryFormationSpec { c, exponents })
            .collect()
    }
}

impl fmt::Display for BinaryFormationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(f, "c={};e={}", self.c, e.join(","))
    }
}

impl FromStr for BinaryFormationSpec {
    type Err = Error;

    /// Parses `c=3;e=1,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse {
            position: 0,
            message: format!("{message} in binary formation spec {s:?}"),
        };
        let (c_part, e_part) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let c = c_part
            .trim()
            .strip_prefix("c=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("expected c=<int>"))?;
        let exponents = e_part
            .trim()
            .strip_prefix("e=")
            .ok_or_else(|| bad("expected e=<list>"))?
            .split(',')
            .map(|v| v.trim().parse().map_err(|_| bad("bad exponent")))
            .collect::<Result<Vec<usize>>>()?;
        BinaryFormationSpec::new(c, exponents)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricBounds {
    pub l_value: usize,
    pub r_value: usize,
    pub fw_lower: usize,
    pub fw_upper: usize,
    /// `r(u) > l(u)`, evaluated through `M > (c-3)m + n + floor(n/2)`.
    pub r_exceeds_l: bool,
}

pub fn binary_closed_forms(spec: &BinaryFormationSpec) -> MetricBounds {
    let c = spec.c as i64;
    let a = spec.increasing_total() as i64;
    let b = spec.decreasing_total() as i64;
    let (big, small) = (a.max(b), a.min(b));
    let n = spec.runs() as i64;
    let k = spec.rows() as i64;

    let l_value = (c - 1) * small + big + n / 2;
    let r_value = 2 * k - n;
    let run_bound = spec
        .exponents
        .iter()
        .map(|&e| c * (k - e as i64) + 2 * e as i64 - 1)
        .min()
        .expect("non-empty exponents");
    let fw_upper = (2 * l_value - 1).min(run_bound);

    MetricBounds {
        l_value: l_value as usize,
        r_value: r_value as usize,
        fw_lower: l_value.max(r_value) as usize,
        fw_upper: fw_upper as usize,
        r_exceeds_l: big > (c - 3) * small + n + n / 2,
    }
}
