//! Words over a dense alphabet, permutations, and pattern containment.
//!
//! A [`Word`] uses the letters `0..alphabet_size` and every one of them
//! occurs. Two words are isomorphic when one becomes the other under a
//! one-to-one renaming of letters; [`normalize`] picks the representative
//! whose letters first occur in increasing order, so isomorphism is decided
//! by comparing normalized words.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word {
    letters: Vec<Letter>,
    alphabet_size: usize,
}

impl Word {
    /// Wraps `letters`, checking that they cover `0..k` for some `k`.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        let alphabet_size = letters.iter().map(|&x| x as usize + 1).max().unwrap_or(0);
        let mut seen = vec![false; alphabet_size];
        for &x in &letters {
            seen[x as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidParameter(format!(
                "letter {missing} is absent but {} occurs",
                alphabet_size - 1
            )));
        }
        Ok(Word {
            letters,
            alphabet_size,
        })
    }

    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
            alphabet_size: 0,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// True when first occurrences appear in the order 0, 1, 2, ...
    pub fn is_canonical(&self) -> bool {
        let mut next = 0;
        for &x in &self.letters {
            if x == next {
                next += 1;
            } else if x > next {
                return false;
            }
        }
        true
    }

    pub fn canonical(&self) -> Word {
        if self.is_canonical() {
            self.clone()
        } else {
            normalize(&self.letters).unwrap_or_else(|_| Word::empty())
        }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            letters,
            alphabet_size: self.alphabet_size,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            alphabet_size: self.alphabet_size.max(other.alphabet_size),
            letters,
        }
    }

    /// Occurrence count of every letter.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet_size];
        for &x in &self.letters {
            counts[x as usize] += 1;
        }
        counts
    }

    /// Normalized word with the letters at `positions` removed.
    pub fn without_positions(&self, positions: &[usize]) -> Option<Word> {
        let kept: Vec<Letter> = self
            .letters
            .iter()
            .enumerate()
            .filter(|(i, _)| !positions.contains(i))
            .map(|(_, &x)| x)
            .collect();
        normalize(&kept).ok()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters)
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self> {
        Word::from_letters(letters)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.letters
    }
}

/// Relabels `raw` by first occurrence.
pub fn normalize<T: Eq + Hash>(raw: &[T]) -> Result<Word> {
    if raw.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut ids: HashMap<&T, Letter> = HashMap::new();
    let letters = raw
        .iter()
        .map(|t| {
            let next = ids.len() as Letter;
            *ids.entry(t).or_insert(next)
        })
        .collect();
    Ok(Word {
        letters,
        alphabet_size: ids.len(),
    })
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Permutation(Vec<Letter>);

impl Permutation {
    pub fn new(mapping: Vec<Letter>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &x in &mapping {
            match seen.get_mut(x as usize) {
                Some(s) if !*s => *s = true,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "{mapping:?} is not a permutation"
                    )))
                }
            }
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(r: usize) -> Self {
        Permutation((0..r as Letter).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn apply(&self, x: Letter) -> Letter {
        self.0[x as usize]
    }

    pub fn reversed(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as Letter;
        }
        Permutation(inv)
    }

    /// All permutations of `0..r` in lexicographic order.
    pub fn all(r: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (0..r as Letter).permutations(r).map(Permutation)
    }
}

impl TryFrom<Vec<Letter>> for Permutation {
    type Error = Error;

    fn try_from(mapping: Vec<Letter>) -> Result<Self> {
        Permutation::new(mapping)
    }
}

impl From<Permutation> for Vec<Letter> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// True iff some subsequence of `text` is isomorphic to `pattern`.
///
/// Pattern letters are assigned to text letters lazily at their first
/// occurrence; once the assignment is fixed the leftmost embedding is
/// optimal, so positions are taken greedily.
pub fn contains(text: &Word, pattern: &Word) -> bool {
    contains_in(text.letters(), text.alphabet_size(), pattern)
}

pub fn avoids(text: &Word, pattern: &Word) -> bool {
    !contains(text, pattern)
}

/// [`contains`] for a raw letter slice drawn from `0..alphabet`.
pub fn contains_in(text: &[Letter], alphabet: usize, pattern: &Word) -> bool {
    if pattern.is_empty() {
        return true;
    }
    let pattern = pattern.canonical();
    let k = pattern.alphabet_size();
    if k > alphabet || pattern.len() > text.len() {
        return false;
    }

    let mut text_counts = vec![0usize; alphabet];
    for &x in text {
        text_counts[x as usize] += 1;
    }
    let need = pattern.multiplicities();

    // next[i * alphabet + x] = first position >= i holding x
    let n = text.len();
    let mut next = vec![usize::MAX; (n + 1) * alphabet];
    for i in (0..n).rev() {
        let (head, tail) = next.split_at_mut((i + 1) * alphabet);
        head[i * alphabet..].copy_from_slice(&tail[..alphabet]);
        head[i * alphabet + text[i] as usize] = i;
    }

    let mut search = Embedding {
        pattern: pattern.letters(),
        alphabet,
        next: &next,
        text_counts: &text_counts,
        need: &need,
        assigned: vec![0; k],
        used: vec![false; alphabet],
    };
    search.run(0, 0, 0)
}

struct Embedding<'a> {
    pattern: &'a [Letter],
    alphabet: usize,
    next: &'a [usize],
    text_counts: &'a [usize],
    need: &'a [usize],
    assigned: Vec<Letter>,
    used: Vec<bool>,
}

impl Embedding<'_> {
    fn run(&mut self, i: usize, pos: usize, mapped: usize) -> bool {
        if i == self.pattern.len() {
            return true;
        }
        let a = self.pattern[i] as usize;
        if a < mapped {
            let j = self.next[pos * self.alphabet + self.assigned[a] as usize];
            return j != usize::MAX && self.run(i + 1, j + 1, mapped);
        }
        for x in 0..self.alphabet {
            if self.used[x] || self.text_counts[x] < self.need[a] {
                continue;
            }
            let j = self.next[pos * self.alphabet + x];
            if j == usize::MAX {
                continue;
            }
            self.used[x] = true;
            self.assigned[a] = x as Letter;
            let found = self.run(i + 1, j + 1, mapped + 1);
            self.used[x] = false;
            if found {
                return true;
            }
        }
        false
    }
}

pub fn is_r_sparse(w: &Word, r: usize) -> bool {
    if r <= 1 {
        return true;
    }
    w.letters().iter().enumerate().all(|(i, x)| {
        w.letters()[i.saturating_sub(r - 1)..i]
            .iter()
            .all(|y| y != x)
    })
}

/// Every distinct letter occurs at least twice.
pub fn is_reduced(w: &Word) -> bool {
    w.multiplicities().iter().all(|&m| m >= 2)
}

/// Named sequences: `I_c`, `D_c`, `I_pi`, `D_pi`, `up(l, t)` and `alt(l, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Increasing(usize),
    Decreasing(usize),
    IncreasingPi(Permutation),
    DecreasingPi(Permutation),
    Up { l: usize, t: usize },
    Alt { l: usize, t: usize },
}

pub fn construct(kind: &Construction) -> Result<Word> {
    fn positive(name: &str, v: usize) -> Result<()> {
        if v == 0 {
            Err(Error::InvalidParameter(format!("{name} must be positive")))
        } else {
            Ok(())
        }
    }
    let letters: Vec<Letter> = match kind {
        Construction::Increasing(c) => {
            positive("c", *c)?;
            (0..*c as Letter).collect()
        }
        Construction::Decreasing(c) => {
            positive("c", *c)?;
            (0..*c as Letter).rev().collect()
        }
        Construction::IncreasingPi(p) => {
            positive("permutation length", p.len())?;
            p.as_slice().to_vec()
        }
        Construction::DecreasingPi(p) => {
            positive("permutation length", p.len())?;
            p.reversed().as_slice().to_vec()
        }
        Construction::Up { l, t } => {
            positive("l", *l)?;
            positive("t", *t)?;
            (0..*t).flat_map(|_| 0..*l as Letter).collect()
        }
        Construction::Alt { l, t } => {
            positive("l", *l)?;
            positive("t", *t)?;
            let mut out = Vec::with_capacity(l * t);
            for row in 0..*t {
                if row % 2 == 0 {
                    out.extend(0..*l as Letter);
                } else {
                    out.extend((0..*l as Letter).rev());
                }
            }
            out
        }
    };
    Word::from_letters(letters)
}

pub fn increasing(c: usize) -> Word {
    construct(&Construction::Increasing(c)).expect("c > 0")
}

pub fn decreasing(c: usize) -> Word {
    construct(&Construction::Decreasing(c)).expect("c > 0")
}

pub fn up(l: usize, t: usize) -> Word {
    construct(&Construction::Up { l, t }).expect("l, t > 0")
}

pub fn alt(l: usize, t: usize) -> Word {
    construct(&Construction::Alt { l, t }).expect("l, t > 0")
}
