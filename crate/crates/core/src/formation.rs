//! Formations, formation width and the explicit avoider constructions.
//!
//! An `(r, s)`-formation is `s` permutations of the same `r` letters written
//! one after another. A formation is binary when every row is a fixed base
//! permutation or its reverse. Every binary `(r, s)`-formation contains `u`
//! exactly when `s >= fw(u)` (with `r` the number of distinct letters of
//! `u`), which is what makes formation width computable. Since containment
//! is invariant under renaming, only binary formations whose first row is
//! the identity are enumerated.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::Matcher;
use crate::word::{contains, contains_in, Letter, Permutation, Word};

pub const DEFAULT_S_MAX: usize = 16;
pub const DEFAULT_FL_BUDGET: u128 = 100_000_000;
pub const DEFAULT_AVOIDER_LETTERS: usize = 1 << 16;

/// Row orientations of a binary formation relative to its first row.
/// `false` is "same", `true` is "reversed"; the first flag is always same.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignPattern(Vec<bool>);

impl SignPattern {
    pub fn new(flags: Vec<bool>) -> Result<Self> {
        match flags.first() {
            None => Err(Error::InvalidParameter("empty sign pattern".into())),
            Some(true) => Err(Error::InvalidParameter(
                "first row of a sign pattern is always same".into(),
            )),
            Some(false) => Ok(SignPattern(flags)),
        }
    }

    /// The `index`-th of the `2^(s-1)` patterns in lexicographic order.
    pub fn from_index(s: usize, index: u64) -> Self {
        let mut flags = vec![false; s];
        for (j, flag) in flags.iter_mut().enumerate().skip(1) {
            *flag = (index >> (s - 1 - j)) & 1 == 1;
        }
        SignPattern(flags)
    }

    pub fn flags(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn decode(&self, base: &Permutation) -> Formation {
        let reversed = base.reversed();
        let rows = self
            .0
            .iter()
            .map(|&rev| if rev { reversed.clone() } else { base.clone() })
            .collect();
        Formation {
            r: base.len(),
            rows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Letter>>", into = "Vec<Vec<Letter>>")]
pub struct Formation {
    r: usize,
    rows: Vec<Permutation>,
}

impl Formation {
    pub fn new(rows: Vec<Permutation>) -> Result<Self> {
        let r = rows.first().map_or(0, Permutation::len);
        if rows.iter().any(|p| p.len() != r) {
            return Err(Error::InvalidParameter(
                "formation rows have different lengths".into(),
            ));
        }
        Ok(Formation { r, rows })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Permutation] {
        &self.rows
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.rows
            .iter()
            .flat_map(|p| p.as_slice().iter().copied())
            .collect()
    }

    /// The flattened formation (not normalized).
    pub fn to_word(&self) -> Word {
        Word::from_letters(self.letters()).expect("rows are permutations")
    }

    pub fn prefix(&self, rows: usize) -> Formation {
        Formation {
            r: self.r,
            rows: self.rows[..rows.min(self.rows.len())].to_vec(),
        }
    }

    /// The sign pattern of a binary formation, `None` if it is not binary.
    pub fn sign_pattern(&self) -> Option<SignPattern> {
        let base = self.rows.first()?;
        let reversed = base.reversed();
        let flags = self
            .rows
            .iter()
            .map(|p| {
                if p == base {
                    Some(false)
                } else if *p == reversed {
                    Some(true)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SignPattern(flags))
    }
}

impl TryFrom<Vec<Vec<Letter>>> for Formation {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Letter>>) -> Result<Self> {
        Formation::new(
            rows.into_iter()
                .map(Permutation::new)
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl From<Formation> for Vec<Vec<Letter>> {
    fn from(f: Formation) -> Self {
        f.rows.into_iter().map(Vec::from).collect()
    }
}

/// The `2^(s-1)` binary `(r, s)`-formations with first row `I_r`, in
/// lexicographic sign-pattern order.
pub fn binary_formations(r: usize, s: usize) -> impl Iterator<Item = Formation> {
    assert!((1..=64).contains(&s), "s must be in 1..=64");
    let base = Permutation::identity(r);
    (0..1u64 << (s - 1)).map(move |i| SignPattern::from_index(s, i).decode(&base))
}

pub fn formation_contains(f: &Formation, u: &Word) -> bool {
    contains_in(&f.letters(), f.r(), u)
}

/// True iff `text` avoids every binary `(r, s)`-formation.
pub fn avoids_all_binary(text: &Word, r: usize, s: usize) -> bool {
    binary_formations(r, s).all(|b| !contains(text, &b.to_word()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FwOutcome {
    Width(usize),
    Exhausted(usize),
}

impl FwOutcome {
    pub fn width(self) -> Option<usize> {
        match self {
            FwOutcome::Width(s) => Some(s),
            FwOutcome::Exhausted(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FwConfig {
    pub s_max: usize,
    pub parallel: bool,
}

impl Default for FwConfig {
    fn default() -> Self {
        FwConfig {
            s_max: DEFAULT_S_MAX,
            parallel: false,
        }
    }
}

pub fn fw(u: &Word, s_max: usize) -> FwOutcome {
    fw_with(
        u,
        &FwConfig {
            s_max,
            parallel: false,
        },
    )
}

/// Smallest `s <= s_max` such that every binary `(r, s)`-formation contains
/// `u`.
///
/// Works row by row on the set of binary formations that still avoid `u`:
/// a formation that contains `u` keeps containing it when rows are
/// appended, so only avoiders are extended. Each avoider carries its
/// matcher state, so appending a row costs `r` matcher steps.
pub fn fw_with(u: &Word, config: &FwConfig) -> FwOutcome {
    let s_max = config.s_max.min(64);
    if u.is_empty() {
        return FwOutcome::Width(1);
    }
    let r = u.alphabet_size();
    let up_row: Vec<Letter> = (0..r as Letter).collect();
    let down_row: Vec<Letter> = up_row.iter().rev().copied().collect();

    let mut first = Matcher::new(u);
    let mut frontier = if first.extend(up_row.iter().copied()) {
        Vec::new()
    } else {
        vec![first]
    };
    let mut s = 1;
    while !frontier.is_empty() {
        if s >= s_max {
            return FwOutcome::Exhausted(s_max);
        }
        s += 1;
        let extend = |m: &Matcher| {
            [&up_row, &down_row]
                .into_iter()
                .filter_map(|row| {
                    let mut next = m.clone();
                    (!next.extend(row.iter().copied())).then_some(next)
                })
                .collect::<Vec<_>>()
        };
        frontier = if config.parallel {
            frontier.par_iter().flat_map_iter(extend).collect()
        } else {
            frontier.iter().flat_map(extend).collect()
        };
    }
    FwOutcome::Width(s)
}

/// Lexicographically least binary `(r, s)`-formation avoiding `u`.
pub fn fw_witness(u: &Word, s: usize) -> Result<Option<Formation>> {
    if s == 0 || s > 64 {
        return Err(Error::InvalidParameter("s must be in 1..=64".into()));
    }
    Ok(binary_formations(u.alphabet_size().max(1), s).find(|f| !formation_contains(f, u)))
}

#[derive(Clone, Copy, Debug)]
pub struct FlConfig {
    pub r_max: usize,
    pub s_max: usize,
    /// Cap on `(r!)^(fw-1) * r!` for a single `r`.
    pub budget: u128,
}

impl Default for FlConfig {
    fn default() -> Self {
        FlConfig {
            r_max: 8,
            s_max: DEFAULT_S_MAX,
            budget: DEFAULT_FL_BUDGET,
        }
    }
}

pub fn fl_bounded(u: &Word, r_max: usize) -> Result<usize> {
    fl_with(
        u,
        &FlConfig {
            r_max,
            ..FlConfig::default()
        },
    )
}

/// Smallest `r <= r_max` such that every `(r, fw(u))`-formation contains `u`.
/// All formations with first row `I_r` are enumerated.
pub fn fl_with(u: &Word, config: &FlConfig) -> Result<usize> {
    let width = fw(u, config.s_max).width().ok_or(Error::Exhausted {
        limit: config.s_max,
    })?;
    for r in u.alphabet_size().max(1)..=config.r_max {
        let rows = Permutation::all(r).collect::<Vec<_>>();
        let work = (rows.len() as u128)
            .checked_pow(width as u32)
            .filter(|&w| w <= config.budget);
        if work.is_none() {
            return Err(Error::Infeasible(format!(
                "({r}!)^{width} formations exceed the budget of {}",
                config.budget
            )));
        }
        let mut m = Matcher::new(u);
        if m.extend(0..r as Letter) || all_completions_contain(&m, &rows, width - 1) {
            return Ok(r);
        }
    }
    Err(Error::Exhausted {
        limit: config.r_max,
    })
}

fn all_completions_contain(m: &Matcher, rows: &[Permutation], remaining: usize) -> bool {
    if remaining == 0 {
        return false;
    }
    rows.iter().all(|p| {
        let mut next = m.clone();
        next.extend(p.as_slice().iter().copied())
            || all_completions_contain(&next, rows, remaining - 1)
    })
}

/// `(r-1)^(2^(s-1)) + 1`: the least size for which every `(gamma, s)`
/// formation contains a binary `(r, s)`-formation.
pub fn gamma(r: usize, s: usize) -> BigUint {
    assert!(r >= 1 && s >= 1);
    let mut value = BigUint::from(r - 1);
    for _ in 1..s {
        value = &value * &value;
    }
    value + 1u32
}

pub fn fl_upper_bound(u: &Word) -> Result<BigUint> {
    let width = fw(u, DEFAULT_S_MAX).width().ok_or(Error::Exhausted {
        limit: DEFAULT_S_MAX,
    })?;
    Ok(gamma(u.alphabet_size().max(1), width))
}

fn block_size(base: usize, exponent: usize) -> Result<usize> {
    u32::try_from(exponent)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::Infeasible(format!("{base}^{exponent} overflows")))
}

/// Applies a `k`-swap to a row of length `(r-1)^(2^(s-1))`.
///
/// An `a`-block is an aligned run of `(r-1)^a` positions. For every even
/// `i` in `2..=2^k` the `(i-1)*2^(s-k-1)`-blocks inside each
/// `i*2^(s-k-1)`-block are put in reverse order, contents unchanged.
pub fn k_swap(p: &Permutation, k: usize, r: usize, s: usize) -> Result<Permutation> {
    if r < 2 || s < 2 || k < 1 || k >= s {
        return Err(Error::InvalidParameter(format!(
            "k-swap needs r >= 2 and 1 <= k < s, got r={r} s={s} k={k}"
        )));
    }
    let base = r - 1;
    let len = block_size(base, 1 << (s - 1))?;
    if p.len() != len {
        return Err(Error::InvalidParameter(format!(
            "row has {} letters, expected {len}",
            p.len()
        )));
    }
    let unit = 1usize << (s - k - 1);
    let mut row = p.as_slice().to_vec();
    for i in (2..=1usize << k).step_by(2) {
        let inner = block_size(base, (i - 1) * unit)?;
        let outer = block_size(base, i * unit)?;
        for block in row.chunks_mut(outer) {
            let swapped: Vec<Letter> = block.chunks(inner).rev().flatten().copied().collect();
            block.copy_from_slice(&swapped);
        }
    }
    Permutation::new(row)
}

/// A `((r-1)^(2^(s-1)), s)`-formation avoiding every binary
/// `(r, s)`-formation: row 1 is the identity and row `k+1` is the `k`-swap of
/// row `k`.
pub fn build_es_avoider(r: usize, s: usize) -> Result<Formation> {
    build_es_avoider_within(r, s, DEFAULT_AVOIDER_LETTERS)
}

pub fn build_es_avoider_within(r: usize, s: usize, max_letters: usize) -> Result<Formation> {
    if r < 2 || s < 1 {
        return Err(Error::InvalidParameter("need r >= 2 and s >= 1".into()));
    }
    let len = block_size(r - 1, 1 << (s - 1).min(63))
        .ok()
        .filter(|&n| n <= max_letters)
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "(r-1)^(2^(s-1)) letters exceed the limit of {max_letters}"
            ))
        })?;
    let mut rows = vec![Permutation::identity(len)];
    for k in 1..s {
        let next = k_swap(&rows[k - 1], k, r, s)?;
        rows.push(next);
    }
    Formation::new(rows)
}

/// The two-letter formation `f(u)`: drop the first letter of `u`, then write
/// `ba` for every `x` and `ab` for every `y`, where `u` starts with `xy`.
/// Its first `len(u) - 2` rows avoid `u`.
pub fn build_two_letter_avoider(u: &Word) -> Result<Formation> {
    let u = u.canonical();
    if u.alphabet_size() != 2 || u.letters()[1] != 1 {
        return Err(Error::InvalidParameter(
            "needs exactly two letters with different first and second letters".into(),
        ));
    }
    let ab = Permutation::identity(2);
    let ba = ab.reversed();
    Formation::new(
        u.letters()[1..]
            .iter()
            .map(|&x| if x == 0 { ba.clone() } else { ab.clone() })
            .collect(),
    )
}

/// `T_1 = I_c^c`, `T_2j = T_(2j-1) D_c^2`, `T_(2j+1) = T_2j I_c^c`.
/// `T_(k-1)` avoids `alt(c, k)`.
pub fn build_alt_avoider(c: usize, k: usize) -> Result<Formation> {
    if c < 2 || k < 1 {
        return Err(Error::InvalidParameter("need c >= 2 and k >= 1".into()));
    }
    let inc = Permutation::identity(c);
    let dec = inc.reversed();
    let mut rows = vec![inc.clone(); c];
    for j in 2..=k {
        if j % 2 == 0 {
            rows.extend([dec.clone(), dec.clone()]);
        } else {
            rows.extend(std::iter::repeat_n(inc.clone(), c));
        }
    }
    Formation::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{alt, normalize, up};

    fn w(s: &str) -> Word {
        normalize(s.as_bytes()).unwrap()
    }

    fn rows(f: &Formation) -> Vec<Vec<Letter>> {
        f.clone().into()
    }

    #[test]
    fn binary_formation_enumeration() {
        assert_eq!(binary_formations(3, 3).count(), 4);
        assert_eq!(
            rows(&binary_formations(2, 1).next().unwrap()),
            vec![vec![0, 1]]
        );
        let two: Vec<_> = binary_formations(3, 2).map(|f| rows(&f)).collect();
        assert_eq!(
            two,
            vec![
                vec![vec![0, 1, 2], vec![0, 1, 2]],
                vec![vec![0, 1, 2], vec![2, 1, 0]]
            ]
        );
        let patterns: Vec<_> = binary_formations(2, 4)
            .map(|f| f.sign_pattern().unwrap())
            .collect();
        let mut sorted = patterns.clone();
        sorted.sort();
        assert_eq!(patterns, sorted);
    }

    #[test]
    fn formation_containment_examples() {
        let zyx = Formation::try_from(vec![vec![0, 1, 2], vec![2, 1, 0], vec![2, 1, 0]]).unwrap();
        assert!(formation_contains(&zyx, &w("abab")));
        // xyzzyxxyz avoids acabcb
        let xyzzyxxyz =
            Formation::try_from(vec![vec![0, 1, 2], vec![2, 1, 0], vec![0, 1, 2]]).unwrap();
        assert!(!formation_contains(&xyzzyxxyz, &w("acabcb")));
        let up3 = binary_formations(3, 3).next().unwrap();
        assert!(formation_contains(&up3, &w("a")));
        assert!(formation_contains(&up3, &w("abcacb")));
    }

    #[test]
    fn small_widths() {
        assert_eq!(fw(&w("abcabc"), 16), FwOutcome::Width(3));
        assert_eq!(fw(&w("abccba"), 16), FwOutcome::Width(4));
        assert_eq!(fw(&w("aba"), 16), FwOutcome::Width(2));
        assert_eq!(fw(&w("a"), 16), FwOutcome::Width(1));
        assert_eq!(fw(&w("aaa"), 16), FwOutcome::Width(3));
        assert_eq!(fw(&w("ababab"), 3), FwOutcome::Exhausted(3));
    }

    #[test]
    fn witnesses() {
        let f = fw_witness(&w("abccba"), 3).unwrap().unwrap();
        assert_eq!(f.sign_pattern().unwrap().flags(), &[false, false, false]);
        assert!(fw_witness(&w("abab"), 3).unwrap().is_none());
        assert!(fw_witness(&w("ab"), 1).unwrap().is_none());
        assert!(fw_witness(&w("ab"), 0).is_err());
    }

    #[test]
    fn formation_length_small_cases() {
        assert_eq!(fl_bounded(&w("ab"), 4), Ok(2));
        assert_eq!(fl_bounded(&w("aba"), 4), Ok(2));
        assert_eq!(fl_bounded(&w("abab"), 4), Ok(2));
        assert_eq!(fl_bounded(&w("abc"), 2), Err(Error::Exhausted { limit: 2 }));
        let tight = FlConfig {
            r_max: 5,
            s_max: 16,
            budget: 10,
        };
        assert!(matches!(
            fl_with(&w("abcabc"), &tight),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(3, 2), BigUint::from(5u32));
        assert_eq!(gamma(7, 1), BigUint::from(7u32));
        for s in 1..10 {
            assert_eq!(gamma(2, s), BigUint::from(2u32));
        }
        assert_eq!(gamma(3, 3), BigUint::from(17u32));
        assert_eq!(fl_upper_bound(&w("ab")).unwrap(), BigUint::from(2u32));
        assert_eq!(fl_upper_bound(&w("abab")).unwrap(), BigUint::from(2u32));
        assert_eq!(fl_upper_bound(&w("abcabc")).unwrap(), BigUint::from(17u32));
    }

    #[test]
    fn k_swap_examples() {
        let id = Permutation::identity(16);
        let one = k_swap(&id, 1, 3, 3).unwrap();
        assert_eq!(
            one.as_slice(),
            &[12, 13, 14, 15, 8, 9, 10, 11, 4, 5, 6, 7, 0, 1, 2, 3]
        );
        // k = 2 reverses pairs within each 4-block, then swaps the halves.
        let two = k_swap(&one, 2, 3, 3).unwrap();
        assert_eq!(
            two.as_slice(),
            &[6, 7, 4, 5, 2, 3, 0, 1, 14, 15, 12, 13, 10, 11, 8, 9]
        );
        let id1 = Permutation::identity(1);
        assert_eq!(k_swap(&id1, 2, 2, 4).unwrap(), id1);
        assert!(k_swap(&Permutation::identity(5), 1, 3, 3).is_err());
        assert!(k_swap(&id, 3, 3, 3).is_err());
    }

    #[test]
    fn es_avoiders() {
        let f = build_es_avoider(3, 2).unwrap();
        assert_eq!(rows(&f), vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]]);
        assert!(avoids_all_binary(&f.to_word(), 3, 2));
        let g = build_es_avoider(2, 3).unwrap();
        assert_eq!(g.r(), 1);
        assert_eq!(g.s(), 3);
        assert!(avoids_all_binary(&g.to_word(), 2, 3));
        assert!(matches!(
            build_es_avoider_within(3, 4, 100),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn two_letter_avoiders() {
        assert_eq!(
            rows(&build_two_letter_avoider(&w("xy")).unwrap()),
            vec![vec![0, 1]]
        );
        let f = build_two_letter_avoider(&w("xyxy")).unwrap();
        assert_eq!(rows(&f), vec![vec![0, 1], vec![1, 0], vec![0, 1]]);
        assert!(!formation_contains(&f.prefix(2), &w("xyxy")));
        let g = build_two_letter_avoider(&w("xyy")).unwrap();
        assert_eq!(rows(&g), vec![vec![0, 1], vec![0, 1]]);
        assert!(!formation_contains(&g.prefix(1), &w("xyy")));
        assert!(build_two_letter_avoider(&w("xxy")).is_err());
        assert!(build_two_letter_avoider(&w("xyz")).is_err());
    }

    #[test]
    fn alt_avoiders() {
        let t1 = build_alt_avoider(3, 1).unwrap();
        assert_eq!(t1.letters(), up(3, 3).letters());
        let t2 = build_alt_avoider(2, 2).unwrap();
        assert_eq!(
            rows(&t2),
            vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]]
        );
        let t3 = build_alt_avoider(3, 3).unwrap();
        assert_eq!(t3.s(), 8);
        assert_eq!(
            t3.sign_pattern().unwrap().flags(),
            &[false, false, false, true, true, false, false, false]
        );
        assert!(!formation_contains(&t3, &alt(3, 4)));
    }

    #[test]
    fn parallel_matches_sequential() {
        for s in ["abcacbacb", "abcdbadc", "abccba", "aabb"] {
            let par = fw_with(
                &w(s),
                &FwConfig {
                    s_max: 16,
                    parallel: true,
                },
            );
            assert_eq!(par, fw(&w(s), 16), "{s}");
        }
    }

    #[test]
    fn formation_json_is_list_of_rows() {
        let f = build_es_avoider(3, 2).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "[[0,1,2,3],[2,3,0,1]]");
        let back: Formation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Formation>("[[0,1],[0,0]]").is_err());
    }
}
