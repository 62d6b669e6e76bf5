//! Incremental containment: feed a text one letter at a time and learn as
//! soon as the pattern occurs.
//!
//! A state is a partial injective renaming of the pattern's first letters
//! together with how much of the pattern it has matched. For a fixed
//! renaming only the longest matched prefix matters, so states are keyed by
//! the renaming alone.

use std::collections::HashMap;

use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Vec<Letter>,
    states: HashMap<Vec<Letter>, usize>,
    found: bool,
}

impl Matcher {
    pub fn new(pattern: &Word) -> Self {
        let pattern = pattern.canonical().letters().to_vec();
        let found = pattern.is_empty();
        let mut states = HashMap::new();
        states.insert(Vec::new(), 0);
        Matcher {
            pattern,
            states,
            found,
        }
    }

    pub fn found(&self) -> bool {
        self.found
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn push(&mut self, x: Letter) -> bool {
        if self.found {
            return true;
        }
        let mut updates = Vec::new();
        for (renaming, &matched) in &self.states {
            let a = self.pattern[matched] as usize;
            if a < renaming.len() {
                if renaming[a] == x {
                    updates.push((renaming.clone(), matched + 1));
                }
            } else if !renaming.contains(&x) {
                let mut extended = renaming.clone();
                extended.push(x);
                updates.push((extended, matched + 1));
            }
        }
        for (renaming, matched) in updates {
            if matched == self.pattern.len() {
                self.found = true;
                return true;
            }
            let slot = self.states.entry(renaming).or_insert(0);
            *slot = (*slot).max(matched);
        }
        false
    }

    pub fn extend<I: IntoIterator<Item = Letter>>(&mut self, letters: I) -> bool {
        for x in letters {
            if self.push(x) {
                return true;
            }
        }
        self.found
    }
}
