use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of state indices over a fixed universe `0..universe`.
///
/// Stored as a bitset; models with up to 128 states stay inline. Sets are
/// only comparable when built over the same universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

/// The node of the uniform-plan search: the states the agent may be in.
pub type BeliefState = StateSet;

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            words: SmallVec::from_elem(0, universe.div_ceil(WORD)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = StateSet::empty(universe);
        for w in set.words.iter_mut() {
            *w = !0;
        }
        set.trim();
        set
    }

    pub fn singleton(universe: usize, state: usize) -> Self {
        let mut set = StateSet::empty(universe);
        set.insert(state);
        set
    }

    pub fn from_indices(universe: usize, states: impl IntoIterator<Item = usize>) -> Self {
        let mut set = StateSet::empty(universe);
        for s in states {
            set.insert(s);
        }
        set
    }

    /// Builds a set from a bitmask; states beyond the universe or bit 127
    /// are dropped.
    pub(crate) fn from_mask(universe: usize, mask: u128) -> Self {
        let mut set = StateSet::empty(universe);
        for (i, w) in set.words.iter_mut().take(2).enumerate() {
            *w = (mask >> (i * WORD)) as u64;
        }
        set.trim();
        set
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, state: usize) {
        assert!(state < self.universe, "state {state} outside universe {}", self.universe);
        self.words[state / WORD] |= 1 << (state % WORD);
    }

    pub fn contains(&self, state: usize) -> bool {
        state < self.universe && self.words[state / WORD] & (1 << (state % WORD)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == StateSet::full(self.universe)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn complement(&self) -> StateSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    /// The first word of the bitset; exact for universes of at most 64 states.
    pub(crate) fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + bit)
            })
        })
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
