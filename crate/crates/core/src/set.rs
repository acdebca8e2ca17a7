//! Dense bitsets over a poset's index range.
//!
//! An [`ElementSet`] picks out a subset of the elements of a single poset.
//! It stores the size of that poset (the *universe*) so that operations can
//! reject sets taken from a differently sized structure. All algorithms in
//! this crate work on dense indices, so a handful of word operations covers
//! every set manipulation they need.

use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of the elements `0..universe` of some poset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

impl ElementSet {
    /// The empty subset of a universe with `universe` elements.
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; word_count(universe)],
        }
    }

    /// The full subset `{0, 1, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.fill();
        s
    }

    /// The one-element subset `{index}`.
    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(index);
        s
    }

    /// Collects indices from an iterator.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `universe` bits of a mask. Handy for
    /// exhaustive subset sweeps at oracle scale.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD_BITS, "mask constructor is single-word");
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == WORD_BITS {
                u64::MAX
            } else {
                (1u64 << universe) - 1
            };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, index: usize) -> bool {
        debug_assert!(index < self.universe);
        self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe, "index {index} out of range");
        self.words[index / WORD_BITS] |= 1 << (index % WORD_BITS);
    }

    pub fn remove(&mut self, index: usize) {
        assert!(index < self.universe, "index {index} out of range");
        self.words[index / WORD_BITS] &= !(1 << (index % WORD_BITS));
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD_BITS + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "sets belong to different universes"
        );
    }

    pub fn fill(&mut self) {
        for w in &mut self.words {
            *w = u64::MAX;
        }
        self.trim();
    }

    pub fn clear(&mut self) {
        for w in &mut self.words {
            *w = 0;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in &mut s.words {
            *w = !*w;
        }
        s.trim();
        s
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn trim(&mut self) {
        let tail = self.universe % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        if self.universe == 0 {
            self.words.clear();
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
