//! The family of all isotone total extensions of a partial map, ordered
//! pointwise: `g <= h` when `g(x) <= h(x)` in the codomain for every `x`.
//!
//! Members are stored as total assignment vectors in lexicographic order,
//! which fixes a canonical member numbering. The pointwise order is exposed
//! through [`ExtensionFamily::leq`] and can be materialized as a [`Poset`]
//! for families of reasonable size.

use std::collections::BTreeMap;

use crate::map::MonotoneMap;
use crate::poset::{Poset, PosetError};
use crate::set::ElementSet;

#[derive(Clone, Debug)]
pub struct ExtensionFamily {
    base: MonotoneMap,
    extensions: Vec<Vec<usize>>,
}

impl ExtensionFamily {
    pub(crate) fn new(base: MonotoneMap, mut extensions: Vec<Vec<usize>>) -> Self {
        extensions.sort_unstable();
        ExtensionFamily { base, extensions }
    }

    pub fn base(&self) -> &MonotoneMap {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    /// Members in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.extensions.iter().map(|v| v.as_slice())
    }

    pub fn member(&self, i: usize) -> &[usize] {
        &self.extensions[i]
    }

    pub fn member_map(&self, i: usize) -> MonotoneMap {
        MonotoneMap::total(
            self.base.domain_arc().clone(),
            self.base.codomain_arc().clone(),
            self.extensions[i].clone(),
        )
        .expect("family members are isotone")
    }

    pub fn member_label_map(&self, i: usize) -> BTreeMap<String, String> {
        self.member_map(i).to_label_map()
    }

    /// Pointwise comparison of members `i` and `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let y = self.base.codomain();
        self.extensions[i]
            .iter()
            .zip(&self.extensions[j])
            .all(|(&a, &b)| y.leq(a, b))
    }

    /// Index of the member lying pointwise below every member, if one exists.
    pub fn bottom(&self) -> Option<usize> {
        self.extreme(|i, j| self.leq(i, j))
    }

    /// Index of the member lying pointwise above every member, if one exists.
    pub fn top(&self) -> Option<usize> {
        self.extreme(|i, j| self.leq(j, i))
    }

    fn extreme(&self, below: impl Fn(usize, usize) -> bool) -> Option<usize> {
        let mut cand = 0;
        if self.extensions.is_empty() {
            return None;
        }
        for k in 1..self.extensions.len() {
            if below(k, cand) {
                cand = k;
            }
        }
        (0..self.extensions.len())
            .all(|k| below(cand, k))
            .then_some(cand)
    }

    pub fn bottom_map(&self) -> Option<MonotoneMap> {
        self.bottom().map(|i| self.member_map(i))
    }

    pub fn top_map(&self) -> Option<MonotoneMap> {
        self.top().map(|i| self.member_map(i))
    }

    /// The family as a poset under the pointwise order, with members named
    /// `g0, g1, ..` in canonical order. Guarded by `cap` since the order
    /// matrix is quadratic in the family size.
    pub fn family_poset(&self, cap: usize) -> Result<Poset, PosetError> {
        let m = self.len();
        if m > cap {
            return Err(PosetError::SizeCapExceeded { size: m, cap });
        }
        let labels: Vec<String> = (0..m).map(|i| format!("g{i}")).collect();
        let mut rows: Vec<ElementSet> = (0..m).map(|_| ElementSet::empty(m)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..m {
                if self.leq(i, j) {
                    row.insert(j);
                }
            }
        }
        Ok(Poset::from_up_rows(labels, rows))
    }
}
