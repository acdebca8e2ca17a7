//! Finite partially ordered sets.
//!
//! A [`Poset`] is immutable once built: it stores its labels, the full
//! reflexive-transitive order relation as one bitset row per element (in both
//! directions), and the cover relation (the transitive reduction). Keeping the
//! closed relation around makes every comparability query a single bit probe,
//! which is what the search and enumeration code leans on.
//!
//! Orders are built from cover pairs with [`Poset::from_covers`]; the input
//! pairs may be redundant (any relation pairs work, the closure is recomputed)
//! but must not create a cycle.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cycle detected: `{0}` and `{1}` order each other")]
    CycleDetected(String, String),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("map is not isotone on its defined subset")]
    NotIsotone,
}

/// An immutable finite poset over labelled elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    /// `up[i]` is the principal up-set `{j : i <= j}` (contains `i`).
    up: Vec<ElementSet>,
    /// `down[i]` is the principal down-set `{j : j <= i}` (contains `i`).
    down: Vec<ElementSet>,
    /// Transitive reduction, as `(lower, upper)` index pairs sorted ascending.
    covers: Vec<(usize, usize)>,
}

/// Wire format: `{"elements": [...], "covers": [["a","b"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds a poset from element labels and ordered pairs, closing the
    /// relation under reflexivity and transitivity. The pairs do not have to
    /// form a reduced cover relation; the reduction is recomputed.
    pub fn from_covers<L, P, Q>(labels: L, pairs: P) -> Result<Poset, PosetError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        P: IntoIterator<Item = (Q, Q)>,
        Q: AsRef<str>,
    {
        let elements: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = elements.len();
        for (i, l) in elements.iter().enumerate() {
            if elements[..i].contains(l) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let index_of = |l: &str| -> Result<usize, PosetError> {
            elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| PosetError::UnknownLabel(l.to_string()))
        };
        let mut up: Vec<ElementSet> = (0..n).map(|i| ElementSet::singleton(n, i)).collect();
        for (a, b) in pairs {
            let i = index_of(a.as_ref())?;
            let j = index_of(b.as_ref())?;
            up[i].insert(j);
        }
        // Warshall on bitset rows.
        for k in 0..n {
            for i in 0..n {
                if i != k && up[i].contains(k) {
                    let row_k = up[k].clone();
                    up[i].union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if up[i].contains(j) && up[j].contains(i) {
                    return Err(PosetError::CycleDetected(
                        elements[i].clone(),
                        elements[j].clone(),
                    ));
                }
            }
        }
        Ok(Self::from_up_rows(elements, up))
    }

    /// Assembles a poset from already-closed rows. The rows must satisfy the
    /// order axioms; this is checked in debug builds only.
    pub(crate) fn from_up_rows(elements: Vec<String>, up: Vec<ElementSet>) -> Poset {
        let n = elements.len();
        debug_assert!(up.len() == n);
        debug_assert!(axioms_hold(&up), "rows violate the order axioms");
        let mut down: Vec<ElementSet> = (0..n).map(|_| ElementSet::empty(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        let covers = covers_from_rows(&up, &down);
        Poset {
            elements,
            up,
            down,
            covers,
        }
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Poset, PosetError> {
        Poset::from_covers(
            doc.elements.iter().cloned(),
            doc.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc {
            elements: self.elements.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    /// `i <= j` in this poset.
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Principal up-set `{j : i <= j}`, including `i` itself.
    pub fn up_set(&self, i: usize) -> &ElementSet {
        &self.up[i]
    }

    /// Principal down-set `{j : j <= i}`, including `i` itself.
    pub fn down_set(&self, i: usize) -> &ElementSet {
        &self.down[i]
    }

    /// Cover pairs `(lower, upper)` of the transitive reduction.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Majorants of `s`: everything lying above every member of `s`. The
    /// empty set has every element as a majorant.
    pub fn up_cone(&self, s: &ElementSet) -> ElementSet {
        assert_eq!(s.universe(), self.len());
        let mut cone = self.full_set();
        for a in s.iter() {
            cone.intersect_with(&self.up[a]);
        }
        cone
    }

    /// Minorants of `s`: everything lying below every member of `s`.
    pub fn down_cone(&self, s: &ElementSet) -> ElementSet {
        assert_eq!(s.universe(), self.len());
        let mut cone = self.full_set();
        for a in s.iter() {
            cone.intersect_with(&self.down[a]);
        }
        cone
    }

    /// The member of `s` below all of `s`, if one exists.
    pub fn least_of(&self, s: &ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset_of(&self.up[m]))
    }

    /// The member of `s` above all of `s`, if one exists.
    pub fn greatest_of(&self, s: &ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset_of(&self.down[m]))
    }

    /// Members of `s` with nothing of `s` strictly below them.
    pub fn minimal_of(&self, s: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for m in s.iter() {
            if self.down[m].intersection(s).len() == 1 {
                out.insert(m);
            }
        }
        out
    }

    /// Members of `s` with nothing of `s` strictly above them.
    pub fn maximal_of(&self, s: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for m in s.iter() {
            if self.up[m].intersection(s).len() == 1 {
                out.insert(m);
            }
        }
        out
    }

    /// Least element of the whole poset, if any.
    pub fn least(&self) -> Option<usize> {
        self.least_of(&self.full_set())
    }

    /// Greatest element of the whole poset, if any.
    pub fn greatest(&self) -> Option<usize> {
        self.greatest_of(&self.full_set())
    }

    /// Least upper bound of `s`, when the majorant cone has a least member.
    /// For the empty set this is the least element of the poset, matching the
    /// convention that an empty supremum is the bottom when one exists;
    /// absence is a value, never an error.
    pub fn sup_of(&self, s: &ElementSet) -> Option<usize> {
        self.least_of(&self.up_cone(s))
    }

    /// Greatest lower bound of `s`; dual of [`Poset::sup_of`].
    pub fn inf_of(&self, s: &ElementSet) -> Option<usize> {
        self.greatest_of(&self.down_cone(s))
    }

    /// Same elements with the order reversed. An involution.
    pub fn dual(&self) -> Poset {
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(i, j)| (j, i)).collect();
        covers.sort_unstable();
        Poset {
            elements: self.elements.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers,
        }
    }

    /// Subposet on a nonempty subset, keeping labels and relative order.
    pub fn induced(&self, s: &ElementSet) -> Result<Poset, PosetError> {
        self.induced_with_map(s).map(|(p, _)| p)
    }

    /// Like [`Poset::induced`], also returning the member indices of `s` in
    /// ascending order, i.e. the map from new indices back to old ones.
    pub fn induced_with_map(&self, s: &ElementSet) -> Result<(Poset, Vec<usize>), PosetError> {
        assert_eq!(s.universe(), self.len());
        if s.is_empty() {
            return Err(PosetError::EmptySubset);
        }
        let members = s.to_vec();
        let m = members.len();
        let labels = members.iter().map(|&i| self.elements[i].clone()).collect();
        let mut rows: Vec<ElementSet> = (0..m).map(|_| ElementSet::empty(m)).collect();
        for (ni, &oi) in members.iter().enumerate() {
            for (nj, &oj) in members.iter().enumerate() {
                if self.leq(oi, oj) {
                    rows[ni].insert(nj);
                }
            }
        }
        Ok((Poset::from_up_rows(labels, rows), members))
    }

    /// Disjoint union with no relations across the summands.
    pub fn cardinal_sum(&self, other: &Poset) -> Poset {
        self.sum_impl(other, false)
    }

    /// Disjoint union with every element of `self` put below every element
    /// of `other`.
    pub fn lex_sum(&self, other: &Poset) -> Poset {
        self.sum_impl(other, true)
    }

    fn sum_impl(&self, other: &Poset, cross: bool) -> Poset {
        let n = self.len();
        let m = other.len();
        let mut labels = self.elements.clone();
        for l in &other.elements {
            labels.push(fresh_label(&labels, l));
        }
        let mut rows: Vec<ElementSet> = Vec::with_capacity(n + m);
        for i in 0..n {
            let mut row = ElementSet::empty(n + m);
            for j in self.up[i].iter() {
                row.insert(j);
            }
            if cross {
                for j in 0..m {
                    row.insert(n + j);
                }
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = ElementSet::empty(n + m);
            for j in other.up[i].iter() {
                row.insert(n + j);
            }
            rows.push(row);
        }
        Poset::from_up_rows(labels, rows)
    }

    /// The powerset lattice of this poset's ground set ordered by inclusion,
    /// together with the order embedding sending each element to its
    /// principal down-set. The map preserves and reflects order.
    ///
    /// The target has `2^n` elements, so `n` is bounded by `cap`.
    pub fn downset_embedding(&self, cap: usize) -> Result<(Poset, Vec<usize>), PosetError> {
        let n = self.len();
        if n > cap {
            return Err(PosetError::SizeCapExceeded { size: n, cap });
        }
        assert!(n < usize::BITS as usize - 1, "powerset would not fit");
        let size = 1usize << n;
        let labels: Vec<String> = (0..size).map(|m| self.subset_label(m)).collect();
        let mut rows: Vec<ElementSet> = (0..size).map(|_| ElementSet::empty(size)).collect();
        for (sub, row) in rows.iter_mut().enumerate() {
            for sup in sub..size {
                if sub & !sup == 0 {
                    row.insert(sup);
                }
            }
        }
        let image = (0..n)
            .map(|x| self.down[x].iter().fold(0usize, |acc, j| acc | (1 << j)))
            .collect();
        Ok((Poset::from_up_rows(labels, rows), image))
    }

    fn subset_label(&self, mask: usize) -> String {
        let names: Vec<&str> = (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.elements[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Elements covered by `x` (directly below it).
    pub fn immediate_predecessors(&self, x: usize) -> ElementSet {
        let mut s = ElementSet::empty(self.len());
        for &(i, j) in &self.covers {
            if j == x {
                s.insert(i);
            }
        }
        s
    }

    /// Elements covering `x` (directly above it).
    pub fn immediate_successors(&self, x: usize) -> ElementSet {
        let mut s = ElementSet::empty(self.len());
        for &(i, j) in &self.covers {
            if i == x {
                s.insert(j);
            }
        }
        s
    }

    /// A topological order of the elements, deterministic: among the
    /// currently available elements the smallest index goes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = ElementSet::empty(n);
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&i| {
                    !placed.contains(i) && {
                        let mut below = self.down[i].clone();
                        below.remove(i);
                        below.is_subset_of(&placed)
                    }
                })
                .expect("acyclic by construction");
            placed.insert(next);
            order.push(next);
        }
        order
    }

    /// True when every pair of distinct members of `s` is incomparable.
    pub fn is_antichain(&self, s: &ElementSet) -> bool {
        let members = s.to_vec();
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                if self.comparable(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Labels of the members of `s`, ascending by index.
    pub fn set_labels(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|i| self.elements[i].clone()).collect()
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .covers
            .iter()
            .map(|&(i, j)| format!("{}<{}", self.elements[i], self.elements[j]))
            .collect();
        write!(f, "Poset({:?}; {})", self.elements, pairs.join(", "))
    }
}

fn fresh_label(taken: &[String], base: &str) -> String {
    let mut candidate = base.to_string();
    while taken.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

fn axioms_hold(up: &[ElementSet]) -> bool {
    let n = up.len();
    for i in 0..n {
        if up[i].universe() != n || !up[i].contains(i) {
            return false;
        }
        for j in up[i].iter() {
            if i != j && up[j].contains(i) {
                return false;
            }
            if !up[j].is_subset_of(&up[i]) {
                return false;
            }
        }
    }
    true
}

fn covers_from_rows(up: &[ElementSet], down: &[ElementSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, row) in up.iter().enumerate() {
        for j in row.iter() {
            if i == j {
                continue;
            }
            // i < j is a cover when nothing sits strictly between.
            let mut between = row.intersection(&down[j]);
            between.remove(i);
            between.remove(j);
            if between.is_empty() {
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();
    covers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain_closure_is_inferred() {
        let p = Poset::from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let (a, b, c) = (0, 1, 2);
        assert!(p.leq(a, c), "transitivity must force a<=c");
        assert!(p.leq(a, a) && p.leq(b, b));
        assert_eq!(p.covers(), &[(a, b), (b, c)]);
    }

    #[test]
    fn antichain_has_identity_order_only() {
        let p = Poset::from_covers(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(p.leq(0, 0) && p.leq(1, 1));
        assert!(!p.leq(0, 1) && !p.leq(1, 0));
        assert!(p.covers().is_empty());
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::from_covers(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(
            err,
            PosetError::CycleDetected("a".to_string(), "b".to_string())
        );
    }

    #[test]
    fn bad_labels_are_rejected() {
        assert_eq!(
            Poset::from_covers(["a", "a"], Vec::<(&str, &str)>::new()).unwrap_err(),
            PosetError::DuplicateLabel("a".into())
        );
        assert_eq!(
            Poset::from_covers(["a"], [("a", "z")]).unwrap_err(),
            PosetError::UnknownLabel("z".into())
        );
    }

    #[test]
    fn redundant_pairs_reduce_to_covers() {
        let p = Poset::from_covers(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn cones_on_the_diamond() {
        let d = fixtures::diamond();
        let (bot, a, b, top) = (0, 1, 2, 3);
        let mid = ElementSet::from_indices(4, [a, b]);
        assert_eq!(d.down_cone(&mid).to_vec(), vec![bot]);
        assert_eq!(d.up_cone(&mid).to_vec(), vec![top]);
        assert_eq!(d.down_cone(&ElementSet::empty(4)).len(), 4);
    }

    #[test]
    fn cones_on_chains_and_antichains() {
        let c3 = fixtures::chain(3);
        assert_eq!(c3.down_cone(&ElementSet::singleton(3, 2)).len(), 3);
        assert_eq!(c3.up_cone(&ElementSet::singleton(3, 0)).len(), 3);
        let a2 = fixtures::antichain(2);
        assert!(a2.up_cone(&ElementSet::full(2)).is_empty());
    }

    #[test]
    fn sup_and_inf_on_the_diamond() {
        let d = fixtures::diamond();
        let mid = ElementSet::from_indices(4, [1, 2]);
        assert_eq!(d.sup_of(&mid), Some(3));
        assert_eq!(d.inf_of(&mid), Some(0));
        // Empty bounds follow the bottom/top convention.
        assert_eq!(d.sup_of(&ElementSet::empty(4)), Some(0));
        assert_eq!(d.inf_of(&ElementSet::empty(4)), Some(3));
    }

    #[test]
    fn sup_absent_on_antichain() {
        let a2 = fixtures::antichain(2);
        assert_eq!(a2.sup_of(&ElementSet::full(2)), None);
        assert_eq!(a2.inf_of(&ElementSet::singleton(2, 0)), Some(0));
        assert_eq!(a2.sup_of(&ElementSet::empty(2)), None);
    }

    #[test]
    fn global_bounds() {
        let c3 = fixtures::chain(3);
        assert_eq!(c3.least(), Some(0));
        assert_eq!(c3.greatest(), Some(2));
        let a2 = fixtures::antichain(2);
        assert_eq!(a2.least(), None);
        assert_eq!(a2.greatest(), None);
        let v = fixtures::vee();
        assert_eq!(v.least(), Some(0));
        assert_eq!(v.greatest(), None);
    }

    #[test]
    fn dual_is_an_involution() {
        for p in [
            fixtures::chain(3),
            fixtures::antichain(2),
            fixtures::vee(),
            fixtures::diamond(),
        ] {
            let dd = p.dual().dual();
            assert_eq!(dd, p);
        }
        let c3 = fixtures::chain(3);
        let d = c3.dual();
        assert!(d.leq(2, 0) && !d.leq(0, 2));
        assert_eq!(fixtures::antichain(2).dual(), fixtures::antichain(2));
        // The dual of a vee has two elements below one.
        let lambda = fixtures::vee().dual();
        assert_eq!(lambda.greatest(), Some(0));
    }

    #[test]
    fn induced_subposets() {
        let d = fixtures::diamond();
        let ab = d.induced(&ElementSet::from_indices(4, [1, 2])).unwrap();
        assert!(!ab.comparable(0, 1));
        let c3 = fixtures::chain(3);
        let ac = c3.induced(&ElementSet::from_indices(3, [0, 2])).unwrap();
        assert!(ac.lt(0, 1));
        let through = d
            .induced(&ElementSet::from_indices(4, [0, 1, 3]))
            .unwrap();
        assert!(through.lt(0, 1) && through.lt(1, 2) && through.lt(0, 2));
        assert_eq!(
            d.induced(&ElementSet::empty(4)).unwrap_err(),
            PosetError::EmptySubset
        );
    }

    #[test]
    fn sums() {
        let one = fixtures::chain(1);
        let sum = one.cardinal_sum(&one);
        assert_eq!(sum.len(), 2);
        assert!(!sum.comparable(0, 1));

        let two = one.lex_sum(&one);
        assert!(two.lt(0, 1));

        let bowtie = fixtures::antichain(2).lex_sum(&fixtures::antichain(2));
        assert_eq!(bowtie.len(), 4);
        for lo in 0..2 {
            for hi in 2..4 {
                assert!(bowtie.lt(lo, hi));
            }
        }
        assert!(!bowtie.comparable(0, 1) && !bowtie.comparable(2, 3));
    }

    #[test]
    fn sum_relabels_collisions() {
        let a = fixtures::antichain(2);
        let s = a.cardinal_sum(&a);
        assert_eq!(s.labels(), &["x0", "x1", "x0'", "x1'"]);
    }

    #[test]
    fn downset_embedding_small_cases() {
        let a2 = fixtures::antichain(2);
        let (power, image) = a2.downset_embedding(10).unwrap();
        assert_eq!(power.len(), 4);
        // x0 -> {x0} (mask 1), x1 -> {x1} (mask 2); the images are incomparable.
        assert_eq!(image, vec![1, 2]);
        assert!(!power.comparable(image[0], image[1]));

        let c2 = fixtures::chain(2);
        let (power, image) = c2.downset_embedding(10).unwrap();
        assert_eq!(image, vec![0b01, 0b11]);
        assert!(power.lt(image[0], image[1]));

        let one = fixtures::chain(1);
        let (power, image) = one.downset_embedding(10).unwrap();
        assert_eq!(power.len(), 2);
        assert_eq!(power.label(image[0]), "{x0}");

        assert_eq!(
            fixtures::chain(11).downset_embedding(10).unwrap_err(),
            PosetError::SizeCapExceeded { size: 11, cap: 10 }
        );
    }

    #[test]
    fn immediate_neighbours() {
        let c3 = fixtures::chain(3);
        assert_eq!(c3.immediate_predecessors(1).to_vec(), vec![0]);
        assert_eq!(c3.immediate_successors(1).to_vec(), vec![2]);
        let d = fixtures::diamond();
        assert_eq!(d.immediate_predecessors(3).to_vec(), vec![1, 2]);
        let a2 = fixtures::antichain(2);
        assert!(a2.immediate_predecessors(0).is_empty());
        assert!(a2.immediate_successors(0).is_empty());
    }

    #[test]
    fn linear_extension_is_deterministic() {
        assert_eq!(fixtures::chain(3).linear_extension(), vec![0, 1, 2]);
        assert_eq!(fixtures::antichain(2).linear_extension(), vec![0, 1]);
        assert_eq!(fixtures::diamond().linear_extension(), vec![0, 1, 2, 3]);
        let rev = Poset::from_covers(["a", "b"], [("b", "a")]).unwrap();
        assert_eq!(rev.linear_extension(), vec![1, 0]);
    }

    #[test]
    fn doc_roundtrip() {
        let d = fixtures::diamond();
        let doc = d.to_doc();
        let back = Poset::from_doc(&doc).unwrap();
        assert_eq!(back, d);
        let json = serde_json::to_string(&doc).unwrap();
        let doc2: PosetDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(doc2, doc);
    }
}
