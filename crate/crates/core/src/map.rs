//! Partial isotone maps between posets.
//!
//! A [`MonotoneMap`] is defined on a subset `A` of its domain and is isotone
//! there by construction: building one that violates
//! `x <= y  =>  f(x) <= f(y)` on `A` fails with [`PosetError::NotIsotone`].
//! Total maps are the special case where `A` is everything.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::poset::{Poset, PosetDoc, PosetError};
use crate::set::ElementSet;

/// A map from a subset of one poset into another, isotone on its subset.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: Arc<Poset>,
    codomain: Arc<Poset>,
    defined_on: ElementSet,
    assignment: Vec<Option<usize>>,
}

/// Wire format: `{"domain": .., "codomain": .., "map": {"a": "y", ..}}`.
/// A poset slot is either an inline poset document or a path string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDoc {
    pub domain: PosetRef,
    pub codomain: PosetRef,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Path(String),
    Inline(PosetDoc),
}

impl MonotoneMap {
    /// Wraps an assignment vector, of the same length as the domain, with
    /// `None` off the defined subset. Fails when the defined part is not
    /// isotone.
    pub fn new(
        domain: Arc<Poset>,
        codomain: Arc<Poset>,
        assignment: Vec<Option<usize>>,
    ) -> Result<Self, PosetError> {
        assert_eq!(assignment.len(), domain.len(), "assignment length mismatch");
        let mut defined_on = ElementSet::empty(domain.len());
        for (i, v) in assignment.iter().enumerate() {
            if let Some(y) = *v {
                assert!(y < codomain.len(), "codomain index {y} out of range");
                defined_on.insert(i);
            }
        }
        let map = MonotoneMap {
            domain,
            codomain,
            defined_on,
            assignment,
        };
        if !map.is_isotone_on_defined() {
            return Err(PosetError::NotIsotone);
        }
        Ok(map)
    }

    /// A total map given by one codomain index per domain element.
    pub fn total(
        domain: Arc<Poset>,
        codomain: Arc<Poset>,
        values: Vec<usize>,
    ) -> Result<Self, PosetError> {
        Self::new(domain, codomain, values.into_iter().map(Some).collect())
    }

    /// Builds a map from label pairs, leaving unmentioned elements undefined.
    pub fn from_label_map(
        domain: Arc<Poset>,
        codomain: Arc<Poset>,
        pairs: &BTreeMap<String, String>,
    ) -> Result<Self, PosetError> {
        let mut assignment = vec![None; domain.len()];
        for (from, to) in pairs {
            let i = domain
                .index_of(from)
                .ok_or_else(|| PosetError::UnknownLabel(from.clone()))?;
            let y = codomain
                .index_of(to)
                .ok_or_else(|| PosetError::UnknownLabel(to.clone()))?;
            assignment[i] = Some(y);
        }
        Self::new(domain, codomain, assignment)
    }

    /// The identity on `subset`, viewed as a map into the induced subposet.
    pub fn identity_on(domain: Arc<Poset>, subset: &ElementSet) -> Result<Self, PosetError> {
        let (codomain, members) = domain.induced_with_map(subset)?;
        let mut assignment = vec![None; domain.len()];
        for (pos, &old) in members.iter().enumerate() {
            assignment[old] = Some(pos);
        }
        Self::new(domain, Arc::new(codomain), assignment)
    }

    pub fn domain(&self) -> &Poset {
        &self.domain
    }

    pub fn codomain(&self) -> &Poset {
        &self.codomain
    }

    pub fn domain_arc(&self) -> &Arc<Poset> {
        &self.domain
    }

    pub fn codomain_arc(&self) -> &Arc<Poset> {
        &self.codomain
    }

    /// The subset of the domain where the map is defined.
    pub fn defined_on(&self) -> &ElementSet {
        &self.defined_on
    }

    pub fn value(&self, i: usize) -> Option<usize> {
        self.assignment[i]
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn is_total(&self) -> bool {
        self.defined_on.len() == self.domain.len()
    }

    /// Image of the defined members of `s`, as a codomain subset.
    pub fn image_of(&self, s: &ElementSet) -> ElementSet {
        let mut img = ElementSet::empty(self.codomain.len());
        for i in s.iter() {
            if let Some(y) = self.assignment[i] {
                img.insert(y);
            }
        }
        img
    }

    pub(crate) fn is_isotone_on_defined(&self) -> bool {
        let members = self.defined_on.to_vec();
        for &i in &members {
            for &j in &members {
                if self.domain.leq(i, j) {
                    let (fi, fj) = (self.assignment[i].unwrap(), self.assignment[j].unwrap());
                    if !self.codomain.leq(fi, fj) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when `self` is total, shares both posets with `base`, and agrees
    /// with `base` everywhere `base` is defined.
    pub fn extends(&self, base: &MonotoneMap) -> bool {
        self.is_total()
            && self.domain == base.domain
            && self.codomain == base.codomain
            && base
                .defined_on
                .iter()
                .all(|i| self.assignment[i] == base.assignment[i])
    }

    /// Label pairs for the defined part, in domain index order.
    pub fn to_label_pairs(&self) -> Vec<(String, String)> {
        self.defined_on
            .iter()
            .map(|i| {
                (
                    self.domain.label(i).to_string(),
                    self.codomain.label(self.assignment[i].unwrap()).to_string(),
                )
            })
            .collect()
    }

    /// Same, as a sorted label map ready for serialization.
    pub fn to_label_map(&self) -> BTreeMap<String, String> {
        self.to_label_pairs().into_iter().collect()
    }
}

impl std::fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<String> = self
            .to_label_pairs()
            .into_iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect();
        write!(f, "MonotoneMap({})", pairs.join(", "))
    }
}
