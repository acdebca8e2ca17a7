//! Order-class detection with constructive witnesses.
//!
//! The classes form a hierarchy on finite posets:
//!
//! * chain ⊂ lattice = complete lattice = quasilattice
//! * lattice ⊂ local complete lattice = local quasilattice
//!
//! Finiteness collapses several distinctions that matter for infinite
//! orders: a finite lattice is automatically complete, a finite quasilattice
//! is a lattice, and (established here by exhaustive search, see
//! [`is_local_quasilattice`]) the local variants coincide as well. Every
//! predicate reports a witness on failure so a caller can see *why* a poset
//! misses a class.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("poset must be nonempty")]
    EmptyPoset,
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
}

/// Why a poset fails to be a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeFailure {
    NoSup(usize, usize),
    NoInf(usize, usize),
    NoLeast,
    NoGreatest,
}

/// A pair of antichains `lower <= upper` (every member of `lower` below
/// every member of `upper`) admitting no element between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPair {
    pub lower: ElementSet,
    pub upper: ElementSet,
}

/// An interval `[lo, hi]` that fails to be a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFailure {
    pub lo: usize,
    pub hi: usize,
    pub inner: LatticeFailure,
}

/// Label-level witness payloads for serialized reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NoSup { pair: (String, String) },
    NoInf { pair: (String, String) },
    NoLeast,
    NoGreatest,
    NoBetween { lower: Vec<String>, upper: Vec<String> },
    IntervalNotLattice { interval: (String, String), inner: Box<Witness> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportWitnesses {
    pub lattice: Option<Witness>,
    pub quasilattice: Option<Witness>,
    pub local_complete_lattice: Option<Witness>,
    pub local_quasilattice: Option<Witness>,
}

/// Per-class flags plus witnesses, components and the chain numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub chain: bool,
    pub lattice: bool,
    pub complete_lattice: bool,
    pub quasilattice: bool,
    pub local_complete_lattice: bool,
    pub local_quasilattice: bool,
    pub z_embeddable: bool,
    pub witnesses: ReportWitnesses,
    pub components: Vec<Vec<String>>,
    pub z_embedding: Option<BTreeMap<String, i64>>,
}

/// Every pair of elements comparable.
pub fn is_chain(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|i| (i + 1..n).all(|j| p.comparable(i, j)))
}

/// First reason the poset is not a lattice, scanning index pairs in
/// ascending order, or `None` when every pair has a join and a meet and the
/// poset is bounded.
pub fn lattice_failure(p: &Poset) -> Result<Option<LatticeFailure>, ClassifyError> {
    if p.is_empty() {
        return Err(ClassifyError::EmptyPoset);
    }
    let n = p.len();
    let mut pair = ElementSet::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            pair.clear();
            pair.insert(i);
            pair.insert(j);
            if p.sup_of(&pair).is_none() {
                return Ok(Some(LatticeFailure::NoSup(i, j)));
            }
            if p.inf_of(&pair).is_none() {
                return Ok(Some(LatticeFailure::NoInf(i, j)));
            }
        }
    }
    // Pairwise joins fold to bounds on a finite poset; the explicit checks
    // keep the definition visible.
    if p.least().is_none() {
        return Ok(Some(LatticeFailure::NoLeast));
    }
    if p.greatest().is_none() {
        return Ok(Some(LatticeFailure::NoGreatest));
    }
    Ok(None)
}

pub fn is_lattice(p: &Poset) -> Result<bool, ClassifyError> {
    lattice_failure(p).map(|w| w.is_none())
}

/// On finite posets a lattice is automatically complete, so this is
/// `nonempty && lattice`. The empty poset is not a complete lattice.
pub fn is_complete_lattice(p: &Poset) -> bool {
    !p.is_empty() && is_lattice(p).unwrap_or(false)
}

/// Checks the defining property directly: every nonempty subset has a
/// supremum and an infimum. Exponential, hence capped at 15 elements.
pub fn is_complete_lattice_exhaustive(p: &Poset) -> Result<bool, ClassifyError> {
    const CAP: usize = 15;
    let n = p.len();
    if n > CAP {
        return Err(ClassifyError::SizeCapExceeded { size: n, cap: CAP });
    }
    if n == 0 {
        return Ok(false);
    }
    for mask in 1u64..(1 << n) {
        let s = ElementSet::from_mask(n, mask);
        if p.sup_of(&s).is_none() || p.inf_of(&s).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All antichains contained in `within` whose size stays below `bound`
/// (no limit when `bound` is `None`), in depth-first order starting from
/// the empty antichain.
fn antichains(p: &Poset, within: &ElementSet, bound: Option<usize>) -> Vec<ElementSet> {
    let n = p.len();
    let mut out = Vec::new();
    let mut current = ElementSet::empty(n);

    fn rec(
        p: &Poset,
        current: &mut ElementSet,
        size: usize,
        compatible: &ElementSet,
        bound: Option<usize>,
        out: &mut Vec<ElementSet>,
    ) {
        out.push(current.clone());
        if bound.is_some_and(|b| size + 1 >= b) {
            return;
        }
        for x in compatible.iter() {
            let mut next = compatible.clone();
            for y in compatible.iter() {
                if y <= x || p.comparable(x, y) {
                    next.remove(y);
                }
            }
            current.insert(x);
            rec(p, current, size + 1, &next, bound, out);
            current.remove(x);
        }
    }

    if bound != Some(0) {
        rec(p, &mut current, 0, within, bound, &mut out);
    }
    out
}

fn gap_pair_failure(p: &Poset, bound: Option<usize>, bounded_only: bool) -> Option<GapPair> {
    for lower in antichains(p, &p.full_set(), bound) {
        let region = p.up_cone(&lower);
        for upper in antichains(p, &region, bound) {
            if bounded_only {
                let joined = lower.union(&upper);
                if p.down_cone(&joined).is_empty() || p.up_cone(&joined).is_empty() {
                    continue;
                }
            }
            if region.intersection(&p.down_cone(&upper)).is_empty() {
                return Some(GapPair { lower, upper });
            }
        }
    }
    None
}

/// First pair of antichains `A <= B` with nothing in between, or `None`.
/// Restricting to antichains loses nothing: replacing arbitrary finite sets
/// by the maximal elements of `A` and the minimal elements of `B` preserves
/// both the hypothesis and the conclusion. With `size_bound` of `k`, only
/// pairs with both sides smaller than `k` are examined.
pub fn quasilattice_failure(p: &Poset, size_bound: Option<usize>) -> Option<GapPair> {
    gap_pair_failure(p, size_bound, false)
}

/// For every pair of antichains `A <= B` (including empty sides) some
/// element lies between them. On finite posets this is equivalent to being
/// a lattice; the empty sides force a minorant and a majorant for every
/// finite subset.
pub fn is_quasilattice(p: &Poset, size_bound: Option<usize>) -> bool {
    quasilattice_failure(p, size_bound).is_none()
}

/// First interval `[lo, hi]` that is not a lattice, or `None`.
pub fn local_complete_lattice_failure(p: &Poset) -> Option<IntervalFailure> {
    let n = p.len();
    for lo in 0..n {
        for hi in 0..n {
            if !p.leq(lo, hi) {
                continue;
            }
            let interval = p.up_set(lo).intersection(p.down_set(hi));
            if let Some(inner) = interval_lattice_failure(p, &interval) {
                return Some(IntervalFailure { lo, hi, inner });
            }
        }
    }
    None
}

fn interval_lattice_failure(p: &Poset, interval: &ElementSet) -> Option<LatticeFailure> {
    let members = interval.to_vec();
    let mut pair = ElementSet::empty(p.len());
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            pair.clear();
            pair.insert(a);
            pair.insert(b);
            if p.least_of(&p.up_cone(&pair).intersection(interval)).is_none() {
                return Some(LatticeFailure::NoSup(a, b));
            }
            if p
                .greatest_of(&p.down_cone(&pair).intersection(interval))
                .is_none()
            {
                return Some(LatticeFailure::NoInf(a, b));
            }
        }
    }
    None
}

/// Every interval `[lo, hi]` is a (complete, since finite) lattice.
/// Complete lattices and antichains qualify; the bowtie does too, while the
/// bowtie with added bounds is the smallest poset that does not.
pub fn is_local_complete_lattice(p: &Poset) -> bool {
    local_complete_lattice_failure(p).is_none()
}

/// Like [`quasilattice_failure`] but only over *bounded* pairs: antichain
/// pairs `A <= B` where `A ∪ B` has both a minorant and a majorant.
pub fn local_quasilattice_failure(p: &Poset, size_bound: Option<usize>) -> Option<GapPair> {
    gap_pair_failure(p, size_bound, true)
}

/// Every bounded pair of antichains `A <= B` has an element between them.
///
/// On finite posets this coincides exactly with
/// [`is_local_complete_lattice`]: any bounded gap pair lives inside an
/// interval, and an interval of a finite local quasilattice is a finite
/// quasilattice, hence a lattice. The equivalence is enforced by exhaustive
/// search over all labelled posets with up to 5 elements (see the oracle
/// test suite) together with the six-element bounded bowtie, where both
/// predicates fail.
pub fn is_local_quasilattice(p: &Poset, size_bound: Option<usize>) -> bool {
    local_quasilattice_failure(p, size_bound).is_none()
}

/// Partition of the elements into comparability components: the classes of
/// the transitive closure of "comparable". Ordered by least member index.
pub fn components(p: &Poset) -> Vec<ElementSet> {
    let n = p.len();
    let mut seen = ElementSet::empty(n);
    let mut out = Vec::new();
    for seed in 0..n {
        if seen.contains(seed) {
            continue;
        }
        let mut comp = ElementSet::singleton(n, seed);
        let mut frontier = vec![seed];
        while let Some(x) = frontier.pop() {
            let mut nbrs = p.up_set(x).union(p.down_set(x));
            nbrs.subtract(&comp);
            for y in nbrs.iter() {
                comp.insert(y);
                frontier.push(y);
            }
        }
        seen.union_with(&comp);
        out.push(comp);
    }
    out
}

/// Injective numbering realizing `x <= y  <=>  same component and
/// number(x) <= number(y)`, when every component is a chain; `None`
/// otherwise. The least-index element of the first component is anchored at
/// 0, chain neighbours differ by 1, and later components are shifted to
/// fresh integer ranges separated by a gap of one.
pub fn z_embedding(p: &Poset) -> Option<Vec<i64>> {
    let comps = components(p);
    let mut values = vec![0i64; p.len()];
    let mut prev_max: Option<i64> = None;
    for comp in &comps {
        let members = comp.to_vec();
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                if !p.comparable(a, b) {
                    return None;
                }
            }
        }
        let rank = |x: usize| p.down_set(x).intersection(comp).len() as i64;
        let anchor_rank = rank(members[0]);
        let rels: Vec<i64> = members.iter().map(|&x| rank(x) - anchor_rank).collect();
        let offset = match prev_max {
            None => 0,
            Some(m) => m + 2 - rels.iter().min().unwrap(),
        };
        for (&x, &rel) in members.iter().zip(&rels) {
            values[x] = rel + offset;
        }
        prev_max = Some(*rels.iter().max().unwrap() + offset);
    }
    Some(values)
}

/// Runs every class predicate and assembles the serialized report.
pub fn classify(p: &Poset) -> ClassificationReport {
    let lattice_fail = if p.is_empty() {
        None
    } else {
        lattice_failure(p).expect("nonempty")
    };
    let lattice = !p.is_empty() && lattice_fail.is_none();
    let quasi_fail = quasilattice_failure(p, None);
    let local_cl_fail = local_complete_lattice_failure(p);
    let local_quasi_fail = local_quasilattice_failure(p, None);
    let embedding = z_embedding(p);

    let label = |i: usize| p.label(i).to_string();
    let lattice_witness = |w: &LatticeFailure| match *w {
        LatticeFailure::NoSup(a, b) => Witness::NoSup { pair: (label(a), label(b)) },
        LatticeFailure::NoInf(a, b) => Witness::NoInf { pair: (label(a), label(b)) },
        LatticeFailure::NoLeast => Witness::NoLeast,
        LatticeFailure::NoGreatest => Witness::NoGreatest,
    };
    let gap_witness = |w: &GapPair| Witness::NoBetween {
        lower: p.set_labels(&w.lower),
        upper: p.set_labels(&w.upper),
    };

    ClassificationReport {
        chain: is_chain(p),
        lattice,
        complete_lattice: is_complete_lattice(p),
        quasilattice: quasi_fail.is_none(),
        local_complete_lattice: local_cl_fail.is_none(),
        local_quasilattice: local_quasi_fail.is_none(),
        z_embeddable: embedding.is_some(),
        witnesses: ReportWitnesses {
            lattice: lattice_fail.as_ref().map(lattice_witness),
            quasilattice: quasi_fail.as_ref().map(gap_witness),
            local_complete_lattice: local_cl_fail.as_ref().map(|w| {
                Witness::IntervalNotLattice {
                    interval: (label(w.lo), label(w.hi)),
                    inner: Box::new(lattice_witness(&w.inner)),
                }
            }),
            local_quasilattice: local_quasi_fail.as_ref().map(gap_witness),
        },
        components: components(p)
            .iter()
            .map(|c| p.set_labels(c))
            .collect(),
        z_embedding: embedding.map(|values| {
            p.labels()
                .iter()
                .cloned()
                .zip(values)
                .collect::<BTreeMap<String, i64>>()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chains() {
        assert!(is_chain(&fixtures::chain(3)));
        assert!(!is_chain(&fixtures::antichain(2)));
        assert!(!is_chain(&fixtures::diamond()));
    }

    #[test]
    fn lattice_flags_and_witnesses() {
        assert!(is_lattice(&fixtures::diamond()).unwrap());
        assert!(is_lattice(&fixtures::chain(3)).unwrap());
        let v = fixtures::vee();
        assert_eq!(
            lattice_failure(&v).unwrap(),
            Some(LatticeFailure::NoSup(1, 2))
        );
        let empty = fixtures::antichain(0);
        assert_eq!(is_lattice(&empty).unwrap_err(), ClassifyError::EmptyPoset);
    }

    #[test]
    fn complete_lattice_modes() {
        assert!(is_complete_lattice(&fixtures::diamond()));
        assert!(!is_complete_lattice(&fixtures::antichain(0)));
        assert!(!is_complete_lattice(&fixtures::bowtie()));
        assert!(is_complete_lattice_exhaustive(&fixtures::diamond()).unwrap());
        assert!(!is_complete_lattice_exhaustive(&fixtures::bowtie()).unwrap());
        assert!(matches!(
            is_complete_lattice_exhaustive(&fixtures::chain(16)),
            Err(ClassifyError::SizeCapExceeded { size: 16, cap: 15 })
        ));
    }

    #[test]
    fn quasilattice_matches_lattice_on_fixtures() {
        assert!(is_quasilattice(&fixtures::diamond(), None));
        assert!(!is_quasilattice(&fixtures::bowtie(), None));
        assert!(!is_quasilattice(&fixtures::antichain(2), None));
        assert!(is_quasilattice(&fixtures::chain(4), None));
    }

    #[test]
    fn quasilattice_witnesses() {
        // First failure for the two-antichain: the empty lower side against
        // {x0, x1}, which has no minorant.
        let a2 = fixtures::antichain(2);
        let w = quasilattice_failure(&a2, None).unwrap();
        assert!(w.lower.is_empty());
        assert_eq!(w.upper.to_vec(), vec![0, 1]);

        let bowtie = fixtures::bowtie();
        let w = quasilattice_failure(&bowtie, None).unwrap();
        assert!(w.lower.is_empty());
        assert_eq!(w.upper.to_vec(), vec![0, 1]);
        // The classic two-against-two gap is also a valid witness shape:
        // nothing sits between {a, b} and {c, d}.
        let lower = ElementSet::from_indices(4, [0, 1]);
        let upper = ElementSet::from_indices(4, [2, 3]);
        assert!(bowtie
            .up_cone(&lower)
            .intersection(&bowtie.down_cone(&upper))
            .is_empty());
    }

    #[test]
    fn size_bound_restricts_the_pairs() {
        let bowtie = fixtures::bowtie();
        assert!(!is_quasilattice(&bowtie, Some(3)));
        assert!(is_quasilattice(&bowtie, Some(2)));
        assert!(is_quasilattice(&bowtie, Some(0)));
    }

    #[test]
    fn local_complete_lattice_flags() {
        assert!(is_local_complete_lattice(&fixtures::antichain(2)));
        assert!(is_local_complete_lattice(&fixtures::bowtie()));
        assert!(is_local_complete_lattice(&fixtures::diamond()));
        assert!(is_local_complete_lattice(&fixtures::vee()));
        let bad = fixtures::bounded_bowtie();
        let w = local_complete_lattice_failure(&bad).unwrap();
        assert_eq!((w.lo, w.hi), (0, 5));
        assert_eq!(w.inner, LatticeFailure::NoSup(1, 2));
    }

    #[test]
    fn local_quasilattice_flags() {
        assert!(is_local_quasilattice(&fixtures::bowtie(), None));
        assert!(is_local_quasilattice(&fixtures::diamond(), None));
        assert!(is_local_quasilattice(&fixtures::antichain(2), None));
        let w = local_quasilattice_failure(&fixtures::bounded_bowtie(), None).unwrap();
        assert_eq!(w.lower.to_vec(), vec![1, 2]);
        assert_eq!(w.upper.to_vec(), vec![3, 4]);
    }

    #[test]
    fn component_partition() {
        let two = fixtures::chain(2).cardinal_sum(&fixtures::chain(2));
        let comps = components(&two);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0, 1]);
        assert_eq!(comps[1].to_vec(), vec![2, 3]);
        assert_eq!(components(&fixtures::diamond()).len(), 1);
        assert_eq!(components(&fixtures::antichain(2)).len(), 2);
    }

    #[test]
    fn chain_numbering() {
        assert_eq!(z_embedding(&fixtures::chain(3)), Some(vec![0, 1, 2]));
        assert_eq!(z_embedding(&fixtures::vee()), None);
        let sum = fixtures::chain(2).cardinal_sum(&fixtures::chain(1));
        assert_eq!(z_embedding(&sum), Some(vec![0, 1, 3]));
        let rev = crate::poset::Poset::from_covers(["a", "b"], [("b", "a")]).unwrap();
        // Anchor is the least-index element, so the lower element gets -1.
        assert_eq!(z_embedding(&rev), Some(vec![0, -1]));
    }

    #[test]
    fn report_on_bowtie() {
        let report = classify(&fixtures::bowtie());
        assert!(!report.chain && !report.lattice && !report.complete_lattice);
        assert!(!report.quasilattice);
        assert!(report.local_complete_lattice && report.local_quasilattice);
        assert!(!report.z_embeddable);
        assert!(report.witnesses.quasilattice.is_some());
        assert!(report.witnesses.local_complete_lattice.is_none());
        assert_eq!(report.components.len(), 1);
    }

    #[test]
    fn report_on_chain() {
        let report = classify(&fixtures::chain(3));
        assert!(report.chain && report.lattice && report.complete_lattice);
        assert!(report.quasilattice && report.local_complete_lattice);
        assert!(report.z_embeddable);
        let z = report.z_embedding.unwrap();
        assert_eq!(z["x0"], 0);
        assert_eq!(z["x2"], 2);
    }

    #[test]
    fn report_is_stable_json() {
        let report = classify(&fixtures::vee());
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with("{\"chain\":false,\"lattice\":false"));
        assert!(json.contains("\"no_sup\""));
    }

    #[test]
    fn empty_poset_report() {
        let report = classify(&fixtures::antichain(0));
        assert!(!report.lattice && !report.complete_lattice);
        assert!(report.components.is_empty());
    }
}
