//! Brute-force machinery at desk scale: exhaustive enumeration of small
//! posets (labelled or up to isomorphism), exhaustive and recursive isotone
//! map counting, seeded random generation, and a registry of whole-theorem
//! checks with counterexample reporting (see [`check_theorem`]).

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::map::MonotoneMap;
use crate::poset::Poset;
use crate::set::ElementSet;

mod theorems;

pub use theorems::{
    check_theorem, replay, Counterexample, CxInstance, TheoremCaps, TheoremCheckResult, TheoremId,
};

/// Largest `n` for which the labelled enumeration is considered tractable.
pub const MAX_EXHAUSTIVE_N: usize = 6;

/// Largest `n` accepted by [`canonical_form`].
pub const MAX_CANONICAL_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("{needed} assignments exceed cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    Labeled,
    UpToIso,
}

/// Stream of every partial order on `n` points, in a canonical order
/// (ascending encoding of the relation matrix).
pub struct PosetStream {
    pub n: usize,
    pub mode: EnumMode,
    items: std::vec::IntoIter<Poset>,
}

impl Iterator for PosetStream {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        self.items.next()
    }
}

/// Deterministic labels `a, b, c, ..` for generated posets.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

/// Every partial order on `n` labelled points (`mode = Labeled`), or one
/// canonical representative per isomorphism class (`mode = UpToIso`).
/// Labelled counts for n = 1..6 are 1, 3, 19, 219, 4231, 130023.
pub fn enumerate_posets(n: usize, mode: EnumMode) -> Result<PosetStream, OracleError> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(OracleError::SizeCapExceeded {
            size: n,
            cap: MAX_EXHAUSTIVE_N,
        });
    }
    let matrices = labeled_matrices(n);
    let posets: Vec<Poset> = match mode {
        EnumMode::Labeled => matrices
            .iter()
            .map(|rows| matrix_to_poset(n, rows))
            .collect(),
        EnumMode::UpToIso => {
            let mut canon: Vec<Vec<u64>> = matrices
                .iter()
                .map(|rows| canonical_form(&matrix_to_poset(n, rows)))
                .collect();
            canon.sort_unstable();
            canon.dedup();
            canon.iter().map(|rows| matrix_to_poset(n, rows)).collect()
        }
    };
    Ok(PosetStream {
        n,
        mode,
        items: posets.into_iter(),
    })
}

fn matrix_to_poset(n: usize, rows: &[u64]) -> Poset {
    let sets = rows
        .iter()
        .map(|&mask| ElementSet::from_mask(n, mask))
        .collect();
    Poset::from_up_rows(default_labels(n), sets)
}

/// All closed order matrices on `n` labelled points, as one up-set mask per
/// element, sorted by encoding. Built by inserting point `k` into every
/// order on `k` points: the new point picks a down-closed set `d` to lie
/// above and an up-closed set `u` to lie below, with `d` entirely below `u`.
fn labeled_matrices(n: usize) -> Vec<Vec<u64>> {
    assert!(n <= MAX_EXHAUSTIVE_N);
    let mut current: Vec<Vec<u64>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for m in &current {
            let cols: Vec<u64> = (0..k)
                .map(|i| {
                    (0..k)
                        .filter(|&j| m[j] >> i & 1 == 1)
                        .fold(0u64, |acc, j| acc | 1 << j)
                })
                .collect();
            for d in 0u64..1 << k {
                if (0..k).any(|i| d >> i & 1 == 1 && cols[i] & !d != 0) {
                    continue; // not down-closed
                }
                for u in 0u64..1 << k {
                    if d & u != 0 {
                        continue;
                    }
                    if (0..k).any(|j| u >> j & 1 == 1 && m[j] & !u != 0) {
                        continue; // not up-closed
                    }
                    if (0..k).any(|i| d >> i & 1 == 1 && u & !m[i] != 0) {
                        continue; // some d-element not below some u-element
                    }
                    let mut rows = m.clone();
                    for (i, row) in rows.iter_mut().enumerate() {
                        if d >> i & 1 == 1 {
                            *row |= 1 << k;
                        }
                    }
                    rows.push(1 << k | u);
                    next.push(rows);
                }
            }
        }
        current = next;
    }
    current.sort_unstable();
    current
}

/// A canonical encoding of the order matrix, equal for isomorphic posets.
/// Elements are first partitioned by the invariant (|down-set|, |up-set|,
/// height); the encoding is then minimized over all permutations that
/// respect the partition.
pub fn canonical_form(p: &Poset) -> Vec<u64> {
    let n = p.len();
    assert!(
        n <= MAX_CANONICAL_N,
        "canonical form enumerates permutations; {n} is past the cap"
    );
    let heights = element_heights(p);
    let mut order: Vec<usize> = (0..n).collect();
    let invariant =
        |i: usize| (p.down_set(i).len(), p.up_set(i).len(), heights[i]);
    order.sort_by_key(|&i| invariant(i));

    // Blocks of equal invariant; permutations swap elements within a block.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || invariant(order[i]) != invariant(order[start]) {
            blocks.push((start, i));
            start = i;
        }
    }

    let mut best: Option<Vec<u64>> = None;
    let mut perm = order.clone();
    minimize_over_blocks(p, &mut perm, &blocks, 0, &mut best);
    best.expect("at least one permutation")
}

fn minimize_over_blocks(
    p: &Poset,
    perm: &mut Vec<usize>,
    blocks: &[(usize, usize)],
    b: usize,
    best: &mut Option<Vec<u64>>,
) {
    if b == blocks.len() {
        let enc = encode_under(p, perm);
        if best.as_ref().is_none_or(|cur| enc < *cur) {
            *best = Some(enc);
        }
        return;
    }
    let (lo, hi) = blocks[b];
    permute_range(p, perm, blocks, b, lo, hi, best);
}

fn permute_range(
    p: &Poset,
    perm: &mut Vec<usize>,
    blocks: &[(usize, usize)],
    b: usize,
    lo: usize,
    hi: usize,
    best: &mut Option<Vec<u64>>,
) {
    if lo + 1 >= hi {
        minimize_over_blocks(p, perm, blocks, b + 1, best);
        return;
    }
    for i in lo..hi {
        perm.swap(lo, i);
        permute_range(p, perm, blocks, b, lo + 1, hi, best);
        perm.swap(lo, i);
    }
}

/// `perm[pos]` is the element placed at `pos`; rows are re-encoded in the
/// permuted numbering.
fn encode_under(p: &Poset, perm: &[usize]) -> Vec<u64> {
    let n = p.len();
    let mut rows = vec![0u64; n];
    for (pi, &i) in perm.iter().enumerate() {
        for (pj, &j) in perm.iter().enumerate() {
            if p.leq(i, j) {
                rows[pi] |= 1 << pj;
            }
        }
    }
    rows
}

fn element_heights(p: &Poset) -> Vec<usize> {
    let mut h = vec![0usize; p.len()];
    for i in p.linear_extension() {
        let mut below = p.down_set(i).clone();
        below.remove(i);
        h[i] = below.iter().map(|j| h[j] + 1).max().unwrap_or(0);
    }
    h
}

/// All isotone total maps from `x` to `y`, produced by filtering every one
/// of the `|y|^|x|` assignments. The raw assignment count must stay within
/// `cap`. The stream is ordered lexicographically by assignment.
pub fn enumerate_isotone_maps(
    x: &Arc<Poset>,
    y: &Arc<Poset>,
    cap: u64,
) -> Result<IsotoneMapStream, OracleError> {
    let needed = (y.len() as u128)
        .checked_pow(x.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(OracleError::CapExceeded { needed, cap });
    }
    Ok(IsotoneMapStream {
        x: x.clone(),
        y: y.clone(),
        odometer: vec![0; x.len()],
        exhausted: !x.is_empty() && y.is_empty(),
    })
}

pub struct IsotoneMapStream {
    x: Arc<Poset>,
    y: Arc<Poset>,
    odometer: Vec<usize>,
    exhausted: bool,
}

impl Iterator for IsotoneMapStream {
    type Item = MonotoneMap;

    fn next(&mut self) -> Option<MonotoneMap> {
        loop {
            if self.exhausted {
                return None;
            }
            let candidate = self.odometer.clone();
            self.advance();
            let total = MonotoneMap::total(self.x.clone(), self.y.clone(), candidate);
            if let Ok(map) = total {
                return Some(map);
            }
        }
    }
}

impl IsotoneMapStream {
    fn advance(&mut self) {
        if self.odometer.is_empty() {
            self.exhausted = true;
            return;
        }
        let mut k = self.odometer.len();
        loop {
            if k == 0 {
                self.exhausted = true;
                return;
            }
            k -= 1;
            self.odometer[k] += 1;
            if self.odometer[k] < self.y.len() {
                return;
            }
            self.odometer[k] = 0;
        }
    }
}

/// Counts isotone total maps `x -> y` by direct recursion along a linear
/// extension of `x`: each element's value is constrained upward by the
/// images of its already-placed lower elements. Serves as an independent
/// cross-check of the filter enumeration.
pub fn count_isotone_maps_recursive(x: &Poset, y: &Poset) -> u64 {
    if x.is_empty() {
        return 1;
    }
    if y.is_empty() {
        return 0;
    }
    let order = x.linear_extension();
    let mut values = vec![0usize; x.len()];
    let mut placed = ElementSet::empty(x.len());

    fn rec(
        x: &Poset,
        y: &Poset,
        order: &[usize],
        k: usize,
        values: &mut Vec<usize>,
        placed: &mut ElementSet,
    ) -> u64 {
        if k == order.len() {
            return 1;
        }
        let xi = order[k];
        let mut below = x.down_set(xi).intersection(placed);
        below.remove(xi);
        let mut image = ElementSet::empty(y.len());
        for u in below.iter() {
            image.insert(values[u]);
        }
        let candidates = y.up_cone(&image);
        let mut total = 0;
        placed.insert(xi);
        for v in candidates.iter() {
            values[xi] = v;
            total += rec(x, y, order, k + 1, values, placed);
        }
        placed.remove(xi);
        total
    }

    rec(x, y, &order, 0, &mut values, &mut placed)
}

/// A pseudorandom poset on `n` points: a random permutation is taken as an
/// implicit topological order, forward pairs are kept with a density drawn
/// per poset, and the relation is closed transitively. Deterministic for a
/// given generator state.
pub fn random_poset(n: usize, rng: &mut ChaCha8Rng) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    // Fisher-Yates.
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let density: f64 = rng.random_range(0.1..0.9);
    let mut rows = vec![0u64; n];
    for (i, row) in rows.iter_mut().enumerate() {
        *row |= 1 << i;
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density) {
                rows[perm[a]] |= 1 << perm[b];
            }
        }
    }
    // Close under transitivity; the permutation keeps it acyclic.
    for k in 0..n {
        for i in 0..n {
            if i != k && rows[i] >> k & 1 == 1 {
                rows[i] |= rows[k];
            }
        }
    }
    matrix_to_poset(n, &rows)
}

/// The smallest (by size, then by matrix encoding) poset violating the
/// predicate, scanning every labelled poset up to `max_n` points.
pub fn find_counterexample(
    mut predicate: impl FnMut(&Poset) -> bool,
    max_n: usize,
) -> Result<Option<Poset>, OracleError> {
    for n in 1..=max_n {
        for p in enumerate_posets(n, EnumMode::Labeled)? {
            if !predicate(&p) {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;
    use rand::SeedableRng;

    #[test]
    fn labeled_counts_match_known_values() {
        let expected = [1usize, 3, 19, 219, 4231];
        for (n, &want) in expected.iter().enumerate() {
            let got = enumerate_posets(n + 1, EnumMode::Labeled).unwrap().count();
            assert_eq!(got, want, "labelled posets on {} points", n + 1);
        }
    }

    /// Independent check of the small counts: filter every reflexive
    /// relation on the off-diagonal bits for antisymmetry + transitivity.
    #[test]
    fn labeled_counts_match_relation_filter() {
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .collect();
            let mut count = 0u64;
            'outer: for mask in 0u64..1 << pairs.len() {
                let mut rows = vec![0u64; n];
                for (i, row) in rows.iter_mut().enumerate() {
                    *row |= 1 << i;
                }
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        rows[i] |= 1 << j;
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        if i != j && rows[i] >> j & 1 == 1 {
                            if rows[j] >> i & 1 == 1 {
                                continue 'outer; // antisymmetry
                            }
                            if rows[j] & !rows[i] != 0 {
                                continue 'outer; // transitivity
                            }
                        }
                    }
                }
                count += 1;
            }
            let got = enumerate_posets(n, EnumMode::Labeled).unwrap().count() as u64;
            assert_eq!(got, count, "n = {n}");
        }
    }

    #[test]
    fn two_point_posets_are_the_expected_three() {
        let all: Vec<Poset> = enumerate_posets(2, EnumMode::Labeled).unwrap().collect();
        assert_eq!(all.len(), 3);
        let comparable = all.iter().filter(|p| p.comparable(0, 1)).count();
        assert_eq!(comparable, 2);
    }

    #[test]
    fn iso_classes_match_known_values() {
        let expected = [1usize, 2, 5, 16, 63];
        for (n, &want) in expected.iter().enumerate() {
            let got = enumerate_posets(n + 1, EnumMode::UpToIso).unwrap().count();
            assert_eq!(got, want, "iso classes on {} points", n + 1);
        }
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        let p = crate::fixtures::vee();
        // Same shape with the labels cycled.
        let q = Poset::from_covers(["a", "b", "o"], [("o", "a"), ("o", "b")]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        assert_ne!(
            canonical_form(&crate::fixtures::chain(3)),
            canonical_form(&p)
        );
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_posets(7, EnumMode::Labeled),
            Err(OracleError::SizeCapExceeded { size: 7, cap: 6 })
        ));
    }

    #[test]
    fn isotone_map_counts_on_fixtures() {
        let c2 = Arc::new(crate::fixtures::chain(2));
        let a2 = Arc::new(crate::fixtures::antichain(2));
        let maps: Vec<_> = enumerate_isotone_maps(&c2, &c2, 1000).unwrap().collect();
        assert_eq!(maps.len(), 3); // 00, 01, 11
        assert_eq!(enumerate_isotone_maps(&a2, &c2, 1000).unwrap().count(), 4);
        assert_eq!(enumerate_isotone_maps(&c2, &a2, 1000).unwrap().count(), 2);
        assert_eq!(count_isotone_maps_recursive(&c2, &c2), 3);
        assert_eq!(count_isotone_maps_recursive(&a2, &c2), 4);
        assert_eq!(count_isotone_maps_recursive(&c2, &a2), 2);
    }

    #[test]
    fn map_enumeration_cap() {
        let c3 = Arc::new(crate::fixtures::chain(3));
        assert!(matches!(
            enumerate_isotone_maps(&c3, &c3, 26),
            Err(OracleError::CapExceeded { needed: 27, cap: 26 })
        ));
    }

    #[test]
    fn random_posets_are_valid_and_reproducible() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 4, 6, 9] {
            let p = random_poset(n, &mut rng1);
            let q = random_poset(n, &mut rng2);
            assert_eq!(p, q);
            assert_eq!(p.len(), n);
        }
    }

    #[test]
    fn counterexample_search_is_canonical() {
        // Smallest non-lattice: the empty relation on two points.
        let found = find_counterexample(|p| classify::is_lattice(p).unwrap_or(false), 4)
            .unwrap()
            .unwrap();
        assert_eq!(found.len(), 2);
        assert!(!found.comparable(0, 1));
        // Everything up to 4 points is a local complete lattice.
        assert!(
            find_counterexample(classify::is_local_complete_lattice, 4)
                .unwrap()
                .is_none()
        );
    }
}
