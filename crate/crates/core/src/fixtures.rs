//! Canonical small posets used across the tests, docs and CLI examples.

use crate::poset::Poset;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// The chain `x0 < x1 < .. < x{n-1}`.
pub fn chain(n: usize) -> Poset {
    let covers: Vec<(String, String)> = (0..n.saturating_sub(1))
        .map(|i| (format!("x{i}"), format!("x{}", i + 1)))
        .collect();
    Poset::from_covers(labels(n), covers).expect("chain is a valid order")
}

/// `n` pairwise incomparable elements.
pub fn antichain(n: usize) -> Poset {
    Poset::from_covers(labels(n), Vec::<(String, String)>::new()).expect("antichain is valid")
}

/// One bottom below two incomparable elements: `o < a`, `o < b`.
pub fn vee() -> Poset {
    Poset::from_covers(["o", "a", "b"], [("o", "a"), ("o", "b")]).expect("valid")
}

/// Two incomparable elements below one top: `a < o`, `b < o`.
pub fn wedge() -> Poset {
    Poset::from_covers(["a", "b", "o"], [("a", "o"), ("b", "o")]).expect("valid")
}

/// The four-element lattice `bot < a, b < top` with `a`, `b` incomparable.
pub fn diamond() -> Poset {
    Poset::from_covers(
        ["bot", "a", "b", "top"],
        [
            ("bot", "a"),
            ("bot", "b"),
            ("a", "top"),
            ("b", "top"),
        ],
    )
    .expect("valid")
}

/// Two incomparable elements all below two other incomparable elements:
/// `a, b < c, d`. The smallest poset whose intervals are all complete
/// lattices even though pairs like `{a, b}` have no join.
pub fn bowtie() -> Poset {
    Poset::from_covers(
        ["a", "b", "c", "d"],
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("valid")
}

/// The bowtie with a global bottom and top added. Its full interval is not
/// a lattice, making it the smallest poset with a non-lattice interval.
pub fn bounded_bowtie() -> Poset {
    Poset::from_covers(
        ["bot", "a", "b", "c", "d", "top"],
        [
            ("bot", "a"),
            ("bot", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "top"),
            ("d", "top"),
        ],
    )
    .expect("valid")
}
