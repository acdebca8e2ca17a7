//! Structural invariants checked exhaustively over every small poset, with
//! naive reference implementations as independent oracles, plus randomized
//! properties for sizes past the exhaustive range.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use isoext::classify;
use isoext::extension;
use isoext::oracle::{self, EnumMode};
use isoext::{ElementSet, MonotoneMap, Poset};

fn all_posets(max_n: usize) -> Vec<Poset> {
    (1..=max_n)
        .flat_map(|n| oracle::enumerate_posets(n, EnumMode::Labeled).unwrap())
        .collect()
}

fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(move |mask| ElementSet::from_mask(n, mask))
}

// Naive reference scans.

fn naive_down_cone(p: &Poset, s: &ElementSet) -> Vec<usize> {
    (0..p.len())
        .filter(|&y| s.iter().all(|a| p.leq(y, a)))
        .collect()
}

fn naive_up_cone(p: &Poset, s: &ElementSet) -> Vec<usize> {
    (0..p.len())
        .filter(|&y| s.iter().all(|a| p.leq(a, y)))
        .collect()
}

fn naive_sup(p: &Poset, s: &ElementSet) -> Option<usize> {
    let majorants = naive_up_cone(p, s);
    majorants
        .iter()
        .copied()
        .find(|&m| majorants.iter().all(|&v| p.leq(m, v)))
}

#[test]
fn enumerated_posets_satisfy_the_order_axioms() {
    for p in all_posets(5) {
        let n = p.len();
        for i in 0..n {
            assert!(p.leq(i, i));
            for j in 0..n {
                if i != j && p.leq(i, j) {
                    assert!(!p.leq(j, i), "antisymmetry in {p:?}");
                }
                for k in 0..n {
                    if p.leq(i, j) && p.leq(j, k) {
                        assert!(p.leq(i, k), "transitivity in {p:?}");
                    }
                }
            }
        }
        // Covers are exactly the strict pairs with nothing in between.
        let mut naive_covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if p.lt(i, j) && !(0..n).any(|k| p.lt(i, k) && p.lt(k, j)) {
                    naive_covers.push((i, j));
                }
            }
        }
        naive_covers.sort_unstable();
        assert_eq!(p.covers(), naive_covers.as_slice());
    }
}

#[test]
fn cover_documents_roundtrip() {
    for p in all_posets(5) {
        let back = Poset::from_doc(&p.to_doc()).unwrap();
        assert_eq!(back, p);
    }
}

#[test]
fn cones_are_dual_and_match_the_naive_scan() {
    for p in all_posets(6) {
        let dual = p.dual();
        for s in subsets(p.len()) {
            assert_eq!(p.down_cone(&s), dual.up_cone(&s));
            if p.len() <= 4 {
                assert_eq!(p.down_cone(&s).to_vec(), naive_down_cone(&p, &s));
                assert_eq!(p.up_cone(&s).to_vec(), naive_up_cone(&p, &s));
            }
        }
    }
}

#[test]
fn sup_and_inf_are_dual() {
    for p in all_posets(5) {
        let dual = p.dual();
        for s in subsets(p.len()) {
            assert_eq!(p.sup_of(&s), dual.inf_of(&s));
            assert_eq!(p.sup_of(&s), naive_sup(&p, &s));
        }
    }
}

#[test]
fn downset_embedding_preserves_and_reflects_order() {
    for p in all_posets(6) {
        let (power, image) = p.downset_embedding(6).unwrap();
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(
                    p.leq(x, y),
                    power.leq(image[x], image[y]),
                    "embedding must be an order isomorphism onto its image in {p:?}"
                );
            }
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                if x != y {
                    assert_ne!(image[x], image[y]);
                }
            }
        }
    }
}

#[test]
fn sums_embed_their_summands() {
    let smalls = all_posets(3);
    for p in &smalls {
        for q in &smalls {
            let lex = p.lex_sum(q);
            let card = p.cardinal_sum(q);
            for i in 0..p.len() {
                for j in 0..p.len() {
                    assert_eq!(lex.leq(i, j), p.leq(i, j));
                    assert_eq!(card.leq(i, j), p.leq(i, j));
                }
                for j in 0..q.len() {
                    assert!(lex.lt(i, p.len() + j));
                    assert!(!card.comparable(i, p.len() + j));
                }
            }
            for i in 0..q.len() {
                for j in 0..q.len() {
                    assert_eq!(lex.leq(p.len() + i, p.len() + j), q.leq(i, j));
                    assert_eq!(card.leq(p.len() + i, p.len() + j), q.leq(i, j));
                }
            }
        }
    }
}

#[test]
fn class_hierarchy_collapses_on_finite_posets() {
    for p in all_posets(5) {
        let chain = classify::is_chain(&p);
        let lattice = classify::is_lattice(&p).unwrap();
        let complete = classify::is_complete_lattice(&p);
        let quasi = classify::is_quasilattice(&p, None);
        let local_cl = classify::is_local_complete_lattice(&p);
        if chain {
            assert!(lattice, "chains are lattices: {p:?}");
        }
        assert_eq!(lattice, complete, "finite lattices are complete: {p:?}");
        assert_eq!(lattice, quasi, "finite quasilattices are lattices: {p:?}");
        if lattice {
            assert!(local_cl, "lattices are local complete lattices: {p:?}");
        }
    }
}

/// Whether "every bounded gap pair is filled" coincides with "every
/// interval is a lattice" is not knowable from the definitions alone; the
/// sweep settles it affirmatively for every poset with up to 5 elements,
/// and the six-element bounded bowtie fails both.
#[test]
fn local_quasilattice_coincides_with_local_complete_lattice() {
    for p in all_posets(5) {
        assert_eq!(
            classify::is_local_quasilattice(&p, None),
            classify::is_local_complete_lattice(&p),
            "local class split on {p:?}"
        );
    }
    let six = isoext::fixtures::bounded_bowtie();
    assert!(!classify::is_local_quasilattice(&six, None));
    assert!(!classify::is_local_complete_lattice(&six));
}

#[test]
fn exhaustive_complete_lattice_mode_agrees_with_pairwise() {
    for p in all_posets(6) {
        assert_eq!(
            classify::is_complete_lattice_exhaustive(&p).unwrap(),
            classify::is_complete_lattice(&p),
            "modes split on {p:?}"
        );
    }
}

#[test]
fn chain_numbering_exists_exactly_for_chain_component_posets() {
    for p in all_posets(5) {
        let comps = classify::components(&p);
        let all_chains = comps.iter().all(|c| {
            let m = c.to_vec();
            m.iter()
                .enumerate()
                .all(|(k, &i)| m[k + 1..].iter().all(|&j| p.comparable(i, j)))
        });
        let embedding = classify::z_embedding(&p);
        assert_eq!(embedding.is_some(), all_chains, "on {p:?}");
        if let Some(phi) = embedding {
            let comp_of = |x: usize| comps.iter().position(|c| c.contains(x)).unwrap();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    let same = comp_of(x) == comp_of(y);
                    assert_eq!(p.leq(x, y), same && phi[x] <= phi[y], "on {p:?}");
                }
            }
        }
    }
}

#[test]
fn components_agree_with_a_direct_bfs() {
    for p in all_posets(5) {
        let comps = classify::components(&p);
        // Flat union check: partition.
        let mut owner = vec![usize::MAX; p.len()];
        for (k, c) in comps.iter().enumerate() {
            for i in c.iter() {
                assert_eq!(owner[i], usize::MAX, "element in two components");
                owner[i] = k;
            }
        }
        assert!(owner.iter().all(|&k| k != usize::MAX));
        // Independent BFS over the comparability graph.
        for x in 0..p.len() {
            let mut seen = vec![false; p.len()];
            let mut queue = vec![x];
            seen[x] = true;
            while let Some(v) = queue.pop() {
                for u in 0..p.len() {
                    if !seen[u] && p.comparable(v, u) {
                        seen[u] = true;
                        queue.push(u);
                    }
                }
            }
            for y in 0..p.len() {
                assert_eq!(seen[y], owner[x] == owner[y], "on {p:?}");
            }
        }
    }
}

/// The pointwise least/greatest extensions agree with the family extrema
/// computed coordinatewise, exhaustively over the small stratum.
#[test]
fn bounds_agree_with_coordinatewise_family_extrema() {
    let posets: Vec<Arc<Poset>> = all_posets(3).into_iter().map(Arc::new).collect();
    for y in posets.iter().filter(|y| classify::is_complete_lattice(y)) {
        for x in &posets {
            for a in subsets(x.len()) {
                for f in isotone_maps_on(x, y, &a) {
                    let lo = extension::lower_extension(&f).unwrap();
                    let hi = extension::upper_extension(&f).unwrap();
                    let fam = extension::enumerate_extensions(&f, 1 << 20).unwrap();
                    assert!(!fam.is_empty());
                    for i in 0..x.len() {
                        let values: ElementSet = ElementSet::from_indices(
                            y.len(),
                            fam.iter().map(|g| g[i]),
                        );
                        assert_eq!(y.inf_of(&values), lo.value(i));
                        assert_eq!(y.sup_of(&values), hi.value(i));
                    }
                }
            }
        }
    }
}

/// Complete search and brute-force family enumeration agree on emptiness
/// for every codomain, lattice or not.
#[test]
fn search_agrees_with_family_emptiness() {
    let posets: Vec<Arc<Poset>> = all_posets(3).into_iter().map(Arc::new).collect();
    for y in &posets {
        for x in &posets {
            for a in subsets(x.len()) {
                for f in isotone_maps_on(x, y, &a) {
                    let found = extension::extend_exists(&f).unwrap();
                    let fam = extension::enumerate_extensions(&f, 1 << 20).unwrap();
                    assert_eq!(found.is_some(), !fam.is_empty(), "{f:?}");
                    if let Some(g) = found {
                        assert!(g.extends(&f));
                        assert!(fam.iter().any(|m| {
                            m.iter()
                                .enumerate()
                                .all(|(i, &v)| g.value(i) == Some(v))
                        }));
                    }
                }
            }
        }
    }
}

/// Five-element lattice codomains still admit every extension; sampled,
/// since the full sweep is large.
#[test]
fn five_element_lattices_extend_sampled_instances() {
    let lattices: Vec<Arc<Poset>> = oracle::enumerate_posets(5, EnumMode::Labeled)
        .unwrap()
        .filter(|p| classify::is_lattice(p).unwrap())
        .map(Arc::new)
        .collect();
    assert!(!lattices.is_empty());
    let xs: Vec<Arc<Poset>> = all_posets(4).into_iter().map(Arc::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_26);
    let mut checked = 0;
    for y in lattices.iter().step_by(7) {
        for _ in 0..120 {
            let f = random_instance(&xs, y, &mut rng);
            assert!(
                extension::extend_exists(&f).unwrap().is_some(),
                "lattice codomain refused an extension: {f:?}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 1000);
}

fn isotone_maps_on(x: &Arc<Poset>, y: &Arc<Poset>, a: &ElementSet) -> Vec<MonotoneMap> {
    let members = a.to_vec();
    let mut out = Vec::new();
    let mut assignment: Vec<Option<usize>> = vec![None; x.len()];
    fn rec(
        x: &Arc<Poset>,
        y: &Arc<Poset>,
        members: &[usize],
        k: usize,
        assignment: &mut Vec<Option<usize>>,
        out: &mut Vec<MonotoneMap>,
    ) {
        if k == members.len() {
            if let Ok(map) = MonotoneMap::new(x.clone(), y.clone(), assignment.clone()) {
                out.push(map);
            }
            return;
        }
        for v in 0..y.len() {
            assignment[members[k]] = Some(v);
            rec(x, y, members, k + 1, assignment, out);
        }
        assignment[members[k]] = None;
    }
    rec(x, y, &members, 0, &mut assignment, &mut out);
    out
}

fn random_instance(
    xs: &[Arc<Poset>],
    y: &Arc<Poset>,
    rng: &mut ChaCha8Rng,
) -> MonotoneMap {
    use rand::Rng;
    loop {
        let x = &xs[rng.random_range(0..xs.len())];
        let mask = rng.random_range(0u64..1 << x.len());
        let assignment: Vec<Option<usize>> = (0..x.len())
            .map(|i| (mask >> i & 1 == 1).then(|| rng.random_range(0..y.len())))
            .collect();
        if let Ok(f) = MonotoneMap::new(x.clone(), y.clone(), assignment) {
            return f;
        }
    }
}

/// Everything is immutable after construction, so sharing across threads
/// needs no synchronization.
#[test]
fn core_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Poset>();
    assert_send_sync::<MonotoneMap>();
    assert_send_sync::<isoext::ExtensionFamily>();
    assert_send_sync::<isoext::ElementSet>();
}

/// The canonical first poset that is a local complete lattice without
/// being a lattice is already the two-point antichain; the bowtie is the
/// smallest connected one without global bounds.
#[test]
fn local_complete_lattice_does_not_imply_lattice() {
    let first = oracle::find_counterexample(
        |p| !classify::is_local_complete_lattice(p) || classify::is_lattice(p).unwrap(),
        5,
    )
    .unwrap()
    .unwrap();
    assert_eq!(first.len(), 2);
    assert!(!first.comparable(0, 1));
    let bowtie = isoext::fixtures::bowtie();
    assert!(classify::is_local_complete_lattice(&bowtie));
    assert!(!classify::is_lattice(&bowtie).unwrap());
}

fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        oracle::random_poset(n, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

proptest! {
    #[test]
    fn random_posets_roundtrip_their_documents(p in arb_poset(9)) {
        let back = Poset::from_doc(&p.to_doc()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn dual_is_involutive_on_random_posets(p in arb_poset(9)) {
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn linear_extensions_respect_the_order(p in arb_poset(9)) {
        let order = p.linear_extension();
        prop_assert_eq!(order.len(), p.len());
        for (pos_i, &i) in order.iter().enumerate() {
            for &j in &order[pos_i + 1..] {
                prop_assert!(!p.lt(j, i), "later element below an earlier one");
            }
        }
    }

    #[test]
    fn canonical_form_ignores_relabelling(p in arb_poset(6), rot in any::<u64>()) {
        // Rotate the label list; the covers keep their label endpoints, so
        // the result is the same order with permuted indices.
        let n = p.len();
        let shift = (rot % n as u64) as usize;
        let mut labels = p.labels().to_vec();
        labels.rotate_left(shift);
        let doc = p.to_doc();
        let rotated = Poset::from_covers(labels, doc.covers).unwrap();
        prop_assert_eq!(oracle::canonical_form(&rotated), oracle::canonical_form(&p));
    }

    #[test]
    fn isotone_map_counts_agree_between_implementations(
        (x, y) in (arb_poset(4), arb_poset(4)),
    ) {
        let xa = Arc::new(x);
        let ya = Arc::new(y);
        let filtered = oracle::enumerate_isotone_maps(&xa, &ya, 1 << 20)
            .unwrap()
            .count() as u64;
        prop_assert_eq!(filtered, oracle::count_isotone_maps_recursive(&xa, &ya));
    }
}
