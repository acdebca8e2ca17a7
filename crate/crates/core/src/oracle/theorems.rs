//! Whole-theorem verification over capped universes.
//!
//! Each registry entry sweeps every instance of a statement over all small
//! posets (and maps) within its caps, confirming both directions of the
//! stated equivalence. A check either passes, or carries a replayable
//! counterexample describing the violating instance. Negative directions
//! are witnessed constructively: from a classification witness the checker
//! builds a concrete instance that must fail, then confirms it does.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{self, GapPair, LatticeFailure};
use crate::extension;
use crate::map::MonotoneMap;
use crate::poset::{Poset, PosetDoc, PosetError};
use crate::set::ElementSet;

use super::{enumerate_posets, EnumMode, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    /// Complete-lattice codomains admit every extension, with pointwise
    /// least and greatest ones; nothing weaker does.
    T4,
    /// The extension family of a complete-lattice codomain is itself a
    /// complete lattice, bounded by the lower and upper extensions.
    C211,
    /// Lattice codomains admit extensions from finite defined subsets.
    C6,
    /// A poset admits extensions from itself out of every ambient poset,
    /// for every codomain, exactly when it is a complete lattice.
    T5,
    /// A connected non-chain contains a two-point subset whose identity
    /// does not extend.
    L6,
    /// A retraction of a complete lattice onto a subset forces the subset
    /// to be a complete lattice.
    L3,
    /// Identity maps extend from every subset exactly when every
    /// comparability component is a chain, via the closed-form retraction.
    T10,
    /// Finite quasilattices are lattices, and conversely.
    S43,
    /// Quasilattice codomains are exactly those where the one-pass greedy
    /// assignment (and hence any search) always succeeds.
    T46,
    /// Local complete lattices are exactly the codomains admitting
    /// extreme-preserving extensions.
    T53,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::T4,
        TheoremId::C211,
        TheoremId::C6,
        TheoremId::T5,
        TheoremId::L6,
        TheoremId::L3,
        TheoremId::T10,
        TheoremId::S43,
        TheoremId::T46,
        TheoremId::T53,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T4 => "t4",
            TheoremId::C211 => "c2.11",
            TheoremId::C6 => "c6",
            TheoremId::T5 => "t5",
            TheoremId::L6 => "l6",
            TheoremId::L3 => "l3",
            TheoremId::T10 => "t10",
            TheoremId::S43 => "s43",
            TheoremId::T46 => "t46",
            TheoremId::T53 => "t53",
        }
    }
}

impl FromStr for TheoremId {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, OracleError> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| OracleError::UnknownTheoremId(s.to_string()))
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Universe caps for a theorem check. `max_size` overrides the main size
/// knob (documented per theorem in the universe description); `sample`
/// thins the expensive per-instance sub-checks of `t4` and `c2.11` to
/// roughly one in `sample` instances (small instances are always checked
/// fully); `seed` fixes the thinning.
#[derive(Debug, Clone)]
pub struct TheoremCaps {
    pub max_size: Option<usize>,
    pub sample: Option<u64>,
    pub seed: u64,
}

impl Default for TheoremCaps {
    fn default() -> Self {
        TheoremCaps {
            max_size: None,
            sample: None,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremCheckResult {
    pub theorem: String,
    pub universe: String,
    pub pass: bool,
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
    pub millis: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub description: String,
    #[serde(flatten)]
    pub instance: CxInstance,
}

/// The raw data of a violating instance, sufficient to replay it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CxInstance {
    /// `extend_exists` on the instance should agree with `expect_extension`.
    Extension {
        domain: PosetDoc,
        codomain: PosetDoc,
        map: Vec<(String, String)>,
        expect_extension: bool,
    },
    /// Same for the greedy pass.
    GreedyExtension {
        domain: PosetDoc,
        codomain: PosetDoc,
        map: Vec<(String, String)>,
        expect_extension: bool,
    },
    /// Same for the extreme-preserving construction.
    ExtremesExtension {
        domain: PosetDoc,
        codomain: PosetDoc,
        map: Vec<(String, String)>,
        expect_extension: bool,
    },
    /// The lower/upper extensions should bound every member of the family.
    FamilyBounds {
        domain: PosetDoc,
        codomain: PosetDoc,
        map: Vec<(String, String)>,
    },
    /// The family under the pointwise order should be a lattice with the
    /// lower/upper extensions at its bottom/top.
    FamilyLattice {
        domain: PosetDoc,
        codomain: PosetDoc,
        map: Vec<(String, String)>,
    },
    /// The componentwise retraction should match its defining formula and
    /// extend the identity.
    Retraction { domain: PosetDoc, subset: Vec<String> },
    /// A classification property should evaluate to `expected`.
    Class {
        poset: PosetDoc,
        property: String,
        expected: bool,
    },
}

/// Re-runs a counterexample. `Ok(true)` means the reported violation
/// reproduces; `Ok(false)` means the instance now satisfies the claim.
pub fn replay(cx: &Counterexample) -> Result<bool, PosetError> {
    match &cx.instance {
        CxInstance::Extension {
            domain,
            codomain,
            map,
            expect_extension,
        } => {
            let f = parse_instance(domain, codomain, map)?;
            let got = match extension::extend_exists(&f) {
                Ok(opt) => opt.is_some(),
                Err(_) => return Ok(true),
            };
            Ok(got != *expect_extension)
        }
        CxInstance::GreedyExtension {
            domain,
            codomain,
            map,
            expect_extension,
        } => {
            let f = parse_instance(domain, codomain, map)?;
            let got = match extension::extend_greedy(&f, None) {
                Ok(opt) => opt.is_some(),
                Err(_) => return Ok(true),
            };
            Ok(got != *expect_extension)
        }
        CxInstance::ExtremesExtension {
            domain,
            codomain,
            map,
            expect_extension,
        } => {
            let f = parse_instance(domain, codomain, map)?;
            let got = match extension::extend_preserving_extremes(&f) {
                Ok(opt) => opt.is_some(),
                Err(_) => return Ok(true),
            };
            Ok(got != *expect_extension)
        }
        CxInstance::FamilyBounds {
            domain,
            codomain,
            map,
        } => {
            let f = parse_instance(domain, codomain, map)?;
            Ok(family_bounds_violated(&f))
        }
        CxInstance::FamilyLattice {
            domain,
            codomain,
            map,
        } => {
            let f = parse_instance(domain, codomain, map)?;
            Ok(family_lattice_violated(&f))
        }
        CxInstance::Retraction { domain, subset } => {
            let x = Arc::new(Poset::from_doc(domain)?);
            let mut a = ElementSet::empty(x.len());
            for label in subset {
                let i = x
                    .index_of(label)
                    .ok_or_else(|| PosetError::UnknownLabel(label.clone()))?;
                a.insert(i);
            }
            Ok(retraction_violated(&x, &a))
        }
        CxInstance::Class {
            poset,
            property,
            expected,
        } => {
            let p = Poset::from_doc(poset)?;
            let actual = match property.as_str() {
                "chain" => classify::is_chain(&p),
                "lattice" => classify::is_lattice(&p).unwrap_or(false),
                "complete_lattice" => classify::is_complete_lattice(&p),
                "quasilattice" => classify::is_quasilattice(&p, None),
                "local_complete_lattice" => classify::is_local_complete_lattice(&p),
                "local_quasilattice" => classify::is_local_quasilattice(&p, None),
                "z_embeddable" => classify::z_embedding(&p).is_some(),
                "chain_components" => chain_components(&p),
                "quasilattice_equals_lattice" => {
                    classify::is_quasilattice(&p, None)
                        == classify::is_lattice(&p).unwrap_or(false)
                }
                "local_quasilattice_equals_local_complete_lattice" => {
                    classify::is_local_quasilattice(&p, None)
                        == classify::is_local_complete_lattice(&p)
                }
                _ => return Ok(false),
            };
            Ok(actual != *expected)
        }
    }
}

fn parse_instance(
    domain: &PosetDoc,
    codomain: &PosetDoc,
    map: &[(String, String)],
) -> Result<MonotoneMap, PosetError> {
    let x = Arc::new(Poset::from_doc(domain)?);
    let y = Arc::new(Poset::from_doc(codomain)?);
    let pairs = map.iter().cloned().collect();
    MonotoneMap::from_label_map(x, y, &pairs)
}

fn family_bounds_violated(f: &MonotoneMap) -> bool {
    let (Ok(lo), Ok(hi)) = (extension::lower_extension(f), extension::upper_extension(f)) else {
        return true;
    };
    let Ok(fam) = extension::enumerate_extensions(f, 1 << 24) else {
        return true;
    };
    let y = f.codomain();
    for g in fam.iter() {
        for (i, &v) in g.iter().enumerate() {
            if !y.leq(lo.value(i).unwrap(), v) || !y.leq(v, hi.value(i).unwrap()) {
                return true;
            }
        }
    }
    false
}

fn family_lattice_violated(f: &MonotoneMap) -> bool {
    let (Ok(lo), Ok(hi)) = (extension::lower_extension(f), extension::upper_extension(f)) else {
        return true;
    };
    let Ok(fam) = extension::enumerate_extensions(f, 1 << 24) else {
        return true;
    };
    if fam.is_empty() || fam.len() > 10_000 {
        return true;
    }
    let Ok(fp) = fam.family_poset(10_000) else {
        return true;
    };
    if !classify::is_lattice(&fp).unwrap_or(false) {
        return true;
    }
    let bottom_ok = fam
        .bottom_map()
        .is_some_and(|b| b.assignment() == lo.assignment());
    let top_ok = fam
        .top_map()
        .is_some_and(|t| t.assignment() == hi.assignment());
    !(bottom_ok && top_ok)
}

fn chain_components(p: &Poset) -> bool {
    classify::components(p).iter().all(|comp| {
        let members = comp.to_vec();
        members
            .iter()
            .enumerate()
            .all(|(k, &i)| members[k + 1..].iter().all(|&j| p.comparable(i, j)))
    })
}

/// The retraction's defining formula, evaluated by direct scans: the
/// largest member of `A` in `x`'s component lying below `x`, else the least
/// member of `A` in that component, else the overall fallback.
fn retraction_formula(x: &Poset, a: &ElementSet, fallback: usize) -> Vec<usize> {
    let comps = classify::components(x);
    let mut target = vec![0usize; x.len()];
    for comp in &comps {
        let a_comp = a.intersection(comp);
        for xi in comp.iter() {
            target[xi] = if a_comp.is_empty() {
                fallback
            } else {
                let mut below: Vec<usize> =
                    a_comp.iter().filter(|&t| x.leq(t, xi)).collect();
                if below.is_empty() {
                    let mut least = a_comp.first().unwrap();
                    for t in a_comp.iter() {
                        if x.leq(t, least) {
                            least = t;
                        }
                    }
                    least
                } else {
                    let mut max = below.pop().unwrap();
                    for t in below {
                        if x.leq(max, t) {
                            max = t;
                        }
                    }
                    max
                }
            };
        }
    }
    target
}

fn retraction_violated(x: &Arc<Poset>, a: &ElementSet) -> bool {
    let Ok(f) = MonotoneMap::identity_on(x.clone(), a) else {
        return true;
    };
    let Some(fallback) = a.first() else {
        return true;
    };
    let Ok(g) = extension::extend_chain_components(&f, fallback) else {
        return true;
    };
    if !g.extends(&f) || !extension::check_isotone(&g, true) {
        return true;
    }
    let want = retraction_formula(x, a, fallback);
    let codomain = f.codomain();
    (0..x.len()).any(|xi| {
        let got = g.value(xi).unwrap();
        codomain.label(got) != x.label(want[xi])
    })
}

fn posets_upto(max: usize) -> Result<Vec<Arc<Poset>>, OracleError> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(enumerate_posets(n, EnumMode::Labeled)?.map(Arc::new));
    }
    Ok(out)
}

/// Visits every instance `(X, A ⊆ X, isotone f: A -> Y)` with `X` drawn
/// from `xs` and `A` accepted by `subset_ok`. `per` aborts the sweep by
/// returning an error.
fn sweep_instances<E>(
    y: &Arc<Poset>,
    xs: &[Arc<Poset>],
    subset_ok: impl Fn(&Poset, &ElementSet) -> bool,
    per: &mut impl FnMut(&MonotoneMap) -> Result<(), E>,
) -> Result<(), E> {
    for x in xs {
        let order = x.linear_extension();
        for mask in 0u64..1 << x.len() {
            let a = ElementSet::from_mask(x.len(), mask);
            if !subset_ok(x, &a) {
                continue;
            }
            let members: Vec<usize> = order.iter().copied().filter(|&i| a.contains(i)).collect();
            for_each_isotone_on(x, y, &members, per)?;
        }
    }
    Ok(())
}

/// Depth-first enumeration of the isotone maps defined exactly on
/// `members` (given in a linear-extension order of `x`).
fn for_each_isotone_on<E>(
    x: &Arc<Poset>,
    y: &Arc<Poset>,
    members: &[usize],
    per: &mut impl FnMut(&MonotoneMap) -> Result<(), E>,
) -> Result<(), E> {
    fn rec<E>(
        x: &Arc<Poset>,
        y: &Arc<Poset>,
        members: &[usize],
        k: usize,
        assignment: &mut Vec<Option<usize>>,
        per: &mut impl FnMut(&MonotoneMap) -> Result<(), E>,
    ) -> Result<(), E> {
        if k == members.len() {
            let map = MonotoneMap::new(x.clone(), y.clone(), assignment.clone())
                .expect("generated isotone");
            return per(&map);
        }
        let m = members[k];
        let mut image_below = ElementSet::empty(y.len());
        for &u in &members[..k] {
            if x.leq(u, m) {
                image_below.insert(assignment[u].unwrap());
            }
        }
        // Earlier members are never strictly above m, so only the upward
        // constraint applies here.
        let candidates = y.up_cone(&image_below);
        for v in candidates.iter() {
            assignment[m] = Some(v);
            rec(x, y, members, k + 1, assignment, per)?;
        }
        assignment[m] = None;
        Ok(())
    }
    let mut assignment = vec![None; x.len()];
    rec(x, y, members, 0, &mut assignment, per)
}

fn fresh(taken: &[String], base: &str) -> String {
    let mut s = base.to_string();
    while taken.iter().any(|t| t == &s) {
        s.push('\'');
    }
    s
}

/// Builds the sandwich instance for a gap pair: a new element `w` squeezed
/// between the two antichains, with the sides embedded back into `y`. Any
/// isotone extension would have to place `g(w)` in the empty region between
/// the sides.
fn gap_instance(y: &Arc<Poset>, gap: &GapPair) -> (Arc<Poset>, MonotoneMap) {
    let lows = gap.lower.to_vec();
    let ups = gap.upper.to_vec();
    let mut labels: Vec<String> = lows
        .iter()
        .chain(ups.iter())
        .map(|&i| y.label(i).to_string())
        .collect();
    let w = fresh(&labels, "w");
    labels.push(w.clone());
    let mut pairs: Vec<(String, String)> = Vec::new();
    for &i in &lows {
        pairs.push((y.label(i).to_string(), w.clone()));
    }
    for &j in &ups {
        pairs.push((w.clone(), y.label(j).to_string()));
    }
    let x = Arc::new(Poset::from_covers(labels, pairs).expect("sandwich is acyclic"));
    let mut assignment = vec![None; x.len()];
    for (k, &i) in lows.iter().enumerate() {
        assignment[k] = Some(i);
    }
    for (k, &j) in ups.iter().enumerate() {
        assignment[lows.len() + k] = Some(j);
    }
    let f = MonotoneMap::new(x.clone(), y.clone(), assignment).expect("gap sides are ordered");
    (x, f)
}

/// Sandwich over a base poset embedded wholesale: `x` is `base` plus one
/// element `w` between `gap.lower` and `gap.upper`; the map is the identity
/// embedding of `base` into `y` (whose first `|base|` labels match).
fn base_sandwich(base: &Arc<Poset>, gap: &GapPair) -> (Arc<Poset>, MonotoneMap) {
    let mut labels: Vec<String> = base.labels().to_vec();
    let w = fresh(&labels, "w");
    labels.push(w.clone());
    let mut pairs: Vec<(String, String)> = Vec::new();
    for i in 0..base.len() {
        for j in 0..base.len() {
            if i != j && base.leq(i, j) {
                pairs.push((base.label(i).to_string(), base.label(j).to_string()));
            }
        }
    }
    for i in gap.lower.iter() {
        pairs.push((base.label(i).to_string(), w.clone()));
    }
    for j in gap.upper.iter() {
        pairs.push((w.clone(), base.label(j).to_string()));
    }
    let x = Arc::new(Poset::from_covers(labels, pairs).expect("sandwich is acyclic"));
    let mut assignment = vec![None; x.len()];
    for (i, slot) in assignment.iter_mut().take(base.len()).enumerate() {
        *slot = Some(i);
    }
    let f = MonotoneMap::new(x.clone(), base.clone(), assignment).expect("identity embedding");
    (x, f)
}

fn instance_cx(
    kind: &str,
    f: &MonotoneMap,
    expect_extension: bool,
    description: String,
) -> Counterexample {
    let domain = f.domain().to_doc();
    let codomain = f.codomain().to_doc();
    let map = f.to_label_pairs();
    let instance = match kind {
        "greedy" => CxInstance::GreedyExtension {
            domain,
            codomain,
            map,
            expect_extension,
        },
        "extremes" => CxInstance::ExtremesExtension {
            domain,
            codomain,
            map,
            expect_extension,
        },
        _ => CxInstance::Extension {
            domain,
            codomain,
            map,
            expect_extension,
        },
    };
    Counterexample {
        description,
        instance,
    }
}

struct CheckOutcome {
    universe: String,
    checked: u64,
    counterexample: Option<Counterexample>,
}

/// Runs one registry entry over its capped universe.
pub fn check_theorem(
    id: TheoremId,
    caps: &TheoremCaps,
) -> Result<TheoremCheckResult, OracleError> {
    let started = Instant::now();
    let outcome = match id {
        TheoremId::T4 => check_t4(caps)?,
        TheoremId::C211 => check_c211(caps)?,
        TheoremId::C6 => check_c6(caps)?,
        TheoremId::T5 => check_t5(caps)?,
        TheoremId::L6 => check_l6(caps)?,
        TheoremId::L3 => check_l3(caps)?,
        TheoremId::T10 => check_t10(caps)?,
        TheoremId::S43 => check_s43(caps)?,
        TheoremId::T46 => check_t46(caps)?,
        TheoremId::T53 => check_t53(caps)?,
    };
    Ok(TheoremCheckResult {
        theorem: id.as_str().to_string(),
        universe: outcome.universe,
        pass: outcome.counterexample.is_none(),
        checked: outcome.checked,
        counterexample: outcome.counterexample,
        millis: started.elapsed().as_millis() as u64,
    })
}

fn check_t4(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(4);
    let stride = caps.sample.unwrap_or(40).max(1) as u32;
    let posets = posets_upto(max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for y in &posets {
        if classify::is_complete_lattice(y) {
            let res = sweep_instances(y, &posets, |_, _| true, &mut |f| {
                checked += 1;
                if extension::extend_exists(f).expect("isotone").is_none() {
                    return Err(Box::new(instance_cx(
                        "exists",
                        f,
                        true,
                        "complete-lattice codomain admits no extension here".into(),
                    )));
                }
                let lo = extension::lower_extension(f).expect("complete lattice");
                let hi = extension::upper_extension(f).expect("complete lattice");
                if !lo.extends(f) || !hi.extends(f) {
                    return Err(Box::new(instance_cx(
                        "exists",
                        f,
                        true,
                        "lower/upper construction is not an extension".into(),
                    )));
                }
                let small = f.domain().len() <= 3 && f.codomain().len() <= 3;
                if (small || rng.random_ratio(1, stride)) && family_bounds_violated(f) {
                    return Err(Box::new(Counterexample {
                        description: "family member escapes the lower/upper bounds".into(),
                        instance: CxInstance::FamilyBounds {
                            domain: f.domain().to_doc(),
                            codomain: f.codomain().to_doc(),
                            map: f.to_label_pairs(),
                        },
                    }));
                }
                Ok(())
            });
            if let Err(found) = res {
                cx = Some(*found);
                break 'outer;
            }
        } else {
            // A finite poset that is not a complete lattice has a gap pair;
            // the sandwich around it must admit no extension.
            let gap = classify::quasilattice_failure(y, None)
                .expect("finite non-lattice has a gap pair");
            let (_, f) = gap_instance(y, &gap);
            checked += 1;
            if extension::extend_exists(&f).expect("isotone").is_some() {
                cx = Some(instance_cx(
                    "exists",
                    &f,
                    false,
                    "gap sandwich unexpectedly extends".into(),
                ));
                break 'outer;
            }
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "Y, X: all labelled posets with 1..={max} elements; family bounds sampled 1-in-{stride} (seed {}), always below |X|,|Y|<=3",
            caps.seed
        ),
        checked,
        counterexample: cx,
    })
}

fn check_c211(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(4);
    let stride = caps.sample.unwrap_or(150).max(1) as u32;
    let posets = posets_upto(max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for y in &posets {
        if !classify::is_complete_lattice(y) {
            continue;
        }
        let res = sweep_instances(y, &posets, |_, _| true, &mut |f| {
            let small = f.domain().len() <= 3 && f.codomain().len() <= 3;
            if !(small || rng.random_ratio(1, stride)) {
                return Ok(());
            }
            checked += 1;
            if family_lattice_violated(f) {
                return Err(Box::new(Counterexample {
                    description:
                        "extension family is not a lattice bounded by the lower/upper extensions"
                            .into(),
                    instance: CxInstance::FamilyLattice {
                        domain: f.domain().to_doc(),
                        codomain: f.codomain().to_doc(),
                        map: f.to_label_pairs(),
                    },
                }));
            }
            Ok(())
        });
        if let Err(found) = res {
            cx = Some(*found);
            break 'outer;
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "complete-lattice Y and all X with 1..={max} elements; families sampled 1-in-{stride} (seed {}), always below |X|,|Y|<=3",
            caps.seed
        ),
        checked,
        counterexample: cx,
    })
}

fn check_c6(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(4);
    let posets = posets_upto(max)?;
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for y in &posets {
        if !classify::is_lattice(y).expect("nonempty") {
            continue;
        }
        let res = sweep_instances(y, &posets, |_, _| true, &mut |f| {
            checked += 1;
            if extension::extend_exists(f).expect("isotone").is_none() {
                return Err(Box::new(instance_cx(
                    "exists",
                    f,
                    true,
                    "lattice codomain admits no extension of a finite-subset map".into(),
                )));
            }
            Ok(())
        });
        if let Err(found) = res {
            cx = Some(*found);
            break 'outer;
        }
    }
    Ok(CheckOutcome {
        universe: format!("lattice Y and all X with 1..={max} elements, every A and f"),
        checked,
        counterexample: cx,
    })
}

fn check_t5(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max_a = caps.max_size.unwrap_or(3);
    let max_y = max_a;
    let bases = posets_upto(max_a)?;
    let ys = posets_upto(max_y)?;
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for a in &bases {
        let ambient = ambient_posets(a, a.len() + 2)?;
        if classify::is_complete_lattice(a) {
            for x in &ambient {
                let order = x.linear_extension();
                let members: Vec<usize> =
                    order.iter().copied().filter(|&i| i < a.len()).collect();
                for y in &ys {
                    let res = for_each_isotone_on(x, y, &members, &mut |f| {
                        checked += 1;
                        if extension::extend_exists(f).expect("isotone").is_none() {
                            return Err(Box::new(instance_cx(
                                "exists",
                                f,
                                true,
                                "complete-lattice subset fails to extend out of an ambient poset"
                                    .into(),
                            )));
                        }
                        Ok(())
                    });
                    if let Err(found) = res {
                        cx = Some(*found);
                        break 'outer;
                    }
                }
            }
        } else {
            // The identity on a non-complete-lattice A must fail to extend
            // out of the sandwich ambient poset into Y = A.
            let gap =
                classify::quasilattice_failure(a, None).expect("finite non-lattice has a gap");
            let (_, f) = base_sandwich(a, &gap);
            checked += 1;
            if extension::extend_exists(&f).expect("isotone").is_some() {
                cx = Some(instance_cx(
                    "exists",
                    &f,
                    false,
                    "identity extends out of the sandwich although A is not a complete lattice"
                        .into(),
                ));
                break 'outer;
            }
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "A: posets with 1..={max_a} elements; ambient X ⊇ A with |X| <= |A|+2; Y with 1..={max_y} elements"
        ),
        checked,
        counterexample: cx,
    })
}

/// All labelled posets of size `|a|..=max_n` whose first `|a|` indices
/// induce exactly `a`'s order.
fn ambient_posets(a: &Arc<Poset>, max_n: usize) -> Result<Vec<Arc<Poset>>, OracleError> {
    let mut out = Vec::new();
    for n in a.len()..=max_n {
        for x in enumerate_posets(n, EnumMode::Labeled)? {
            let embeds = (0..a.len())
                .all(|i| (0..a.len()).all(|j| x.leq(i, j) == a.leq(i, j)));
            if embeds {
                out.push(Arc::new(x));
            }
        }
    }
    Ok(out)
}

fn check_l6(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(5);
    let posets = posets_upto(max)?;
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for x in &posets {
        if classify::components(x).len() != 1 || classify::is_chain(x) {
            continue;
        }
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                if x.comparable(i, j) {
                    continue;
                }
                let a = ElementSet::from_indices(x.len(), [i, j]);
                let f = MonotoneMap::identity_on(x.clone(), &a).expect("two points");
                checked += 1;
                if extension::extend_exists(&f).expect("isotone").is_some() {
                    cx = Some(instance_cx(
                        "exists",
                        &f,
                        false,
                        "identity on an incomparable pair extends over a connected non-chain"
                            .into(),
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "connected non-chain X with 1..={max} elements, every incomparable pair"
        ),
        checked,
        counterexample: cx,
    })
}

fn check_l3(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(5);
    let posets = posets_upto(max)?;
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for x in &posets {
        if !classify::is_complete_lattice(x) {
            continue;
        }
        for mask in 1u64..1 << x.len() {
            let a = ElementSet::from_mask(x.len(), mask);
            let f = MonotoneMap::identity_on(x.clone(), &a).expect("nonempty");
            checked += 1;
            if extension::extend_exists(&f).expect("isotone").is_some()
                && !classify::is_complete_lattice(f.codomain())
            {
                cx = Some(Counterexample {
                    description: "retract of a complete lattice is not a complete lattice".into(),
                    instance: CxInstance::Class {
                        poset: f.codomain().to_doc(),
                        property: "complete_lattice".into(),
                        expected: true,
                    },
                });
                break 'outer;
            }
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "complete-lattice X with 1..={max} elements, every nonempty A ⊆ X"
        ),
        checked,
        counterexample: cx,
    })
}

fn check_t10(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(4);
    let posets = posets_upto(max)?;
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for x in &posets {
        let chains = chain_components(x);
        let mut all_extend = true;
        for mask in 1u64..1 << x.len() {
            let a = ElementSet::from_mask(x.len(), mask);
            let f = MonotoneMap::identity_on(x.clone(), &a).expect("nonempty");
            checked += 1;
            let extends = extension::extend_exists(&f).expect("isotone").is_some();
            if chains && !extends {
                cx = Some(instance_cx(
                    "exists",
                    &f,
                    true,
                    "identity fails to extend although every component is a chain".into(),
                ));
                break 'outer;
            }
            if !extends {
                all_extend = false;
                break;
            }
            if chains && retraction_violated(x, &a) {
                cx = Some(Counterexample {
                    description: "componentwise retraction deviates from its formula".into(),
                    instance: CxInstance::Retraction {
                        domain: x.to_doc(),
                        subset: x.set_labels(&a),
                    },
                });
                break 'outer;
            }
        }
        if !chains && all_extend {
            cx = Some(Counterexample {
                description:
                    "every identity extends although some component is not a chain".into(),
                instance: CxInstance::Class {
                    poset: x.to_doc(),
                    property: "chain_components".into(),
                    expected: false,
                },
            });
            break 'outer;
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "X with 1..={max} elements; identity maps on every nonempty A, retraction formula on chain-component posets"
        ),
        checked,
        counterexample: cx,
    })
}

fn check_s43(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(5);
    let posets = posets_upto(max)?;
    let mut checked = 0u64;
    let mut cx = None;
    for p in &posets {
        checked += 1;
        let quasi = classify::is_quasilattice(p, None);
        let lattice = classify::is_lattice(p).expect("nonempty");
        if quasi != lattice {
            cx = Some(Counterexample {
                description: "quasilattice and lattice disagree on a finite poset".into(),
                instance: CxInstance::Class {
                    poset: p.to_doc(),
                    property: "quasilattice_equals_lattice".into(),
                    expected: true,
                },
            });
            break;
        }
    }
    Ok(CheckOutcome {
        universe: format!("all labelled posets with 1..={max} elements"),
        checked,
        counterexample: cx,
    })
}

fn check_t46(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(4);
    let posets = posets_upto(max)?;
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for y in &posets {
        if classify::is_quasilattice(y, None) {
            let res = sweep_instances(y, &posets, |_, _| true, &mut |f| {
                checked += 1;
                match extension::extend_greedy(f, None).expect("isotone") {
                    Some(g) => {
                        if !g.extends(f) {
                            return Err(Box::new(instance_cx(
                                "greedy",
                                f,
                                true,
                                "greedy result does not extend its input".into(),
                            )));
                        }
                    }
                    None => {
                        return Err(Box::new(instance_cx(
                            "greedy",
                            f,
                            true,
                            "greedy fails over a quasilattice codomain".into(),
                        )));
                    }
                }
                if extension::extend_exists(f).expect("isotone").is_none() {
                    return Err(Box::new(instance_cx(
                        "exists",
                        f,
                        true,
                        "no extension over a quasilattice codomain".into(),
                    )));
                }
                Ok(())
            });
            if let Err(found) = res {
                cx = Some(*found);
                break 'outer;
            }
        } else {
            let gap = classify::quasilattice_failure(y, None).expect("non-quasilattice");
            let (_, f) = gap_instance(y, &gap);
            checked += 1;
            if extension::extend_greedy(&f, None).expect("isotone").is_some() {
                cx = Some(instance_cx(
                    "greedy",
                    &f,
                    false,
                    "greedy succeeds on the gap sandwich".into(),
                ));
                break 'outer;
            }
            if extension::extend_exists(&f).expect("isotone").is_some() {
                cx = Some(instance_cx(
                    "exists",
                    &f,
                    false,
                    "gap sandwich unexpectedly extends".into(),
                ));
                break 'outer;
            }
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "Y, X: all labelled posets with 1..={max} elements; greedy and complete search on every instance"
        ),
        checked,
        counterexample: cx,
    })
}

fn check_t53(caps: &TheoremCaps) -> Result<CheckOutcome, OracleError> {
    let max = caps.max_size.unwrap_or(4);
    let posets = posets_upto(max)?;
    let mut checked = 0u64;
    let mut cx = None;

    'outer: for y in &posets {
        if classify::is_local_complete_lattice(y) {
            let with_extremes = |x: &Poset, a: &ElementSet| {
                !a.is_empty() && x.least_of(a).is_some() && x.greatest_of(a).is_some()
            };
            let res = sweep_instances(y, &posets, with_extremes, &mut |f| {
                checked += 1;
                let Some(g) = extension::extend_preserving_extremes(f).expect("preconditions hold")
                else {
                    return Err(Box::new(instance_cx(
                        "extremes",
                        f,
                        true,
                        "no extreme-preserving extension over a local complete lattice".into(),
                    )));
                };
                let x = f.domain();
                let a = f.defined_on();
                let lo = f.value(x.least_of(a).unwrap()).unwrap();
                let hi = f.value(x.greatest_of(a).unwrap()).unwrap();
                let y = f.codomain();
                let within = (0..x.len()).all(|i| {
                    let v = g.value(i).unwrap();
                    y.leq(lo, v) && y.leq(v, hi)
                });
                if !g.extends(f) || !within {
                    return Err(Box::new(instance_cx(
                        "extremes",
                        f,
                        true,
                        "extension escapes the image interval".into(),
                    )));
                }
                Ok(())
            });
            if let Err(found) = res {
                cx = Some(*found);
                break 'outer;
            }
        } else {
            let f = interval_witness(y);
            checked += 1;
            if extension::extend_preserving_extremes(&f)
                .expect("preconditions hold")
                .is_some()
            {
                cx = Some(instance_cx(
                    "extremes",
                    &f,
                    false,
                    "extreme-preserving extension exists over a non-lattice interval".into(),
                ));
                break 'outer;
            }
        }
    }
    Ok(CheckOutcome {
        universe: format!(
            "Y, X: all labelled posets with 1..={max} elements; every A with least and greatest"
        ),
        checked,
        counterexample: cx,
    })
}

/// For a poset with a non-lattice interval, builds the instance that cannot
/// be extended while preserving extremes: the whole interval plus one point
/// squeezed into the gap that has no join (or meet) inside the interval.
fn interval_witness(y: &Arc<Poset>) -> MonotoneMap {
    let fail = classify::local_complete_lattice_failure(y).expect("not a local complete lattice");
    let interval = y.up_set(fail.lo).intersection(y.down_set(fail.hi));
    let gap = match fail.inner {
        LatticeFailure::NoSup(a, b) => {
            let pair = ElementSet::from_indices(y.len(), [a, b]);
            let majorants = y.up_cone(&pair).intersection(&interval);
            let mins = y.minimal_of(&majorants).to_vec();
            GapPair {
                lower: pair,
                upper: ElementSet::from_indices(y.len(), mins.into_iter().take(2)),
            }
        }
        LatticeFailure::NoInf(a, b) => {
            let pair = ElementSet::from_indices(y.len(), [a, b]);
            let minorants = y.down_cone(&pair).intersection(&interval);
            let maxs = y.maximal_of(&minorants).to_vec();
            GapPair {
                lower: ElementSet::from_indices(y.len(), maxs.into_iter().take(2)),
                upper: pair,
            }
        }
        // Intervals always carry their endpoints as bounds.
        LatticeFailure::NoLeast | LatticeFailure::NoGreatest => unreachable!(),
    };
    let (base, _) = y.induced_with_map(&interval).expect("nonempty interval");
    let base = Arc::new(base);
    // Translate the gap into the interval's own indexing, then sandwich.
    let members: Vec<usize> = interval.to_vec();
    let translate = |s: &ElementSet| {
        ElementSet::from_indices(
            members.len(),
            s.iter().map(|old| members.iter().position(|&m| m == old).unwrap()),
        )
    };
    let local_gap = GapPair {
        lower: translate(&gap.lower),
        upper: translate(&gap.upper),
    };
    let (x, id_into_base) = base_sandwich(&base, &local_gap);
    // Re-target the identity embedding into the original y.
    let assignment = id_into_base
        .assignment()
        .iter()
        .map(|v| v.map(|k| members[k]))
        .collect();
    MonotoneMap::new(x, y.clone(), assignment).expect("interval embeds isotonically")
}
