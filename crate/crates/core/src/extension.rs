//! Construction and existence of isotone total extensions.
//!
//! Given an isotone map `f` defined on `A ⊆ X` with values in `Y`, the
//! operations here answer, in increasing order of generality:
//!
//! * [`lower_extension`] / [`upper_extension`] — the pointwise least and
//!   greatest extensions, defined whenever `Y` is a complete lattice:
//!   `f_low(x) = sup { f(t) : t in A, t <= x }` and dually. Every other
//!   isotone extension sits between them.
//! * [`extend_greedy`] — one pass over the unassigned elements, placing each
//!   between the images of its already-assigned lower and upper cones. Never
//!   fails when every such gap can be filled (for finite codomains: when `Y`
//!   is a lattice); a `None` from greedy does *not* mean no extension exists.
//! * [`extend_exists`] — complete backtracking search; `None` is a proof
//!   that no isotone extension exists.
//! * [`extend_chain_components`] — the closed-form retraction onto a subset
//!   when every comparability component of the domain is a chain.
//! * [`extend_preserving_extremes`] — an extension confined to the interval
//!   spanned by the images of the least and greatest elements of `A`.
//! * [`enumerate_extensions`] — the whole family, canonically ordered.

use std::sync::Arc;

use thiserror::Error;

use crate::classify;
use crate::family::ExtensionFamily;
use crate::map::MonotoneMap;
use crate::poset::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("input map is not isotone")]
    InputNotIsotone,
    #[error("codomain is not a complete lattice")]
    CodomainNotCompleteLattice,
    #[error("defined subset has no least or no greatest element")]
    NoExtremesInA,
    #[error("a comparability component of the domain is not a chain")]
    ComponentNotChain,
    #[error("defined subset is empty")]
    EmptyA,
    #[error("fallback element lies outside the defined subset")]
    FallbackOutsideSubset,
    #[error("map is not the identity embedding of its defined subset")]
    NotIdentityOnSubset,
    #[error("invalid processing order: {0}")]
    InvalidOrder(String),
    #[error("{needed} assignments exceed cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },
}

/// `f` is isotone on its defined subset; with `total` set, also defined
/// everywhere.
pub fn check_isotone(f: &MonotoneMap, total: bool) -> bool {
    (!total || f.is_total()) && f.is_isotone_on_defined()
}

fn require_isotone(f: &MonotoneMap) -> Result<(), ExtendError> {
    if f.is_isotone_on_defined() {
        Ok(())
    } else {
        Err(ExtendError::InputNotIsotone)
    }
}

/// The pointwise least isotone extension `x -> sup { f(t) : t in A, t <= x }`,
/// with the empty supremum landing on the bottom of the codomain. Requires a
/// complete-lattice codomain.
pub fn lower_extension(f: &MonotoneMap) -> Result<MonotoneMap, ExtendError> {
    require_isotone(f)?;
    if !classify::is_complete_lattice(f.codomain()) {
        return Err(ExtendError::CodomainNotCompleteLattice);
    }
    let x = f.domain();
    let values = (0..x.len())
        .map(|i| {
            let below = f.defined_on().intersection(x.down_set(i));
            f.codomain()
                .sup_of(&f.image_of(&below))
                .expect("complete lattice has all suprema")
        })
        .collect();
    Ok(MonotoneMap::total(f.domain_arc().clone(), f.codomain_arc().clone(), values)
        .expect("lower extension is isotone"))
}

/// The pointwise greatest isotone extension, dual to [`lower_extension`]:
/// `x -> inf { f(t) : t in A, x <= t }`.
pub fn upper_extension(f: &MonotoneMap) -> Result<MonotoneMap, ExtendError> {
    require_isotone(f)?;
    if !classify::is_complete_lattice(f.codomain()) {
        return Err(ExtendError::CodomainNotCompleteLattice);
    }
    let x = f.domain();
    let values = (0..x.len())
        .map(|i| {
            let above = f.defined_on().intersection(x.up_set(i));
            f.codomain()
                .inf_of(&f.image_of(&above))
                .expect("complete lattice has all infima")
        })
        .collect();
    Ok(MonotoneMap::total(f.domain_arc().clone(), f.codomain_arc().clone(), values)
        .expect("upper extension is isotone"))
}

/// Assigns the unassigned elements one at a time, in `order` (default: the
/// domain's linear extension restricted to them). Each element receives the
/// least-index minimal codomain element lying above the images of its
/// already-assigned lower cone and below those of its upper cone. Returns
/// `None` as soon as some gap cannot be filled; greedy failure does not
/// rule out an extension.
pub fn extend_greedy(
    f: &MonotoneMap,
    order: Option<&[usize]>,
) -> Result<Option<MonotoneMap>, ExtendError> {
    require_isotone(f)?;
    let x = f.domain();
    let y = f.codomain();
    let free: Vec<usize> = match order {
        Some(given) => {
            let mut seen = ElementSet::empty(x.len());
            for &i in given {
                if i >= x.len() {
                    return Err(ExtendError::InvalidOrder(format!("index {i} out of range")));
                }
                if f.defined_on().contains(i) {
                    return Err(ExtendError::InvalidOrder(format!(
                        "`{}` is already assigned",
                        x.label(i)
                    )));
                }
                if seen.contains(i) {
                    return Err(ExtendError::InvalidOrder(format!(
                        "`{}` listed twice",
                        x.label(i)
                    )));
                }
                seen.insert(i);
            }
            if seen.len() != x.len() - f.defined_on().len() {
                return Err(ExtendError::InvalidOrder(
                    "order must cover every unassigned element".to_string(),
                ));
            }
            given.to_vec()
        }
        None => x
            .linear_extension()
            .into_iter()
            .filter(|i| !f.defined_on().contains(*i))
            .collect(),
    };

    let mut assignment = f.assignment().to_vec();
    let mut assigned = f.defined_on().clone();
    let image = |assignment: &[Option<usize>], among: &ElementSet| {
        let mut img = ElementSet::empty(y.len());
        for i in among.iter() {
            if let Some(v) = assignment[i] {
                img.insert(v);
            }
        }
        img
    };
    for xi in free {
        let below = x.down_set(xi).intersection(&assigned);
        let above = x.up_set(xi).intersection(&assigned);
        let candidates = y
            .up_cone(&image(&assignment, &below))
            .intersection(&y.down_cone(&image(&assignment, &above)));
        let Some(pick) = y.minimal_of(&candidates).first() else {
            return Ok(None);
        };
        assignment[xi] = Some(pick);
        assigned.insert(xi);
    }
    Ok(Some(
        MonotoneMap::new(f.domain_arc().clone(), f.codomain_arc().clone(), assignment)
            .expect("greedy keeps isotonicity"),
    ))
}

/// Complete backtracking search for an isotone extension. Candidate sets are
/// maintained incrementally and the element with the fewest candidates is
/// assigned first (ties broken by linear-extension position). `None` means
/// no extension exists.
pub fn extend_exists(f: &MonotoneMap) -> Result<Option<MonotoneMap>, ExtendError> {
    require_isotone(f)?;
    let x = f.domain();
    let y = f.codomain();
    let free: Vec<usize> = {
        let lin = x.linear_extension();
        lin.into_iter().filter(|i| !f.defined_on().contains(*i)).collect()
    };
    if free.is_empty() {
        return Ok(Some(f.clone()));
    }

    // Initial candidates: between the images of the assigned cones.
    let mut cands: Vec<ElementSet> = free
        .iter()
        .map(|&xi| {
            let below = x.down_set(xi).intersection(f.defined_on());
            let above = x.up_set(xi).intersection(f.defined_on());
            y.up_cone(&f.image_of(&below))
                .intersection(&y.down_cone(&f.image_of(&above)))
        })
        .collect();

    let mut assignment = f.assignment().to_vec();
    let mut done = vec![false; free.len()];
    if search(x, y, &free, &mut cands, &mut done, &mut assignment) {
        return Ok(Some(
            MonotoneMap::new(f.domain_arc().clone(), f.codomain_arc().clone(), assignment)
                .expect("search result is isotone"),
        ));
    }
    Ok(None)
}

fn search(
    x: &Poset,
    y: &Poset,
    free: &[usize],
    cands: &mut Vec<ElementSet>,
    done: &mut Vec<bool>,
    assignment: &mut Vec<Option<usize>>,
) -> bool {
    // Fail-first: smallest candidate set, earliest in `free` on ties.
    let Some(slot) = (0..free.len())
        .filter(|&k| !done[k])
        .min_by_key(|&k| cands[k].len())
    else {
        return true;
    };
    let xi = free[slot];
    done[slot] = true;
    for v in cands[slot].clone().iter() {
        assignment[xi] = Some(v);
        let mut feasible = true;
        let mut trail: Vec<(usize, ElementSet)> = Vec::new();
        for k in 0..free.len() {
            if done[k] {
                continue;
            }
            let u = free[k];
            let constraint = if x.lt(xi, u) {
                Some(y.up_set(v))
            } else if x.lt(u, xi) {
                Some(y.down_set(v))
            } else {
                None
            };
            if let Some(row) = constraint {
                if !cands[k].is_subset_of(row) {
                    trail.push((k, cands[k].clone()));
                    cands[k].intersect_with(row);
                    if cands[k].is_empty() {
                        feasible = false;
                        break;
                    }
                }
            }
        }
        if feasible && search(x, y, free, cands, done, assignment) {
            return true;
        }
        for (k, old) in trail {
            cands[k] = old;
        }
    }
    assignment[xi] = None;
    done[slot] = false;
    false
}

/// A map `f` is eligible when it is exactly the identity embedding of its
/// defined subset `A` into the induced subposet. When every comparability
/// component of the domain is a chain, each element retracts onto the
/// largest member of `A` in its component lying below it — falling back to
/// the least such member, or to `fallback` on components missing `A`
/// entirely. The result is a total isotone extension of `f`.
pub fn extend_chain_components(
    f: &MonotoneMap,
    fallback: usize,
) -> Result<MonotoneMap, ExtendError> {
    let x = f.domain();
    let a = f.defined_on();
    if a.is_empty() {
        return Err(ExtendError::EmptyA);
    }
    if !a.contains(fallback) {
        return Err(ExtendError::FallbackOutsideSubset);
    }
    let ident = MonotoneMap::identity_on(f.domain_arc().clone(), a).expect("nonempty");
    if *f != ident {
        return Err(ExtendError::NotIdentityOnSubset);
    }

    let comps = classify::components(x);
    for comp in &comps {
        let members = comp.to_vec();
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                if !x.comparable(i, j) {
                    return Err(ExtendError::ComponentNotChain);
                }
            }
        }
    }

    // Codomain position of each member of A.
    let mut position = vec![usize::MAX; x.len()];
    for (pos, old) in a.iter().enumerate() {
        position[old] = pos;
    }

    let mut assignment = vec![None; x.len()];
    for comp in &comps {
        let a_comp = a.intersection(comp);
        for xi in comp.iter() {
            let target = if a_comp.is_empty() {
                fallback
            } else {
                let below = x.down_set(xi).intersection(&a_comp);
                match x.greatest_of(&below) {
                    Some(t) => t,
                    // Empty supremum within the component's chain: its least
                    // member of A.
                    None => x.least_of(&a_comp).expect("nonempty chain subset"),
                }
            };
            assignment[xi] = Some(position[target]);
        }
    }
    Ok(MonotoneMap::new(f.domain_arc().clone(), f.codomain_arc().clone(), assignment)
        .expect("componentwise retraction is isotone"))
}

/// An isotone extension whose values stay inside the interval
/// `[f(least of A), f(greatest of A)]`. Requires `A` to have both extremes;
/// searches the induced interval for an extension, so `None` is definitive.
pub fn extend_preserving_extremes(
    f: &MonotoneMap,
) -> Result<Option<MonotoneMap>, ExtendError> {
    require_isotone(f)?;
    let (x, y) = (f.domain(), f.codomain());
    let a = f.defined_on();
    let (Some(a_low), Some(a_high)) = (x.least_of(a), x.greatest_of(a)) else {
        return Err(ExtendError::NoExtremesInA);
    };
    let lo = f.value(a_low).expect("defined");
    let hi = f.value(a_high).expect("defined");
    let interval = y.up_set(lo).intersection(y.down_set(hi));
    let (interval_poset, members) = y
        .induced_with_map(&interval)
        .expect("interval contains its endpoints");
    let mut pos = vec![usize::MAX; y.len()];
    for (k, &old) in members.iter().enumerate() {
        pos[old] = k;
    }
    let restricted = MonotoneMap::new(
        f.domain_arc().clone(),
        Arc::new(interval_poset),
        f.assignment()
            .iter()
            .map(|v| v.map(|w| pos[w]))
            .collect(),
    )
    .expect("image lies in the interval");
    let Some(found) = extend_exists(&restricted)? else {
        return Ok(None);
    };
    let values = found
        .assignment()
        .iter()
        .map(|v| members[v.expect("total")])
        .collect();
    Ok(Some(
        MonotoneMap::total(f.domain_arc().clone(), f.codomain_arc().clone(), values)
            .expect("isotone in the full codomain"),
    ))
}

/// Every isotone total extension of `f`, in canonical order. The number of
/// raw assignments `|Y|^|X \ A|` must not exceed `cap`.
pub fn enumerate_extensions(
    f: &MonotoneMap,
    cap: u64,
) -> Result<ExtensionFamily, ExtendError> {
    require_isotone(f)?;
    let x = f.domain();
    let y = f.codomain();
    let free: Vec<usize> = (0..x.len()).filter(|&i| f.value(i).is_none()).collect();
    let needed = (y.len() as u128).checked_pow(free.len() as u32);
    match needed {
        Some(n) if n <= cap as u128 => {}
        _ => {
            return Err(ExtendError::CapExceeded {
                needed: needed.unwrap_or(u128::MAX),
                cap,
            })
        }
    }

    let mut extensions = Vec::new();
    if free.is_empty() {
        extensions.push(f.assignment().iter().map(|v| v.unwrap()).collect());
        return Ok(ExtensionFamily::new(f.clone(), extensions));
    }
    if y.is_empty() {
        return Ok(ExtensionFamily::new(f.clone(), extensions));
    }

    let mut values: Vec<usize> = f
        .assignment()
        .iter()
        .map(|v| v.unwrap_or(0))
        .collect();
    let mut odometer = vec![0usize; free.len()];
    loop {
        for (k, &xi) in free.iter().enumerate() {
            values[xi] = odometer[k];
        }
        if x.covers().iter().all(|&(i, j)| y.leq(values[i], values[j])) {
            extensions.push(values.clone());
        }
        let mut k = free.len();
        loop {
            if k == 0 {
                return Ok(ExtensionFamily::new(f.clone(), extensions));
            }
            k -= 1;
            odometer[k] += 1;
            if odometer[k] < y.len() {
                break;
            }
            odometer[k] = 0;
        }
    }
}
