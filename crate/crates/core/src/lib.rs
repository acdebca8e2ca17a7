//! Finite posets, isotone maps, and their extensions.
//!
//! The crate answers one family of questions at desk scale: given an
//! isotone (order-preserving) map defined on part of a finite poset, when
//! does it extend to the whole poset, and what do the extensions look like?
//!
//! * [`poset`] — immutable finite posets: construction from cover pairs,
//!   cones, bounds, suprema/infima, duality, sums, the powerset embedding.
//! * [`map`] / [`family`] — partial isotone maps and the family of all
//!   their total extensions under the pointwise order.
//! * [`extension`] — the extension constructions: pointwise least/greatest,
//!   greedy, complete search, chain-component retraction,
//!   extreme-preserving, and full enumeration.
//! * [`classify`] — the class hierarchy (chain, lattice, complete lattice,
//!   quasilattice, local variants, chain-component numbering) with
//!   witnesses.
//! * [`oracle`] — exhaustive enumeration of small posets and a registry of
//!   whole-theorem checks with replayable counterexamples.
//!
//! ```
//! use std::sync::Arc;
//! use isoext::{extension, fixtures, MonotoneMap};
//!
//! // Map the endpoints of a three-chain into a two-chain and ask for the
//! // least isotone completion: the middle element falls to the bottom.
//! let f = MonotoneMap::new(
//!     Arc::new(fixtures::chain(3)),
//!     Arc::new(fixtures::chain(2)),
//!     vec![Some(0), None, Some(1)],
//! )
//! .unwrap();
//! let lowest = extension::lower_extension(&f).unwrap();
//! assert_eq!(lowest.value(1), Some(0));
//! ```

pub mod classify;
pub mod extension;
pub mod family;
pub mod fixtures;
pub mod map;
pub mod oracle;
pub mod poset;
pub mod set;

pub use family::ExtensionFamily;
pub use map::{MapDoc, MonotoneMap, PosetRef};
pub use poset::{Poset, PosetDoc, PosetError};
pub use set::ElementSet;
