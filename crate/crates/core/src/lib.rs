//! Finite posets and the operations used to decide which of them embed, saturated and
//! dimension-preserving, into the prime spectrum of a Noetherian UFD.
//!
//! * [`poset`]: representation, covers, heights, up-sets, subset predicates.
//! * [`iso`]: order isomorphism search.
//! * [`maps`]: the hierarchy of poset map checks.
//! * [`surgery`]: gluing, retraction, height-zero splitting, reduction to a point.
//! * [`realizability`]: the local / non-local UFD conditions and the constructions behind them.
//! * [`census`]: exhaustive enumeration up to isomorphism and population-wide verification.
//! * [`io`]: text formats for posets and maps, and DOT rendering.

pub mod census;
pub mod error;
pub mod io;
pub mod iso;
pub mod maps;
pub mod named;
pub mod poset;
pub mod realizability;
pub mod surgery;

pub use error::{PosetError, Result};
pub use iso::is_isomorphic;
pub use maps::{MapProperty, MapViolation, PosetMap};
pub use poset::{Induced, NodeId, Poset};
