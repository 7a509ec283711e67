//! Desk-scale translation-like actions on marked groups.
//!
//! The crate models locally compact groups by discrete marked groups with an
//! optional finite "compact open" subgroup, builds finite windows of their
//! Cayley and Cayley-Abels graphs, constructs candidate translation-like
//! actions of Z and of free groups, and certifies or refutes the defining
//! properties (bounded wobble, freeness, fundamental domains, cocompactness)
//! on those windows.

pub mod error;
pub mod group;
pub mod construct;
pub mod piecewise;
pub mod serial;
pub mod verify;
pub mod window;

pub use error::{Result, TlaError};
pub use group::{ElementData, FiniteSubgroup, GroupDescriptor, GroupElement, MarkedGroup, Subgroup};

/// Documented defaults for every numeric knob.
pub mod defaults {
    /// Hard radius of the word-metric BFS.
    pub const WORD_RADIUS: u32 = 12;
    /// Window vertex cap (overridable via the TLA_MAX_VERTICES env var).
    pub const WINDOW_CAP: usize = 1_000_000;
    /// Element cap when closing a translator set into a subgroup.
    pub const CLOSURE_CAP: usize = 10_000;
    /// Expansion gate threshold as an exact rational.
    pub const EXPANSION_THRESHOLD: (u64, u64) = (2, 5);
    /// Default annulus radii for ends estimates.
    pub const ENDS_INNER: u32 = 3;
    pub const ENDS_OUTER: u32 = 8;
    /// Maximum word length over T tried when lifting a graph map.
    pub const WITNESS_DEPTH: u32 = 1;
    /// Default freeness depth for verification.
    pub const FREE_DEPTH: u32 = 20;
}
