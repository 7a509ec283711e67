//! Fixed-radius ends estimates: count components of the annulus between two
//! ball radii that still touch the outer sphere. A group has 0, 1, 2 or
//! infinitely many ends; the verdict here is an estimate at the given radii,
//! never a proof about the infinite graph.

use super::GraphWindow;
use crate::error::Result;
use crate::group::MarkedGroup;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndsVerdict {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "many")]
    Many,
}

impl std::fmt::Display for EndsVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EndsVerdict::Zero => "0",
            EndsVerdict::One => "1",
            EndsVerdict::Two => "2",
            EndsVerdict::Many => "many",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EndsEstimate {
    pub inner: u32,
    pub outer: u32,
    /// Components of the annulus (layers in [inner, outer]) containing an
    /// outer-sphere vertex.
    pub components: usize,
    pub verdict: EndsVerdict,
}

/// Estimates the number of ends of `group` from the ball of radius `outer`:
/// verdict 0 exactly when the window exhausts a finite group, otherwise the
/// count of boundary-touching annulus components, capped at "many" from 3 up.
pub fn count_ends(group: &MarkedGroup, inner: u32, outer: u32, cap: usize) -> Result<EndsEstimate> {
    assert!(inner < outer, "need inner < outer");
    let w = GraphWindow::build_cayley(group, outer, cap)?;
    count_ends_in(&w, inner)
}

/// Same estimate on an already-built window (its radius is the outer one).
pub fn count_ends_in(w: &GraphWindow, inner: u32) -> Result<EndsEstimate> {
    let outer = w.radius();
    if w.is_exhaustive() {
        return Ok(EndsEstimate {
            inner,
            outer,
            components: 0,
            verdict: EndsVerdict::Zero,
        });
    }
    let comps = w.components_of(|v| w.layer(v) >= inner);
    let touching = comps
        .iter()
        .filter(|c| c.iter().any(|&v| w.layer(v) == outer))
        .count();
    let verdict = match touching {
        0 => EndsVerdict::Zero, // unreachable for non-exhausted windows
        1 => EndsVerdict::One,
        2 => EndsVerdict::Two,
        _ => EndsVerdict::Many,
    };
    Ok(EndsEstimate {
        inner,
        outer,
        components: touching,
        verdict,
    })
}
