//! Constructors for candidate translation-like actions on windows.

mod flow;
mod free;
mod zpath;

pub use free::construct_free_action;
pub use zpath::{construct_z_action, z_from_infinite_order_element};

use crate::piecewise::VertexMap;

/// A Hamiltonian path (or cycle, on exhaustive windows) through a window:
/// the successor map is the candidate Z-action generator.
#[derive(Debug, Clone)]
pub struct PathAction {
    /// Window vertex indices in visiting order, each exactly once.
    pub order: Vec<usize>,
    /// Maximum graph displacement of the successor map, wrap included.
    pub wobble: u32,
    /// Total bijection on an exhaustive window: the last vertex wraps to
    /// the first.
    pub closes_cycle: bool,
    pub core_radius: u32,
}

impl PathAction {
    /// Successor map on window vertices.
    pub fn successor_map(&self, window_len: usize) -> VertexMap {
        let mut map = vec![None; window_len];
        for pair in self.order.windows(2) {
            map[pair[0]] = Some(pair[1]);
        }
        if self.closes_cycle && self.order.len() > 1 {
            map[self.order[self.order.len() - 1]] = Some(self.order[0]);
        }
        VertexMap(map)
    }

    pub fn covers_all(&self, window_len: usize) -> bool {
        let mut seen = vec![false; window_len];
        for &v in &self.order {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// A labeled forest on (a subset of) window vertices: following the letter
/// edges is the candidate free-group action. Letters are 1-based, negative
/// for inverses; an edge (u, v, l) reads as l from u and as -l from v.
#[derive(Debug, Clone)]
pub struct ForestAction {
    pub rank: usize,
    pub edges: Vec<(usize, usize, i8)>,
    pub covered: Vec<usize>,
    /// Covered vertices carrying all 2d distinct letters.
    pub interior: Vec<usize>,
    pub wobble: u32,
    pub core_radius: u32,
}

impl ForestAction {
    /// letter -> neighbor lookup table per vertex.
    pub fn adjacency(&self, window_len: usize) -> Vec<Vec<(i8, usize)>> {
        let mut adj: Vec<Vec<(i8, usize)>> = vec![Vec::new(); window_len];
        for &(u, v, l) in &self.edges {
            adj[u].push((l, v));
            adj[v].push((-l, u));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Follow one letter from a vertex, if that edge exists.
    pub fn step(adj: &[Vec<(i8, usize)>], v: usize, letter: i8) -> Option<usize> {
        adj[v]
            .binary_search_by_key(&letter, |&(l, _)| l)
            .ok()
            .map(|i| adj[v][i].1)
    }
}
