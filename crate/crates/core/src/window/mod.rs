//! Finite windows (balls) of Cayley and Cayley-Abels graphs.
//!
//! A window is immutable after construction: vertex list in discovery
//! order, symmetric labeled adjacency, BFS layers from the center, the
//! boundary sphere, and the core (vertices whose full neighborhood lies in
//! the window — the region where infinite-graph arguments are faithful).

pub mod ends;
pub mod expansion;

use crate::error::{Result, TlaError};
use crate::group::{ElementData, FiniteSubgroup, GroupElement, MarkedGroup};
use std::collections::{HashMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowKind {
    Cayley,
    CayleyAbels { subgroup: FiniteSubgroup },
}

#[derive(Debug)]
pub struct GraphWindow {
    group: MarkedGroup,
    kind: WindowKind,
    /// Vertex elements: group elements, or canonical coset representatives.
    vertices: Vec<GroupElement>,
    index: HashMap<ElementData, usize>,
    /// Symmetric adjacency; the label is the step generator as read from
    /// this endpoint.
    adj: Vec<Vec<(usize, u16)>>,
    /// Each undirected edge once, in discovery orientation.
    edges: Vec<(usize, usize, u16)>,
    /// Step alphabet: generator names and elements, closed under inversion.
    labels: Vec<(String, GroupElement)>,
    label_inverse: Vec<u16>,
    layer: Vec<u32>,
    radius: u32,
    center: usize,
    boundary: Vec<usize>,
    core: Vec<bool>,
    exhaustive: bool,
}

fn symmetrize_steps(steps: Vec<(String, GroupElement)>) -> (Vec<(String, GroupElement)>, Vec<u16>) {
    let mut labels = steps;
    let mut i = 0;
    while i < labels.len() {
        let inv = labels[i].1.inv();
        if !labels.iter().any(|(_, g)| *g == inv) {
            labels.push((inv.canonical_string(), inv));
        }
        i += 1;
    }
    let label_inverse = labels
        .iter()
        .map(|(_, g)| {
            let inv = g.inv();
            labels.iter().position(|(_, h)| *h == inv).unwrap() as u16
        })
        .collect();
    (labels, label_inverse)
}

impl GraphWindow {
    /// Ball of radius `radius` in the Cayley graph of `group`.
    pub fn build_cayley(group: &MarkedGroup, radius: u32, cap: usize) -> Result<Self> {
        let steps: Vec<(String, GroupElement)> = group
            .generators()
            .map(|(_, name, g)| (name.to_string(), g))
            .collect();
        Self::build(
            group,
            WindowKind::Cayley,
            group.identity(),
            steps,
            radius,
            cap,
        )
    }

    /// Ball of radius `radius` in the coset graph of `group` modulo `k`,
    /// with steps from `t` (symmetrized). Vertices are canonical coset
    /// representatives; loops are dropped and multi-edges collapsed.
    pub fn build_cayley_abels(
        group: &MarkedGroup,
        k: &FiniteSubgroup,
        t: &[GroupElement],
        radius: u32,
        cap: usize,
    ) -> Result<Self> {
        if k.group() != group {
            return Err(TlaError::MixedGroups);
        }
        let mut steps = Vec::new();
        for g in t {
            if g.group() != group {
                return Err(TlaError::MixedGroups);
            }
            if steps.iter().any(|(_, h)| h == g) {
                continue;
            }
            let name = group
                .generators()
                .find(|(_, _, gen)| gen == g)
                .map(|(_, n, _)| n.to_string())
                .unwrap_or_else(|| g.canonical_string());
            steps.push((name, g.clone()));
        }
        let center = k.canonical_left_rep(&group.identity());
        let window = Self::build(
            group,
            WindowKind::CayleyAbels {
                subgroup: k.clone(),
            },
            center,
            steps,
            radius,
            cap,
        )?;
        if window.exhaustive {
            // The coset BFS stopped growing before the radius was reached.
            // Legitimate only when it exhausted a finite quotient.
            match group.finite_order() {
                None => return Err(TlaError::NotGenerating),
                Some(n) => {
                    if window.vertices.len() as u64 * k.order() as u64 != n {
                        return Err(TlaError::NotGenerating);
                    }
                }
            }
        }
        Ok(window)
    }

    fn build(
        group: &MarkedGroup,
        kind: WindowKind,
        center_elem: GroupElement,
        steps: Vec<(String, GroupElement)>,
        radius: u32,
        cap: usize,
    ) -> Result<Self> {
        let (labels, label_inverse) = symmetrize_steps(steps);
        let canon = |x: &GroupElement| -> GroupElement {
            match &kind {
                WindowKind::Cayley => x.clone(),
                WindowKind::CayleyAbels { subgroup } => subgroup.canonical_left_rep(x),
            }
        };

        let mut vertices = vec![center_elem.clone()];
        let mut index = HashMap::from([(center_elem.data().clone(), 0usize)]);
        let mut layer = vec![0u32];
        let mut adj: Vec<Vec<(usize, u16)>> = vec![Vec::new()];
        let mut edges = Vec::new();
        let mut frontier = vec![0usize];
        let mut exhaustive = false;

        for depth in 0..radius {
            let mut next = Vec::new();
            for &v in &frontier {
                let base = vertices[v].clone();
                for (li, (_, s)) in labels.iter().enumerate() {
                    let target = canon(&base.mul(s)?);
                    if target.data() == vertices[v].data() {
                        continue; // loop edge dropped
                    }
                    let w = match index.get(target.data()) {
                        Some(&w) => w,
                        None => {
                            let w = vertices.len();
                            if w >= cap {
                                return Err(TlaError::WindowTooLarge { cap });
                            }
                            vertices.push(target.clone());
                            index.insert(target.data().clone(), w);
                            layer.push(depth + 1);
                            adj.push(Vec::new());
                            next.push(w);
                            w
                        }
                    };
                    // Collapse multi-edges: keep the first label per pair.
                    if !adj[v].iter().any(|&(u, _)| u == w) {
                        adj[v].push((w, li as u16));
                        adj[w].push((v, label_inverse[li]));
                        edges.push((v, w, li as u16));
                    }
                }
            }
            if next.is_empty() {
                exhaustive = true;
                break;
            }
            frontier = next;
        }
        if !exhaustive {
            // Probe whether the final frontier has anywhere left to go; for
            // finite graphs exhausted exactly at the radius the boundary is
            // empty and the window is the whole graph.
            let mut grows = false;
            'outer: for &v in &frontier {
                for (_, s) in &labels {
                    let target = canon(&vertices[v].mul(s)?);
                    if !index.contains_key(target.data()) {
                        grows = true;
                        break 'outer;
                    }
                }
            }
            if !grows {
                exhaustive = true;
            }
            // Edges inside the final layer are still missing: vertices at
            // distance exactly `radius` may be adjacent to each other.
            for &v in &frontier {
                let base = vertices[v].clone();
                for (li, (_, s)) in labels.iter().enumerate() {
                    let target = canon(&base.mul(s)?);
                    if target.data() == vertices[v].data() {
                        continue;
                    }
                    if let Some(&w) = index.get(target.data()) {
                        if !adj[v].iter().any(|&(u, _)| u == w) {
                            adj[v].push((w, li as u16));
                            adj[w].push((v, label_inverse[li]));
                            edges.push((v, w, li as u16));
                        }
                    }
                }
            }
        }

        // Core: full neighborhood present.
        let mut core = vec![false; vertices.len()];
        for v in 0..vertices.len() {
            let mut full = true;
            for (_, s) in &labels {
                let target = canon(&vertices[v].mul(s)?);
                if target.data() != vertices[v].data() && !index.contains_key(target.data()) {
                    full = false;
                    break;
                }
            }
            core[v] = full;
        }
        let boundary = if exhaustive && layer.iter().all(|&l| l < radius) {
            Vec::new()
        } else {
            (0..vertices.len())
                .filter(|&v| layer[v] == radius)
                .collect()
        };

        Ok(GraphWindow {
            group: group.clone(),
            kind,
            vertices,
            index,
            adj,
            edges,
            labels,
            label_inverse,
            layer,
            radius,
            center: 0,
            boundary,
            core,
            exhaustive,
        })
    }

    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn kind(&self) -> &WindowKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn vertex(&self, i: usize) -> &GroupElement {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn layer(&self, i: usize) -> u32 {
        self.layer[i]
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn is_core(&self, i: usize) -> bool {
        self.core[i]
    }

    pub fn core_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.core[v]).collect()
    }

    /// Largest `r` such that the whole ball of radius `r` is core.
    pub fn core_radius(&self) -> u32 {
        let mut r = self.radius;
        for v in 0..self.len() {
            if !self.core[v] && self.layer[v] > 0 {
                r = r.min(self.layer[v] - 1);
            } else if !self.core[v] {
                r = 0;
            }
        }
        r
    }

    /// The whole (finite) graph was enumerated; no boundary effects.
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, u16)] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn edges(&self) -> &[(usize, usize, u16)] {
        &self.edges
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label_name(&self, l: u16) -> &str {
        &self.labels[l as usize].0
    }

    pub fn label_element(&self, l: u16) -> &GroupElement {
        &self.labels[l as usize].1
    }

    pub fn label_inverse(&self, l: u16) -> u16 {
        self.label_inverse[l as usize]
    }

    /// Index of the vertex representing `x`: the element itself for Cayley
    /// windows, the canonical representative of xK for coset windows.
    pub fn locate(&self, x: &GroupElement) -> Option<usize> {
        let key = match &self.kind {
            WindowKind::Cayley => x.clone(),
            WindowKind::CayleyAbels { subgroup } => subgroup.canonical_left_rep(x),
        };
        self.index.get(key.data()).copied()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.locate(x).is_some()
    }

    /// Graph distance between two vertices, `None` if it exceeds `max`.
    pub fn graph_distance(&self, from: usize, to: usize, max: u32) -> Option<u32> {
        if from == to {
            return Some(0);
        }
        let mut dist = HashMap::from([(from, 0u32)]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d >= max {
                continue;
            }
            for &(w, _) in &self.adj[v] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    if w == to {
                        return Some(d + 1);
                    }
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Multi-source BFS distances; unreachable vertices get `u32::MAX`.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == u32::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components of the sub-window selected by `keep`.
    pub fn components_of(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut comps = Vec::new();
        for start in 0..self.len() {
            if seen[start] || !keep(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &(w, _) in &self.adj[v] {
                    if !seen[w] && keep(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_of(|_| true).len() <= 1
    }

    /// All degrees <= 2, connected, and exactly n-1 edges: a path graph.
    pub fn is_path_graph(&self) -> bool {
        self.edges.len() + 1 == self.len()
            && (0..self.len()).all(|v| self.degree(v) <= 2)
            && self.is_connected()
    }

    /// All degrees exactly 2, connected, n edges: a single cycle.
    pub fn is_cycle_graph(&self) -> bool {
        self.len() >= 3
            && self.edges.len() == self.len()
            && (0..self.len()).all(|v| self.degree(v) == 2)
            && self.is_connected()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.len() && self.is_connected()
    }
}
