//! Free-group actions on windows.
//!
//! Gate: the sphere/ball expansion ratio at the window radius must clear
//! the (configurable) threshold; amenable-looking windows are refused.
//!
//! Windows that are already 2d-regular trees are labeled directly. The
//! general route finds a 2-to-1 wobbling map of the core by max-flow
//! (demand 2 per core vertex, sources used once, edges within the
//! displacement budget), reads off a branching-2 forest, rebalances by
//! pairing each vertex with its first child, and assigns generator labels
//! greedily root-down so interior vertices see each letter exactly once.

use super::flow::FlowNetwork;
use super::ForestAction;
use crate::error::{Result, TlaError};
use crate::window::expansion::{profile_of_window, ratio_string, ExpansionRatio};
use crate::window::GraphWindow;
use std::collections::HashMap;

pub fn construct_free_action(
    w: &GraphWindow,
    rank: usize,
    budget: u32,
    threshold: ExpansionRatio,
) -> Result<ForestAction> {
    assert!(rank >= 2, "free rank must be at least 2");
    assert!(budget >= 1, "displacement budget must be at least 1");
    let profile = profile_of_window(w);
    let gate = profile.gate_value();
    if gate < threshold {
        return Err(TlaError::AmenableWindow {
            ratio: ratio_string(gate),
            threshold: ratio_string(threshold),
        });
    }
    let max_degree = (0..w.len()).map(|v| w.degree(v)).max().unwrap_or(0);
    if w.is_tree() && max_degree <= 2 * rank {
        return Ok(label_tree_window(w, rank));
    }
    if rank != 2 {
        return Err(TlaError::UnsupportedRank { rank });
    }
    let children = two_to_one_matching(w, budget)?;
    Ok(forest_from_children(w, children, budget))
}

/// The window is a tree of degree <= 2d: read the free action off its own
/// edges, assigning letters root-down.
fn label_tree_window(w: &GraphWindow, rank: usize) -> ForestAction {
    let letters: Vec<i8> = (1..=rank as i8).flat_map(|i| [i, -i]).collect();
    let mut edges = Vec::new();
    let mut used: Vec<Vec<i8>> = vec![Vec::new(); w.len()];
    let root = w.center();
    let mut seen = vec![false; w.len()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(u, _) in w.neighbors(v) {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            let letter = letters
                .iter()
                .copied()
                .find(|l| !used[v].contains(l))
                .expect("degree bounded by the letter count");
            used[v].push(letter);
            used[u].push(-letter);
            edges.push((v, u, letter));
            queue.push_back(u);
        }
    }
    let covered: Vec<usize> = (0..w.len()).filter(|&v| seen[v]).collect();
    let interior: Vec<usize> = covered
        .iter()
        .copied()
        .filter(|&v| used[v].len() == 2 * rank)
        .collect();
    ForestAction {
        rank,
        edges,
        covered,
        interior,
        wobble: 1,
        core_radius: w.core_radius(),
    }
}

/// Finds, by max-flow, a map assigning to every core vertex exactly two
/// distinct "children" within graph distance `budget`, each window vertex
/// serving as a child at most once. Returns children lists indexed by
/// window vertex. On infeasibility the emitted witness set violates the
/// doubling Hall condition: twice its size exceeds its distance-budget
/// neighborhood.
pub fn two_to_one_matching(w: &GraphWindow, budget: u32) -> Result<Vec<Vec<usize>>> {
    let n = w.len();
    let core = w.core_indices();
    // Node layout: 0 = S; 1..=n targets; n+1..=2n sources; 2n+1 = T.
    let s = 0usize;
    let t = 2 * n + 1;
    let mut net = FlowNetwork::new(2 * n + 2);
    for &c in &core {
        net.add_edge(s, 1 + c, 2);
    }
    let mut near: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &c in &core {
        let dist = w.distances_from(&[c]);
        for v in 0..n {
            if dist[v] >= 1 && dist[v] <= budget {
                near[c].push(v);
            }
        }
        for &v in &near[c] {
            net.add_edge(1 + c, n + 1 + v, 1);
        }
    }
    for v in 0..n {
        net.add_edge(n + 1 + v, t, 1);
    }
    let flow = net.max_flow(s, t);
    if (flow as usize) < 2 * core.len() {
        let reach = net.residual_reachable(s);
        let witness: Vec<usize> = core.iter().copied().filter(|&c| reach[1 + c]).collect();
        let witness_size = witness.len();
        return Err(TlaError::NoMatching {
            budget,
            witness,
            witness_size,
        });
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &c in &core {
        for (to, used) in net.saturated_edges(1 + c) {
            if used > 0 && to > n && to <= 2 * n {
                children[c].push(to - n - 1);
            }
        }
        children[c].sort_unstable();
        debug_assert_eq!(children[c].len(), 2);
    }
    Ok(children)
}

/// Builds the labeled forest: orient child -> parent, cut cycles, pair each
/// parent with its first child into degree-4 blocks, and label the block
/// tree root-down.
fn forest_from_children(w: &GraphWindow, children: Vec<Vec<usize>>, budget: u32) -> ForestAction {
    let n = w.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (p, cs) in children.iter().enumerate() {
        for &c in cs {
            parent[c] = Some(p);
        }
    }
    // Cut one parent edge per cycle (at the smallest vertex on it).
    let mut color = vec![0u8; n]; // 0 fresh, 1 on current walk, 2 settled
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        loop {
            color[v] = 1;
            path.push(v);
            match parent[v] {
                Some(p) if color[p] == 0 => v = p,
                Some(p) if color[p] == 1 => {
                    // Found a cycle: p .. v; cut at its minimum vertex.
                    let pos = path.iter().position(|&x| x == p).unwrap();
                    let cycle = &path[pos..];
                    let cut = *cycle.iter().min().unwrap();
                    parent[cut] = None;
                    break;
                }
                _ => break,
            }
        }
        for &x in &path {
            color[x] = 2;
        }
    }
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = parent[v] {
            kids[p].push(v);
        }
    }
    for k in &mut kids {
        k.sort_unstable();
    }
    // Top-down block pairing: a parent absorbs its first unpaired child.
    let roots: Vec<usize> = (0..n)
        .filter(|&v| parent[v].is_none() && !kids[v].is_empty())
        .collect();
    let mut block_of: Vec<Option<usize>> = vec![None; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut order = Vec::new();
    {
        let mut queue: std::collections::VecDeque<usize> = roots.iter().copied().collect();
        let mut seen = vec![false; n];
        for &r in &roots {
            seen[r] = true;
        }
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &kids[v] {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
    }
    for &v in &order {
        if block_of[v].is_some() {
            continue;
        }
        let id = blocks.len();
        let mut members = vec![v];
        if let Some(&c) = kids[v].iter().find(|&&c| block_of[c].is_none()) {
            members.push(c);
        }
        for &m in &members {
            block_of[m] = Some(id);
        }
        blocks.push(members);
    }
    // Block tree edges from surviving parent edges crossing blocks.
    let mut block_children: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
    let mut block_parent: Vec<Option<usize>> = vec![None; blocks.len()];
    for v in 0..n {
        if let (Some(p), Some(bv)) = (parent[v], block_of[v]) {
            let bp = block_of[p].expect("parents are always in blocks");
            if bp != bv {
                block_children[bp].push(bv);
                block_parent[bv] = Some(bp);
            }
        }
    }
    for c in &mut block_children {
        c.sort_unstable();
        c.dedup();
    }
    // Greedy root-down letters over the block tree; rank is fixed at 2 here.
    let letters: [i8; 4] = [1, -1, 2, -2];
    let rep = |b: usize| *blocks[b].iter().min().unwrap();
    let mut edges: Vec<(usize, usize, i8)> = Vec::new();
    let mut used: HashMap<usize, Vec<i8>> = HashMap::new();
    let block_roots: Vec<usize> = (0..blocks.len())
        .filter(|&b| block_parent[b].is_none())
        .collect();
    let mut queue: std::collections::VecDeque<usize> = block_roots.into_iter().collect();
    while let Some(b) = queue.pop_front() {
        for &bc in &block_children[b] {
            let letter = letters
                .iter()
                .copied()
                .find(|l| {
                    !used.get(&rep(b)).is_some_and(|u| u.contains(l))
                        && !used.get(&rep(bc)).is_some_and(|u| u.contains(&-l))
                })
                .unwrap_or(0);
            if letter == 0 {
                continue; // block over-saturated; leave the edge out
            }
            used.entry(rep(b)).or_default().push(letter);
            used.entry(rep(bc)).or_default().push(-letter);
            edges.push((rep(b), rep(bc), letter));
            queue.push_back(bc);
        }
    }
    let mut covered: Vec<usize> = used.keys().copied().collect();
    covered.sort_unstable();
    let interior: Vec<usize> = covered
        .iter()
        .copied()
        .filter(|v| used[v].len() == 4)
        .collect();
    let mut wobble = 0;
    for &(u, v, _) in &edges {
        let d = w
            .graph_distance(u, v, 4 * budget + 4)
            .expect("block representatives stay near each other");
        wobble = wobble.max(d);
    }
    ForestAction {
        rank: 2,
        edges,
        covered,
        interior,
        wobble,
        core_radius: w.core_radius(),
    }
}
