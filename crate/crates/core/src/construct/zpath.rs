//! Z-action constructors: Hamiltonian paths through the cube of a BFS
//! spanning tree, with exact fast paths for windows that are already paths
//! or cycles, and the right-translation action of an infinite-order element.

use super::PathAction;
use crate::error::{Result, TlaError};
use crate::group::subgroup::CyclicSubgroup;
use crate::group::{GroupElement, Subgroup};
use crate::piecewise::{ActingGroup, PieceSpec, PiecewiseTranslation, TLAction};
use crate::window::GraphWindow;

/// Visits every window vertex exactly once with successor displacement at
/// most 3: tree edges are graph edges, and the cube of a tree is
/// Hamiltonian. On exhaustive windows the path closes into a cycle, which
/// is what a total bijection of a finite graph must do.
pub fn construct_z_action(w: &GraphWindow) -> Result<PathAction> {
    if !w.is_connected() {
        return Err(TlaError::Disconnected);
    }
    let order = if w.len() == 1 {
        vec![0]
    } else if w.is_path_graph() {
        walk_path(w)
    } else if w.is_cycle_graph() {
        walk_cycle(w)
    } else {
        cube_traversal(w)
    };
    debug_assert_eq!(order.len(), w.len(), "every vertex exactly once");
    let closes_cycle = w.is_exhaustive();
    let mut wobble = 0u32;
    for pair in order.windows(2) {
        let d = w
            .graph_distance(pair[0], pair[1], 3)
            .expect("consecutive vertices within tree distance 3");
        wobble = wobble.max(d);
    }
    if closes_cycle && order.len() > 1 {
        let wrap = w
            .graph_distance(order[order.len() - 1], order[0], w.len() as u32)
            .ok_or(TlaError::Disconnected)?;
        wobble = wobble.max(wrap);
    }
    Ok(PathAction {
        order,
        wobble,
        closes_cycle,
        core_radius: w.core_radius(),
    })
}

/// The window is a path: emit it end to end, starting from the endpoint
/// with the smaller index.
fn walk_path(w: &GraphWindow) -> Vec<usize> {
    let start = (0..w.len())
        .find(|&v| w.degree(v) <= 1)
        .expect("a path has endpoints");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < w.len() {
        let next = w
            .neighbors(cur)
            .iter()
            .map(|&(u, _)| u)
            .find(|&u| u != prev)
            .expect("interior path vertex has a fresh neighbor");
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// The window is a single cycle: walk around it from the center.
fn walk_cycle(w: &GraphWindow) -> Vec<usize> {
    let start = w.center();
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < w.len() {
        let next = w
            .neighbors(cur)
            .iter()
            .map(|&(u, _)| u)
            .find(|&u| u != prev)
            .expect("cycle vertex has a fresh neighbor");
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// Hamiltonian path in the cube of the BFS spanning tree: the path for a
/// subtree starts at its root and ends at the root's last child, so gluing
/// child paths in reverse keeps every jump within tree distance 3.
fn cube_traversal(w: &GraphWindow) -> Vec<usize> {
    // BFS tree from the center; children in adjacency (label) order.
    let n = w.len();
    let mut parent = vec![usize::MAX; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let root = w.center();
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(u, _) in w.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                children[v].push(u);
                queue.push_back(u);
            }
        }
    }
    // path(v) = [v] ++ reverse(path(c)) over children c in order; ends at
    // the last child of v (or at v when v is a leaf).
    fn path_of(v: usize, children: &[Vec<usize>], out: &mut Vec<usize>) {
        out.push(v);
        for &c in &children[v] {
            let mut sub = Vec::new();
            path_of(c, children, &mut sub);
            sub.reverse();
            out.extend(sub);
        }
    }
    let mut order = Vec::with_capacity(n);
    path_of(root, &children, &mut order);
    order
}

/// The right-translation Z-action of an infinite-order element, with the
/// canonical coset representatives of <g> as the claimed fundamental
/// domain.
pub fn z_from_infinite_order_element(g: &GroupElement) -> Result<TLAction> {
    if let Some(k) = g.order() {
        return Err(TlaError::TorsionElement { order: k });
    }
    let group = g.group().clone();
    let sub = Subgroup::Cyclic(CyclicSubgroup::new(g.clone()));
    let fd = PieceSpec::SectionSaturated {
        subgroup: sub,
        piece: Box::new(PieceSpec::explicit(vec![group.identity()])),
    };
    TLAction::new(
        ActingGroup::Z,
        vec![PiecewiseTranslation::right_translation(g)],
        Some(fd),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defaults::WINDOW_CAP;
    use crate::group::{presets, MarkedGroup};

    #[test]
    fn line_window_yields_the_path_itself() {
        let z = MarkedGroup::free_abelian(1);
        let w = GraphWindow::build_cayley(&z, 5, WINDOW_CAP).unwrap();
        let p = construct_z_action(&w).unwrap();
        assert_eq!(p.order.len(), 11);
        assert_eq!(p.wobble, 1);
        assert!(!p.closes_cycle);
    }

    /// Exhaustive search oracle: does the cube-distance-3 graph of the
    /// window admit a Hamiltonian path at all? Only run at tiny sizes.
    fn hamiltonian_exists_oracle(w: &GraphWindow) -> bool {
        let n = w.len();
        let mut adj3 = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if u != v && w.graph_distance(u, v, 3).is_some() {
                    adj3[u].push(v);
                }
            }
        }
        fn dfs(v: usize, visited: &mut Vec<bool>, count: usize, adj: &[Vec<usize>]) -> bool {
            if count == visited.len() {
                return true;
            }
            for &u in &adj[v] {
                if !visited[u] {
                    visited[u] = true;
                    if dfs(u, visited, count + 1, adj) {
                        return true;
                    }
                    visited[u] = false;
                }
            }
            false
        }
        (0..n).any(|start| {
            let mut visited = vec![false; n];
            visited[start] = true;
            dfs(start, &mut visited, 1, &adj3)
        })
    }

    #[test]
    fn plane_window_covered_with_wobble_three()  {
        let z2 = MarkedGroup::free_abelian(2);
        let w = GraphWindow::build_cayley(&z2, 2, WINDOW_CAP).unwrap();
        assert!(hamiltonian_exists_oracle(&w));
        let p = construct_z_action(&w).unwrap();
        assert_eq!(p.order.len(), 13);
        let mut sorted = p.order.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 13, "each vertex exactly once");
        assert!(p.wobble <= 3);
    }

    #[test]
    fn finite_cycle_closes() {
        let c12 = presets::cyclic(12);
        let w = GraphWindow::build_cayley(&c12, 8, WINDOW_CAP).unwrap();
        let p = construct_z_action(&w).unwrap();
        assert_eq!(p.order.len(), 12);
        assert!(p.closes_cycle);
        assert_eq!(p.wobble, 1);
    }

    #[test]
    fn dihedral_window_covered() {
        let d4 = presets::dihedral4();
        let w = GraphWindow::build_cayley(&d4, 6, WINDOW_CAP).unwrap();
        let p = construct_z_action(&w).unwrap();
        let mut sorted = p.order.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        assert!(p.closes_cycle);
        // Consecutive displacement stays within the cube bound; the closing
        // jump is whatever the window diameter forces, recorded honestly.
        for pair in p.order.windows(2) {
            assert!(w.graph_distance(pair[0], pair[1], 3).is_some());
        }
    }

    #[test]
    fn free_window_covered() {
        let f2 = MarkedGroup::free(2);
        let w = GraphWindow::build_cayley(&f2, 4, WINDOW_CAP).unwrap();
        let p = construct_z_action(&w).unwrap();
        assert_eq!(p.order.len(), w.len());
        assert!(p.wobble <= 3);
    }

    #[test]
    fn torsion_elements_rejected() {
        let c12 = presets::cyclic(12);
        let g = c12.parse_element("4").unwrap();
        assert!(matches!(
            z_from_infinite_order_element(&g),
            Err(TlaError::TorsionElement { order: 3 })
        ));
        let lamp = MarkedGroup::lamplighter();
        let a = lamp.generator_by_name("a").unwrap();
        assert!(matches!(
            z_from_infinite_order_element(&a),
            Err(TlaError::TorsionElement { order: 2 })
        ));
    }

    #[test]
    fn translation_action_has_section_domain() {
        let z2 = MarkedGroup::free_abelian(2);
        let g = z2.parse_element("(1,0)").unwrap();
        let a = z_from_infinite_order_element(&g).unwrap();
        let fd = a.fundamental_domain.unwrap();
        // The fundamental domain is the vertical axis, window-restricted.
        for n in -5..=5i64 {
            for m in -5..=5i64 {
                let x = z2.parse_element(&format!("({n},{m})")).unwrap();
                assert_eq!(fd.contains(&x).unwrap(), n == 0);
            }
        }
    }
}
