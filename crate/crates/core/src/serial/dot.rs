//! DOT export for windows and constructed actions: boundary vertices are
//! drawn with double peripheries; path edges are numbered; forest edges are
//! colored per generator.

use crate::construct::{ForestAction, PathAction};
use crate::window::GraphWindow;
use std::fmt::Write;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

pub fn window_dot(w: &GraphWindow) -> String {
    let mut out = String::from("graph window {\n  node [shape=circle fontsize=10];\n");
    for v in 0..w.len() {
        let label = w.vertex(v).canonical_string();
        let mut attrs = format!("label={}", quoted(&label));
        if w.boundary().contains(&v) {
            attrs.push_str(" peripheries=2");
        }
        if v == w.center() {
            attrs.push_str(" style=bold");
        }
        writeln!(out, "  n{v} [{attrs}];").unwrap();
    }
    for &(u, v, l) in w.edges() {
        writeln!(
            out,
            "  n{u} -- n{v} [label={}];",
            quoted(w.label_name(l))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn path_dot(p: &PathAction, w: &GraphWindow) -> String {
    let mut out = String::from("digraph path {\n  node [shape=circle fontsize=10];\n");
    for &v in &p.order {
        writeln!(
            out,
            "  n{v} [label={}];",
            quoted(&w.vertex(v).canonical_string())
        )
        .unwrap();
    }
    for (i, pair) in p.order.windows(2).enumerate() {
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", pair[0], pair[1], i + 1).unwrap();
    }
    if p.closes_cycle && p.order.len() > 1 {
        writeln!(
            out,
            "  n{} -> n{} [label=\"{}\" style=dashed];",
            p.order[p.order.len() - 1],
            p.order[0],
            p.order.len()
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

const COLORS: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];

pub fn forest_dot(f: &ForestAction, w: &GraphWindow) -> String {
    let mut out = String::from("digraph forest {\n  node [shape=circle fontsize=10];\n");
    for &v in &f.covered {
        let mut attrs = format!("label={}", quoted(&w.vertex(v).canonical_string()));
        if f.interior.contains(&v) {
            attrs.push_str(" style=bold");
        }
        writeln!(out, "  n{v} [{attrs}];").unwrap();
    }
    for &(u, v, l) in &f.edges {
        let gen = (l.unsigned_abs() - 1) as usize;
        let color = COLORS[gen % COLORS.len()];
        let name = crate::group::word_name(&[l]);
        writeln!(
            out,
            "  n{u} -> n{v} [label={} color={color}];",
            quoted(&name)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_z_action;
    use crate::defaults::WINDOW_CAP;
    use crate::group::MarkedGroup;

    #[test]
    fn dot_outputs_are_well_formed_and_deterministic() {
        let z = MarkedGroup::free_abelian(1);
        let w = GraphWindow::build_cayley(&z, 3, WINDOW_CAP).unwrap();
        let d1 = window_dot(&w);
        let d2 = window_dot(&w);
        assert_eq!(d1, d2);
        assert!(d1.starts_with("graph window {"));
        assert!(d1.contains("peripheries=2"));
        let p = construct_z_action(&w).unwrap();
        let pd = path_dot(&p, &w);
        assert!(pd.starts_with("digraph path {"));
        assert!(pd.ends_with("}\n"));
    }
}
