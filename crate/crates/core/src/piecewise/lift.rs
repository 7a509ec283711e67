//! Lifting a graph self-map of a coset window to a piecewise translation of
//! the group: on each coset gK with image gsK the lift acts by the
//! conjugated refinement g . phi_s . g^-1, so the quotient map intertwines
//! the lift with the original graph map.

use super::{refine_subgroup_translation, PieceSpec, PiecewiseTranslation};
use crate::error::{Result, TlaError};
use crate::group::{GroupElement, Subgroup};
use crate::window::{GraphWindow, WindowKind};
use std::collections::HashMap;

/// A self-map of window vertices; `None` marks vertices where the map is
/// undefined (path ends, boundary effects).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap(pub Vec<Option<usize>>);

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).map(Some).collect())
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.0.get(v).copied().flatten()
    }
}

/// Shortlex witness words over the window's step alphabet, evaluated to
/// elements, first occurrence kept.
fn witness_candidates(w: &GraphWindow, depth: u32) -> Vec<GroupElement> {
    let group = w.group();
    let mut out: Vec<GroupElement> = vec![group.identity()];
    let mut layer: Vec<GroupElement> = vec![group.identity()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &layer {
            for l in 0..w.label_count() {
                let y = x.mul(w.label_element(l as u16)).expect("same group");
                if !out.contains(&y) {
                    out.push(y.clone());
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    out
}

/// Lifts `alpha` on a Cayley-Abels window to a piecewise translation whose
/// quotient is `alpha`. The witness for each coset is the first shortlex
/// word s over the steps with alpha(gK) = gsK.
pub fn lift_graph_map(
    alpha: &VertexMap,
    w: &GraphWindow,
    witness_depth: u32,
) -> Result<PiecewiseTranslation> {
    let k = match w.kind() {
        WindowKind::CayleyAbels { subgroup } => subgroup.clone(),
        WindowKind::Cayley => {
            return Err(TlaError::BadAction {
                reason: "lift expects a Cayley-Abels window".into(),
            })
        }
    };
    if alpha.0.len() != w.len() {
        return Err(TlaError::BadAction {
            reason: "vertex map length differs from window size".into(),
        });
    }
    // Injectivity on the core.
    {
        let mut seen = HashMap::new();
        for v in 0..w.len() {
            if !w.is_core(v) {
                continue;
            }
            if let Some(img) = alpha.get(v) {
                if let Some(prev) = seen.insert(img, v) {
                    let _ = prev;
                    return Err(TlaError::NotBijection {
                        witness: w.vertex(img).to_string(),
                    });
                }
            }
        }
    }
    let candidates = witness_candidates(w, witness_depth);
    let mut refinements: HashMap<crate::ElementData, PiecewiseTranslation> = HashMap::new();
    let mut pieces = Vec::new();
    let mut covered_reps = Vec::new();
    for v in 0..w.len() {
        let Some(img) = alpha.get(v) else { continue };
        let g = w.vertex(v).clone();
        let target = w.vertex(img);
        let witness = candidates
            .iter()
            .find(|s| {
                let gs = g.mul(s).expect("same group");
                k.same_left_coset(&gs, target)
            })
            .ok_or_else(|| TlaError::NoWitness {
                coset: g.to_string(),
            })?;
        let phi_s = refinements
            .entry(witness.data().clone())
            .or_insert_with(|| {
                refine_subgroup_translation(&k, witness).expect("refinement of finite K")
            });
        for (piece, tau) in phi_s.pieces() {
            let cell = piece
                .finite_support()
                .expect("refinement pieces are explicit");
            let lifted: Vec<GroupElement> = cell
                .iter()
                .map(|x| g.mul(x).expect("same group"))
                .collect();
            pieces.push((PieceSpec::explicit(lifted), tau.clone()));
        }
        covered_reps.push(g);
    }
    let domain = PieceSpec::coset_fiber(Subgroup::Finite(k), covered_reps);
    PiecewiseTranslation::new(w.group(), domain, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defaults::WINDOW_CAP;
    use crate::group::{presets, FiniteSubgroup, MarkedGroup};

    fn lamp_window(radius: u32) -> GraphWindow {
        let g = MarkedGroup::lamplighter();
        let a = g.generator_by_name("a").unwrap();
        let k = FiniteSubgroup::new(&g, vec![g.identity(), a.clone()]).unwrap();
        let t = vec![
            g.generator_by_name("t").unwrap(),
            g.generator_by_name("T").unwrap(),
            a,
        ];
        GraphWindow::build_cayley_abels(&g, &k, &t, radius, WINDOW_CAP).unwrap()
    }

    #[test]
    fn lift_of_identity_is_identity() {
        let w = lamp_window(2);
        let alpha = VertexMap::identity(w.len());
        let lift = lift_graph_map(&alpha, &w, 1).unwrap();
        for v in w.vertices() {
            // Every element of every window coset is fixed.
            let k = match w.kind() {
                WindowKind::CayleyAbels { subgroup } => subgroup.clone(),
                _ => unreachable!(),
            };
            for x in k.left_coset(v) {
                assert_eq!(lift.apply(&x).unwrap(), x);
            }
        }
    }

    #[test]
    fn lift_of_coset_shift_is_right_translation() {
        let g = presets::z_cross_c2();
        let flip = g.parse_element("((0),1)").unwrap();
        let k = FiniteSubgroup::new(&g, vec![g.identity(), flip]).unwrap();
        let t = vec![
            g.parse_element("((1),0)").unwrap(),
            g.parse_element("((-1),0)").unwrap(),
        ];
        let w = GraphWindow::build_cayley_abels(&g, &k, &t, 3, WINDOW_CAP).unwrap();
        // alpha: shift each coset one step in the +1 direction.
        let step = g.parse_element("((1),0)").unwrap();
        let mut map = vec![None; w.len()];
        for v in 0..w.len() {
            let image = w.vertex(v).mul(&step).unwrap();
            map[v] = w.locate(&image);
        }
        let alpha = VertexMap(map);
        let lift = lift_graph_map(&alpha, &w, 1).unwrap();
        // On every covered element the lift is x -> x*(1,0).
        for v in 0..w.len() {
            if alpha.get(v).is_none() {
                continue;
            }
            for x in k.left_coset(w.vertex(v)) {
                assert_eq!(lift.apply(&x).unwrap(), x.mul(&step).unwrap());
            }
        }
    }

    #[test]
    fn lift_commutes_with_quotient_on_lamplighter() {
        let w = lamp_window(3);
        // Successor map along the path.
        let t = w.group().generator_by_name("t").unwrap();
        let mut map = vec![None; w.len()];
        for v in 0..w.len() {
            map[v] = w.locate(&w.vertex(v).mul(&t).unwrap());
        }
        let alpha = VertexMap(map);
        let lift = lift_graph_map(&alpha, &w, 1).unwrap();
        let k = match w.kind() {
            WindowKind::CayleyAbels { subgroup } => subgroup.clone(),
            _ => unreachable!(),
        };
        for v in 0..w.len() {
            let Some(img) = alpha.get(v) else { continue };
            for x in k.left_coset(w.vertex(v)) {
                let y = lift.apply(&x).unwrap();
                assert_eq!(
                    w.locate(&y),
                    Some(img),
                    "quotient square commutes at {x}"
                );
            }
        }
    }

    #[test]
    fn lift_translators_are_double_coset_words() {
        // Scanning the window: every translator of the lifted map is of
        // the form k * s * k' with s a witness step and k, k' in K.
        let w = lamp_window(3);
        let t = w.group().generator_by_name("t").unwrap();
        let mut map = vec![None; w.len()];
        for v in 0..w.len() {
            map[v] = w.locate(&w.vertex(v).mul(&t).unwrap());
        }
        let lift = lift_graph_map(&VertexMap(map), &w, 1).unwrap();
        let k = match w.kind() {
            WindowKind::CayleyAbels { subgroup } => subgroup.clone(),
            _ => unreachable!(),
        };
        let mut ksk = Vec::new();
        for s in [&t, &t.inv()] {
            for k1 in k.elements() {
                for k2 in k.elements() {
                    ksk.push(k1.mul(s).unwrap().mul(k2).unwrap());
                }
            }
        }
        for tr in lift.translator_set() {
            assert!(ksk.contains(&tr), "translator {tr} outside K s K");
        }
    }

    #[test]
    fn no_witness_reported() {
        let w = lamp_window(2);
        // Map the center to the far end of the path: unreachable by one
        // step, so witness search at depth 1 must fail.
        let far = (0..w.len()).find(|&v| w.layer(v) == 2).unwrap();
        let mut map = vec![None; w.len()];
        map[w.center()] = Some(far);
        let alpha = VertexMap(map);
        assert!(matches!(
            lift_graph_map(&alpha, &w, 1),
            Err(TlaError::NoWitness { .. })
        ));
    }

    #[test]
    fn non_injective_map_rejected() {
        let w = lamp_window(2);
        let mut map = vec![None; w.len()];
        // Two core cosets onto one target.
        let core: Vec<usize> = w.core_indices();
        map[core[0]] = Some(0);
        map[core[1]] = Some(0);
        let alpha = VertexMap(map);
        assert!(matches!(
            lift_graph_map(&alpha, &w, 1),
            Err(TlaError::NotBijection { .. })
        ));
    }
}
