//! Extension of a piecewise translation from a subgroup H to the whole
//! group through the canonical section r of G/H: the extension sends g to
//! r(gH) * phi(r(gH)^-1 g), which is again right multiplication by the
//! translator of the piece containing the H-part of g. Pieces saturate
//! under the section; a fundamental domain of phi saturates to one of the
//! extension.

use super::{PieceSpec, PiecewiseTranslation, TLAction};
use crate::error::{Result, TlaError};
use crate::group::Subgroup;

pub fn extend_by_section(
    phi: &PiecewiseTranslation,
    h: &Subgroup,
) -> Result<PiecewiseTranslation> {
    if h.group() != phi.group() {
        return Err(TlaError::MixedGroups);
    }
    let pieces = phi
        .pieces()
        .iter()
        .map(|(p, t)| {
            (
                PieceSpec::SectionSaturated {
                    subgroup: h.clone(),
                    piece: Box::new(p.clone()),
                },
                t.clone(),
            )
        })
        .collect();
    // phi is total on H, so the extension is total on G.
    PiecewiseTranslation::new(phi.group(), PieceSpec::All, pieces)
}

/// Saturates a fundamental domain D of the subgroup action to r(G/H)D.
pub fn extend_fundamental_domain(d: &PieceSpec, h: &Subgroup) -> PieceSpec {
    PieceSpec::SectionSaturated {
        subgroup: h.clone(),
        piece: Box::new(d.clone()),
    }
}

/// Extends every generator map of an action, carrying the claimed
/// fundamental domain along.
pub fn extend_action(action: &TLAction, h: &Subgroup) -> Result<TLAction> {
    let generators = action
        .generators
        .iter()
        .map(|g| extend_by_section(g, h))
        .collect::<Result<Vec<_>>>()?;
    let fd = action
        .fundamental_domain
        .as_ref()
        .map(|d| extend_fundamental_domain(d, h));
    TLAction::new(action.acting, generators, fd)
}

/// Convenience: the Z-action by right translation, restricted to the cyclic
/// subgroup it generates, then extended to G. Used by tests and the CLI to
/// set up the subgroup-translation scenario.
pub fn translation_on_cyclic_subgroup(
    h: &crate::group::subgroup::CyclicSubgroup,
) -> Result<(PiecewiseTranslation, PieceSpec)> {
    let group = h.group().clone();
    let sub = Subgroup::Cyclic(h.clone());
    let domain = PieceSpec::coset_fiber(sub, vec![group.identity()]);
    let phi = PiecewiseTranslation::new(
        &group,
        domain.clone(),
        vec![(domain, h.generator().clone())],
    )?;
    let fd = PieceSpec::explicit(vec![group.identity()]);
    Ok((phi, fd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defaults::WINDOW_CAP;
    use crate::group::subgroup::CyclicSubgroup;
    use crate::group::MarkedGroup;
    use crate::window::GraphWindow;

    #[test]
    fn doubling_on_even_integers_extends_to_plus_two() {
        let z = MarkedGroup::free_abelian(1);
        let h = CyclicSubgroup::new(z.parse_element("(2)").unwrap());
        let (phi, _) = translation_on_cyclic_subgroup(&h).unwrap();
        let psi = extend_by_section(&phi, &Subgroup::Cyclic(h)).unwrap();
        // psi(g) = g + 2 for every g, odd or even: forced by the formula.
        for n in -9..=9 {
            let x = z.parse_element(&format!("({n})")).unwrap();
            assert_eq!(
                psi.apply(&x).unwrap(),
                z.parse_element(&format!("({})", n + 2)).unwrap()
            );
        }
    }

    #[test]
    fn horizontal_translation_extends_across_plane() {
        let z2 = MarkedGroup::free_abelian(2);
        let h = CyclicSubgroup::new(z2.parse_element("(1,0)").unwrap());
        let (phi, fd) = translation_on_cyclic_subgroup(&h).unwrap();
        let sub = Subgroup::Cyclic(h);
        let psi = extend_by_section(&phi, &sub).unwrap();
        let w = GraphWindow::build_cayley(&z2, 6, WINDOW_CAP).unwrap();
        for v in w.vertices() {
            let got = psi.apply(v).unwrap();
            let want = v.mul(&z2.parse_element("(1,0)").unwrap()).unwrap();
            assert_eq!(got, want);
        }
        // The saturated fundamental domain is the vertical axis.
        let big_fd = extend_fundamental_domain(&fd, &sub);
        for v in w.vertices() {
            let on_axis = {
                let crate::ElementData::Vector(coords) = v.data() else {
                    unreachable!()
                };
                coords[0] == 0
            };
            assert_eq!(big_fd.contains(v).unwrap(), on_axis, "at {v}");
        }
    }

    #[test]
    fn lamplighter_extension_advances_shift() {
        let lamp = MarkedGroup::lamplighter();
        let h = CyclicSubgroup::new(lamp.generator_by_name("t").unwrap());
        let (phi, _) = translation_on_cyclic_subgroup(&h).unwrap();
        let psi = extend_by_section(&phi, &Subgroup::Cyclic(h)).unwrap();
        let w = GraphWindow::build_cayley(&lamp, 6, WINDOW_CAP).unwrap();
        // Orbit scan: every step advances the shift coordinate by one and
        // the extension is free along scanned orbits.
        for start in w.vertices().iter().step_by(7) {
            let mut x = start.clone();
            for step in 1..=5 {
                x = psi.apply(&x).unwrap();
                let (crate::ElementData::Lamp { shift, .. }, crate::ElementData::Lamp { shift: s0, .. }) =
                    (x.data(), start.data())
                else {
                    unreachable!()
                };
                assert_eq!(*shift, s0 + step);
                assert_ne!(&x, start);
            }
        }
    }

    #[test]
    fn restriction_to_subgroup_matches_original() {
        let z = MarkedGroup::free_abelian(1);
        let h = CyclicSubgroup::new(z.parse_element("(2)").unwrap());
        let (phi, _) = translation_on_cyclic_subgroup(&h).unwrap();
        let psi = extend_by_section(&phi, &Subgroup::Cyclic(h)).unwrap();
        for n in [-6i64, -2, 0, 4, 8] {
            let x = z.parse_element(&format!("({n})")).unwrap();
            assert_eq!(psi.apply(&x).unwrap(), phi.apply(&x).unwrap());
        }
    }
}
