//! The refinement construction: a locally defined piecewise translation
//! carrying a finite subgroup K onto the coset sK.
//!
//! With H1 = K n s^-1 K s and H2 = s K s^-1 n K, both of index n in K,
//! pick right-coset representatives K = |_| H1 r_i = |_| H2 u_i. Then
//! x -> x * u_i^-1 s r_i on the piece H2 u_i is injective and maps K
//! exactly onto sK.

use super::{PieceSpec, PiecewiseTranslation};
use crate::error::{Result, TlaError};
use crate::group::subgroup::conjugate_intersection;
use crate::group::{FiniteSubgroup, GroupElement, Subgroup};

/// Builds the partial piecewise translation with domain K and image sK.
pub fn refine_subgroup_translation(
    k: &FiniteSubgroup,
    s: &GroupElement,
) -> Result<PiecewiseTranslation> {
    let group = k.group().clone();
    let (h1, h2) = conjugate_intersection(k, s)?;
    let r_reps = h1.right_coset_reps_in(k);
    let u_reps = h2.right_coset_reps_in(k);
    if r_reps.len() != u_reps.len() {
        return Err(TlaError::IndexMismatch {
            left: r_reps.len(),
            right: u_reps.len(),
        });
    }
    let mut pieces = Vec::with_capacity(u_reps.len());
    for (u, r) in u_reps.iter().zip(&r_reps) {
        let cell: Vec<GroupElement> = h2
            .elements()
            .iter()
            .map(|h| h.mul(u).expect("same group"))
            .collect();
        let translator = u.inv().mul(s)?.mul(r)?;
        pieces.push((PieceSpec::explicit(cell), translator));
    }
    let domain = PieceSpec::coset_fiber(
        Subgroup::Finite(k.clone()),
        vec![group.identity()],
    );
    PiecewiseTranslation::new(&group, domain, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{presets, MarkedGroup};
    use std::collections::BTreeSet;

    fn image_set(phi: &PiecewiseTranslation, k: &FiniteSubgroup) -> BTreeSet<String> {
        k.elements()
            .iter()
            .map(|x| phi.apply(x).unwrap().canonical_string())
            .collect()
    }

    #[test]
    fn lamplighter_refinement_has_two_pieces() {
        let g = MarkedGroup::lamplighter();
        let a = g.generator_by_name("a").unwrap();
        let t = g.generator_by_name("t").unwrap();
        let k = FiniteSubgroup::new(&g, vec![g.identity(), a.clone()]).unwrap();

        let phi = refine_subgroup_translation(&k, &t).unwrap();
        assert_eq!(phi.pieces().len(), 2);

        // Exhaustive enumeration of the 2-element domain.
        assert_eq!(phi.apply(&g.identity()).unwrap(), t);
        let ta = t.mul(&a).unwrap();
        assert_eq!(phi.apply(&a).unwrap(), ta);
        assert_eq!(ta.canonical_string(), "({1},1)");

        // Image equals sK as a set, and the map is injective on K.
        let image = image_set(&phi, &k);
        let sk: BTreeSet<String> = k
            .left_coset(&t)
            .iter()
            .map(|x| x.canonical_string())
            .collect();
        assert_eq!(image, sk);
        assert_eq!(image.len(), k.order());
    }

    #[test]
    fn s_inside_k_gives_single_piece() {
        let g = MarkedGroup::lamplighter();
        let a = g.generator_by_name("a").unwrap();
        let k = FiniteSubgroup::new(&g, vec![g.identity(), a.clone()]).unwrap();
        let phi = refine_subgroup_translation(&k, &a).unwrap();
        assert_eq!(phi.pieces().len(), 1);
        for x in k.elements() {
            assert_eq!(phi.apply(x).unwrap(), x.mul(&a).unwrap());
        }
    }

    #[test]
    fn central_subgroup_gives_single_piece() {
        let g = presets::z_cross_c2();
        let flip = g.parse_element("((0),1)").unwrap();
        let k = FiniteSubgroup::new(&g, vec![g.identity(), flip]).unwrap();
        let s = g.parse_element("((1),0)").unwrap();
        let phi = refine_subgroup_translation(&k, &s).unwrap();
        assert_eq!(phi.pieces().len(), 1);
        for x in k.elements() {
            assert_eq!(phi.apply(x).unwrap(), x.mul(&s).unwrap());
        }
    }

    #[test]
    fn piece_count_equals_index() {
        // In S4 with K the dihedral subgroup of order 8, the piece count of
        // phi_s equals [K : sKs^-1 n K] for every s.
        let s4 = presets::symmetric4();
        let r = s4.parse_element("1230").unwrap();
        let f = s4.parse_element("1032").unwrap();
        let mut set = vec![s4.identity()];
        loop {
            let mut grew = false;
            for x in set.clone() {
                for g in [&r, &f] {
                    let y = x.mul(g).unwrap();
                    if !set.contains(&y) {
                        set.push(y);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let k = FiniteSubgroup::new(&s4, set).unwrap();
        for s in s4.enumerate_finite().unwrap() {
            let (_, h2) = conjugate_intersection(&k, &s).unwrap();
            let phi = refine_subgroup_translation(&k, &s).unwrap();
            assert_eq!(phi.pieces().len(), k.order() / h2.order());
            // Image is sK and the map is injective.
            let image = image_set(&phi, &k);
            let sk: BTreeSet<String> = k
                .left_coset(&s)
                .iter()
                .map(|x| x.canonical_string())
                .collect();
            assert_eq!(image, sk);
        }
    }
}
