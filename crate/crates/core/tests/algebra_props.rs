//! Property tests for the spec-level invariants: word-metric axioms,
//! the unimodularity shadow, partition/injectivity of piecewise
//! translations, and JSON round-trips.

use proptest::prelude::*;
use tla_core::defaults::WINDOW_CAP;
use tla_core::group::subgroup::{conjugate_intersection, CyclicSubgroup};
use tla_core::group::{FiniteSubgroup, GroupElement, MarkedGroup, Subgroup};
use tla_core::piecewise::{PieceSpec, PiecewiseTranslation};
use tla_core::serial;
use tla_core::window::GraphWindow;

fn element_from_indices(g: &MarkedGroup, indices: &[usize]) -> GroupElement {
    let mut x = g.identity();
    for &i in indices {
        x = x.mul(&g.generator(i % g.generator_count())).unwrap();
    }
    x
}

fn groups() -> Vec<MarkedGroup> {
    vec![
        MarkedGroup::free_abelian(2),
        MarkedGroup::free(2),
        MarkedGroup::lamplighter(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_length_is_subadditive_and_inverse_symmetric(
        gi in prop::collection::vec(0usize..6, 0..8),
        hi in prop::collection::vec(0usize..6, 0..8),
        which in 0usize..3,
    ) {
        let group = &groups()[which];
        let g = element_from_indices(group, &gi);
        let h = element_from_indices(group, &hi);
        let wl = |x: &GroupElement| group.word_length_within(x, 20).unwrap();
        let gh = g.mul(&h).unwrap();
        prop_assert!(wl(&gh) <= wl(&g) + wl(&h));
        prop_assert_eq!(wl(&g.inv()), wl(&g));
        prop_assert_eq!(wl(&group.identity()), 0);
    }

    #[test]
    fn group_axioms_randomized(
        gi in prop::collection::vec(0usize..6, 0..6),
        hi in prop::collection::vec(0usize..6, 0..6),
        ki in prop::collection::vec(0usize..6, 0..6),
        which in 0usize..3,
    ) {
        let group = &groups()[which];
        let g = element_from_indices(group, &gi);
        let h = element_from_indices(group, &hi);
        let k = element_from_indices(group, &ki);
        let left = g.mul(&h).unwrap().mul(&k).unwrap();
        let right = g.mul(&h.mul(&k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(g.mul(&g.inv()).unwrap().is_identity());
    }

    #[test]
    fn conjugate_intersections_have_equal_order(
        si in prop::collection::vec(0usize..3, 0..6),
    ) {
        let lamp = MarkedGroup::lamplighter();
        let a = lamp.generator_by_name("a").unwrap();
        let k = FiniteSubgroup::new(&lamp, vec![lamp.identity(), a]).unwrap();
        let s = element_from_indices(&lamp, &si);
        let (h1, h2) = conjugate_intersection(&k, &s).unwrap();
        prop_assert_eq!(h1.order(), h2.order());
    }

    #[test]
    fn piecewise_translations_partition_and_inject(
        offsets in prop::collection::vec(-3i64..=3, 1..4),
        modulus in 2i64..=4,
    ) {
        // Map each residue class mod `modulus` by its own translator, all
        // shifted to keep the map injective: x -> x + offsets[class] *
        // modulus + class-balancing. Use translators n*modulus so classes
        // are preserved and the map is bijective on each class.
        let z = MarkedGroup::free_abelian(1);
        let sub = Subgroup::Cyclic(CyclicSubgroup::new(
            z.parse_element(&format!("({modulus})")).unwrap(),
        ));
        let mut pieces = Vec::new();
        for class in 0..modulus {
            let rep = z.parse_element(&format!("({class})")).unwrap();
            let off = offsets[class as usize % offsets.len()] * modulus;
            pieces.push((
                PieceSpec::coset_fiber(sub.clone(), vec![rep]),
                z.parse_element(&format!("({off})")).unwrap(),
            ));
        }
        let phi = PiecewiseTranslation::new(&z, PieceSpec::All, pieces).unwrap();
        let w = GraphWindow::build_cayley(&z, 12, WINDOW_CAP).unwrap();
        // Exactly one piece per point, and injectivity over the window.
        phi.validate_on(w.vertices().iter()).unwrap();
        // Counting preservation on the core.
        let core: Vec<_> = w.core_indices();
        let images: std::collections::BTreeSet<String> = core
            .iter()
            .map(|&v| phi.apply(w.vertex(v)).unwrap().canonical_string())
            .collect();
        prop_assert_eq!(images.len(), core.len());
    }

    #[test]
    fn explicit_piece_specs_round_trip(
        coords in prop::collection::vec((-9i64..=9, -9i64..=9), 0..8),
    ) {
        let z2 = MarkedGroup::free_abelian(2);
        let elems: Vec<GroupElement> = coords
            .iter()
            .map(|(a, b)| z2.parse_element(&format!("({a},{b})")).unwrap())
            .collect();
        let spec = PieceSpec::explicit(elems);
        let v = serial::piece_to_json(&spec);
        let back = serial::piece_from_json(&z2, &v).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn canonical_parse_display_round_trip(
        gi in prop::collection::vec(0usize..6, 0..10),
        which in 0usize..3,
    ) {
        let group = &groups()[which];
        let g = element_from_indices(group, &gi);
        let s = g.canonical_string();
        let back = group.parse_element(&s).unwrap();
        prop_assert_eq!(back, g);
    }
}
