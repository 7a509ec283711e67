//! Acceptance suite: one test per criterion, each printing a PASS line
//! once its assertions hold. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines).

use std::time::Instant;

use num_rational::Ratio;
use tla_core::construct::{construct_free_action, construct_z_action};
use tla_core::defaults::{CLOSURE_CAP, WINDOW_CAP};
use tla_core::group::subgroup::CyclicSubgroup;
use tla_core::group::{presets, FiniteSubgroup, MarkedGroup, Subgroup};
use tla_core::piecewise::{
    extend_action, lift_graph_map, refine_subgroup_translation, translation_on_cyclic_subgroup,
    ActingGroup, PieceSpec, PiecewiseTranslation, TLAction,
};
use tla_core::verify::{
    check_cocompact, check_free, check_fundamental_domain, check_quotient_commutes,
    locally_elliptic_obstruction, Candidate, Verdict, Witness,
};
use tla_core::window::ends::{count_ends, EndsVerdict};
use tla_core::window::expansion::profile_of_window;
use tla_core::window::{GraphWindow, WindowKind};

fn lamplighter_k(g: &MarkedGroup) -> FiniteSubgroup {
    let a = g.generator_by_name("a").unwrap();
    FiniteSubgroup::new(g, vec![g.identity(), a]).unwrap()
}

fn lamplighter_coset_window(radius: u32) -> GraphWindow {
    let g = MarkedGroup::lamplighter();
    let k = lamplighter_k(&g);
    let t = vec![
        g.generator_by_name("t").unwrap(),
        g.generator_by_name("T").unwrap(),
        g.generator_by_name("a").unwrap(),
    ];
    GraphWindow::build_cayley_abels(&g, &k, &t, radius, WINDOW_CAP).unwrap()
}

#[test]
fn criterion_01_ends_taxonomy() {
    let cases: Vec<(&str, MarkedGroup, u32, u32, EndsVerdict)> = vec![
        ("Z", MarkedGroup::free_abelian(1), 3, 8, EndsVerdict::Two),
        ("Z^2", MarkedGroup::free_abelian(2), 3, 8, EndsVerdict::One),
        ("F_2", MarkedGroup::free(2), 2, 5, EndsVerdict::Many),
        ("lamplighter", MarkedGroup::lamplighter(), 3, 8, EndsVerdict::One),
        ("C_12", presets::cyclic(12), 3, 8, EndsVerdict::Zero),
    ];
    for (name, group, r, rr, expected) in cases {
        let t0 = Instant::now();
        let e = count_ends(&group, r, rr, WINDOW_CAP).unwrap();
        let elapsed = t0.elapsed();
        assert_eq!(e.verdict, expected, "{name} at ({r},{rr})");
        assert!(
            elapsed.as_secs_f64() < 5.0,
            "{name} took {elapsed:?}, budget is 5 s"
        );
    }
    println!("ACCEPTANCE 01 ends-taxonomy: PASS");
}

#[test]
fn criterion_02_finite_groups_always_refuted() {
    let models = vec![
        ("C_12", presets::cyclic(12)),
        ("D_4", presets::dihedral4()),
        ("S_4", presets::symmetric4()),
    ];
    let mut refuted = 0usize;
    let mut total = 0usize;
    for (name, group) in models {
        let order = group.finite_order().unwrap() as u32;
        let w = GraphWindow::build_cayley(&group, 12, WINDOW_CAP).unwrap();
        assert!(w.is_exhaustive(), "{name} window covers the whole group");
        let p = construct_z_action(&w).unwrap();
        assert!(p.covers_all(w.len()));
        total += 1;
        let cert = check_free(&Candidate::Path(&p), &w, order).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted, "{name}");
        let Some(Witness::Cycle { start, length }) = cert.witness else {
            panic!("{name}: expected an explicit cycle");
        };
        assert!(length <= order);
        // Replay the cycle through the successor map.
        let succ = p.successor_map(w.len());
        let s = w
            .vertices()
            .iter()
            .position(|v| v.canonical_string() == start)
            .unwrap();
        let mut v = s;
        for _ in 0..length {
            v = succ.get(v).unwrap();
        }
        assert_eq!(v, s, "{name}: witness replays");
        refuted += 1;
    }
    assert_eq!(refuted, total, "100% refutation rate");
    println!("ACCEPTANCE 02 finite-group-obstruction: PASS");
}

#[test]
fn criterion_03_z_actions_cover_windows() {
    // Z^2 window of radius 10: 221 vertices.
    let t0 = Instant::now();
    let z2 = MarkedGroup::free_abelian(2);
    let w = GraphWindow::build_cayley(&z2, 10, WINDOW_CAP).unwrap();
    assert_eq!(w.len(), 221);
    let p = construct_z_action(&w).unwrap();
    assert!(p.covers_all(w.len()), "100% coverage");
    assert!(p.wobble <= 3);
    let cert = check_free(&Candidate::Path(&p), &w, 20).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    assert!(t0.elapsed().as_secs_f64() < 10.0);

    // Lamplighter Cayley-Abels window of radius 6.
    let t1 = Instant::now();
    let cw = lamplighter_coset_window(6);
    let cp = construct_z_action(&cw).unwrap();
    assert!(cp.covers_all(cw.len()), "100% coverage");
    assert!(cp.wobble <= 3);
    let ccert = check_free(&Candidate::Path(&cp), &cw, 20).unwrap();
    assert_eq!(ccert.verdict, Verdict::Certified);
    assert!(t1.elapsed().as_secs_f64() < 10.0);
    println!("ACCEPTANCE 03 z-construction-coverage: PASS");
}

#[test]
fn criterion_04_subgroup_refinement() {
    let g = MarkedGroup::lamplighter();
    let k = lamplighter_k(&g);
    let t = g.generator_by_name("t").unwrap();
    let phi = refine_subgroup_translation(&k, &t).unwrap();
    assert_eq!(phi.pieces().len(), 2, "exactly two pieces");
    // Exhaustive: image set-equals sK, injectively.
    let mut image: Vec<String> = k
        .elements()
        .iter()
        .map(|x| phi.apply(x).unwrap().canonical_string())
        .collect();
    image.sort();
    let mut sk: Vec<String> = k
        .left_coset(&t)
        .iter()
        .map(|x| x.canonical_string())
        .collect();
    sk.sort();
    assert_eq!(image, sk, "image equals sK exactly");
    let dedup: std::collections::BTreeSet<&String> = image.iter().collect();
    assert_eq!(dedup.len(), k.order(), "injective");

    // s inside K: a single piece.
    let a = g.generator_by_name("a").unwrap();
    let trivial = refine_subgroup_translation(&k, &a).unwrap();
    assert_eq!(trivial.pieces().len(), 1);
    println!("ACCEPTANCE 04 subgroup-refinement: PASS");
}

#[test]
fn criterion_05_lift_commutes_everywhere() {
    let w = lamplighter_coset_window(6);
    let p = construct_z_action(&w).unwrap();
    let alpha = p.successor_map(w.len());
    let lifted = lift_graph_map(&alpha, &w, 1).unwrap();
    let cert = check_quotient_commutes(&lifted, &alpha, &w).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    // 100% of core cosets: alpha is defined on each, and every member of
    // each coset commutes, replayed here point by point.
    let WindowKind::CayleyAbels { subgroup } = w.kind() else {
        panic!("coset window expected");
    };
    let mut cosets = 0usize;
    for v in w.core_indices() {
        let img = alpha.get(v).expect("successor defined on the core");
        for x in subgroup.left_coset(w.vertex(v)) {
            let y = lifted.apply(&x).unwrap();
            assert_eq!(w.locate(&y), Some(img));
        }
        cosets += 1;
    }
    assert!(cosets > 0);
    println!("ACCEPTANCE 05 cayley-abels-lift: PASS ({cosets} core cosets)");
}

#[test]
fn criterion_06_extension_by_section() {
    let z2 = MarkedGroup::free_abelian(2);
    let gen = z2.parse_element("(1,0)").unwrap();
    let cyclic = CyclicSubgroup::new(gen.clone());
    let (phi, fd) = translation_on_cyclic_subgroup(&cyclic).unwrap();
    let h = Subgroup::Cyclic(cyclic);
    let action = extend_action(
        &TLAction::new(ActingGroup::Z, vec![phi], Some(fd)).unwrap(),
        &h,
    )
    .unwrap();
    let w = GraphWindow::build_cayley(&z2, 10, WINDOW_CAP).unwrap();
    // psi is exactly +(1,0) on every window point.
    for v in w.vertices() {
        assert_eq!(
            action.generators[0].apply(v).unwrap(),
            v.mul(&gen).unwrap()
        );
    }
    let d = action.fundamental_domain.clone().unwrap();
    let cert = check_fundamental_domain(&Candidate::Tl(&action), &d, &w, 20).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    println!("ACCEPTANCE 06 extension-by-section: PASS");
}

#[test]
fn criterion_07_locally_elliptic_obstruction() {
    let lamp = MarkedGroup::lamplighter();
    let a = lamp.generator_by_name("a").unwrap();
    let t = lamp.generator_by_name("t").unwrap();

    let run = |g: &tla_core::GroupElement| {
        locally_elliptic_obstruction(&PiecewiseTranslation::right_translation(g), CLOSURE_CAP)
            .unwrap()
    };
    // Torsion translator: refuted with a 2-cycle, deterministically.
    for _ in 0..2 {
        let cert = run(&a);
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert!(matches!(cert.witness, Some(Witness::Cycle { length: 2, .. })));
    }
    // Infinite-order translator: inconclusive, then check_free certifies.
    let cert_t = run(&t);
    assert_eq!(cert_t.verdict, Verdict::Inconclusive);
    let action = TLAction::new(
        ActingGroup::Z,
        vec![PiecewiseTranslation::right_translation(&t)],
        None,
    )
    .unwrap();
    let w = GraphWindow::build_cayley(&lamp, 6, WINDOW_CAP).unwrap();
    let free = check_free(&Candidate::Tl(&action), &w, 10).unwrap();
    assert_eq!(free.verdict, Verdict::Certified);
    println!("ACCEPTANCE 07 locally-elliptic: PASS");
}

#[test]
fn criterion_08_free_actions_and_gate() {
    // F2 window, rank 2, budget 2: certified free at word depth 6, which
    // is an exhaustive scan of all 1456 reduced words of length <= 6.
    let words_up_to_6: u64 = (1..=6).map(|l| 4 * 3u64.pow(l - 1)).sum();
    assert_eq!(words_up_to_6, 1456);
    let f2 = MarkedGroup::free(2);
    let w = GraphWindow::build_cayley(&f2, 6, WINDOW_CAP).unwrap();
    let fa = construct_free_action(&w, 2, 2, Ratio::new(2, 5)).unwrap();
    let cert = check_free(&Candidate::Forest(&fa), &w, 6).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.freeness_depth, Some(6));

    // Z^2 window of radius 8: the gate refuses with the exact rational.
    let z2 = MarkedGroup::free_abelian(2);
    let wz = GraphWindow::build_cayley(&z2, 8, WINDOW_CAP).unwrap();
    assert_eq!(profile_of_window(&wz).gate_value(), Ratio::new(32u64, 145));
    match construct_free_action(&wz, 2, 2, Ratio::new(2, 5)) {
        Err(tla_core::TlaError::AmenableWindow { ratio, .. }) => {
            assert_eq!(ratio, "32/145");
        }
        other => panic!("expected the amenable gate, got {other:?}"),
    }
    println!("ACCEPTANCE 08 free-actions-gate: PASS");
}

#[test]
fn criterion_09_cocompactness_ends_crosscheck() {
    // Any cocompact Z request on F2 is refuted by the ends estimate.
    let f2 = MarkedGroup::free(2);
    let wf = GraphWindow::build_cayley(&f2, 5, WINDOW_CAP).unwrap();
    let pf = construct_z_action(&wf).unwrap();
    let cert = check_cocompact(&Candidate::Path(&pf), None, &wf, 20, 2, 5, WINDOW_CAP).unwrap();
    assert_eq!(cert.verdict, Verdict::Refuted);
    assert!(matches!(
        cert.witness,
        Some(Witness::EndsContradiction { .. })
    ));
    // A right-translation Z claim on F2 is refuted the same way.
    let ta = TLAction::new(
        ActingGroup::Z,
        vec![PiecewiseTranslation::right_translation(
            &f2.parse_element("a").unwrap(),
        )],
        None,
    )
    .unwrap();
    let cert_t =
        check_cocompact(&Candidate::Tl(&ta), None, &wf, 10, 2, 5, WINDOW_CAP).unwrap();
    assert_eq!(cert_t.verdict, Verdict::Refuted);

    // Transitive path actions on Z and Z^2 certify with C = 0.
    for (group, radius) in [
        (MarkedGroup::free_abelian(1), 12u32),
        (MarkedGroup::free_abelian(2), 6u32),
    ] {
        let w = GraphWindow::build_cayley(&group, radius, WINDOW_CAP).unwrap();
        let p = construct_z_action(&w).unwrap();
        let c = check_cocompact(&Candidate::Path(&p), None, &w, 20, 3, 8, WINDOW_CAP).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.cocompact_bound, Some(0));
    }
    println!("ACCEPTANCE 09 cocompactness-ends: PASS");
}

#[test]
fn criterion_10_algebra_property_suite() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7a11);

    struct Model {
        window: GraphWindow,
        pool: Vec<PiecewiseTranslation>,
    }
    let mut models = Vec::new();
    {
        let z = MarkedGroup::free_abelian(1);
        let two = Subgroup::Cyclic(CyclicSubgroup::new(z.parse_element("(2)").unwrap()));
        let swap = PiecewiseTranslation::new(
            &z,
            PieceSpec::All,
            vec![
                (
                    PieceSpec::coset_fiber(two.clone(), vec![z.identity()]),
                    z.parse_element("(1)").unwrap(),
                ),
                (
                    PieceSpec::coset_fiber(two, vec![z.parse_element("(1)").unwrap()]),
                    z.parse_element("(-1)").unwrap(),
                ),
            ],
        )
        .unwrap();
        let mut pool = vec![swap, PiecewiseTranslation::identity(&z)];
        for n in [-3i64, -1, 1, 2] {
            pool.push(PiecewiseTranslation::right_translation(
                &z.parse_element(&format!("({n})")).unwrap(),
            ));
        }
        models.push(Model {
            window: GraphWindow::build_cayley(&z, 10, WINDOW_CAP).unwrap(),
            pool,
        });
    }
    {
        let z2 = MarkedGroup::free_abelian(2);
        let mut pool = vec![PiecewiseTranslation::identity(&z2)];
        for v in ["(1,0)", "(0,1)", "(-1,1)", "(2,-1)"] {
            pool.push(PiecewiseTranslation::right_translation(
                &z2.parse_element(v).unwrap(),
            ));
        }
        // Column-parity swap, saturated from the first axis.
        let h = Subgroup::Cyclic(CyclicSubgroup::new(z2.parse_element("(1,0)").unwrap()));
        let even_col = Subgroup::Cyclic(CyclicSubgroup::new(z2.parse_element("(2,0)").unwrap()));
        let swap_on_axis = PiecewiseTranslation::new(
            &z2,
            PieceSpec::coset_fiber(h.clone(), vec![z2.identity()]),
            vec![
                (
                    PieceSpec::coset_fiber(even_col.clone(), vec![z2.identity()]),
                    z2.parse_element("(1,0)").unwrap(),
                ),
                (
                    PieceSpec::coset_fiber(even_col, vec![z2.parse_element("(1,0)").unwrap()]),
                    z2.parse_element("(-1,0)").unwrap(),
                ),
            ],
        )
        .unwrap();
        pool.push(tla_core::piecewise::extend_by_section(&swap_on_axis, &h).unwrap());
        models.push(Model {
            window: GraphWindow::build_cayley(&z2, 6, WINDOW_CAP).unwrap(),
            pool,
        });
    }
    {
        let lamp = MarkedGroup::lamplighter();
        let mut pool = vec![PiecewiseTranslation::identity(&lamp)];
        for name in ["t", "T", "a"] {
            pool.push(PiecewiseTranslation::right_translation(
                &lamp.generator_by_name(name).unwrap(),
            ));
        }
        models.push(Model {
            window: GraphWindow::build_cayley(&lamp, 4, WINDOW_CAP).unwrap(),
            pool,
        });
    }

    let mut identities = 0usize;
    while identities < 10_000 {
        let model = &models[rng.gen_range(0..models.len())];
        let w = &model.window;
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            model.pool[rng.gen_range(0..model.pool.len())].clone()
        };
        let f = pick(&mut rng);
        let g = pick(&mut rng);
        let h = pick(&mut rng);
        let core: Vec<_> = w.core_indices();
        let fg = PiecewiseTranslation::compose(&f, &g).unwrap();
        let gh = PiecewiseTranslation::compose(&g, &h).unwrap();
        let assoc_left = PiecewiseTranslation::compose(&fg, &h).unwrap();
        let assoc_right = PiecewiseTranslation::compose(&f, &gh).unwrap();
        let f_inv = f.invert();
        // Translator containment: T(f.g) inside T(g)*T(f).
        let ts_fg = fg.translator_set();
        let ts_f = f.translator_set();
        let ts_g = g.translator_set();
        for t in &ts_fg {
            let mut found = false;
            for tg in &ts_g {
                for tf in &ts_f {
                    if tg.mul(tf).unwrap() == *t {
                        found = true;
                    }
                }
            }
            assert!(found, "translator containment");
            identities += 1;
        }
        // Pointwise identities over a random sample of the core.
        let mut image = std::collections::BTreeSet::new();
        let mut sample = 0usize;
        for &v in core.iter() {
            if rng.gen_range(0..4) != 0 {
                continue;
            }
            let x = w.vertex(v);
            let left = assoc_left.apply(x).unwrap();
            let right = assoc_right.apply(x).unwrap();
            assert_eq!(left, right, "associativity");
            let back = f_inv.apply(&f.apply(x).unwrap()).unwrap();
            assert_eq!(back, *x, "inverse law");
            image.insert(f.apply(x).unwrap().canonical_string());
            sample += 1;
            identities += 2;
        }
        // Counting preservation: |f(A)| = |A|.
        assert_eq!(image.len(), sample, "counting preservation");
        identities += 1;
    }
    assert!(identities >= 10_000);
    println!("ACCEPTANCE 10 algebra-properties: PASS ({identities} identities)");
}
