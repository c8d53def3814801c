mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use toric_origami::algebra::Character;
use toric_origami::localization::{
    audit_localization, audit_localization_with, build_covering, max_admissible_epsilon, CoveringParams,
    LocalizationError,
};
use toric_origami::oracle::{find_generic_direction, oracle_check_template_with};
use toric_origami::quantization::{danilov_template, danilov_template_with};
use toric_origami::rational::{rat, ratio};
use toric_origami::template::{gen_sphere_template, OrigamiTemplate, Sign, ValidatedTemplate};
use toric_origami::Strategy as Exec;

use common::{corpus_polytopes, corpus_templates, single, two_copies};

fn corpus_index() -> impl Strategy<Value = usize> {
    0..corpus_templates().len()
}

fn corpus(i: usize) -> (String, OrigamiTemplate) {
    corpus_templates().swap_remove(i)
}

fn shift(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, n)
}

fn gl2() -> impl Strategy<Value = Vec<Vec<i64>>> {
    // products of elementary moves stay in GL(2, Z)
    prop::collection::vec(0usize..4, 0..5).prop_map(|moves| {
        let mut g = vec![vec![1i64, 0], vec![0, 1]];
        for m in moves {
            let e = match m {
                0 => [[1, 1], [0, 1]],
                1 => [[1, 0], [-1, 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[-1, 0], [0, 1]],
            };
            g = (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| e[i][k] * g[k][j]).sum()).collect()).collect();
        }
        g
    })
}

fn mat_vec(g: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    g.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn validated(t: &OrigamiTemplate) -> ValidatedTemplate {
    t.validated().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn translation_shifts_the_character(i in corpus_index(), seed in shift(3)) {
        let (_, t) = corpus(i);
        let v = &seed[..t.dimension()];
        let base = danilov_template(&validated(&t)).character;
        let moved = t.translated(v).unwrap();
        prop_assert_eq!(danilov_template(&validated(&moved)).character, base.shift(v).unwrap());
        prop_assert_eq!(max_admissible_epsilon(&validated(&moved)), max_admissible_epsilon(&validated(&t)));
    }

    #[test]
    fn gl_action_maps_exponents(k in 1i64..=3, g in gl2()) {
        for t in [gen_sphere_template(2, &rat(k)).unwrap(), single("sq", &common::cube(2, k))] {
            let base = danilov_template(&validated(&t)).character;
            let image = t.transformed(&g).unwrap();
            let v = validated(&image);
            prop_assert_eq!(danilov_template(&v).character, base.map_exponents(2, |x| mat_vec(&g, x)));
        }
    }

    #[test]
    fn renaming_changes_nothing_but_names(i in corpus_index()) {
        let (_, t) = corpus(i);
        let renamed = t.renamed(|s| format!("renamed-{s}")).unwrap();
        let (a, b) = (danilov_template(&validated(&t)), danilov_template(&validated(&renamed)));
        prop_assert_eq!(&a.character, &b.character);
        for (name, c) in &a.per_polytope {
            prop_assert_eq!(c, &b.per_polytope[&format!("renamed-{name}")]);
        }
    }

    #[test]
    fn fold_sides_are_symmetric(i in corpus_index()) {
        let (_, t) = corpus(i);
        let swapped = t.with_folds(t.folds().iter().map(|f| f.swapped()).collect()).unwrap();
        let (a, b) = (validated(&t), validated(&swapped));
        prop_assert_eq!(danilov_template(&a).character, danilov_template(&b).character);
        prop_assert_eq!(max_admissible_epsilon(&a), max_admissible_epsilon(&b));
    }

    #[test]
    fn admissibility_is_monotone(i in corpus_index(), p in 1i64..=40, q in 1i64..=40) {
        let (_, t) = corpus(i);
        let adm = max_admissible_epsilon(&validated(&t));
        let (small, large) = (ratio(p.min(q), 40), ratio(p.max(q), 40));
        if adm.admits(&large) {
            prop_assert!(adm.admits(&small));
        }
        if let Some(bound) = adm.squared_bound() {
            let eps = ratio(p, q);
            prop_assert_eq!(adm.admits(&eps), &(&eps * &eps) < bound);
            let strict = build_covering(&validated(&t), &CoveringParams::new(eps.clone()).unwrap());
            prop_assert_eq!(strict.is_ok(), adm.admits(&eps));
        }
    }

    #[test]
    fn face_breakdown_matches_face_interiors(i in corpus_index()) {
        let (_, t) = corpus(i);
        let v = validated(&t);
        let rr = danilov_template(&v);
        for sp in v.polytopes() {
            let mut sum = Character::zero(v.dimension());
            for face in sp.polytope.faces().faces() {
                let c = &rr.per_face[&(sp.name.clone(), face.facets().to_vec())];
                let direct = Character::from_terms(
                    v.dimension(),
                    sp.polytope.face_interior_lattice_points(face).into_iter().map(|x| (x, BigInt::from(sp.sign.value()))),
                ).unwrap();
                prop_assert_eq!(c, &direct);
                sum = &sum + c;
            }
            prop_assert_eq!(&sum, &rr.per_polytope[&sp.name]);
        }
    }
}

#[test]
fn flipping_every_sign_negates() {
    for (name, t) in corpus_templates() {
        let flipped: Vec<Sign> = t.polytopes().iter().map(|p| p.sign.opposite()).collect();
        let f = t.with_signs(&flipped).unwrap();
        let (a, b) = (danilov_template(&validated(&t)), danilov_template(&validated(&f)));
        assert_eq!(-&a.character, b.character, "{name}");
    }
}

#[test]
fn strategies_agree_on_every_corpus_template() {
    for (name, t) in corpus_templates() {
        let v = validated(&t);
        assert_eq!(danilov_template_with(&v, Exec::Sequential), danilov_template_with(&v, Exec::Parallel), "{name}");
        let params = CoveringParams::new(max_admissible_epsilon(&v).suggested_epsilon()).unwrap();
        assert_eq!(
            audit_localization_with(&v, &params, Exec::Sequential).unwrap(),
            audit_localization_with(&v, &params, Exec::Parallel).unwrap(),
            "{name}"
        );
        if v.polytopes().iter().all(|sp| sp.polytope.has_integral_vertices()) {
            assert_eq!(
                oracle_check_template_with(&v, None, Exec::Sequential).unwrap(),
                oracle_check_template_with(&v, None, Exec::Parallel).unwrap(),
                "{name}"
            );
        }
    }
}

#[test]
fn two_copies_cancel_on_every_facet() {
    for (name, p) in corpus_polytopes().into_iter().take(12) {
        for facet in 0..p.halfspaces().len() {
            let v = validated(&two_copies(&p, facet));
            assert!(danilov_template(&v).character.is_zero(), "{name}");
            let eps = max_admissible_epsilon(&v).suggested_epsilon();
            let report = audit_localization(&v, &CoveringParams::new(eps).unwrap()).unwrap();
            assert!(report.passed() && report.pairs_cancel(), "{name} facet {facet}");
        }
    }
}

#[test]
fn oversized_epsilon_on_the_sphere_hits_the_crack() {
    let v = validated(&gen_sphere_template(2, &ratio(1, 1)).unwrap());
    let bound = max_admissible_epsilon(&v).squared_bound().cloned().unwrap();
    assert_eq!(bound, ratio(1, 8));
    let eps = ratio(1, 2);
    let strict = build_covering(&v, &CoveringParams::new(eps.clone()).unwrap());
    assert!(matches!(strict, Err(LocalizationError::InadmissibleEpsilon { .. })));
    let err = audit_localization(&v, &CoveringParams::overridden(eps).unwrap()).unwrap_err();
    assert!(matches!(err, LocalizationError::AuditFailure { .. }), "{err}");
}

#[test]
fn generic_direction_is_found_for_all_integral_templates() {
    for (name, t) in corpus_templates() {
        let v = validated(&t);
        let ps: Vec<_> = v.polytopes().iter().map(|sp| &sp.polytope).collect();
        let a = find_generic_direction(&ps);
        assert_eq!(a.len(), v.dimension(), "{name}");
        assert!(a.iter().all(|&x| x >= 0) && a.iter().any(|&x| x != 0), "{name}");
    }
}
