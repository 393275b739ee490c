mod common;

use proptest::prelude::*;

use quillen_core::fincat::io::{parse_category, CategoryFile};
use quillen_core::fincat::{
    classifying_category, comma_over, cospan, cyclic_group, find_isomorphism, free_iso, idem,
    interval, point, product, twisted_arrow, FinCat, FinCatError, FinFunctor, Morphism,
    RawCategory,
};

use common::{random_monoid, random_poset, small_categories};

/// `|{(a, b) : b ∘ f ∘ a = f'}|` by enumerating all pairs.
fn factorizations(c: &FinCat, f: usize, f2: usize) -> usize {
    let mut count = 0;
    for a in 0..c.num_morphisms() {
        for b in 0..c.num_morphisms() {
            let fa = c.compose(f, a);
            let bfa = fa.and_then(|fa| c.compose(b, fa));
            if bfa == Some(f2) {
                count += 1;
            }
        }
    }
    count
}

fn has_terminal_object(c: &FinCat) -> bool {
    (0..c.num_objects()).any(|t| (0..c.num_objects()).all(|x| c.hom(x, t).len() == 1))
}

fn check_twisted_arrow(c: &FinCat) {
    let tw = twisted_arrow(c);
    assert_eq!(tw.category.num_objects(), c.num_morphisms());
    for f in 0..c.num_morphisms() {
        for f2 in 0..c.num_morphisms() {
            assert_eq!(tw.category.hom(f, f2).len(), factorizations(c, f, f2));
        }
    }
    // the projection sends f: x -> y to (x, y)
    let target = tw.projection.target();
    for f in 0..c.num_morphisms() {
        let pair = target.object_name(tw.projection.object(f));
        let expected = format!("({},{})", c.object_name(c.dom(f)), c.object_name(c.cod(f)));
        assert_eq!(pair, expected);
    }
}

fn check_nerve_recursion(c: &FinCat) {
    for n in 0..4 {
        let chains = c.nerve_chains(n);
        let predicted: usize = chains
            .iter()
            .map(|ch| c.out_non_identity(ch.end(c)).len())
            .sum();
        assert_eq!(c.nerve_chains(n + 1).len(), predicted);
        for ch in c.nerve_chains(n + 1) {
            assert!(ch.arrows.iter().all(|&a| !c.is_identity(a)));
            for w in ch.arrows.windows(2) {
                assert_eq!(c.cod(w[0]), c.dom(w[1]));
            }
        }
    }
}

#[test]
fn small_categories_satisfy_structural_invariants() {
    for c in small_categories(40) {
        check_twisted_arrow(&c);
        check_nerve_recursion(&c);
        let id = FinFunctor::identity(&c);
        for d in 0..c.num_objects() {
            assert!(has_terminal_object(&comma_over(&id, d)));
        }
        assert!(c.opposite().opposite().same_structure(&c));
        let tw = twisted_arrow(&c).category;
        let tw_op = twisted_arrow(&c.opposite()).category;
        for f in 0..c.num_morphisms() {
            for f2 in 0..c.num_morphisms() {
                assert_eq!(tw.hom(f, f2).len(), tw_op.hom(f, f2).len());
            }
        }
    }
}

#[test]
fn twisted_arrow_examples() {
    assert!(twisted_arrow(&point()).category.same_structure(&point()));
    let tw1 = twisted_arrow(&interval(1)).category;
    assert!(find_isomorphism(&tw1, &cospan()).is_some());
    assert_eq!(tw1.num_objects(), 3);
    assert_eq!(tw1.non_identity_morphisms().count(), 2);
    let c = idem();
    let tw = twisted_arrow(&c).category;
    let (one, f) = (c.identity(0), c.morphism_index("f").unwrap());
    let sizes = [
        tw.hom(f, f).len(),
        tw.hom(one, one).len(),
        tw.hom(one, f).len(),
        tw.hom(f, one).len(),
    ];
    assert_eq!(sizes, [4, 1, 3, 0]);
    assert_eq!(twisted_arrow(&free_iso()).category.num_objects(), 4);
}

#[test]
fn products_and_opposites() {
    let i1 = interval(1);
    let p = product(&i1, &i1);
    assert_eq!((p.num_objects(), p.num_morphisms()), (4, 9));
    let pi = product(&idem(), &idem());
    assert_eq!((pi.num_objects(), pi.num_morphisms()), (1, 4));
    for c in small_categories(10) {
        assert!(find_isomorphism(&product(&point(), &c), &c).is_some());
        assert_eq!(
            product(&c, &interval(2)).num_morphisms(),
            c.num_morphisms() * interval(2).num_morphisms()
        );
    }
    assert!(point().opposite().same_structure(&point()));
    let op = i1.opposite();
    let u = op.non_identity_morphisms().next().unwrap();
    assert_eq!((op.dom(u), op.cod(u)), (1, 0));
}

#[test]
fn comma_examples() {
    let id = FinFunctor::identity(&point());
    assert!(comma_over(&id, 0).same_structure(&point()));
    let at_one = FinFunctor::new(point(), interval(1), vec![1], vec![interval(1).identity(1)]).unwrap();
    assert_eq!(comma_over(&at_one, 0).num_objects(), 0);
    // Tw([1]) -> Tw(I): compare with an enumeration of pairs (c, u)
    let f = FinFunctor::new(interval(1), free_iso(), vec![0, 1], vec![0, 2, 1]).unwrap();
    let (_, _, gamma) = f.twisted();
    let (src, tgt) = (gamma.source(), gamma.target());
    for d in 0..tgt.num_objects() {
        let pairs = (0..src.num_objects())
            .map(|c| {
                (0..tgt.num_morphisms())
                    .filter(|&u| tgt.dom(u) == gamma.object(c) && tgt.cod(u) == d)
                    .count()
            })
            .sum::<usize>();
        let comma = comma_over(&gamma, d);
        assert_eq!(comma.num_objects(), pairs);
        assert!(pairs > 0);
    }
}

#[test]
fn nerve_examples() {
    assert_eq!(interval(1).nerve_chains(1).len(), 1);
    for n in 1..6 {
        let chains = idem().nerve_chains(n);
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].arrows.len(), n);
        assert!(point().nerve_chains(n).is_empty());
    }
    assert_eq!(point().nerve_chains(0).len(), 1);
}

#[test]
fn classifying_categories() {
    assert!(classifying_category(&[vec![0]], None).unwrap().same_structure(&point()));
    let idem_table = vec![vec![0, 1], vec![1, 1]];
    assert!(find_isomorphism(&classifying_category(&idem_table, None).unwrap(), &idem()).is_some());
    let c2 = cyclic_group(2);
    assert!(c2.is_groupoid());
    assert_eq!((c2.num_objects(), c2.num_morphisms()), (1, 2));
    assert!(matches!(
        classifying_category(&[vec![0, 0], vec![1, 0]], None),
        Err(FinCatError::NotAssociative { .. } | FinCatError::NoUnit)
    ));
    assert!(matches!(
        classifying_category(&[vec![1, 1], vec![1, 1]], None),
        Err(FinCatError::NoUnit)
    ));
    let iso = free_iso();
    assert_eq!((iso.num_objects(), iso.num_morphisms()), (2, 4));
    assert!(iso.is_groupoid());
}

fn one_object(extra: &[&str], composition: Vec<(usize, usize, usize)>) -> Result<FinCat, FinCatError> {
    let mut morphisms = vec![Morphism { name: "id".into(), dom: 0, cod: 0 }];
    for name in extra {
        morphisms.push(Morphism { name: name.to_string(), dom: 0, cod: 0 });
    }
    FinCat::validate(RawCategory {
        objects: vec!["x".into()],
        morphisms,
        identities: vec![Some(0)],
        composition,
    })
}

#[test]
fn validation_errors() {
    assert!(one_object(&["f"], vec![(1, 1, 1)]).unwrap().same_structure(&idem()));
    // f∘f declared both as id and as f
    assert!(one_object(&["f"], vec![(1, 1, 0), (1, 1, 1)]).is_err());
    assert!(matches!(
        one_object(&["a", "b"], vec![(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 2)]),
        Err(FinCatError::AssociativityViolation { .. })
    ));
    assert!(matches!(
        one_object(&["f"], vec![(0, 1, 0)]),
        Err(FinCatError::UnitLawViolation { .. } | FinCatError::ConflictingComposition { .. })
    ));
    let missing = FinCat::validate(RawCategory {
        objects: vec!["x".into()],
        morphisms: vec![Morphism { name: "f".into(), dom: 0, cod: 0 }],
        identities: vec![None],
        composition: vec![(0, 0, 0)],
    });
    assert!(matches!(missing, Err(FinCatError::MissingIdentity { object: 0 })));
    let dangling = r#"{"objects": ["x"], "morphisms": [{"name": "id", "dom": "x", "cod": "y"}],
        "identities": {"x": "id"}}"#;
    assert!(matches!(parse_category(dangling), Err(FinCatError::DanglingIndex { .. })));
    let unknown = r#"{"objects": [], "morphisms": [], "identities": {}, "extra": 1}"#;
    assert!(matches!(parse_category(unknown), Err(FinCatError::Malformed(_))));
}

#[test]
fn category_files_roundtrip() {
    for c in small_categories(10) {
        let json = serde_json::to_string(&CategoryFile::from_category(&c)).unwrap();
        assert_eq!(parse_category(&json).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_posets_have_consistent_constructions(seed in any::<u64>()) {
        let c = random_poset(seed, 4);
        check_twisted_arrow(&c);
        check_nerve_recursion(&c);
        prop_assert!(c.is_skeletal());
        let id = FinFunctor::identity(&c);
        for d in 0..c.num_objects() {
            prop_assert!(has_terminal_object(&comma_over(&id, d)));
        }
    }

    #[test]
    fn random_monoids_have_consistent_constructions(seed in any::<u64>()) {
        if let Some(c) = random_monoid(seed, 8) {
            check_twisted_arrow(&c);
            check_nerve_recursion(&c);
            prop_assert!(c.opposite().opposite().same_structure(&c));
        }
    }

    #[test]
    fn functors_preserve_composition(seed in any::<u64>()) {
        let c = random_poset(seed, 3);
        let (_, _, gamma) = FinFunctor::identity(&c).twisted();
        for f in 0..gamma.source().num_morphisms() {
            for g in 0..gamma.source().num_morphisms() {
                if let Some(gf) = gamma.source().compose(g, f) {
                    prop_assert_eq!(
                        gamma.target().compose(gamma.morphism(g), gamma.morphism(f)),
                        Some(gamma.morphism(gf))
                    );
                }
            }
        }
    }
}

fn check_category_laws(c: &FinCat) {
    for f in 0..c.num_morphisms() {
        assert_eq!(c.compose(f, c.identity(c.dom(f))), Some(f));
        assert_eq!(c.compose(c.identity(c.cod(f)), f), Some(f));
        for g in (0..c.num_morphisms()).filter(|&g| c.dom(g) == c.cod(f)) {
            let gf = c.compose(g, f).expect("composable");
            assert_eq!((c.dom(gf), c.cod(gf)), (c.dom(f), c.cod(g)));
            for h in (0..c.num_morphisms()).filter(|&h| c.dom(h) == c.cod(g)) {
                assert_eq!(c.compose(h, gf), c.compose(h, g).and_then(|hg| c.compose(hg, f)));
            }
        }
    }
}

#[test]
fn comma_categories_satisfy_category_laws() {
    for c in small_categories(20) {
        let id = FinFunctor::identity(&c);
        for d in 0..c.num_objects() {
            check_category_laws(&comma_over(&id, d));
        }
        let (_, _, gamma) = id.twisted();
        for d in 0..gamma.target().num_objects() {
            check_category_laws(&comma_over(&gamma, d));
        }
    }
}
