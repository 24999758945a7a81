mod common;

use common::*;
use reduction_words::coproduct::CoproductSpec;
use reduction_words::elimination::{
    build_group_like_relations, check_mirror_relations, express_letter_irreducible,
    verify_generation, GroupLikeKind, MirrorDichotomy,
};
use reduction_words::frontend::{fixtures, parse_presentation, ModelAlgebra, PresentationFile};
use reduction_words::reduction::{check_delta_stabilizes_ideal, DeltaIdealStatus};
use reduction_words::{Field, Polynomial, ReducibilityAnswer};

const Q: Field = Field::Rational;

#[test]
fn every_bundled_file_round_trips() {
    for (name, text) in fixtures::ALL {
        let file = PresentationFile::from_json(text).unwrap();
        let again = PresentationFile::from_json(&file.to_json()).unwrap();
        assert_eq!(file, again, "{name}");
        let a = file.to_presentation(text).unwrap();
        let b = parse_presentation(&file.to_json()).unwrap();
        assert_eq!(a.ideal, b.ideal, "{name}");
    }
}

#[test]
fn example_3_2_shape() {
    let h = fixture("example_3_2");
    assert_eq!(h.alphabet.len(), 2);
    assert_eq!(h.ideal.generators().len(), 1);
}

#[test]
fn mirror_pair_relations_are_generated() {
    let h = fixture("mirror_pair");
    let a = &h.alphabet;
    let gens: Vec<String> = h
        .ideal
        .generators()
        .iter()
        .map(|g| g.display(a).to_string())
        .collect();
    assert_eq!(gens, ["x x* - x* - x", "x* x - x* - x"]);
}

#[test]
fn finite_order_relations() {
    let a = reduction_words::Alphabet::from_names(&["z"]).unwrap();
    let z = a.id("z").unwrap();
    let two = build_group_like_relations(&a, Q, z, GroupLikeKind::FiniteOrder(2)).unwrap();
    assert_eq!(two.relations[0].display(&a).to_string(), "z z - 2 * z");
    assert_eq!(two.inverse_witnesses[0].1.display(&a).to_string(), "-z + 1");
    let one = build_group_like_relations(&a, Q, z, GroupLikeKind::FiniteOrder(1)).unwrap();
    assert_eq!(one.relations[0].display(&a).to_string(), "z");
    assert!(one.inverse_witnesses[0].1 == Polynomial::one(Q));
    assert!(build_group_like_relations(&a, Q, z, GroupLikeKind::FiniteOrder(0)).is_err());
    assert!(build_group_like_relations(&a, Q, z, GroupLikeKind::Mirror).is_err());
}

fn model(name: &str) -> (reduction_words::HopfPresentation, ModelAlgebra) {
    let h = fixture(name);
    let file = fixture_file(name);
    let m = ModelAlgebra::new(file.model.as_ref().unwrap(), &h.alphabet, h.field).unwrap();
    (h, m)
}

#[test]
fn models_kill_every_span_element() {
    for name in ["z2_grouplike", "augmented_sweedler"] {
        let (h, m) = model(name);
        let span = h.span(&h.bounds).unwrap();
        for f in span.basis() {
            assert!(
                m.evaluate(f).iter().all(|c| c.is_zero()),
                "{name}: {}",
                f.display(&h.alphabet)
            );
        }
    }
}

#[test]
fn uncertified_words_are_a_basis_of_the_model() {
    // Both models are the full quotient, so the uncertified words must map
    // to a basis of them.
    for name in ["z2_grouplike", "augmented_sweedler"] {
        let (h, m) = model(name);
        let span = h.span(&h.bounds).unwrap();
        let words = span.irreducible_words_up_to(h.bounds.length).unwrap();
        let images: Vec<_> = words.iter().map(|w| m.word(w)).collect();
        assert_eq!(words.len(), m.dim(), "{name}");
        assert_eq!(m.rank(&images), m.dim(), "{name}");
    }
}

#[test]
fn sweedler_witness_matches_the_model() {
    let (h, m) = model("augmented_sweedler");
    let a = &h.alphabet;
    let span = h.span(&h.bounds).unwrap();
    let w = a.id("w").unwrap();
    let witness = express_letter_irreducible(w, &span).unwrap();
    assert_eq!(witness.expression.display(a).to_string(), "x - z x");
    assert_eq!(m.evaluate(&witness.expression), m.word(&word(a, "w")));
}

#[test]
fn bundled_presentations_pass_generation() {
    for (name, _) in fixtures::ALL {
        let h = fixture(name);
        let r = verify_generation(&h, &h.bounds).unwrap();
        assert!(r.passed(), "{name}:\n{}", r.to_text());
        assert!(r.witnesses.iter().all(|w| w.verified && w.descends));
    }
}

#[test]
fn generation_report_serializes() {
    let h = fixture("augmented_sweedler");
    let r = verify_generation(&h, &h.bounds).unwrap();
    let back: reduction_words::elimination::GenerationReport =
        serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(r.certified_reducible, ["w"]);
    assert_eq!(r.uncertified, ["z", "x"]);
    assert_eq!(r.uncertified_originals, 2);
}

#[test]
fn coproduct_structure_on_short_words() {
    for name in [
        "divided_power",
        "augmented_sweedler",
        "example_3_2",
        "mirror_pair",
    ] {
        let h = fixture(name);
        let a = &h.alphabet;
        for w in a.words_up_to(4).iter().filter(|w| !w.is_empty()) {
            let c = h.coproduct.classify_delta(w, a).unwrap();
            assert_eq!(c.total(), h.coproduct.delta_word(w).unwrap());
            assert!(
                h.coproduct.check_degree_length_descent(w, a).unwrap().holds,
                "{name}: {}",
                w.display(a)
            );
        }
    }
}

#[test]
fn coproduct_is_multiplicative_and_counital() {
    let h = fixture("divided_power");
    let a = &h.alphabet;
    let words = a.words_up_to(2);
    for u in &words {
        for v in &words {
            let lhs = h.coproduct.delta_word(&u.concat(v)).unwrap();
            let rhs = &h.coproduct.delta_word(u).unwrap() * &h.coproduct.delta_word(v).unwrap();
            assert_eq!(lhs, rhs);
        }
        let counit = h.coproduct.delta_word(u).unwrap().counit_left();
        assert_eq!(counit, Polynomial::word(Q, u.clone()));
    }
}

#[test]
fn sweedler_product_has_a_middle_term() {
    let h = fixture("augmented_sweedler");
    let a = &h.alphabet;
    let c = h.coproduct.classify_delta(&word(a, "z x"), a).unwrap();
    assert!(c.middle.is_some());
}

#[test]
fn delta_check_on_fixtures() {
    for name in [
        "divided_power",
        "augmented_sweedler",
        "example_3_2",
        "z2_grouplike",
    ] {
        let h = fixture(name);
        let span = h.span(&h.bounds).unwrap();
        let status = check_delta_stabilizes_ideal(&span, &h.coproduct, h.bounds.check_len).unwrap();
        assert_ne!(
            std::mem::discriminant(&status),
            std::mem::discriminant(&DeltaIdealStatus::Fails {
                witness: Polynomial::zero(Q)
            }),
            "{name}: {status:?}"
        );
    }
}

#[test]
fn dropping_the_correction_term_breaks_delta_stability() {
    let h = fixture("divided_power");
    let a = &h.alphabet;
    let mut broken: CoproductSpec = h.coproduct.clone();
    broken.remove_tail_term(a.id("y").unwrap(), 0);
    let span = h.span(&h.bounds).unwrap();
    let status = check_delta_stabilizes_ideal(&span, &broken, 2).unwrap();
    assert!(
        matches!(status, DeltaIdealStatus::Fails { .. }),
        "{status:?}"
    );
}

#[test]
fn mirror_doctored_variants() {
    let h = fixture("mirror_pair");
    let a = &h.alphabet;
    let x = a.id("x").unwrap();
    let span = h.span(&h.bounds).unwrap();
    for w in ["x x*", "x* x"] {
        assert!(span.is_reducible(&word(a, w)).unwrap().is_certified());
    }
    assert!(!check_mirror_relations(x, &span).unwrap().triggered());

    let killed = h
        .with_relations(&[poly(a, "x", Q)])
        .unwrap()
        .span(&h.bounds)
        .unwrap();
    let r = check_mirror_relations(x, &killed).unwrap();
    assert_eq!(
        r.mirror_certificate
            .unwrap()
            .polynomial
            .leading_word()
            .unwrap(),
        &word(a, "x*")
    );
    assert!(matches!(
        r.dichotomy,
        Some(MirrorDichotomy::LetterReducible { .. })
    ));

    let equal = h
        .with_relations(&[poly(a, "x* - x", Q)])
        .unwrap()
        .span(&h.bounds)
        .unwrap();
    let r = check_mirror_relations(x, &equal).unwrap();
    match r.dichotomy {
        Some(MirrorDichotomy::SquareReducible { k_x, certificate }) => {
            assert!(!k_x.is_zero());
            assert_eq!(certificate.word, word(a, "x x"));
            assert!(matches!(
                equal.is_reducible(&certificate.word).unwrap(),
                ReducibilityAnswer::Certified(_)
            ));
        }
        other => panic!("{other:?}"),
    }
}
