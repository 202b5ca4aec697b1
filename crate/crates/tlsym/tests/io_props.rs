use proptest::prelude::*;
use tlsym::io::{emit_element, parse_element, element_doc, to_pretty};
use tlsym::sample::Sampler;
use tlsym_core::{Flavor, GradedElement};

fn element(seed: u64) -> GradedElement {
    let mut rng = Sampler::new(seed);
    let flavor = if rng.below(2) == 0 { Flavor::V } else { Flavor::W };
    let mut e = GradedElement::zero(flavor);
    for _ in 0..rng.below(3) + 1 {
        let shape = rng.shape(10);
        let terms = rng.below(3) + 1;
        e = &e + &rng.element(flavor, shape, terms);
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn emit_parse_emit(seed in any::<u64>()) {
        let e = element(seed);
        let text = emit_element(&e, None);
        let back = parse_element(&text).unwrap().strict().unwrap();
        prop_assert_eq!(&back.element, &e);
        prop_assert_eq!(emit_element(&back.element, None), text);
    }

    #[test]
    fn reversed_pairs_are_canonicalized(seed in any::<u64>()) {
        let e = element(seed);
        let mut doc = element_doc(&e, None);
        let mut touched = false;
        for cell in &mut doc.cells {
            for term in &mut cell.terms {
                for p in &mut term.pairs {
                    p.swap(0, 1);
                    touched = true;
                }
                term.pairs.reverse();
            }
        }
        let parsed = parse_element(&to_pretty(&doc)).unwrap();
        prop_assert_eq!(parsed.notes.is_empty(), !touched);
        prop_assert_eq!(emit_element(&parsed.value.element, None), emit_element(&e, None));
    }
}
