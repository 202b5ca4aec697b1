mod common;

use common::Gen;
use proptest::prelude::*;
use tlsym_core::algebra::{embed_tensor, v_product};
use tlsym_core::derivations::*;
use tlsym_core::gns::*;
use tlsym_core::{BoxShape, Flavor, GradedElement, Scalar, Shading};

fn tensor_cell(g: &mut Gen, max_half: usize, terms: usize) -> GradedElement {
    let mut out = GradedElement::zero(Flavor::V);
    for _ in 0..terms {
        let s = 2 * g.below(max_half + 1);
        let t = 2 * g.below(max_half + 1);
        let d = g.diagram(BoxShape::new(0, 0, s, t, Shading::Plus));
        let c = g.scalar();
        out.add_term(d, &c);
    }
    out
}

fn phi(g: &mut Gen, max_points: usize, terms: usize) -> PhiElement {
    let mut out = GradedElement::zero(Flavor::V);
    for _ in 0..terms {
        let m = 2 * g.below(max_points / 2) + 1;
        let s = g.below(m + 1);
        let shape = BoxShape::new(1, 0, s, m - s, Shading::Plus.flip_if_odd(s));
        let d = g.diagram(shape);
        let c = g.scalar();
        out.add_term(d, &c);
    }
    PhiElement::new(out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn expectation_is_a_projection(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let q = tensor_cell(&mut g, 2, 3);
        let e = conditional_expectation(&q).unwrap();
        prop_assert_eq!(conditional_expectation(&e).unwrap(), e.clone());
        prop_assert!(is_orthogonal_to_tensor(&(&q - &e)).unwrap());
        prop_assert_eq!(conditional_expectation_tau(&q).unwrap(), e);
    }

    #[test]
    fn expectation_is_a_bimodule_map(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let q = tensor_cell(&mut g, 1, 2);
        let a = embed_tensor(&g.gr0(1, 1), &g.gr0(1, 1)).unwrap();
        let b = embed_tensor(&g.gr0(1, 1), &g.gr0(1, 1)).unwrap();
        let lhs = conditional_expectation(&bimodule(&a, &q, &b)).unwrap();
        let rhs = bimodule(&a, &conditional_expectation(&q).unwrap(), &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_tilde_is_a_derivation(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let q = phi(&mut g, 5, 2);
        let x = g.gr0(2, 2);
        let y = g.gr0(2, 2);
        let lhs = delta_tilde(&q, &v_product(&x, &y)).unwrap();
        let rhs = &v_product(&hat_left(&x).unwrap(), &delta_tilde(&q, &y).unwrap())
            + &v_product(&hat_right(&y).unwrap(), &delta_tilde(&q, &x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_tilde_is_linear_in_q(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (q1, q2) = (phi(&mut g, 5, 2), phi(&mut g, 5, 2));
        let (a, b) = (g.scalar(), g.scalar());
        let x = g.gr0(2, 2);
        let sum = PhiElement::new(&q1.element().scale(&a) + &q2.element().scale(&b)).unwrap();
        let lhs = delta_tilde(&sum, &x).unwrap();
        let rhs = &delta_tilde(&q1, &x).unwrap().scale(&a) + &delta_tilde(&q2, &x).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let raw = tensor_cell(&mut g, 2, 2);
        let r = &raw - &conditional_expectation(&raw).unwrap();
        let q = rho(&OmegaElement::new(r.clone()).unwrap());
        let back = kernel_reconstruct(&q, 2).unwrap();
        prop_assert_eq!(back.element(), &r);
        let x = g.gr0(2, 2);
        prop_assert!(delta(&q, &x).unwrap().is_zero());
    }
}

#[test]
fn conjugate_variable_pairing() {
    let mut g = Gen::new(3);
    for _ in 0..10 {
        let q = phi(&mut g, 3, 2);
        for n in 0..=2 {
            for x in tlsym_core::algebra::gr_basis(0, n, Shading::Plus) {
                let x = GradedElement::from_diagram(Flavor::V, x);
                let (a, b) = conjugate_pairing(&q, &x).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn coassociativity_up_to_degree_three() {
    for n in 0..=3 {
        for x in tlsym_core::algebra::gr_basis(0, n, Shading::Plus) {
            let (lhs, rhs) = coassociativity_sides(&x).unwrap();
            assert_eq!(lhs, rhs, "{x}");
        }
    }
}

#[test]
fn gram_matrices_are_symmetric() {
    for shape in [BoxShape::new(0, 0, 2, 2, Shading::Plus), BoxShape::new(1, 1, 2, 0, Shading::Minus)] {
        for pairing in [Pairing::Tau, Pairing::TauPrime] {
            let m = gram_matrix(shape, pairing).unwrap();
            for (i, row) in m.entries.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(v, &m.entries[j][i]);
                }
            }
        }
    }
    assert_eq!(inner_product(&GradedElement::zero(Flavor::V), &GradedElement::zero(Flavor::V), Pairing::Tau).unwrap(), Scalar::zero());
}
