mod common;

use common::Gen;
use proptest::prelude::*;
use tlsym_core::algebra::wedge_diagrams;
use tlsym_core::diagram::nc_matchings;
use tlsym_core::glue::{horizontal, loops_of_pair};
use tlsym_core::{BoxShape, Shading, TLDiagram};

fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[test]
fn catalan_counts() {
    for m in (0..=14).step_by(2) {
        assert_eq!(nc_matchings(m / 2).len(), catalan(m / 2), "m = {m}");
        let shape = BoxShape::new(m / 2, 0, m - m / 2, 0, Shading::Minus);
        assert_eq!(TLDiagram::enumerate(shape).unwrap().len(), catalan(m / 2));
    }
    assert!(TLDiagram::enumerate(BoxShape::new(1, 0, 0, 0, Shading::Plus)).is_err());
}

#[test]
fn crossing_matchings_are_rejected() {
    let shape = BoxShape::new(0, 0, 4, 0, Shading::Plus);
    assert!(TLDiagram::from_pairs(shape, &[(0, 2), (1, 3)]).is_err());
    assert!(TLDiagram::from_pairs(shape, &[(0, 1), (1, 2)]).is_err());
    assert!(TLDiagram::from_pairs(shape, &[(0, 3), (1, 2)]).is_ok());
}

#[test]
fn epi_iff_transposed_dagger_is_monic() {
    for top in 0..=6 {
        for bottom in (top % 2..=8).step_by(2) {
            for sh in [Shading::Plus, Shading::Minus] {
                for d in TLDiagram::enumerate(BoxShape::new(0, 0, top, bottom, sh)).unwrap() {
                    let k = d.classify().unwrap();
                    let t = d.dagger().transpose().classify().unwrap();
                    assert_eq!(k.epi, t.monic);
                    assert_eq!(k.nonnested_epi, t.nonnested_monic);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn involutions(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let shape = g.shape(12);
        let d = g.diagram(shape);
        prop_assert_eq!(d.dagger().dagger(), d.clone());
        prop_assert_eq!(d.transpose().transpose(), d.clone());
        prop_assert_eq!(d.rotate().rotate(), d.clone());
        prop_assert_eq!(d.dagger().transpose(), d.rotate());
    }

    #[test]
    fn loops_are_additive_under_wedge(seed in any::<u64>()) {
        // (x∧y)∧z and x∧(y∧z) close the same strands
        let mut g = Gen::new(seed);
        let sx = g.shape(8);
        let sy = g.shape_after(&sx, 8);
        let sz = g.shape_after(&sy, 8);
        let (x, y, z) = (g.diagram(sx), g.diagram(sy), g.diagram(sz));
        let (xy, l1) = wedge_diagrams(&x, &y).unwrap();
        let (xy_z, l2) = wedge_diagrams(&xy, &z).unwrap();
        let (yz, l3) = wedge_diagrams(&y, &z).unwrap();
        let (x_yz, l4) = wedge_diagrams(&x, &yz).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn horizontal_matches_wedge(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let sx = g.shape(10);
        let sy = g.shape_after(&sx, 10);
        let (x, y) = (g.diagram(sx), g.diagram(sy));
        prop_assert_eq!(horizontal(&x, &y).unwrap(), wedge_diagrams(&x, &y).unwrap());
    }

    #[test]
    fn meander_loops_are_symmetric(n in 0usize..5, i in any::<usize>(), j in any::<usize>()) {
        let all = nc_matchings(n);
        let (a, b) = (&all[i % all.len()], &all[j % all.len()]);
        prop_assert_eq!(loops_of_pair(a, b), loops_of_pair(b, a));
        prop_assert_eq!(loops_of_pair(a, a), n);
    }

    #[test]
    fn encoding_round_trips_through_pairs(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let shape = g.shape(12);
        let d = g.diagram(shape);
        let back = TLDiagram::from_pairs(shape, &d.pairs()).unwrap();
        prop_assert_eq!(back.encode(), d.encode());
        prop_assert_eq!(back, d);
    }
}
