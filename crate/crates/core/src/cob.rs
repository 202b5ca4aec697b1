//! The change of basis between `(V, ∧, Tr)` and `(W, ⋆, Tr′)`.
//!
//! `X` acts on a cell by every pair (epi `a` on top, monic `b` below);
//! `Y` uses only the nonnested ones, with the sign `(-1)^{#turn-backs}`.

use alloc::vec::Vec;

use crate::algebra::tl_action_diagram;
use crate::diagram::{BoxShape, Shading, TLDiagram};
use crate::element::{Flavor, GradedElement};
use crate::memo::Memo;
use crate::scalar::Scalar;

#[derive(Clone, Copy)]
enum Family {
    Epi,
    Monic,
    NonnestedEpi,
    NonnestedMonic,
}

const WIDTH: usize = 16;

static FAMILIES: Memo<Vec<(TLDiagram, Scalar)>, { 4 * WIDTH * WIDTH }> = Memo::new();

fn build(family: Family, from: usize, to: usize) -> Vec<(TLDiagram, Scalar)> {
    // epi maps go from `from` bottom points to `to` top points; monic maps
    // from `from` top points to `to` bottom points
    let shape = match family {
        Family::Epi | Family::NonnestedEpi => BoxShape::new(0, 0, to, from, Shading::Plus),
        Family::Monic | Family::NonnestedMonic => BoxShape::new(0, 0, from, to, Shading::Plus),
    };
    let caps = (from - to) / 2;
    let sign = if caps % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
    TLDiagram::enumerate(shape)
        .expect("even")
        .into_iter()
        .filter_map(|d| {
            let k = d.classify().expect("rectangle");
            match family {
                Family::Epi => k.epi.then(|| (d, Scalar::one())),
                Family::Monic => k.monic.then(|| (d, Scalar::one())),
                Family::NonnestedEpi => k.nonnested_epi.then(|| (d, sign.clone())),
                Family::NonnestedMonic => k.nonnested_monic.then(|| (d, sign.clone())),
            }
        })
        .collect()
}

fn family(kind: Family, from: usize, to: usize) -> alloc::borrow::Cow<'static, [(TLDiagram, Scalar)]> {
    use alloc::borrow::Cow;
    if from >= WIDTH || to >= WIDTH {
        return Cow::Owned(build(kind, from, to));
    }
    let key = (kind as usize) * WIDTH * WIDTH + from * WIDTH + to;
    Cow::Borrowed(FAMILIES.get(key, || build(kind, from, to)).expect("in range").as_slice())
}

fn apply(v: &GradedElement, top: Family, bottom: Family, flavor: Flavor) -> GradedElement {
    let mut out = GradedElement::zero(flavor);
    for (d, c) in v.terms() {
        let sh = d.shape();
        for s2 in (sh.top % 2..=sh.top).step_by(2) {
            let tops = family(top, sh.top, s2);
            for t2 in (sh.bottom % 2..=sh.bottom).step_by(2) {
                let bottoms = family(bottom, sh.bottom, t2);
                for (a, ca) in tops.iter() {
                    for (b, cb) in bottoms.iter() {
                        let (e, loops) = tl_action_diagram(a, b, d).expect("sizes match");
                        let coeff = (&(ca * cb) * c).mul_delta_pow(loops as i64);
                        out.add_term(e, &coeff);
                    }
                }
            }
        }
    }
    out
}

/// `X : V → W`.
pub fn map_x(v: &GradedElement) -> GradedElement {
    apply(v, Family::Epi, Family::Monic, Flavor::W)
}

/// `Y : W → V`.
pub fn map_y(w: &GradedElement) -> GradedElement {
    apply(w, Family::NonnestedEpi, Family::NonnestedMonic, Flavor::V)
}
