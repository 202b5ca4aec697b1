//! Products, involutions, traces and standard elements of `Gr_k`, `V` and
//! `W`.
//!
//! Elements of `Gr_k` are stored as `V`-cells of shape `(k, k, 2n, 0)`:
//! `k` strings on each side and `2n` free strings on top. The algebra
//! `Gr_0 ⊠ Gr_0` is the span of the shapes `(0, 0, 2s, 2t)`.

use alloc::vec::Vec;

use crate::diagram::{nc_matchings, BoxShape, Shading, Side, TLDiagram};
use crate::element::{Flavor, GradedElement};
use crate::error::{Error, Result};
use crate::glue::{self, loops_of_pair, Tangle};
use crate::scalar::{Poly, Scalar};

fn delta_pow(k: usize) -> Scalar {
    Scalar::delta_pow(k as i64)
}

/// Polynomial `Σ hist[i] δ^i`.
fn hist_poly(hist: &[u64]) -> Scalar {
    Scalar::from_poly(Poly::from_coeffs(hist.iter().map(|&c| c.into()).collect()))
}

/// Whether `y` may follow `x` in a horizontal product.
pub fn composable(x: &BoxShape, y: &BoxShape) -> bool {
    x.right == y.left && y.shading == x.shading.flip_if_odd(x.top)
}

/// `x ∧ y` on basis diagrams; `None` when the product is zero by
/// definition.
pub fn wedge_diagrams(x: &TLDiagram, y: &TLDiagram) -> Option<(TLDiagram, usize)> {
    if !composable(x.shape(), y.shape()) {
        return None;
    }
    Some(glue::horizontal(x, y).expect("side counts checked"))
}

/// Horizontal product `∧` of `V`.
pub fn v_product(x: &GradedElement, y: &GradedElement) -> GradedElement {
    GradedElement::bilinear(x, y, Flavor::V, |a, b, out| {
        if let Some((d, loops)) = wedge_diagrams(a, b) {
            out.push((d, delta_pow(loops)));
        }
    })
}

/// The level `k` and shading of a `Gr_k` element; every cell must have
/// shape `(k, k, 2n, 0)` with a common `k` and shading.
pub fn gr_level(x: &GradedElement) -> Result<Option<(usize, Shading)>> {
    let mut level = None;
    for s in x.shapes() {
        if s.left != s.right || s.bottom != 0 || s.top % 2 == 1 {
            return Err(Error::ShapeMismatch(alloc::format!("{s} is not a Gr_k shape")));
        }
        match level {
            None => level = Some((s.left, s.shading)),
            Some(l) if l != (s.left, s.shading) => {
                return Err(Error::ShapeMismatch("cells of different Gr_k levels".into()));
            }
            _ => {}
        }
    }
    Ok(level)
}

/// Product `∧_k` of `Gr_k`.
pub fn gr_product(x: &GradedElement, y: &GradedElement) -> Result<GradedElement> {
    match (gr_level(x)?, gr_level(y)?) {
        (Some(a), Some(b)) if a != b => Err(Error::ShapeMismatch("Gr_k levels differ".into())),
        _ => Ok(v_product(x, y)),
    }
}

/// The adjoint `†`, a left-right reflection.
pub fn dagger(x: &GradedElement) -> GradedElement {
    x.map_diagrams(x.flavor(), |d| Some((d.dagger(), Scalar::one())))
}

/// The anti-automorphism `y ↦ y^op`, rotation by π.
pub fn op(x: &GradedElement) -> Result<GradedElement> {
    if let Some(s) = x.shapes().find(|s| !s.is_square()) {
        return Err(Error::ShapeMismatch(alloc::format!("op needs a square cell, got {s}")));
    }
    Ok(x.map_diagrams(x.flavor(), |d| Some((d.rotate(), Scalar::one()))))
}

/// Histogram over all non-crossing fillers of the top and bottom points of
/// a closed partner table, by number of loops formed.
fn filler_histogram(partners: &[u16], top: usize, bottom: usize, extra_loops: usize, hist: &mut Vec<u64>) {
    let tops = nc_matchings(top / 2);
    let bottoms = nc_matchings(bottom / 2);
    let m = top + bottom;
    let mut filler = alloc::vec![0u16; m];
    for a in tops.iter() {
        filler[..top].copy_from_slice(a);
        for b in bottoms.iter() {
            // the clockwise index of bottom point j (geometric) is
            // top + bottom - 1 - j, and a reversed non-crossing matching
            // is still non-crossing
            for (j, &p) in b.iter().enumerate() {
                filler[m - 1 - j] = (m - 1 - p as usize) as u16;
            }
            let loops = extra_loops + loops_of_pair(partners, &filler);
            if hist.len() <= loops {
                hist.resize(loops + 1, 0);
            }
            hist[loops] += 1;
        }
    }
}

/// `Tr` of a basis diagram: zero unless the sides agree and both `s` and
/// `t` are even; otherwise close the sides and cap top and bottom with all
/// loopless fillers.
pub fn trace_diagram(d: &TLDiagram) -> Scalar {
    let s = d.shape();
    if s.left != s.right || s.top % 2 == 1 || s.bottom % 2 == 1 {
        return Scalar::zero();
    }
    let (closed, loops) = glue::trace_close(d).expect("square");
    let mut hist = Vec::new();
    filler_histogram(&closed, s.top, s.bottom, loops, &mut hist);
    hist_poly(&hist)
}

/// The trace `Tr` on `V`.
pub fn v_trace(x: &GradedElement) -> Scalar {
    x.pair_with(trace_diagram)
}

/// `Tr′` of a basis diagram: only boundary-free tops and bottoms count.
pub fn w_trace_diagram(d: &TLDiagram) -> Scalar {
    let s = d.shape();
    if s.left != s.right || s.top != 0 || s.bottom != 0 {
        return Scalar::zero();
    }
    let (_, loops) = glue::trace_close(d).expect("square");
    delta_pow(loops)
}

/// The trace `Tr′` on `W`.
pub fn w_trace(x: &GradedElement) -> Scalar {
    x.pair_with(w_trace_diagram)
}

/// The Voiculescu trace `τ_k = δ^{-k} Tr` of a `Gr_k` element.
pub fn voiculescu_trace(x: &GradedElement) -> Result<Scalar> {
    gr_level(x)?;
    Ok(x.pair_with(|d| trace_diagram(d).mul_delta_pow(-(d.shape().left as i64))))
}

/// `τ_k ⊠ τ_k = δ^{-2k} Tr` on square cells with `2k` side strings.
pub fn boxtimes_trace(x: &GradedElement) -> Scalar {
    x.pair_with(|d| trace_diagram(d).mul_delta_pow(-(d.shape().left as i64)))
}

/// Inclusion `Gr_k → Gr_{k+1}`: one more straight string along the bottom.
pub fn gr_include(x: &GradedElement) -> Result<GradedElement> {
    gr_level(x)?;
    Ok(x.map_diagrams(Flavor::V, |d| {
        let s = d.shape();
        let mut t = Tangle::new();
        let p = t.add(d);
        let (a, b) = t.strand();
        let left: Vec<_> = p.side(Side::Left).chain([a]).collect();
        let right: Vec<_> = p.side(Side::Right).chain([b]).collect();
        let top: Vec<_> = p.side(Side::Top).collect();
        let (e, _) = t.finish(s.shading, &top, &right, &[], &left);
        Some((e, Scalar::one()))
    }))
}

/// Stack `upper` on top of `lower`, joining `upper`'s bottom to `lower`'s
/// top. Both must be rectangles without side points.
pub fn stack(upper: &TLDiagram, lower: &TLDiagram) -> Result<(TLDiagram, usize)> {
    let (su, sl) = (upper.shape(), lower.shape());
    if su.left + su.right + sl.left + sl.right != 0 {
        return Err(Error::SidePointsPresent);
    }
    if su.bottom != sl.top {
        return Err(Error::GlueMismatch { expected: su.bottom, found: sl.top });
    }
    let mut t = Tangle::new();
    let pu = t.add(upper);
    let pl = t.add(lower);
    t.wire_all(pu.side(Side::Bottom), pl.side(Side::Top));
    let top: Vec<_> = pu.side(Side::Top).collect();
    let bottom: Vec<_> = pl.side(Side::Bottom).collect();
    Ok(t.finish(su.shading, &top, &[], &bottom, &[]))
}

/// `(a ⊗ b) · x` on basis diagrams: `a` (bottom = `x`'s top) above `x` and
/// `b` (top = `x`'s bottom) below it.
pub fn tl_action_diagram(a: &TLDiagram, b: &TLDiagram, x: &TLDiagram) -> Result<(TLDiagram, usize)> {
    let (sa, sb, sx) = (a.shape(), b.shape(), x.shape());
    if sa.left + sa.right + sb.left + sb.right != 0 {
        return Err(Error::SidePointsPresent);
    }
    if sa.bottom != sx.top {
        return Err(Error::GlueMismatch { expected: sx.top, found: sa.bottom });
    }
    if sb.top != sx.bottom {
        return Err(Error::GlueMismatch { expected: sx.bottom, found: sb.top });
    }
    let mut t = Tangle::new();
    let pa = t.add(a);
    let px = t.add(x);
    let pb = t.add(b);
    t.wire_all(pa.side(Side::Bottom), px.side(Side::Top));
    t.wire_all(px.side(Side::Bottom), pb.side(Side::Top));
    let top: Vec<_> = pa.side(Side::Top).collect();
    let right: Vec<_> = px.side(Side::Right).collect();
    let bottom: Vec<_> = pb.side(Side::Bottom).collect();
    let left: Vec<_> = px.side(Side::Left).collect();
    Ok(t.finish(sx.shading, &top, &right, &bottom, &left))
}

/// The action of `TL ⊗ TL^op` on an element.
pub fn tl_action(a: &TLDiagram, b: &TLDiagram, x: &GradedElement) -> Result<GradedElement> {
    let mut out = GradedElement::zero(x.flavor());
    for (d, c) in x.terms() {
        let (e, loops) = tl_action_diagram(a, b, d)?;
        out.add_term(e, &c.mul_delta_pow(loops as i64));
    }
    Ok(out)
}

/// `⋆` on basis diagrams: every partial contraction of `i` top and `j`
/// bottom strings, including none.
pub fn star_diagrams(x: &TLDiagram, y: &TLDiagram, out: &mut Vec<(TLDiagram, Scalar)>) {
    let (sx, sy) = (x.shape(), y.shape());
    if !composable(sx, sy) {
        return;
    }
    for i in 0..=sx.top.min(sy.top) {
        for j in 0..=sx.bottom.min(sy.bottom) {
            let (d, loops) = glue::vertical_partial(x, y, i, j).expect("checked");
            out.push((d, delta_pow(loops)));
        }
    }
}

/// The product `⋆` of `W`.
pub fn w_product(x: &GradedElement, y: &GradedElement) -> GradedElement {
    GradedElement::bilinear(x, y, Flavor::W, star_diagrams)
}

/// `x ⊗ y^op` inside `Gr_k ⊠ Gr_k`: `x` along the top, `y` rotated into the
/// bottom row.
pub fn embed_diagrams(x: &TLDiagram, y: &TLDiagram) -> Result<TLDiagram> {
    let (sx, sy) = (x.shape(), y.shape());
    if sx.left != sy.left || sx.shading != sy.shading {
        return Err(Error::ShapeMismatch("embedding needs equal levels and shading".into()));
    }
    let mut t = Tangle::new();
    let px = t.add(x);
    let py = t.add(y);
    let top: Vec<_> = px.side(Side::Top).collect();
    let left: Vec<_> = px.side(Side::Left).chain(py.side(Side::Right).collect::<Vec<_>>().into_iter().rev()).collect();
    let right: Vec<_> = px.side(Side::Right).chain(py.side(Side::Left).collect::<Vec<_>>().into_iter().rev()).collect();
    let bottom: Vec<_> = py.side(Side::Top).collect::<Vec<_>>().into_iter().rev().collect();
    Ok(t.finish(sx.shading, &top, &right, &bottom, &left).0)
}

/// Embedding `Gr_k ⊗ Gr_k^op → V`.
pub fn embed_tensor(x: &GradedElement, y: &GradedElement) -> Result<GradedElement> {
    let (lx, ly) = (gr_level(x)?, gr_level(y)?);
    if let (Some(a), Some(b)) = (lx, ly) {
        if a != b {
            return Err(Error::ShapeMismatch("embedding needs equal levels and shading".into()));
        }
    }
    let mut out = GradedElement::zero(Flavor::V);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            out.add_term(embed_diagrams(a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

fn side_diagram(k1: usize, k2: usize, top: usize, bottom: usize, shading: Shading, pairs: &[((Side, usize), (Side, usize))]) -> TLDiagram {
    let shape = BoxShape::new(k1, k2, top, bottom, shading);
    let pairs: Vec<_> = pairs.iter().map(|&((sa, a), (sb, b))| (shape.point(sa, a), shape.point(sb, b))).collect();
    TLDiagram::from_pairs(shape, &pairs).expect("standard diagram")
}

fn through(r: usize) -> ((Side, usize), (Side, usize)) {
    ((Side::Left, r), (Side::Right, r))
}

/// `k` parallel strings, the unit of `Gr_k`.
pub fn unit_diagram(k: usize, shading: Shading) -> TLDiagram {
    let pairs: Vec<_> = (0..k).map(through).collect();
    side_diagram(k, k, 0, 0, shading, &pairs)
}

pub fn unit(k: usize, shading: Shading) -> GradedElement {
    GradedElement::from_diagram(Flavor::V, unit_diagram(k, shading))
}

/// `p_{k,ε}`: `2k` parallel strings.
pub fn p(k: usize, shading: Shading) -> GradedElement {
    unit(2 * k, shading)
}

/// The Temperley-Lieb generator `e_i` on `m` strings: a cap joining
/// strings `i` and `i+1` on each side, the rest straight.
pub fn jones_e(m: usize, i: usize, shading: Shading) -> Result<GradedElement> {
    if i + 2 > m {
        return Err(Error::IndexOutOfRange { index: i, max: m.saturating_sub(2) });
    }
    let mut pairs: Vec<_> = (0..m).filter(|&r| r != i && r != i + 1).map(through).collect();
    pairs.push(((Side::Left, i), (Side::Left, i + 1)));
    pairs.push(((Side::Right, i), (Side::Right, i + 1)));
    Ok(GradedElement::from_diagram(Flavor::V, side_diagram(m, m, 0, 0, shading, &pairs)))
}

/// `𝐞_{k,ε} ∈ P_{0,k+2}`: `k` straight strings above a cup-cap pair. With
/// `normalized` the diagram carries a factor `δ^{-1}`, which makes it an
/// idempotent.
pub fn cupcap_e(k: usize, shading: Shading, normalized: bool) -> GradedElement {
    let mut pairs: Vec<_> = (0..k).map(through).collect();
    pairs.push(((Side::Left, k), (Side::Left, k + 1)));
    pairs.push(((Side::Right, k), (Side::Right, k + 1)));
    let d = side_diagram(k + 2, k + 2, 0, 0, shading, &pairs);
    let c = if normalized { Scalar::delta_pow(-1) } else { Scalar::one() };
    GradedElement::from_term(Flavor::V, d, &c)
}

/// `𝐟_{k,ε}`, `k ≥ 1`: `δ^{-1}` times `2k` strings whose middle two are
/// replaced by a cup-cap pair.
pub fn f(k: usize, shading: Shading) -> Result<GradedElement> {
    if k == 0 {
        return Err(Error::InvalidParameter("f_k needs k >= 1".into()));
    }
    let e = jones_e(2 * k, k - 1, shading)?;
    Ok(e.scale(&Scalar::delta_pow(-1)))
}

/// `c_{k,ε} ∈ V_{2k,2k+2}(1,1)`: the first right string turns up, the last
/// turns down, the others run straight through.
pub fn c(k: usize, shading: Shading) -> GradedElement {
    let mut pairs = alloc::vec![((Side::Right, 0), (Side::Top, 0)), ((Side::Right, 2 * k + 1), (Side::Bottom, 0))];
    pairs.extend((0..2 * k).map(|r| ((Side::Left, r), (Side::Right, r + 1))));
    GradedElement::from_diagram(Flavor::V, side_diagram(2 * k, 2 * k + 2, 1, 1, shading, &pairs))
}

/// The vertical bars `| | ∈ V^+_{0,0}(2,2)`.
pub fn vertical_bars() -> GradedElement {
    let pairs = [((Side::Top, 0), (Side::Bottom, 0)), ((Side::Top, 1), (Side::Bottom, 1))];
    GradedElement::from_diagram(Flavor::V, side_diagram(0, 0, 2, 2, Shading::Plus, &pairs))
}

/// A `Gr_0` basis element from a matching of its `2n` top points.
pub fn gr0_diagram(pairs: &[(usize, usize)]) -> Result<TLDiagram> {
    TLDiagram::from_pairs(BoxShape::new(0, 0, 2 * pairs.len(), 0, Shading::Plus), pairs)
}

/// All `Gr_k` basis diagrams of degree `n` (shape `(k, k, 2n, 0)`).
pub fn gr_basis(k: usize, n: usize, shading: Shading) -> Vec<TLDiagram> {
    TLDiagram::enumerate(BoxShape::new(k, k, 2 * n, 0, shading)).expect("even")
}
