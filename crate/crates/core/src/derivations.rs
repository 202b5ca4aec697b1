//! Derivations `A → A ⊠ A` given by inserting an element of `Φ`, the map
//! `ρ : Ω → Φ` describing their kernel, conjugate variables and the
//! coproduct `∂_Q`.
//!
//! `Φ` is spanned by the cells `V^{(-1)^s}_{1,0}(s, t)` with `s + t` odd and
//! `Ω` by the cells `V^{(-1)^s}_{0,0}(s, t)` with `s + t` even. The even
//! part of `Ω` is `A ⊠ A` itself.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::{embed_tensor, gr_level, gr_basis, unit, v_product, v_trace, voiculescu_trace};
use crate::diagram::{nc_matchings, BoxShape, Shading, Side, TLDiagram};
use crate::element::{Flavor, GradedElement};
use crate::error::{Error, Result};
use crate::glue::Tangle;
use crate::gns::{conditional_expectation, is_orthogonal_to_tensor};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

fn common_parity(x: &GradedElement) -> Option<Parity> {
    let mut shapes = x.shapes().map(|s| Parity::of(s.top));
    let first = shapes.next()?;
    shapes.all(|p| p == first).then_some(first)
}

/// Whether `shape` is a cell of `Φ`.
pub fn is_phi_cell(shape: &BoxShape) -> bool {
    shape.left == 1
        && shape.right == 0
        && (shape.top + shape.bottom) % 2 == 1
        && shape.shading == Shading::Plus.flip_if_odd(shape.top)
}

/// Whether `shape` is a cell of `Ω`.
pub fn is_omega_cell(shape: &BoxShape) -> bool {
    shape.left == 0
        && shape.right == 0
        && (shape.top + shape.bottom) % 2 == 0
        && shape.shading == Shading::Plus.flip_if_odd(shape.top)
}

/// An element of `Φ`; the odd part has an odd number of top points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiElement(GradedElement);

impl PhiElement {
    pub fn new(element: GradedElement) -> Result<Self> {
        if let Some(s) = element.shapes().find(|s| !is_phi_cell(s)) {
            return Err(Error::ShapeMismatch(alloc::format!("{s} is not a cell of Phi")));
        }
        Ok(PhiElement(element.with_flavor(Flavor::V)))
    }

    /// Like [`PhiElement::new`], also requiring every cell to have the
    /// given parity.
    pub fn with_parity(element: GradedElement, parity: Parity) -> Result<Self> {
        let phi = Self::new(element)?;
        if phi.0.shapes().any(|s| Parity::of(s.top) != parity) {
            return Err(Error::ShapeMismatch(alloc::format!("cell parity differs from {}", parity.name())));
        }
        Ok(phi)
    }

    pub fn element(&self) -> &GradedElement {
        &self.0
    }

    /// `Some` when every cell has the same parity.
    pub fn parity(&self) -> Option<Parity> {
        common_parity(&self.0)
    }

    /// Right action of `A ⊗ A^op`: `Q · m = Q ∧ m`.
    pub fn act(&self, m: &GradedElement) -> PhiElement {
        PhiElement(v_product(&self.0, m))
    }
}

/// An element of `Ω`; the odd part has an odd number of top points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OmegaElement(GradedElement);

impl OmegaElement {
    pub fn new(element: GradedElement) -> Result<Self> {
        if let Some(s) = element.shapes().find(|s| !is_omega_cell(s)) {
            return Err(Error::ShapeMismatch(alloc::format!("{s} is not a cell of Omega")));
        }
        Ok(OmegaElement(element.with_flavor(Flavor::V)))
    }

    pub fn with_parity(element: GradedElement, parity: Parity) -> Result<Self> {
        let omega = Self::new(element)?;
        if omega.0.shapes().any(|s| Parity::of(s.top) != parity) {
            return Err(Error::ShapeMismatch(alloc::format!("cell parity differs from {}", parity.name())));
        }
        Ok(omega)
    }

    pub fn element(&self) -> &GradedElement {
        &self.0
    }

    pub fn parity(&self) -> Option<Parity> {
        common_parity(&self.0)
    }
}

fn check_gr0(x: &GradedElement) -> Result<()> {
    match gr_level(x)? {
        None | Some((0, Shading::Plus)) => Ok(()),
        Some(_) => Err(Error::ShapeMismatch("expected an element of Gr_0".into())),
    }
}

/// `x ⊗ 1` and `1 ⊗ y` inside `A ⊠ A`.
pub fn hat_left(x: &GradedElement) -> Result<GradedElement> {
    embed_tensor(x, &unit(0, Shading::Plus))
}

pub fn hat_right(y: &GradedElement) -> Result<GradedElement> {
    embed_tensor(&unit(0, Shading::Plus), y)
}

/// `δ̃_Q` on one basis diagram of `Gr_0` and one cell diagram of `Q`.
fn delta_tilde_diagrams(q: &TLDiagram, x: &TLDiagram, out: &mut GradedElement, coeff: &Scalar) {
    let qs = q.shape();
    let len = x.shape().top;
    for j in 0..len {
        let k = len - j - 1;
        // insertion points: k even for odd Q cells, odd for even ones
        if (k + qs.top) % 2 == 0 {
            continue;
        }
        let mut t = Tangle::new();
        let px = t.add(x);
        let pq = t.add(q);
        t.wire(px.top(j), pq.left(0));
        let top: Vec<_> = (0..j).map(|i| px.top(i)).chain(pq.side(Side::Top)).collect();
        let bottom: Vec<_> = (j + 1..len).rev().map(|i| px.top(i)).chain(pq.side(Side::Bottom)).collect();
        let (d, loops) = t.finish(Shading::Plus, &top, &[], &bottom, &[]);
        out.add_term(d, &coeff.mul_delta_pow(loops as i64));
    }
}

/// The derivation `δ̃_Q : A → A ⊠ A`.
pub fn delta_tilde(q: &PhiElement, x: &GradedElement) -> Result<GradedElement> {
    check_gr0(x)?;
    let mut out = GradedElement::zero(Flavor::V);
    for (dq, cq) in q.0.terms() {
        for (dx, cx) in x.terms() {
            delta_tilde_diagrams(dq, dx, &mut out, &(cq * cx));
        }
    }
    Ok(out)
}

/// `δ_Q = E ∘ δ̃_Q`, valued in `A ⊗ A^op`.
pub fn delta(q: &PhiElement, x: &GradedElement) -> Result<GradedElement> {
    conditional_expectation(&delta_tilde(q, x)?)
}

/// Whether `δ_Q(x) = 0`, decided by orthogonality without solving.
pub fn delta_vanishes(q: &PhiElement, x: &GradedElement) -> Result<bool> {
    is_orthogonal_to_tensor(&delta_tilde(q, x)?)
}

/// `ρ(R)`: a hook from the left point to the first top point, minus a hook
/// to the first bottom point.
pub fn rho(r: &OmegaElement) -> PhiElement {
    let mut out = GradedElement::zero(Flavor::V);
    let minus = Scalar::from_int(-1);
    for (d, c) in r.0.terms() {
        let sh = d.shape();
        for to_top in [true, false] {
            let mut t = Tangle::new();
            let pd = t.add(d);
            let (a, b) = t.strand();
            let mut top: Vec<_> = pd.side(Side::Top).collect();
            let mut bottom: Vec<_> = pd.side(Side::Bottom).collect();
            if to_top {
                top.insert(0, b);
            } else {
                bottom.insert(0, b);
            }
            let shading = Shading::Plus.flip_if_odd(top.len());
            let (e, _) = t.finish(shading, &top, &[], &bottom, &[a]);
            debug_assert!(is_phi_cell(e.shape()), "{sh}");
            out.add_term(e, &if to_top { c.clone() } else { &minus * c });
        }
    }
    PhiElement(out)
}

/// `F_k`: close the first `2k` top points of a `Φ` cell with nested caps
/// and route the left string up, next to `k - 1` through strands.
fn reconstruct_term(q: &TLDiagram, k: usize) -> (TLDiagram, usize) {
    let sh = q.shape();
    let mut t = Tangle::new();
    let pq = t.add(q);
    let strands: Vec<(usize, usize)> = (0..k - 1).map(|_| t.strand()).collect();
    for r in 0..k {
        t.wire(pq.top(k - 1 - r), pq.top(k + r));
    }
    let top: Vec<_> = strands
        .iter()
        .map(|s| s.0)
        .chain([pq.left(0)])
        .chain((2 * k..sh.top).map(|i| pq.top(i)))
        .collect();
    let bottom: Vec<_> = strands.iter().map(|s| s.1).chain(pq.side(Side::Bottom)).collect();
    let shading = Shading::Plus.flip_if_odd(top.len());
    t.finish(shading, &top, &[], &bottom, &[])
}

/// Recover `R` with `ρ(R) = Q` for `Q` in the kernel of `Q ↦ δ_Q`. The
/// kernel condition is verified on all basis elements of `A` up to
/// `max_degree` first.
pub fn kernel_reconstruct(q: &PhiElement, max_degree: usize) -> Result<OmegaElement> {
    for n in 0..=max_degree {
        for x in gr_basis(0, n, Shading::Plus) {
            if !delta_vanishes(q, &GradedElement::from_diagram(Flavor::V, x))? {
                return Err(Error::KernelPrecondition { degree: n });
            }
        }
    }
    let mut out = GradedElement::zero(Flavor::V);
    for (d, c) in q.0.terms() {
        let sh = d.shape();
        // Q_{s+k, t+1-k} contributes to R_{s,t} for 1 <= k <= min(s, t+1)
        for k in 1..=sh.top / 2 {
            let (e, loops) = reconstruct_term(d, k);
            debug_assert_eq!(e.shape().top, sh.top - k);
            out.add_term(e, &c.mul_delta_pow(loops as i64));
        }
    }
    let r = OmegaElement::new(out)?;
    if rho(&r) != *q {
        return Err(Error::ReconstructionMismatch);
    }
    Ok(r)
}

/// `(δ_Q^*(1 ⊗ 1))^*` for `Q` in `Φ`, an element of `Gr_0`.
pub fn conjugate_variable(q: &PhiElement) -> GradedElement {
    let mut out = GradedElement::zero(Flavor::V);
    let minus = Scalar::from_int(-1);
    for (d, c) in q.0.terms() {
        let sh = d.shape();
        let (s, t) = (sh.top, sh.bottom);
        let gr0 = |n: usize| BoxShape::new(0, 0, n, 0, Shading::Plus);

        // rotate everything onto the top: bottom (right to left), left, top
        let m = sh.points();
        let mut partner = alloc::vec![0u16; m];
        for (i, &p) in d.partners().iter().enumerate() {
            partner[(i + m - s) % m] = ((p as usize + m - s) % m) as u16;
        }
        out.add_term(TLDiagram::from_partner_unchecked(gr0(m), partner), c);

        // left string meets the top at position m, the first m top points
        // closed off by every loopless filler
        for k in 0..s {
            if (k + t) % 2 == 1 {
                continue;
            }
            let mm = s - k - 1;
            for filler in nc_matchings(mm / 2).iter() {
                let mut tg = Tangle::new();
                let pd = tg.add(d);
                for (i, &p) in filler.iter().enumerate() {
                    if i < p as usize {
                        tg.wire(pd.top(i), pd.top(p as usize));
                    }
                }
                tg.wire(pd.left(0), pd.top(mm));
                let top: Vec<_> = (0..t).rev().map(|i| pd.bottom(i)).chain((s - k..s).map(|i| pd.top(i))).collect();
                let (e, loops) = tg.finish(Shading::Plus, &top, &[], &[], &[]);
                out.add_term(e, &(&minus * c).mul_delta_pow(loops as i64));
            }
        }

        // the same on the bottom
        for k in 0..t {
            if (k + s) % 2 == 1 {
                continue;
            }
            let mm = t - k - 1;
            for filler in nc_matchings(mm / 2).iter() {
                let mut tg = Tangle::new();
                let pd = tg.add(d);
                for (i, &p) in filler.iter().enumerate() {
                    if i < p as usize {
                        tg.wire(pd.bottom(i), pd.bottom(p as usize));
                    }
                }
                tg.wire(pd.left(0), pd.bottom(mm));
                let top: Vec<_> = (t - k..t).rev().map(|i| pd.bottom(i)).chain(pd.side(Side::Top)).collect();
                let (e, loops) = tg.finish(Shading::Plus, &top, &[], &[], &[]);
                out.add_term(e, &(&minus * c).mul_delta_pow(loops as i64));
            }
        }
    }
    out
}

/// `⟨δ_Q(x), 1 ⊗ 1⟩` and `⟨x, ξ_Q⟩`, which agree.
pub fn conjugate_pairing(q: &PhiElement, x: &GradedElement) -> Result<(Scalar, Scalar)> {
    let lhs = v_trace(&delta(q, x)?);
    let rhs = voiculescu_trace(&v_product(&conjugate_variable(q), x))?;
    Ok((lhs, rhs))
}

/// Elements of `A^{⊗r}`: tuples of `Gr_0` diagrams with coefficients.
pub type Tensor = BTreeMap<Vec<TLDiagram>, Scalar>;

fn tensor_add(t: &mut Tensor, key: Vec<TLDiagram>, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = t.entry(key.clone()).or_default();
    *entry = &*entry + c;
    if entry.is_zero() {
        t.remove(&key);
    }
}

/// A `Gr_0` diagram read backwards, the image of `A^op → A`.
fn reverse_gr0(d: &TLDiagram) -> TLDiagram {
    let m = d.shape().top;
    let mut partner = alloc::vec![0u16; m];
    for (i, &p) in d.partners().iter().enumerate() {
        partner[m - 1 - i] = (m - 1 - p as usize) as u16;
    }
    TLDiagram::from_partner_unchecked(*d.shape(), partner)
}

/// Split a diagram without through strings into its top pairing and its
/// bottom pairing read left to right.
fn split_tensor(d: &TLDiagram) -> (TLDiagram, TLDiagram) {
    let sh = d.shape();
    let top = TLDiagram::from_partner_unchecked(BoxShape::new(0, 0, sh.top, 0, Shading::Plus), d.partners()[..sh.top].to_vec());
    let m = sh.points();
    let bottom: Vec<u16> = (0..sh.bottom).map(|j| (m - 1 - d.partner(m - 1 - j)) as u16).collect();
    let bottom = TLDiagram::from_partner_unchecked(BoxShape::new(0, 0, sh.bottom, 0, Shading::Plus), bottom);
    (top, bottom)
}

/// `∂_Q(x)` for the cap `Q ∈ P_1`: cap each pair of adjacent top points
/// `2n-2k-2, 2n-2k-1`, send the points right of them to the bottom, project
/// with `E` and read the result in `A ⊗ A`.
pub fn partial(x: &TLDiagram) -> Result<Tensor> {
    let sh = x.shape();
    if sh.left + sh.right + sh.bottom != 0 || sh.top % 2 == 1 || sh.shading != Shading::Plus {
        return Err(Error::ShapeMismatch("expected a Gr_0 diagram".into()));
    }
    let n = sh.top / 2;
    let mut out = Tensor::new();
    for k in 0..n {
        let j = 2 * n - 2 * k - 2;
        let mut t = Tangle::new();
        let px = t.add(x);
        t.wire(px.top(j), px.top(j + 1));
        let top: Vec<_> = (0..j).map(|i| px.top(i)).collect();
        let bottom: Vec<_> = (j + 2..2 * n).rev().map(|i| px.top(i)).collect();
        let (d, loops) = t.finish(Shading::Plus, &top, &[], &bottom, &[]);
        let inserted = GradedElement::from_term(Flavor::V, d, &Scalar::delta_pow(loops as i64));
        for (e, c) in conditional_expectation(&inserted)?.terms() {
            let (a, b) = split_tensor(e);
            tensor_add(&mut out, alloc::vec![a, reverse_gr0(&b)], c);
        }
    }
    Ok(out)
}

/// Apply `∂` to the factor at `slot` of every tuple.
pub fn partial_at(t: &Tensor, slot: usize) -> Result<Tensor> {
    let mut out = Tensor::new();
    for (key, c) in t {
        for (pair, a) in partial(&key[slot])? {
            let mut k = key[..slot].to_vec();
            k.extend(pair);
            k.extend_from_slice(&key[slot + 1..]);
            tensor_add(&mut out, k, &(a * c.clone()));
        }
    }
    Ok(out)
}

/// `(∂ ⊗ id)∂(x)` and `(id ⊗ ∂)∂(x)`.
pub fn coassociativity_sides(x: &TLDiagram) -> Result<(Tensor, Tensor)> {
    let d = partial(x)?;
    Ok((partial_at(&d, 0)?, partial_at(&d, 1)?))
}

/// Multiply the factor at `slot` of every tuple by `y` on the left or right.
pub fn tensor_mul(t: &Tensor, slot: usize, y: &TLDiagram, on_left: bool) -> Tensor {
    let mut out = Tensor::new();
    for (key, c) in t {
        let (a, b) = if on_left { (y, &key[slot]) } else { (&key[slot], y) };
        let (d, loops) = crate::glue::horizontal(a, b).expect("Gr_0 diagrams compose");
        let mut k = key.clone();
        k[slot] = d;
        tensor_add(&mut out, k, &c.mul_delta_pow(loops as i64));
    }
    out
}

pub fn tensor_sum(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.clone();
    for (k, c) in b {
        tensor_add(&mut out, k.clone(), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gr0_diagram, vertical_bars};

    fn cell(l: usize, t: usize, b: usize, pairs: &[(usize, usize)]) -> TLDiagram {
        let shape = BoxShape::new(l, 0, t, b, Shading::Plus.flip_if_odd(t));
        TLDiagram::from_pairs(shape, pairs).unwrap()
    }

    fn gr0(pairs: &[(usize, usize)]) -> GradedElement {
        GradedElement::from_diagram(Flavor::V, gr0_diagram(pairs).unwrap())
    }

    #[test]
    fn derivation_of_unit_is_zero() {
        let q = PhiElement::new(GradedElement::from_diagram(Flavor::V, cell(1, 1, 0, &[(0, 1)]))).unwrap();
        assert!(delta_tilde(&q, &unit(0, Shading::Plus)).unwrap().is_zero());
        assert!(delta(&q, &unit(0, Shading::Plus)).unwrap().is_zero());
        assert!(partial(&TLDiagram::empty()).unwrap().is_empty());
    }

    #[test]
    fn single_string_on_a_cup() {
        // Q = one string from the left point to the top; x = cup. Only the
        // last top point (k = 0) is admissible.
        let q = PhiElement::new(GradedElement::from_diagram(Flavor::V, cell(1, 1, 0, &[(0, 1)]))).unwrap();
        let got = delta_tilde(&q, &gr0(&[(0, 1)])).unwrap();
        assert_eq!(got, gr0(&[(0, 1)]));
    }

    #[test]
    fn rho_of_bars() {
        let bars = OmegaElement::new(vertical_bars()).unwrap();
        let r = rho(&bars);
        assert_eq!(r.element().num_terms(), 2);
        assert!(r.element().shapes().all(is_phi_cell));
        // | | is not orthogonal to A ⊗ A^op, so it fails the kernel test;
        // its orthogonal part passes and comes back
        assert!(kernel_reconstruct(&r, 2).is_err());
        let perp = &vertical_bars() - &conditional_expectation(&vertical_bars()).unwrap();
        let perp = OmegaElement::new(perp).unwrap();
        assert_eq!(kernel_reconstruct(&rho(&perp), 2).unwrap(), perp);
        assert!(rho(&OmegaElement::new(GradedElement::zero(Flavor::V)).unwrap()).element().is_zero());
    }

    #[test]
    fn rho_gives_commutators() {
        let bars = vertical_bars();
        let q = rho(&OmegaElement::new(bars.clone()).unwrap());
        for x in [gr0(&[(0, 1)]), gr0(&[(0, 3), (1, 2)]), gr0(&[(0, 1), (2, 3)])] {
            let lhs = delta_tilde(&q, &x).unwrap();
            let rhs = &v_product(&hat_left(&x).unwrap(), &bars) - &v_product(&hat_right(&x).unwrap(), &bars);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reconstruct_zero() {
        let z = PhiElement::new(GradedElement::zero(Flavor::V)).unwrap();
        assert!(kernel_reconstruct(&z, 3).unwrap().element().is_zero());
    }

    #[test]
    fn precondition_is_checked() {
        let q = PhiElement::new(GradedElement::from_diagram(Flavor::V, cell(1, 1, 0, &[(0, 1)]))).unwrap();
        assert_eq!(kernel_reconstruct(&q, 3), Err(Error::KernelPrecondition { degree: 1 }));
    }

    #[test]
    fn conjugate_variable_single_string() {
        let q = PhiElement::new(GradedElement::from_diagram(Flavor::V, cell(1, 1, 0, &[(0, 1)]))).unwrap();
        for n in 0..=2 {
            for x in gr_basis(0, n, Shading::Plus) {
                let (l, r) = conjugate_pairing(&q, &GradedElement::from_diagram(Flavor::V, x)).unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn partial_on_small_diagrams() {
        // one cup: capping it leaves a loop, 1 ⊗ 1 with coefficient δ
        let cup = gr0_diagram(&[(0, 1)]).unwrap();
        let got = partial(&cup).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[&alloc::vec![TLDiagram::empty(), TLDiagram::empty()]], Scalar::delta());
    }

    #[test]
    fn coassociative_on_degree_two() {
        for x in gr_basis(0, 2, Shading::Plus) {
            let (a, b) = coassociativity_sides(&x).unwrap();
            assert_eq!(a, b);
        }
    }
}
