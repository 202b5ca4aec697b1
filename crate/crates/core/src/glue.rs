//! Gluing diagrams together and counting the closed loops that appear.
//!
//! A [`Tangle`] collects placed diagrams and free strands, wires some of
//! their boundary points together and declares the rest as the boundary of
//! the result, side by side in geometric order. Loops are the connected
//! components that touch no output point.

use alloc::vec::Vec;

use crate::diagram::{BoxShape, Side, TLDiagram};
use crate::dsu::Dsu;
use crate::error::{Error, Result};

/// A diagram placed in a tangle; maps its boundary points to tangle points.
#[derive(Clone, Copy, Debug)]
pub struct Placed {
    offset: usize,
    shape: BoxShape,
}

impl Placed {
    pub fn at(&self, side: Side, i: usize) -> usize {
        self.offset + self.shape.point(side, i)
    }

    pub fn top(&self, i: usize) -> usize {
        self.at(Side::Top, i)
    }

    pub fn right(&self, i: usize) -> usize {
        self.at(Side::Right, i)
    }

    pub fn bottom(&self, i: usize) -> usize {
        self.at(Side::Bottom, i)
    }

    pub fn left(&self, i: usize) -> usize {
        self.at(Side::Left, i)
    }

    /// All tangle points of one side, in geometric order.
    pub fn side(&self, side: Side) -> impl Iterator<Item = usize> + '_ {
        (0..self.shape.count(side)).map(move |i| self.at(side, i))
    }
}

#[derive(Default)]
pub struct Tangle {
    points: usize,
    edges: Vec<(usize, usize)>,
}

impl Tangle {
    pub fn new() -> Self {
        Tangle::default()
    }

    pub fn add(&mut self, d: &TLDiagram) -> Placed {
        let offset = self.points;
        let shape = *d.shape();
        for (a, b) in d.pairs() {
            self.edges.push((offset + a, offset + b));
        }
        self.points += shape.points();
        Placed { offset, shape }
    }

    /// A free strand; returns its two ends.
    pub fn strand(&mut self) -> (usize, usize) {
        let a = self.points;
        self.points += 2;
        self.edges.push((a, a + 1));
        (a, a + 1)
    }

    pub fn wire(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    pub fn wire_all(&mut self, a: impl IntoIterator<Item = usize>, b: impl IntoIterator<Item = usize>) {
        for (x, y) in a.into_iter().zip(b) {
            self.wire(x, y);
        }
    }

    /// Close the tangle. Each side lists tangle points in geometric order.
    pub fn finish(
        &self,
        shading: crate::diagram::Shading,
        top: &[usize],
        right: &[usize],
        bottom: &[usize],
        left: &[usize],
    ) -> (TLDiagram, usize) {
        let shape = BoxShape::new(left.len(), right.len(), top.len(), bottom.len(), shading);
        let outputs: Vec<usize> = top
            .iter()
            .chain(right)
            .chain(bottom.iter().rev())
            .chain(left.iter().rev())
            .copied()
            .collect();
        self.close(shape, &outputs)
    }

    /// Close the tangle with outputs already in clockwise order.
    pub fn close(&self, shape: BoxShape, outputs: &[usize]) -> (TLDiagram, usize) {
        debug_assert_eq!(outputs.len(), shape.points());
        let (partner, loops) = self.close_raw(outputs);
        (TLDiagram::from_partner_unchecked(shape, partner), loops)
    }

    /// Like [`Tangle::close`] but without asking the result to be planar
    /// relative to the outputs.
    pub fn close_raw(&self, outputs: &[usize]) -> (Vec<u16>, usize) {
        let mut dsu = Dsu::new(self.points);
        for &(a, b) in &self.edges {
            dsu.union(a, b);
        }
        let mut first = alloc::vec![usize::MAX; self.points];
        let mut partner = alloc::vec![0u16; outputs.len()];
        for (idx, &p) in outputs.iter().enumerate() {
            let r = dsu.find(p);
            if first[r] == usize::MAX {
                first[r] = idx;
            } else {
                partner[idx] = first[r] as u16;
                partner[first[r]] = idx as u16;
            }
        }
        let mut loops = 0;
        for p in 0..self.points {
            let r = dsu.find(p);
            if r == p && first[r] == usize::MAX {
                loops += 1;
            }
        }
        (partner, loops)
    }
}

fn check_count(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::GlueMismatch { expected, found })
    }
}

/// Place `y` to the right of `x`, joining `x`'s right points to `y`'s left
/// points. The shading of the result is `x`'s.
pub fn horizontal(x: &TLDiagram, y: &TLDiagram) -> Result<(TLDiagram, usize)> {
    let (sx, sy) = (x.shape(), y.shape());
    check_count(sx.right, sy.left)?;
    let mut t = Tangle::new();
    let px = t.add(x);
    let py = t.add(y);
    t.wire_all(px.side(Side::Right), py.side(Side::Left));
    let top: Vec<_> = px.side(Side::Top).chain(py.side(Side::Top)).collect();
    let bottom: Vec<_> = px.side(Side::Bottom).chain(py.side(Side::Bottom)).collect();
    let right: Vec<_> = py.side(Side::Right).collect();
    let left: Vec<_> = px.side(Side::Left).collect();
    Ok(t.finish(sx.shading, &top, &right, &bottom, &left))
}

/// Horizontal gluing that also joins the `i` rightmost top strings of `x`
/// to the `i` leftmost top strings of `y` (and likewise `j` at the bottom),
/// each pair meeting innermost first.
pub fn vertical_partial(x: &TLDiagram, y: &TLDiagram, i: usize, j: usize) -> Result<(TLDiagram, usize)> {
    let (sx, sy) = (x.shape(), y.shape());
    check_count(sx.right, sy.left)?;
    if i > sx.top.min(sy.top) || j > sx.bottom.min(sy.bottom) {
        return Err(Error::GlueMismatch { expected: sx.top.min(sy.top), found: i.max(j) });
    }
    let mut t = Tangle::new();
    let px = t.add(x);
    let py = t.add(y);
    t.wire_all(px.side(Side::Right), py.side(Side::Left));
    for r in 0..i {
        t.wire(px.top(sx.top - 1 - r), py.top(r));
    }
    for r in 0..j {
        t.wire(px.bottom(sx.bottom - 1 - r), py.bottom(r));
    }
    let top: Vec<_> = (0..sx.top - i).map(|r| px.top(r)).chain((i..sy.top).map(|r| py.top(r))).collect();
    let bottom: Vec<_> =
        (0..sx.bottom - j).map(|r| px.bottom(r)).chain((j..sy.bottom).map(|r| py.bottom(r))).collect();
    let right: Vec<_> = py.side(Side::Right).collect();
    let left: Vec<_> = px.side(Side::Left).collect();
    Ok(t.finish(sx.shading, &top, &right, &bottom, &left))
}

/// Join the `r`-th left point to the `r`-th right point for every `r`.
/// The closing strings run around the outside of the box, so the result
/// lives on an annulus: it is returned as a partner table on the top
/// points followed by the bottom points (clockwise), which need not be
/// non-crossing.
pub fn trace_close(x: &TLDiagram) -> Result<(Vec<u16>, usize)> {
    let s = x.shape();
    check_count(s.left, s.right)?;
    let mut t = Tangle::new();
    let px = t.add(x);
    t.wire_all(px.side(Side::Left), px.side(Side::Right));
    let outputs: Vec<_> = px.side(Side::Top).chain(px.side(Side::Bottom).collect::<Vec<_>>().into_iter().rev()).collect();
    Ok(t.close_raw(&outputs))
}

/// Join the top of `x` to the points of `c`, a diagram with only top points
/// (read as a cap sitting on `x`).
pub fn cap_top(x: &TLDiagram, c: &TLDiagram) -> Result<(TLDiagram, usize)> {
    let (s, sc) = (x.shape(), c.shape());
    check_count(s.top, sc.points())?;
    let mut t = Tangle::new();
    let px = t.add(x);
    let pc = t.add(c);
    // c's boundary read left to right along x's top edge.
    t.wire_all(px.side(Side::Top), (0..sc.points()).map(|i| pc.top(i)));
    let right: Vec<_> = px.side(Side::Right).collect();
    let bottom: Vec<_> = px.side(Side::Bottom).collect();
    let left: Vec<_> = px.side(Side::Left).collect();
    Ok(t.finish(s.shading, &[], &right, &bottom, &left))
}

/// Join the bottom of `x` to the points of `c`, a diagram with only top
/// points (read as a cup hanging below `x`, left to right).
pub fn cap_bottom(x: &TLDiagram, c: &TLDiagram) -> Result<(TLDiagram, usize)> {
    let (s, sc) = (x.shape(), c.shape());
    check_count(s.bottom, sc.points())?;
    let mut t = Tangle::new();
    let px = t.add(x);
    let pc = t.add(c);
    t.wire_all(px.side(Side::Bottom), (0..sc.points()).map(|i| pc.top(i)));
    let top: Vec<_> = px.side(Side::Top).collect();
    let right: Vec<_> = px.side(Side::Right).collect();
    let left: Vec<_> = px.side(Side::Left).collect();
    Ok(t.finish(s.shading, &top, &right, &[], &left))
}

/// Number of loops formed by two matchings on the same `m` points (a
/// meander system when both are non-crossing).
pub fn loops_of_pair(a: &[u16], b: &[u16]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    let mut dsu = Dsu::new(a.len());
    for (i, (&pa, &pb)) in a.iter().zip(b).enumerate() {
        dsu.union(i, pa as usize);
        dsu.union(i, pb as usize);
    }
    dsu.components()
}
