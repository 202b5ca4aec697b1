//! Non-crossing perfect matchings on the boundary of a rectangle.
//!
//! Boundary points are numbered clockwise starting at the marked top-left
//! corner: top points left to right, right points top to bottom, bottom
//! points right to left, left points bottom to top. The helpers taking a
//! [`Side`] use the "geometric" order instead (top and bottom left to
//! right, left and right top to bottom), which is what gluing code wants.

use alloc::borrow::Cow;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::memo::Memo;

/// Shading of the region at the marked corner.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Shading {
    Plus,
    Minus,
}

impl Shading {
    pub fn flip(self) -> Self {
        match self {
            Shading::Plus => Shading::Minus,
            Shading::Minus => Shading::Plus,
        }
    }

    /// `(-1)^n · self`.
    pub fn flip_if_odd(self, n: usize) -> Self {
        if n % 2 == 1 {
            self.flip()
        } else {
            self
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Shading::Plus => '+',
            Shading::Minus => '-',
        }
    }
}

impl fmt::Display for Shading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

/// Boundary point counts and marked-corner shading of a box.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BoxShape {
    pub left: usize,
    pub right: usize,
    pub top: usize,
    pub bottom: usize,
    pub shading: Shading,
}

impl BoxShape {
    pub const fn new(left: usize, right: usize, top: usize, bottom: usize, shading: Shading) -> Self {
        BoxShape { left, right, top, bottom, shading }
    }

    /// The 0-point box with positive shading.
    pub const fn empty() -> Self {
        BoxShape::new(0, 0, 0, 0, Shading::Plus)
    }

    pub fn points(&self) -> usize {
        self.left + self.right + self.top + self.bottom
    }

    pub fn check_even(&self) -> Result<()> {
        if self.points() % 2 == 1 {
            Err(Error::OddBoundary { points: self.points() })
        } else {
            Ok(())
        }
    }

    pub fn is_square(&self) -> bool {
        self.left == self.right
    }

    pub fn count(&self, side: Side) -> usize {
        match side {
            Side::Top => self.top,
            Side::Right => self.right,
            Side::Bottom => self.bottom,
            Side::Left => self.left,
        }
    }

    /// Clockwise index of the `i`-th point of `side` in geometric order.
    pub fn point(&self, side: Side, i: usize) -> usize {
        debug_assert!(i < self.count(side));
        let (s, k2, t, k1) = (self.top, self.right, self.bottom, self.left);
        match side {
            Side::Top => i,
            Side::Right => s + i,
            Side::Bottom => s + k2 + (t - 1 - i),
            Side::Left => s + k2 + t + (k1 - 1 - i),
        }
    }

    /// Inverse of [`BoxShape::point`].
    pub fn locate(&self, idx: usize) -> (Side, usize) {
        let (s, k2, t, k1) = (self.top, self.right, self.bottom, self.left);
        if idx < s {
            (Side::Top, idx)
        } else if idx < s + k2 {
            (Side::Right, idx - s)
        } else if idx < s + k2 + t {
            (Side::Bottom, s + k2 + t - 1 - idx)
        } else {
            debug_assert!(idx < self.points());
            (Side::Left, s + k2 + t + k1 - 1 - idx)
        }
    }

    /// Shape of the left-right mirror image.
    pub fn dagger(&self) -> Self {
        BoxShape::new(self.right, self.left, self.top, self.bottom, self.shading.flip_if_odd(self.top))
    }

    /// Shape after rotation by π.
    pub fn rotated(&self) -> Self {
        BoxShape::new(
            self.right,
            self.left,
            self.bottom,
            self.top,
            self.shading.flip_if_odd(self.top + self.right),
        )
    }

    /// Shape of the top-bottom mirror image.
    pub fn transposed(&self) -> Self {
        BoxShape::new(self.left, self.right, self.bottom, self.top, self.shading.flip_if_odd(self.left))
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}_{{{},{}}}({},{})", self.shading, self.left, self.right, self.top, self.bottom)
    }
}

/// A non-crossing perfect matching of the boundary points of a box.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TLDiagram {
    shape: BoxShape,
    partner: Vec<u16>,
}

fn is_noncrossing_perfect(partner: &[u16]) -> bool {
    let m = partner.len();
    let mut stack: Vec<usize> = Vec::new();
    for i in 0..m {
        let p = partner[i] as usize;
        if p >= m || p == i || partner[p] as usize != i {
            return false;
        }
        if p > i {
            stack.push(i);
        } else if stack.pop() != Some(p) {
            return false;
        }
    }
    stack.is_empty()
}

fn build_matchings(n: usize) -> Vec<Vec<u16>> {
    fn rec(lo: usize, hi: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>, rest: &mut Vec<(usize, usize)>) {
        if lo == hi {
            match rest.pop() {
                None => out.push(cur.clone()),
                Some((l, h)) => {
                    rec(l, h, cur, out, rest);
                    rest.push((l, h));
                }
            }
            return;
        }
        let mut j = lo + 1;
        while j < hi {
            cur[lo] = j as u16;
            cur[j] = lo as u16;
            rest.push((j + 1, hi));
            rec(lo + 1, j, cur, out, rest);
            rest.pop();
            j += 2;
        }
    }
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u16; 2 * n];
    rec(0, 2 * n, &mut cur, &mut out, &mut Vec::new());
    out.sort();
    out
}

static MATCHINGS: Memo<Vec<Vec<u16>>, 12> = Memo::new();

/// All non-crossing perfect matchings on `2n` points in a circle, sorted.
pub fn nc_matchings(n: usize) -> Cow<'static, [Vec<u16>]> {
    match MATCHINGS.get(n, || build_matchings(n)) {
        Some(v) => Cow::Borrowed(v.as_slice()),
        None => Cow::Owned(build_matchings(n)),
    }
}

/// Classification of a diagram with only top and bottom points.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RectKind {
    pub epi: bool,
    pub monic: bool,
    pub nonnested_epi: bool,
    pub nonnested_monic: bool,
}

impl TLDiagram {
    /// Build from an involution given as a partner table.
    pub fn from_partner(shape: BoxShape, partner: Vec<u16>) -> Result<Self> {
        shape.check_even()?;
        if partner.len() != shape.points() {
            return Err(Error::InvalidMatching(alloc::format!(
                "{} entries for {} points",
                partner.len(),
                shape.points()
            )));
        }
        if !is_noncrossing_perfect(&partner) {
            return Err(Error::InvalidMatching("not a non-crossing perfect matching".into()));
        }
        Ok(TLDiagram { shape, partner })
    }

    pub(crate) fn from_partner_unchecked(shape: BoxShape, partner: Vec<u16>) -> Self {
        debug_assert!(is_noncrossing_perfect(&partner) && partner.len() == shape.points());
        TLDiagram { shape, partner }
    }

    /// Build from a list of pairs of clockwise indices.
    pub fn from_pairs(shape: BoxShape, pairs: &[(usize, usize)]) -> Result<Self> {
        shape.check_even()?;
        let m = shape.points();
        let mut partner = alloc::vec![u16::MAX; m];
        for &(a, b) in pairs {
            if a >= m || b >= m {
                return Err(Error::IndexOutOfRange { index: a.max(b), max: m });
            }
            if a == b || partner[a] != u16::MAX || partner[b] != u16::MAX {
                return Err(Error::InvalidMatching(alloc::format!("point repeated in pair ({a},{b})")));
            }
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        if partner.contains(&u16::MAX) {
            return Err(Error::InvalidMatching("unmatched point".into()));
        }
        Self::from_partner(shape, partner)
    }

    /// The diagram with no points.
    pub fn empty() -> Self {
        TLDiagram { shape: BoxShape::empty(), partner: Vec::new() }
    }

    /// Every non-crossing matching of `shape`, in canonical order.
    pub fn enumerate(shape: BoxShape) -> Result<Vec<TLDiagram>> {
        shape.check_even()?;
        Ok(nc_matchings(shape.points() / 2)
            .iter()
            .map(|p| TLDiagram { shape, partner: p.clone() })
            .collect())
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i] as usize
    }

    pub fn partners(&self) -> &[u16] {
        &self.partner
    }

    /// Partner of the `i`-th point of `side`, as a side and geometric index.
    pub fn partner_of(&self, side: Side, i: usize) -> (Side, usize) {
        self.shape.locate(self.partner(self.shape.point(side, i)))
    }

    /// Pairs `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter_map(|i| {
                let p = self.partner(i);
                (i < p).then_some((i, p))
            })
            .collect()
    }

    /// Injective byte encoding.
    pub fn encode(&self) -> Vec<u8> {
        let s = &self.shape;
        let mut out = Vec::with_capacity(9 + 2 * self.partner.len());
        for c in [s.left, s.right, s.top, s.bottom] {
            out.extend_from_slice(&(c as u16).to_le_bytes());
        }
        out.push(matches!(s.shading, Shading::Minus) as u8);
        for p in &self.partner {
            out.extend_from_slice(&p.to_le_bytes());
        }
        out
    }

    fn remap(&self, shape: BoxShape, map: impl Fn(usize) -> usize) -> TLDiagram {
        let mut partner = alloc::vec![0u16; self.partner.len()];
        for (i, &p) in self.partner.iter().enumerate() {
            partner[map(i)] = map(p as usize) as u16;
        }
        TLDiagram::from_partner_unchecked(shape, partner)
    }

    /// Left-right mirror image.
    pub fn dagger(&self) -> TLDiagram {
        let old = self.shape;
        let new = old.dagger();
        self.remap(new, |i| {
            let (side, j) = old.locate(i);
            match side {
                Side::Top => new.point(Side::Top, old.top - 1 - j),
                Side::Bottom => new.point(Side::Bottom, old.bottom - 1 - j),
                Side::Left => new.point(Side::Right, j),
                Side::Right => new.point(Side::Left, j),
            }
        })
    }

    /// Rotation by π.
    pub fn rotate(&self) -> TLDiagram {
        let old = self.shape;
        let m = old.points();
        let shift = old.top + old.right;
        self.remap(old.rotated(), |i| (i + m - shift) % m.max(1))
    }

    /// Top-bottom mirror image.
    pub fn transpose(&self) -> TLDiagram {
        let old = self.shape;
        let new = old.transposed();
        self.remap(new, |i| {
            let (side, j) = old.locate(i);
            match side {
                Side::Top => new.point(Side::Bottom, j),
                Side::Bottom => new.point(Side::Top, j),
                Side::Left => new.point(Side::Left, old.left - 1 - j),
                Side::Right => new.point(Side::Right, old.right - 1 - j),
            }
        })
    }

    /// Number of strings joining the top to the bottom.
    pub fn through_strings(&self) -> usize {
        (0..self.shape.top)
            .filter(|&i| matches!(self.partner_of(Side::Top, i).0, Side::Bottom))
            .count()
    }

    /// Epi/monic flags of a diagram read as a map from its bottom points
    /// to its top points.
    pub fn classify(&self) -> Result<RectKind> {
        let s = &self.shape;
        if s.left != 0 || s.right != 0 {
            return Err(Error::SidePointsPresent);
        }
        let through = self.through_strings();
        let epi = through == s.top;
        let monic = through == s.bottom;
        let adjacent_caps = |side: Side| {
            (0..s.count(side)).all(|i| {
                let (ps, j) = self.partner_of(side, i);
                ps != side || j.abs_diff(i) == 1
            })
        };
        Ok(RectKind {
            epi,
            monic,
            nonnested_epi: epi && adjacent_caps(Side::Bottom),
            nonnested_monic: monic && adjacent_caps(Side::Top),
        })
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.shape)?;
        for (n, (a, b)) in self.pairs().into_iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
    }

    // Independent count: choose the partner of point 0 and recurse on
    // both sides, checking parity.
    fn brute_count(m: usize) -> usize {
        if m == 0 {
            return 1;
        }
        (1..m).step_by(2).map(|j| brute_count(j - 1) * brute_count(m - j - 1)).sum()
    }

    #[test]
    fn catalan_counts() {
        for m in [2usize, 4, 8] {
            let shape = BoxShape::new(0, 0, m, 0, Shading::Plus);
            let n = TLDiagram::enumerate(shape).unwrap().len();
            assert_eq!(n, brute_count(m));
            assert_eq!(n, catalan(m / 2));
        }
        assert_eq!(TLDiagram::enumerate(BoxShape::new(0, 0, 8, 0, Shading::Plus)).unwrap().len(), 14);
        assert!(TLDiagram::enumerate(BoxShape::new(1, 0, 2, 0, Shading::Plus)).is_err());
    }

    #[test]
    fn point_locate_inverse() {
        let shape = BoxShape::new(2, 3, 1, 4, Shading::Minus);
        for i in 0..shape.points() {
            let (side, j) = shape.locate(i);
            assert_eq!(shape.point(side, j), i);
        }
        assert_eq!(shape.point(Side::Bottom, 0), 1 + 3 + 3);
        assert_eq!(shape.point(Side::Left, 0), 9);
    }

    #[test]
    fn rejects_crossing() {
        let shape = BoxShape::new(0, 0, 4, 0, Shading::Plus);
        assert!(TLDiagram::from_pairs(shape, &[(0, 2), (1, 3)]).is_err());
        assert!(TLDiagram::from_pairs(shape, &[(0, 3), (1, 2)]).is_ok());
        assert!(TLDiagram::from_pairs(shape, &[(0, 1)]).is_err());
    }

    #[test]
    fn classify_examples() {
        let id = TLDiagram::from_pairs(BoxShape::new(0, 0, 2, 2, Shading::Plus), &[(0, 3), (1, 2)]).unwrap();
        let k = id.classify().unwrap();
        assert!(k.epi && k.monic && k.nonnested_epi && k.nonnested_monic);

        let cap = TLDiagram::from_pairs(BoxShape::new(0, 0, 0, 2, Shading::Plus), &[(0, 1)]).unwrap();
        let k = cap.classify().unwrap();
        assert!(k.epi && !k.monic);

        // Every 4 -> 2 epi has a single turn-back, so none is nested.
        let shape = BoxShape::new(0, 0, 2, 4, Shading::Plus);
        let all = TLDiagram::enumerate(shape).unwrap();
        let epis: Vec<_> = all.iter().filter(|d| d.classify().unwrap().epi).collect();
        assert_eq!(epis.len(), 3);
        assert!(epis.iter().all(|d| d.classify().unwrap().nonnested_epi));

        let nested = TLDiagram::from_pairs(BoxShape::new(0, 0, 0, 4, Shading::Plus), &[(0, 3), (1, 2)]).unwrap();
        let k = nested.classify().unwrap();
        assert!(k.epi && !k.nonnested_epi);

        // 6 -> 2 with through strings on the outer bottom points.
        let shape = BoxShape::new(0, 0, 2, 6, Shading::Plus);
        let d = TLDiagram::from_pairs(shape, &[(0, 7), (1, 2), (3, 6), (4, 5)]).unwrap();
        let k = d.classify().unwrap();
        assert!(k.epi && !k.nonnested_epi);

        let side = TLDiagram::from_pairs(BoxShape::new(1, 1, 0, 0, Shading::Plus), &[(0, 1)]).unwrap();
        assert_eq!(side.classify(), Err(Error::SidePointsPresent));
    }

    #[test]
    fn dagger_examples() {
        let cup = TLDiagram::from_pairs(BoxShape::new(0, 0, 2, 0, Shading::Plus), &[(0, 1)]).unwrap();
        assert_eq!(cup.dagger(), cup);
        let shape = BoxShape::new(1, 0, 1, 0, Shading::Plus);
        let hook = TLDiagram::from_pairs(shape, &[(0, 1)]).unwrap();
        let d = hook.dagger();
        assert_eq!(*d.shape(), BoxShape::new(0, 1, 1, 0, Shading::Minus));
        assert_eq!(d.dagger(), hook);
    }

    #[test]
    fn involutions_on_small_shapes() {
        for m in (0..=8).step_by(2) {
            for l in 0..=m {
                for r in 0..=(m - l) {
                    for t in 0..=(m - l - r) {
                        let b = m - l - r - t;
                        for sh in [Shading::Plus, Shading::Minus] {
                            let shape = BoxShape::new(l, r, t, b, sh);
                            for d in TLDiagram::enumerate(shape).unwrap() {
                                assert_eq!(d.dagger().dagger(), d);
                                assert_eq!(d.rotate().rotate(), d);
                                assert_eq!(d.transpose().transpose(), d);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn encoding_is_injective() {
        let mut seen = alloc::collections::BTreeSet::new();
        for shape in [BoxShape::new(0, 0, 6, 0, Shading::Plus), BoxShape::new(0, 0, 4, 2, Shading::Plus)] {
            for d in TLDiagram::enumerate(shape).unwrap() {
                assert!(seen.insert(d.encode()));
            }
        }
    }
}
