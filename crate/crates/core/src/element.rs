//! Sparse linear combinations of diagrams.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::diagram::{BoxShape, TLDiagram};
use crate::scalar::Scalar;

/// Which product and trace a graded element is meant for: `V` uses `∧` and
/// `Tr`, `W` uses `⋆` and `Tr′`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Flavor {
    V,
    W,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::V => "V",
            Flavor::W => "W",
        })
    }
}

/// Combination of diagrams sharing one shape. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiagramVector {
    shape: BoxShape,
    terms: BTreeMap<TLDiagram, Scalar>,
}

impl DiagramVector {
    pub fn new(shape: BoxShape) -> Self {
        DiagramVector { shape, terms: BTreeMap::new() }
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, TLDiagram, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TLDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, d: TLDiagram, c: &Scalar) {
        assert_eq!(*d.shape(), self.shape, "diagram shape differs from vector shape");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

/// A finite sum of cells of possibly different shapes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedElement {
    flavor: Flavor,
    cells: BTreeMap<BoxShape, DiagramVector>,
}

impl GradedElement {
    pub fn zero(flavor: Flavor) -> Self {
        GradedElement { flavor, cells: BTreeMap::new() }
    }

    pub fn from_diagram(flavor: Flavor, d: TLDiagram) -> Self {
        Self::from_term(flavor, d, &Scalar::one())
    }

    pub fn from_term(flavor: Flavor, d: TLDiagram, c: &Scalar) -> Self {
        let mut e = Self::zero(flavor);
        e.add_term(d, c);
        e
    }

    pub fn from_terms(flavor: Flavor, terms: impl IntoIterator<Item = (TLDiagram, Scalar)>) -> Self {
        let mut e = Self::zero(flavor);
        for (d, c) in terms {
            e.add_term(d, &c);
        }
        e
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Same coefficients, relabelled flavor.
    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = &DiagramVector> {
        self.cells.values()
    }

    pub fn shapes(&self) -> impl Iterator<Item = &BoxShape> {
        self.cells.keys()
    }

    pub fn cell(&self, shape: &BoxShape) -> Option<&DiagramVector> {
        self.cells.get(shape)
    }

    /// The part of `self` supported on one shape.
    pub fn component(&self, shape: &BoxShape) -> GradedElement {
        let mut out = Self::zero(self.flavor);
        if let Some(v) = self.cells.get(shape) {
            out.cells.insert(*shape, v.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &Scalar)> {
        self.cells.values().flat_map(|v| v.terms())
    }

    pub fn num_terms(&self) -> usize {
        self.cells.values().map(DiagramVector::len).sum()
    }

    pub fn coeff(&self, d: &TLDiagram) -> Scalar {
        self.cells.get(d.shape()).map(|v| v.coeff(d)).unwrap_or_default()
    }

    pub fn add_term(&mut self, d: TLDiagram, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let shape = *d.shape();
        let cell = self.cells.entry(shape).or_insert_with(|| DiagramVector::new(shape));
        cell.add_term(d, c);
        if cell.is_zero() {
            self.cells.remove(&shape);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &GradedElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (d, a) in other.terms() {
            self.add_term(d.clone(), &(a * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> GradedElement {
        let mut out = Self::zero(self.flavor);
        out.add_assign_scaled(self, c);
        out
    }

    /// Apply a linear map given on basis diagrams.
    pub fn map_linear<F>(&self, flavor: Flavor, mut f: F) -> GradedElement
    where
        F: FnMut(&TLDiagram) -> GradedElement,
    {
        let mut out = Self::zero(flavor);
        for (d, c) in self.terms() {
            out.add_assign_scaled(&f(d), c);
        }
        out
    }

    /// Apply a map sending each basis diagram to a scaled diagram (or zero).
    pub fn map_diagrams<F>(&self, flavor: Flavor, mut f: F) -> GradedElement
    where
        F: FnMut(&TLDiagram) -> Option<(TLDiagram, Scalar)>,
    {
        let mut out = Self::zero(flavor);
        for (d, c) in self.terms() {
            if let Some((e, a)) = f(d) {
                out.add_term(e, &(&a * c));
            }
        }
        out
    }

    /// Extend a bilinear map given on pairs of basis diagrams.
    pub fn bilinear<F>(x: &GradedElement, y: &GradedElement, flavor: Flavor, mut f: F) -> GradedElement
    where
        F: FnMut(&TLDiagram, &TLDiagram, &mut Vec<(TLDiagram, Scalar)>),
    {
        let mut out = Self::zero(flavor);
        let mut buf = Vec::new();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                buf.clear();
                f(a, b, &mut buf);
                if buf.is_empty() {
                    continue;
                }
                let cab = ca * cb;
                for (d, c) in buf.drain(..) {
                    out.add_term(d, &(&c * &cab));
                }
            }
        }
        out
    }

    /// Linear functional given on basis diagrams.
    pub fn pair_with<F>(&self, mut f: F) -> Scalar
    where
        F: FnMut(&TLDiagram) -> Scalar,
    {
        let mut acc = Scalar::zero();
        for (d, c) in self.terms() {
            let v = f(d);
            if !v.is_zero() {
                acc += &(&v * c);
            }
        }
        acc
    }
}

impl<'a> Add<&'a GradedElement> for &'a GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::one());
        out
    }
}

impl<'a> Sub<&'a GradedElement> for &'a GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (d, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {d}")?;
        }
        Ok(())
    }
}
