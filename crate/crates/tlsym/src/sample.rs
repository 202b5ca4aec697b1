//! Seeded random sampling of shapes, diagrams and elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlsym_core::{BoxShape, Flavor, GradedElement, Poly, Scalar, Shading, TLDiagram};

pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    pub fn unit_interval(&mut self) -> f64 {
        self.0.gen()
    }

    pub fn shading(&mut self) -> Shading {
        if self.0.gen() {
            Shading::Plus
        } else {
            Shading::Minus
        }
    }

    fn split(&mut self, total: usize, parts: usize) -> Vec<usize> {
        let mut cuts: Vec<usize> = (0..parts - 1).map(|_| self.0.gen_range(0..=total)).collect();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(total - prev);
        out
    }

    /// A shape with an even number of points, at most `max_points`.
    pub fn shape(&mut self, max_points: usize) -> BoxShape {
        let m = 2 * self.below(max_points / 2 + 1);
        let s = self.split(m, 4);
        BoxShape::new(s[0], s[1], s[2], s[3], self.shading())
    }

    /// A shape that can follow `x` in a horizontal product.
    pub fn shape_after(&mut self, x: &BoxShape, max_points: usize) -> BoxShape {
        let left = x.right;
        let budget = max_points.saturating_sub(left);
        let mut extra = self.below(budget + 1);
        if (left + extra) % 2 == 1 {
            extra = if extra > 0 { extra - 1 } else { 1 };
        }
        let s = self.split(extra, 3);
        BoxShape::new(left, s[0], s[1], s[2], x.shading.flip_if_odd(x.top))
    }

    /// A shape `y` such that both `x ∧ y` and `y ∧ x` are defined, if one
    /// exists within the budget.
    pub fn shape_around(&mut self, x: &BoxShape, max_points: usize) -> Option<BoxShape> {
        let sides = x.left + x.right;
        let budget = max_points.checked_sub(sides)?;
        // both products need y.top ≡ x.top (mod 2) for the shadings to agree
        let tops: Vec<usize> = (0..=budget).filter(|t| t % 2 == x.top % 2).collect();
        if tops.is_empty() {
            return None;
        }
        let top = tops[self.below(tops.len())];
        let bottoms: Vec<usize> = (0..=budget - top).filter(|b| (sides + top + b) % 2 == 0).collect();
        if bottoms.is_empty() {
            return None;
        }
        let bottom = bottoms[self.below(bottoms.len())];
        Some(BoxShape::new(x.right, x.left, top, bottom, x.shading.flip_if_odd(x.top)))
    }

    pub fn diagram(&mut self, shape: BoxShape) -> TLDiagram {
        let all = TLDiagram::enumerate(shape).expect("even shape");
        all[self.below(all.len())].clone()
    }

    /// A small nonzero coefficient: a polynomial of degree ≤ 2 times `δ^{-1}`,
    /// `1` or `δ`.
    pub fn scalar(&mut self) -> Scalar {
        let c: Vec<i64> = (0..self.below(3) + 1).map(|_| self.0.gen_range(-3..=3)).collect();
        let s = Scalar::from_poly(Poly::from_i64s(&c));
        let s = if s.is_zero() { Scalar::one() } else { s };
        s.mul_delta_pow(self.0.gen_range(-1..=1))
    }

    pub fn element(&mut self, flavor: Flavor, shape: BoxShape, terms: usize) -> GradedElement {
        let mut out = GradedElement::zero(flavor);
        for _ in 0..terms {
            let d = self.diagram(shape);
            let c = self.scalar();
            out.add_term(d, &c);
        }
        out
    }

    /// A random element of `Gr_k` of degree at most `max_degree`.
    pub fn gr(&mut self, k: usize, shading: Shading, max_degree: usize, terms: usize) -> GradedElement {
        let mut out = GradedElement::zero(Flavor::V);
        for _ in 0..terms {
            let n = self.below(max_degree + 1);
            let d = self.diagram(BoxShape::new(k, k, 2 * n, 0, shading));
            let c = self.scalar();
            out.add_term(d, &c);
        }
        out
    }
}

/// Every basis diagram with at most `max` boundary points, both shadings.
pub fn all_cells(max: usize) -> Vec<TLDiagram> {
    all_shapes(max).into_iter().flat_map(|s| TLDiagram::enumerate(s).expect("even shape")).collect()
}

/// Every shape with an even number of points, at most `max`.
pub fn all_shapes(max: usize) -> Vec<BoxShape> {
    let mut out = Vec::new();
    for m in (0..=max).step_by(2) {
        for l in 0..=m {
            for r in 0..=(m - l) {
                for t in 0..=(m - l - r) {
                    let b = m - l - r - t;
                    for sh in [Shading::Plus, Shading::Minus] {
                        out.push(BoxShape::new(l, r, t, b, sh));
                    }
                }
            }
        }
    }
    out
}
