#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlsym_core::{BoxShape, Flavor, GradedElement, Poly, Scalar, Shading, TLDiagram};

pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    pub fn shading(&mut self) -> Shading {
        if self.0.gen() { Shading::Plus } else { Shading::Minus }
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

    pub fn shape(&mut self, max_points: usize) -> BoxShape {
        let m = 2 * self.below(max_points / 2 + 1);
        let s = self.split(m, 4);
        BoxShape::new(s[0], s[1], s[2], s[3], self.shading())
    }

    pub fn square_shape(&mut self, max_points: usize) -> BoxShape {
        let side = self.below(max_points / 2 + 1);
        let rest = 2 * self.below((max_points - 2 * side) / 2 + 1);
        let t = self.below(rest + 1);
        BoxShape::new(side, side, t, rest - t, self.shading())
    }

    /// A shape that can sit to the right of `x` under `∧`.
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

    pub fn diagram(&mut self, shape: BoxShape) -> TLDiagram {
        let all = TLDiagram::enumerate(shape).unwrap();
        all[self.below(all.len())].clone()
    }

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

    /// A random element of `Gr_0^+` of degree at most `max_degree`.
    pub fn gr0(&mut self, max_degree: usize, terms: usize) -> GradedElement {
        let mut out = GradedElement::zero(Flavor::V);
        for _ in 0..terms {
            let n = self.below(max_degree + 1);
            let d = self.diagram(BoxShape::new(0, 0, 2 * n, 0, Shading::Plus));
            let c = self.scalar();
            out.add_term(d, &c);
        }
        out
    }
}

/// Every basis diagram with total boundary at most `max`.
pub fn all_cells(max: usize) -> Vec<TLDiagram> {
    let mut out = Vec::new();
    for m in (0..=max).step_by(2) {
        for l in 0..=m {
            for r in 0..=(m - l) {
                for t in 0..=(m - l - r) {
                    let b = m - l - r - t;
                    for sh in [Shading::Plus, Shading::Minus] {
                        out.extend(TLDiagram::enumerate(BoxShape::new(l, r, t, b, sh)).unwrap());
                    }
                }
            }
        }
    }
    out
}
