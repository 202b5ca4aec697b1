//! Generalized meanders: pairs of non-crossing matchings of `2n` points on
//! a line, one above and one below, counted by their number of loops.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{boxtimes_trace, v_product, vertical_bars};
use crate::diagram::nc_matchings;
use crate::error::{Error, Result};
use crate::glue::loops_of_pair;
use crate::scalar::{Poly, Scalar};

/// Largest order accepted by [`enumerate_meanders`].
pub const MAX_ORDER: usize = 8;

/// `counts[k - 1]` is the number of meander systems of order `n` with `k`
/// loops.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeanderCount {
    pub order: usize,
    pub counts: Vec<u64>,
}

impl MeanderCount {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `m_n(q) = Σ_k M_n^{(k)} q^k`.
    pub fn polynomial(&self) -> Poly {
        let mut coeffs = alloc::vec![0i64];
        coeffs.extend(self.counts.iter().map(|&c| c as i64));
        Poly::from_i64s(&coeffs)
    }
}

pub fn enumerate_meanders(n: usize) -> Result<MeanderCount> {
    if n == 0 {
        return Err(Error::InvalidParameter("meander order must be at least 1".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::TooLarge { requested: n, bound: MAX_ORDER });
    }
    let ms = nc_matchings(n);
    let mut counts = alloc::vec![0u64; n];
    for upper in ms.iter() {
        for lower in ms.iter() {
            counts[loops_of_pair(upper, lower) - 1] += 1;
        }
    }
    Ok(MeanderCount { order: n, counts })
}

pub fn meander_polynomial(n: usize) -> Result<Poly> {
    Ok(enumerate_meanders(n)?.polynomial())
}

/// `m_n(q)` printed in the variable `q`, e.g. `2*q + 2*q^2`.
pub fn format_polynomial(p: &Poly) -> String {
    p.display_with('q')
}

/// `(τ_0 ⊠ τ_0)((| |)^n)`, computed with the diagram algebra.
pub fn trace_moment(n: usize) -> Scalar {
    let bars = vertical_bars();
    let mut power = crate::algebra::unit(0, crate::diagram::Shading::Plus);
    for _ in 0..n {
        power = v_product(&power, &bars);
    }
    boxtimes_trace(&power)
}
