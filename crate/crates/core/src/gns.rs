//! Inner products, Gram matrices and the conditional expectation onto
//! `A ⊗ A^op` inside `A ⊠ A` (here `A = Gr_0`).
//!
//! `A ⊗ A^op` sits in `V^+_{0,0}(2s, 2t)` as the span of the diagrams with
//! no through strings, written `D(a, b)` for a top pairing `a` and a bottom
//! pairing `b`.

use alloc::borrow::Cow;
use alloc::vec::Vec;

use crate::algebra::{star_diagrams, trace_diagram, v_product, wedge_diagrams, w_trace_diagram};
use crate::diagram::{nc_matchings, BoxShape, Shading, TLDiagram};
use crate::element::{Flavor, GradedElement};
use crate::error::{Error, Result};
use crate::glue::loops_of_pair;
use crate::linalg::{self, Matrix};
use crate::memo::Memo;
use crate::scalar::Scalar;

/// Which trace induces the inner product.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pairing {
    /// `⟨x, y⟩ = δ^{-k} Tr(y† ∧ x)`.
    Tau,
    /// `⟨x, y⟩ = δ^{-k} Tr′(y† ⋆ x)`.
    TauPrime,
}

fn pair_diagrams(x: &TLDiagram, y: &TLDiagram, pairing: Pairing) -> Scalar {
    let yd = y.dagger();
    match pairing {
        Pairing::Tau => match wedge_diagrams(&yd, x) {
            Some((d, loops)) => {
                let k = d.shape().left as i64;
                trace_diagram(&d).mul_delta_pow(loops as i64 - k)
            }
            None => Scalar::zero(),
        },
        Pairing::TauPrime => {
            let mut terms = Vec::new();
            star_diagrams(&yd, x, &mut terms);
            let mut acc = Scalar::zero();
            for (d, c) in terms {
                let v = w_trace_diagram(&d);
                if !v.is_zero() {
                    acc += &(&v * &c).mul_delta_pow(-(d.shape().left as i64));
                }
            }
            acc
        }
    }
}

/// The GNS inner product of the chosen trace, bilinear over `Scalar`.
pub fn inner_product(x: &GradedElement, y: &GradedElement, pairing: Pairing) -> Result<Scalar> {
    if x.flavor() != y.flavor() {
        return Err(Error::ShapeMismatch("inner product of V and W elements".into()));
    }
    let mut acc = Scalar::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let v = pair_diagrams(a, b, pairing);
            if !v.is_zero() {
                acc += &(&(&v * ca) * cb);
            }
        }
    }
    Ok(acc)
}

/// Gram matrix of all diagrams of one shape.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub basis: Vec<TLDiagram>,
    pub entries: Matrix,
    pub pairing: Pairing,
}

impl GramMatrix {
    pub fn numeric(&self, delta: f64) -> Result<Vec<Vec<f64>>> {
        linalg::evaluate(&self.entries, delta)
    }

    /// Eigenvalues at a numeric `δ`, ascending.
    pub fn eigenvalues(&self, delta: f64) -> Result<Vec<f64>> {
        Ok(linalg::symmetric_eigenvalues(&self.numeric(delta)?))
    }
}

pub fn gram_matrix(shape: BoxShape, pairing: Pairing) -> Result<GramMatrix> {
    let basis = TLDiagram::enumerate(shape)?;
    let entries = basis
        .iter()
        .map(|x| basis.iter().map(|y| pair_diagrams(x, y, pairing)).collect())
        .collect();
    Ok(GramMatrix { basis, entries, pairing })
}

/// `D(a, b)`: top points paired by `a`, bottom points (left to right) by
/// `b`.
pub fn tensor_diagram(a: &[u16], b: &[u16]) -> TLDiagram {
    let (s, t) = (a.len(), b.len());
    let m = s + t;
    let mut partner = alloc::vec![0u16; m];
    partner[..s].copy_from_slice(a);
    for (j, &p) in b.iter().enumerate() {
        partner[m - 1 - j] = (m - 1 - p as usize) as u16;
    }
    TLDiagram::from_partner(BoxShape::new(0, 0, s, t, Shading::Plus), partner).expect("non-crossing")
}

/// The no-through-string basis of `V^+_{0,0}(top, bottom)`, ordered by top
/// pairing, then bottom pairing.
pub fn tensor_basis(top: usize, bottom: usize) -> Vec<TLDiagram> {
    let (ta, tb) = (nc_matchings(top / 2), nc_matchings(bottom / 2));
    let mut out = Vec::with_capacity(ta.len() * tb.len());
    for a in ta.iter() {
        for b in tb.iter() {
            out.push(tensor_diagram(a, b));
        }
    }
    out
}

/// The meander matrix `δ^{#loops(a ∪ b)}` on the matchings of `2n` points.
pub fn meander_gram(n: usize) -> Matrix {
    let ms = nc_matchings(n);
    ms.iter()
        .map(|a| ms.iter().map(|b| Scalar::delta_pow(loops_of_pair(a, b) as i64)).collect())
        .collect()
}

static MEANDER_INVERSES: Memo<Matrix, 8> = Memo::new();

fn meander_gram_inverse(n: usize) -> Cow<'static, Matrix> {
    let build = || linalg::inverse(&meander_gram(n)).expect("meander matrix is invertible over Q(d)");
    match MEANDER_INVERSES.get(n, build) {
        Some(m) => Cow::Borrowed(m),
        None => Cow::Owned(build()),
    }
}

fn check_tensor_support(q: &GradedElement) -> Result<()> {
    for s in q.shapes() {
        if s.left != 0 || s.right != 0 || s.top % 2 == 1 || s.bottom % 2 == 1 || s.shading != Shading::Plus {
            return Err(Error::ShapeMismatch(alloc::format!("{s} is not a cell of A ⊠ A")));
        }
    }
    Ok(())
}

/// Matrix `R[a][b] = Tr′ pairing of the cell with D(a, b)`.
fn tr_prime_pairings(cell: &crate::element::DiagramVector) -> Matrix {
    let sh = cell.shape();
    let (ta, tb) = (nc_matchings(sh.top / 2), nc_matchings(sh.bottom / 2));
    let mut r = alloc::vec![alloc::vec![Scalar::zero(); tb.len()]; ta.len()];
    for (i, a) in ta.iter().enumerate() {
        for (j, b) in tb.iter().enumerate() {
            let dab = tensor_diagram(a, b);
            let mut acc = Scalar::zero();
            for (d, c) in cell.terms() {
                acc += &c.mul_delta_pow(loops_of_pair(d.partners(), dab.partners()) as i64);
            }
            r[i][j] = acc;
        }
    }
    r
}

/// The conditional expectation `E : A ⊠ A → A ⊗ A^op`, computed cell by
/// cell as the orthogonal projection for the `Tr′` pairing.
pub fn conditional_expectation(q: &GradedElement) -> Result<GradedElement> {
    check_tensor_support(q)?;
    let mut out = GradedElement::zero(Flavor::V);
    for cell in q.cells() {
        let sh = cell.shape();
        let r = tr_prime_pairings(cell);
        if r.iter().flatten().all(Scalar::is_zero) {
            continue;
        }
        let (gs, gt) = (meander_gram_inverse(sh.top / 2), meander_gram_inverse(sh.bottom / 2));
        let coeffs = linalg::mul(&linalg::mul(&gs, &r), &gt);
        let (ta, tb) = (nc_matchings(sh.top / 2), nc_matchings(sh.bottom / 2));
        for (i, a) in ta.iter().enumerate() {
            for (j, b) in tb.iter().enumerate() {
                out.add_term(tensor_diagram(a, b), &coeffs[i][j]);
            }
        }
    }
    Ok(out)
}

/// The same projection computed from the `τ ⊠ τ` pairing within each cell.
pub fn conditional_expectation_tau(q: &GradedElement) -> Result<GradedElement> {
    check_tensor_support(q)?;
    let mut out = GradedElement::zero(Flavor::V);
    for cell in q.cells() {
        let sh = cell.shape();
        let basis = tensor_basis(sh.top, sh.bottom);
        let gram: Matrix = basis
            .iter()
            .map(|x| basis.iter().map(|y| pair_diagrams(x, y, Pairing::Tau)).collect())
            .collect();
        let rhs: Matrix = basis
            .iter()
            .map(|y| {
                let v = cell.terms().fold(Scalar::zero(), |acc, (d, c)| &acc + &(&pair_diagrams(d, y, Pairing::Tau) * c));
                alloc::vec![v]
            })
            .collect();
        let sol = linalg::solve(&gram, &rhs)?;
        for (d, row) in basis.into_iter().zip(sol) {
            out.add_term(d, &row[0]);
        }
    }
    Ok(out)
}

/// Whether `q` is orthogonal to `A ⊗ A^op`, without solving anything.
pub fn is_orthogonal_to_tensor(q: &GradedElement) -> Result<bool> {
    check_tensor_support(q)?;
    Ok(q.cells().all(|cell| tr_prime_pairings(cell).iter().flatten().all(Scalar::is_zero)))
}

/// Cap every top point of a cell of `A ⊠ A` with the pairing `a`.
pub fn cap_top_with(q: &GradedElement, a: &[u16]) -> Result<GradedElement> {
    check_tensor_support(q)?;
    let cap = TLDiagram::from_partner(BoxShape::new(0, 0, a.len(), 0, Shading::Plus), a.to_vec())?;
    let mut out = GradedElement::zero(Flavor::V);
    for (d, c) in q.terms() {
        if d.shape().top != a.len() {
            continue;
        }
        let (e, loops) = crate::glue::cap_top(d, &cap)?;
        out.add_term(e, &c.mul_delta_pow(loops as i64));
    }
    Ok(out)
}

/// `a · Q · b` for `a, b` in the embedded `A ⊗ A^op`.
pub fn bimodule(a: &GradedElement, q: &GradedElement, b: &GradedElement) -> GradedElement {
    v_product(&v_product(a, q), b)
}
