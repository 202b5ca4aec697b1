//! JSON documents for diagrams, elements, principal graphs and meander
//! counts.
//!
//! Emitted documents are canonical: pairs are `[a, b]` with `a < b` sorted
//! by `a`, cells are ordered by shape, terms by diagram, and coefficients are
//! reduced with a positive leading denominator coefficient. Parsing accepts
//! any valid document and records every rewrite it needed; strict parsing
//! turns those records into an error.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;
use tlsym_core::derivations::Parity;
use tlsym_core::meander::{format_polynomial, MeanderCount};
use tlsym_core::spectrum::{PrincipalGraph, Vertex, VertexParity};
use tlsym_core::{BoxShape, Flavor, GradedElement, Poly, Scalar, Shading, TLDiagram};

use crate::error::{AppError, Result};

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
#[serde(deny_unknown_fields)]
pub struct ShapeDoc {
    pub left: usize,
    pub right: usize,
    pub top: usize,
    pub bottom: usize,
    pub shading: ShadingDoc,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ShadingDoc {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct CoeffDoc {
    pub num: Vec<Number>,
    pub den: Vec<Number>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub shape: ShapeDoc,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub pairs: Vec<[usize; 2]>,
    pub coeff: CoeffDoc,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub shape: ShapeDoc,
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlavorDoc {
    V,
    W,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum ParityDoc {
    Odd,
    Even,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub flavor: FlavorDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<ParityDoc>,
    pub cells: Vec<CellDoc>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub parity: ParityDoc,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[String; 2]>,
    pub star: String,
    #[serde(default)]
    pub infinite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Serialize, Clone, PartialEq, Debug)]
pub struct MeanderDoc {
    pub n: usize,
    pub counts: Vec<u64>,
    pub total: u64,
    pub polynomial: String,
}

/// A parsed element together with the rewrites parsing had to make.
#[derive(Clone, PartialEq, Debug)]
pub struct Parsed<T> {
    pub value: T,
    pub notes: Vec<String>,
}

impl<T> Parsed<T> {
    /// The value, or an error if anything was rewritten.
    pub fn strict(self) -> Result<T> {
        if self.notes.is_empty() {
            Ok(self.value)
        } else {
            Err(AppError::NonCanonical(self.notes))
        }
    }
}

impl From<Shading> for ShadingDoc {
    fn from(s: Shading) -> Self {
        match s {
            Shading::Plus => ShadingDoc::Plus,
            Shading::Minus => ShadingDoc::Minus,
        }
    }
}

impl From<ShadingDoc> for Shading {
    fn from(s: ShadingDoc) -> Self {
        match s {
            ShadingDoc::Plus => Shading::Plus,
            ShadingDoc::Minus => Shading::Minus,
        }
    }
}

impl From<BoxShape> for ShapeDoc {
    fn from(s: BoxShape) -> Self {
        ShapeDoc { left: s.left, right: s.right, top: s.top, bottom: s.bottom, shading: s.shading.into() }
    }
}

impl From<ShapeDoc> for BoxShape {
    fn from(s: ShapeDoc) -> Self {
        BoxShape::new(s.left, s.right, s.top, s.bottom, s.shading.into())
    }
}

fn number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

fn integer(n: &Number) -> Result<BigInt> {
    let text = n.to_string();
    BigInt::from_str(&text).map_err(|_| AppError::Schema(format!("coefficient `{text}` is not an integer")))
}

pub fn coeff_doc(c: &Scalar) -> CoeffDoc {
    CoeffDoc { num: c.numer().coeffs().iter().map(number).collect(), den: c.denom().coeffs().iter().map(number).collect() }
}

fn parse_coeff(doc: &CoeffDoc, notes: &mut Vec<String>) -> Result<Scalar> {
    let num: Vec<BigInt> = doc.num.iter().map(integer).collect::<Result<_>>()?;
    let den: Vec<BigInt> = doc.den.iter().map(integer).collect::<Result<_>>()?;
    let c = Scalar::new(Poly::from_coeffs(num.clone()), Poly::from_coeffs(den.clone()))?;
    if c.is_zero() {
        return Err(AppError::Schema("zero coefficient present".into()));
    }
    if c.numer().coeffs() != num.as_slice() || c.denom().coeffs() != den.as_slice() {
        notes.push(format!("coefficient {c} was not in lowest terms"));
    }
    Ok(c)
}

fn pairs_doc(d: &TLDiagram) -> Vec<[usize; 2]> {
    d.pairs().into_iter().map(|(a, b)| [a, b]).collect()
}

fn parse_pairs(shape: BoxShape, pairs: &[[usize; 2]], notes: &mut Vec<String>) -> Result<TLDiagram> {
    let list: Vec<(usize, usize)> = pairs.iter().map(|p| (p[0], p[1])).collect();
    let d = TLDiagram::from_pairs(shape, &list)?;
    if pairs_doc(&d) != pairs {
        notes.push(format!("pairs of {d} were not in canonical order"));
    }
    Ok(d)
}

pub fn diagram_doc(d: &TLDiagram) -> DiagramDoc {
    DiagramDoc { shape: (*d.shape()).into(), pairs: pairs_doc(d) }
}

pub fn parse_diagram(text: &str) -> Result<Parsed<TLDiagram>> {
    let doc: DiagramDoc = serde_json::from_str(text)?;
    let mut notes = Vec::new();
    let value = parse_pairs(doc.shape.into(), &doc.pairs, &mut notes)?;
    Ok(Parsed { value, notes })
}

pub fn emit_diagram(d: &TLDiagram) -> String {
    to_pretty(&diagram_doc(d))
}

/// Parsed element document; `parity` is the declared `Φ`/`Ω` parity.
#[derive(Clone, PartialEq, Debug)]
pub struct ElementInput {
    pub element: GradedElement,
    pub parity: Option<Parity>,
}

pub fn element_doc(e: &GradedElement, parity: Option<Parity>) -> ElementDoc {
    ElementDoc {
        flavor: match e.flavor() {
            Flavor::V => FlavorDoc::V,
            Flavor::W => FlavorDoc::W,
        },
        parity: parity.map(|p| match p {
            Parity::Odd => ParityDoc::Odd,
            Parity::Even => ParityDoc::Even,
        }),
        cells: e
            .cells()
            .map(|cell| CellDoc {
                shape: (*cell.shape()).into(),
                terms: cell.terms().map(|(d, c)| TermDoc { pairs: pairs_doc(d), coeff: coeff_doc(c) }).collect(),
            })
            .collect(),
    }
}

pub fn emit_element(e: &GradedElement, parity: Option<Parity>) -> String {
    to_pretty(&element_doc(e, parity))
}

pub fn parse_element(text: &str) -> Result<Parsed<ElementInput>> {
    let doc: ElementDoc = serde_json::from_str(text)?;
    let flavor = match doc.flavor {
        FlavorDoc::V => Flavor::V,
        FlavorDoc::W => Flavor::W,
    };
    let parity = doc.parity.map(|p| match p {
        ParityDoc::Odd => Parity::Odd,
        ParityDoc::Even => Parity::Even,
    });
    let mut notes = Vec::new();
    let mut element = GradedElement::zero(flavor);
    let mut seen: Vec<BoxShape> = Vec::new();
    for cell in &doc.cells {
        let shape: BoxShape = cell.shape.into();
        shape.check_even()?;
        if seen.contains(&shape) {
            return Err(AppError::Schema(format!("cell {shape} appears twice")));
        }
        if seen.last().is_some_and(|last| *last > shape) {
            notes.push(format!("cell {shape} is out of order"));
        }
        seen.push(shape);
        if cell.terms.is_empty() {
            return Err(AppError::Schema(format!("cell {shape} has no terms")));
        }
        let mut previous: Option<TLDiagram> = None;
        for term in &cell.terms {
            let d = parse_pairs(shape, &term.pairs, &mut notes)?;
            let c = parse_coeff(&term.coeff, &mut notes)?;
            if !element.coeff(&d).is_zero() {
                return Err(AppError::Schema(format!("diagram {d} appears twice")));
            }
            if previous.as_ref().is_some_and(|p| *p > d) {
                notes.push(format!("term {d} is out of order"));
            }
            previous = Some(d.clone());
            element.add_term(d, &c);
        }
    }
    if let Some(p) = parity {
        let want = p == Parity::Odd;
        if let Some(s) = element.shapes().find(|s| (s.top % 2 == 1) != want) {
            return Err(AppError::Schema(format!("cell {s} does not have {} parity", p.name())));
        }
    }
    Ok(Parsed { value: ElementInput { element, parity }, notes })
}

pub fn parse_graph(text: &str) -> Result<PrincipalGraph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let vertices = doc
        .vertices
        .into_iter()
        .map(|v| Vertex {
            id: v.id,
            parity: match v.parity {
                ParityDoc::Even => VertexParity::Even,
                ParityDoc::Odd => VertexParity::Odd,
            },
        })
        .collect();
    let edges: Vec<(String, String)> = doc.edges.into_iter().map(|[a, b]| (a, b)).collect();
    Ok(PrincipalGraph::new(vertices, &edges, &doc.star, doc.infinite, doc.delta)?)
}

pub fn meander_doc(m: &MeanderCount) -> MeanderDoc {
    MeanderDoc { n: m.order, counts: m.counts.clone(), total: m.total(), polynomial: format_polynomial(&m.polynomial()) }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use tlsym_core::algebra::vertical_bars;

    #[test]
    fn bars_round_trip() {
        let text = emit_element(&vertical_bars(), None);
        let back = parse_element(&text).unwrap().strict().unwrap();
        assert_eq!(back.element, vertical_bars());
        assert_eq!(emit_element(&back.element, None), text);
    }

    #[test]
    fn crossing_pairs_rejected() {
        let text = r#"{"shape":{"left":0,"right":0,"top":4,"bottom":0,"shading":"+"},"pairs":[[0,2],[1,3]]}"#;
        assert!(parse_diagram(text).is_err());
    }

    #[test]
    fn unreduced_coefficient_is_flagged() {
        let text = r#"{"flavor":"V","cells":[{"shape":{"left":0,"right":0,"top":2,"bottom":0,"shading":"+"},
            "terms":[{"pairs":[[1,0]],"coeff":{"num":[0,2],"den":[0,4]}}]}]}"#;
        let parsed = parse_element(text).unwrap();
        assert_eq!(parsed.notes.len(), 2);
        let c = parsed.value.element.terms().next().unwrap().1.clone();
        assert_eq!(c.to_string(), "1/2");
        assert!(parse_element(text).unwrap().strict().is_err());
    }

    #[test]
    fn zero_coefficient_rejected() {
        let text = r#"{"flavor":"V","cells":[{"shape":{"left":0,"right":0,"top":0,"bottom":0,"shading":"+"},
            "terms":[{"pairs":[],"coeff":{"num":[],"den":[1]}}]}]}"#;
        assert!(matches!(parse_element(text), Err(AppError::Schema(_))));
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"flavor":"V","cells":[],"extra":1}"#;
        assert!(parse_element(text).is_err());
    }

    #[test]
    fn graph_document() {
        let text = r#"{"vertices":[{"id":"*","parity":"even"},{"id":"a","parity":"odd"},{"id":"b","parity":"even"}],
            "edges":[["*","a"],["a","b"]],"star":"*","infinite":false}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertices().len(), 3);
    }
}
