//! Principal graphs, Perron-Frobenius dimensions, the global index and the
//! free-group-factor parameters `r_k`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexParity {
    Even,
    Odd,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Vertex {
    pub id: String,
    pub parity: VertexParity,
}

/// A pointed bipartite graph. For an infinite-depth principal graph the
/// vertices are a truncation and `infinite` is set.
#[derive(Clone, PartialEq, Debug)]
pub struct PrincipalGraph {
    vertices: Vec<Vertex>,
    adjacency: Vec<Vec<usize>>,
    star: usize,
    infinite: bool,
    delta: Option<f64>,
}

impl PrincipalGraph {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: &[(String, String)],
        star: &str,
        infinite: bool,
        delta: Option<f64>,
    ) -> Result<Self> {
        let find = |id: &str| {
            vertices
                .iter()
                .position(|v| v.id == id)
                .ok_or_else(|| Error::Graph(alloc::format!("unknown vertex `{id}`")))
        };
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].iter().any(|w| w.id == v.id) {
                return Err(Error::Graph(alloc::format!("duplicate vertex `{}`", v.id)));
            }
        }
        let star = find(star)?;
        if vertices[star].parity != VertexParity::Even {
            return Err(Error::Graph("the distinguished vertex must be even".into()));
        }
        let mut adjacency = alloc::vec![Vec::new(); vertices.len()];
        for (a, b) in edges {
            let (i, j) = (find(a)?, find(b)?);
            if vertices[i].parity == vertices[j].parity {
                return Err(Error::Graph(alloc::format!("edge `{a}`-`{b}` joins vertices of equal parity")));
            }
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        let g = PrincipalGraph { vertices, adjacency, star, infinite, delta };
        if g.vertices.len() < 2 || !g.is_connected() {
            return Err(Error::Graph("graph must be connected with at least one edge".into()));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![self.star];
        seen[self.star] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The path `A_n` on `n` vertices starting at `*`.
    pub fn path(n: usize) -> Result<Self> {
        let vertices: Vec<Vertex> = (0..n)
            .map(|i| Vertex {
                id: if i == 0 { "*".into() } else { alloc::format!("v{i}") },
                parity: if i % 2 == 0 { VertexParity::Even } else { VertexParity::Odd },
            })
            .collect();
        let edges: Vec<(String, String)> =
            (1..n).map(|i| (vertices[i - 1].id.clone(), vertices[i].id.clone())).collect();
        Self::new(vertices, &edges, "*", false, None)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn star(&self) -> usize {
        self.star
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    pub fn delta_override(&self) -> Option<f64> {
        self.delta
    }

    /// `‖A v - λ v‖_∞`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        (0..v.len())
            .map(|i| {
                let av: f64 = self.adjacency[i].iter().map(|&j| v[j]).sum();
                (av - lambda * v[i]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Perron-Frobenius eigenvalue and eigenvector with `dims(*) = 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct PfData {
    pub delta: f64,
    pub dims: Vec<f64>,
}

/// Power iteration on `A + 1` (the shift makes the top eigenvalue of a
/// bipartite graph strictly dominant).
pub fn pf_dimensions(g: &PrincipalGraph) -> Result<PfData> {
    let n = g.vertices.len();
    let mut v = alloc::vec![1.0f64; n];
    let mut next = alloc::vec![0.0f64; n];
    for _ in 0..1_000_000 {
        for i in 0..n {
            next[i] = v[i] + g.adjacency[i].iter().map(|&j| v[j]).sum::<f64>();
        }
        let norm = next.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut change = 0.0f64;
        for i in 0..n {
            let x = next[i] / norm;
            change = change.max((x - v[i]).abs());
            v[i] = x;
        }
        if change < 1e-15 {
            break;
        }
    }
    let av: Vec<f64> = (0..n).map(|i| g.adjacency[i].iter().map(|&j| v[j]).sum()).collect();
    let delta = av.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / v.iter().map(|x| x * x).sum::<f64>();
    if delta <= 0.0 {
        return Err(Error::Graph("degenerate graph".into()));
    }
    let s = v[g.star];
    let dims: Vec<f64> = v.iter().map(|x| x / s).collect();
    if let Some(given) = g.delta {
        if (given - delta).abs() > 1e-9 {
            return Err(Error::DeltaMismatch { given, derived: delta });
        }
    }
    Ok(PfData { delta, dims })
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum GlobalIndex {
    Finite(f64),
    Infinite,
}

impl GlobalIndex {
    pub fn value(self) -> f64 {
        match self {
            GlobalIndex::Finite(x) => x,
            GlobalIndex::Infinite => f64::INFINITY,
        }
    }
}

/// `I = Σ_{v even} dims(v)²`, or infinity for infinite-depth graphs.
pub fn global_index(g: &PrincipalGraph) -> Result<GlobalIndex> {
    if g.infinite {
        return Ok(GlobalIndex::Infinite);
    }
    let pf = pf_dimensions(g)?;
    Ok(GlobalIndex::Finite(
        g.vertices
            .iter()
            .zip(&pf.dims)
            .filter(|(v, _)| v.parity == VertexParity::Even)
            .map(|(_, d)| d * d)
            .sum(),
    ))
}

/// `r_k = 1 + 2 δ^{-2k} I (δ - 1)`.
pub fn r_parameter(k: u32, delta: f64, index: f64) -> Result<f64> {
    if !(delta > 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("delta must exceed 1, got {delta}")));
    }
    if !(index > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("index must be positive, got {index}")));
    }
    Ok(1.0 + 2.0 * libm::pow(delta, -2.0 * k as f64) * index * (delta - 1.0))
}

/// The two sides of `2δI - (2I - 1) = 1 + 2I(δ - 1)`.
pub fn dimension_identity(delta: f64, index: f64) -> (f64, f64) {
    (2.0 * delta * index - (2.0 * index - 1.0), 1.0 + 2.0 * index * (delta - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn a3() {
        let g = PrincipalGraph::path(3).unwrap();
        let pf = pf_dimensions(&g).unwrap();
        let r2 = libm::sqrt(2.0);
        assert!(close(pf.delta, r2, 1e-12));
        for (got, want) in pf.dims.iter().zip([1.0, r2, 1.0]) {
            assert!(close(*got, want, 1e-12));
        }
        assert!(g.residual(pf.delta, &pf.dims) <= 1e-10);
        let i = global_index(&g).unwrap().value();
        assert!(close(i, 2.0, 1e-9));
        assert!(close(r_parameter(0, pf.delta, i).unwrap(), 4.0 * r2 - 3.0, 1e-9));
    }

    #[test]
    fn a4() {
        let g = PrincipalGraph::path(4).unwrap();
        let pf = pf_dimensions(&g).unwrap();
        let d = 2.0 * libm::cos(core::f64::consts::PI / 5.0);
        assert!(close(pf.delta, d, 1e-12));
        let i = global_index(&g).unwrap().value();
        assert!(close(i, 1.0 + (d * d - 1.0) * (d * d - 1.0), 1e-9));
    }

    #[test]
    fn degenerate_inputs() {
        let single = alloc::vec![Vertex { id: "*".into(), parity: VertexParity::Even }];
        assert!(PrincipalGraph::new(single, &[], "*", false, None).is_err());
        let g = PrincipalGraph::path(3).unwrap();
        let mut bad = g.clone();
        bad.delta = Some(1.5);
        assert!(matches!(pf_dimensions(&bad), Err(Error::DeltaMismatch { .. })));
        assert!(r_parameter(0, 1.0, 2.0).is_err());
        assert!(r_parameter(0, 2.0, 0.0).is_err());
    }

    #[test]
    fn infinite_flag() {
        let g = PrincipalGraph::path(5).unwrap();
        let inf = PrincipalGraph { infinite: true, ..g };
        assert_eq!(global_index(&inf).unwrap(), GlobalIndex::Infinite);
    }

    #[test]
    fn r_recursion_and_identity() {
        let (d, i) = (1.7, 3.2);
        let r0 = r_parameter(0, d, i).unwrap();
        let r1 = r_parameter(1, d, i).unwrap();
        assert!(close(r1 - 1.0, (r0 - 1.0) / (d * d), 1e-12));
        let (a, b) = dimension_identity(d, i);
        assert!(close(a, b, 1e-12) && close(b, r0, 1e-12));
    }
}
