//! The identity checks behind the `*-check` commands and the acceptance
//! target. Every suite is deterministic for a fixed seed.

use tlsym_core::algebra::{
    boxtimes_trace, composable, dagger, gr_basis, gr_include, gr_product, p, unit, v_product, v_trace,
    voiculescu_trace, w_product, w_trace,
};
use tlsym_core::cob::{map_x, map_y};
use tlsym_core::derivations::{
    coassociativity_sides, conjugate_pairing, delta_tilde, delta_vanishes, hat_left, hat_right, kernel_reconstruct,
    rho, OmegaElement, PhiElement,
};
use tlsym_core::diagram::nc_matchings;
use tlsym_core::gns::{
    cap_top_with, conditional_expectation, conditional_expectation_tau, gram_matrix, Pairing,
};
use tlsym_core::meander::{meander_polynomial, trace_moment};
use tlsym_core::spectrum::{
    dimension_identity, global_index, pf_dimensions, r_parameter, PrincipalGraph, Vertex, VertexParity,
};
use tlsym_core::{BoxShape, Flavor, GradedElement, Poly, Scalar, Shading, TLDiagram};

use crate::io::{emit_element, parse_diagram, parse_element};
use crate::report::{Check, Report};
use crate::sample::{all_cells, all_shapes, Sampler};

pub const POSITIVITY_DELTAS: [f64; 3] = [2.0, 1.9, 1.618_033_988_7];

fn v(d: TLDiagram) -> GradedElement {
    GradedElement::from_diagram(Flavor::V, d)
}

/// `X` and `Y` are inverse and `X` intertwines products, adjoints and
/// traces.
pub fn orthogonalization(max_boundary: usize, pairs: usize, seed: u64) -> Report {
    let mut yx = Check::new("Y(X(v)) = v on basis cells");
    let mut xy = Check::new("X(Y(w)) = w on basis cells");
    let mut adj = Check::new("X(a†) = X(a)† on basis cells");
    let mut tr = Check::new("Tr′(X(a)) = Tr(a) on basis cells");
    for d in all_cells(max_boundary) {
        let a = v(d.clone());
        let x = map_x(&a);
        yx.record(map_y(&x) == a, || d.to_string());
        let w = a.clone().with_flavor(Flavor::W);
        xy.record(map_x(&map_y(&w)) == w, || d.to_string());
        adj.record(map_x(&dagger(&a)) == dagger(&x), || d.to_string());
        tr.record(w_trace(&x) == v_trace(&a), || d.to_string());
    }
    let mut mult = Check::new("X(a∧b) = X(a)⋆X(b) on random pairs");
    let mut rng = Sampler::new(seed);
    for _ in 0..pairs {
        let sa = rng.shape(max_boundary);
        let sb = rng.shape_after(&sa, max_boundary);
        let a = rng.element(Flavor::V, sa, 2);
        let b = rng.element(Flavor::V, sb, 2);
        mult.record(map_x(&v_product(&a, &b)) == w_product(&map_x(&a), &map_x(&b)), || format!("a = {a}; b = {b}"));
    }
    Report { suite: "cob-check".into(), checks: vec![yx, xy, adj, tr, mult] }
}

/// The trace moments of `| |` against the meander enumeration.
pub fn meander_identity(max_n: usize) -> Report {
    let mut moments = Check::new("(τ⊠τ)((| |)^n) = m_n(δ)");
    for n in 1..=max_n {
        let m = meander_polynomial(n).map(Scalar::from_poly);
        moments.record(m.as_ref() == Ok(&trace_moment(n)), || format!("n = {n}"));
    }
    let mut small = Check::new("m_1 = q and m_2 = 2q² + 2q");
    small.record(meander_polynomial(1) == Ok(Poly::from_i64s(&[0, 1])), || "m_1".into());
    small.record(meander_polynomial(2) == Ok(Poly::from_i64s(&[0, 2, 2])), || "m_2".into());
    Report { suite: "meander".into(), checks: vec![moments, small] }
}

/// Associativity, adjoints and the trace properties of `Tr` and `τ_k`.
pub fn algebra(max_boundary: usize, samples: usize, seed: u64) -> Report {
    let mut rng = Sampler::new(seed);
    let mut wedge = Check::new("∧ associative");
    let mut star = Check::new("⋆ associative");
    let mut adj = Check::new("(x∧y)† = y†∧x† and x†† = x");
    let mut tracial = Check::new("Tr(x∧y) = Tr(y∧x)");
    for _ in 0..samples {
        let sx = rng.shape(max_boundary);
        let sy = rng.shape_after(&sx, max_boundary);
        let sz = rng.shape_after(&sy, max_boundary);
        let x = rng.element(Flavor::V, sx, 2);
        let y = rng.element(Flavor::V, sy, 2);
        let z = rng.element(Flavor::V, sz, 2);
        wedge.record(v_product(&v_product(&x, &y), &z) == v_product(&x, &v_product(&y, &z)), || {
            format!("{x}; {y}; {z}")
        });
        adj.record(dagger(&v_product(&x, &y)) == v_product(&dagger(&y), &dagger(&x)) && dagger(&dagger(&x)) == x, || {
            format!("{x}; {y}")
        });
        let (xw, yw, zw) = (rng.diagram(sx), rng.diagram(sy), rng.diagram(sz));
        let (xw, yw, zw) = (
            GradedElement::from_diagram(Flavor::W, xw),
            GradedElement::from_diagram(Flavor::W, yw),
            GradedElement::from_diagram(Flavor::W, zw),
        );
        star.record(w_product(&w_product(&xw, &yw), &zw) == w_product(&xw, &w_product(&yw, &zw)), || {
            format!("{xw}; {yw}; {zw}")
        });
        if let Some(sy) = rng.shape_around(&sx, max_boundary) {
            debug_assert!(composable(&sx, &sy) && composable(&sy, &sx));
            let y = rng.element(Flavor::V, sy, 2);
            tracial.record(v_trace(&v_product(&x, &y)) == v_trace(&v_product(&y, &x)), || format!("{x}; {y}"));
        }
    }
    let mut tau = Check::new("τ_k tracial and τ_{k+1}∘incl = τ_k");
    for _ in 0..samples {
        let k = rng.below(3);
        let sh = rng.shading();
        let x = rng.gr(k, sh, 3, 2);
        let y = rng.gr(k, sh, 3, 2);
        let ok = (|| -> tlsym_core::Result<bool> {
            Ok(voiculescu_trace(&gr_product(&x, &y)?)? == voiculescu_trace(&gr_product(&y, &x)?)?
                && voiculescu_trace(&gr_include(&x)?)? == voiculescu_trace(&x)?)
        })();
        tau.record_result(ok, || format!("{x}; {y}"));
    }
    let mut units = Check::new("τ_k(1) = 1 and (τ_k⊠τ_k)(p_k) = 1");
    for k in 0..=4 {
        for sh in [Shading::Plus, Shading::Minus] {
            units.record(voiculescu_trace(&unit(k, sh)).is_ok_and(|t| t.is_one()), || format!("τ_{k}(1)"));
            units.record(boxtimes_trace(&p(k, sh)).is_one(), || format!("p_{k}"));
        }
    }
    Report { suite: "trace".into(), checks: vec![wedge, star, adj, tracial, tau, units] }
}

/// Minimum eigenvalue of every Gram matrix at each modulus.
pub fn positivity(max_points: usize, deltas: &[f64]) -> Report {
    let mut checks = Vec::new();
    for (pairing, name) in [(Pairing::Tau, "Tr"), (Pairing::TauPrime, "Tr′")] {
        let mut c = Check::new(format!("{name} Gram matrices have eigenvalues ≥ -1e-8"));
        for shape in all_shapes(max_points) {
            let gram = match gram_matrix(shape, pairing) {
                Ok(g) => g,
                Err(e) => {
                    c.record(false, || format!("{shape}: {e}"));
                    continue;
                }
            };
            for &delta in deltas {
                let min = gram.eigenvalues(delta).map(|e| e.first().copied().unwrap_or(0.0));
                c.record_result(min.as_ref().map(|&m| m >= -1e-8).map_err(Clone::clone), || {
                    format!("{shape} at δ = {delta}: min eigenvalue {min:?}")
                });
            }
        }
        checks.push(c);
    }
    Report { suite: "gram".into(), checks }
}

/// The two constructions of `E` agree, `E` is idempotent, and elements
/// orthogonal to `A ⊗ A^op` vanish when their whole top is capped.
pub fn expectation(max_half: usize, max_points: usize) -> Report {
    let mut routes = Check::new("τ-pairing solve = Tr′-pairing solve");
    let mut idem = Check::new("E² = E");
    for s in 0..=max_half {
        for t in 0..=max_half {
            for d in TLDiagram::enumerate(BoxShape::new(0, 0, 2 * s, 2 * t, Shading::Plus)).expect("even") {
                let q = v(d.clone());
                let (a, b) = (conditional_expectation(&q), conditional_expectation_tau(&q));
                routes.record(a.is_ok() && a == b, || d.to_string());
                let twice = a.as_ref().map_err(Clone::clone).and_then(conditional_expectation);
                idem.record(a.is_ok() && twice == a, || d.to_string());
            }
        }
    }
    let mut caps = Check::new("capping Q ⊥ A⊗A^op along its top gives 0");
    for s in (0..=max_points).step_by(2) {
        for t in (0..=max_points - s).step_by(2) {
            for d in TLDiagram::enumerate(BoxShape::new(0, 0, s, t, Shading::Plus)).expect("even") {
                let q = v(d.clone());
                let perp = match conditional_expectation(&q) {
                    Ok(e) => &q - &e,
                    Err(e) => {
                        caps.record(false, || format!("{d}: {e}"));
                        continue;
                    }
                };
                for a in nc_matchings(s / 2).iter() {
                    caps.record_result(cap_top_with(&perp, a).map(|c| c.is_zero()), || format!("{d} capped by {a:?}"));
                }
            }
        }
    }
    Report { suite: "expectation".into(), checks: vec![routes, idem, caps] }
}

fn phi_sample(rng: &mut Sampler, max_points: usize, terms: usize) -> PhiElement {
    let mut out = GradedElement::zero(Flavor::V);
    for _ in 0..terms {
        let m = 2 * rng.below(max_points / 2) + 1;
        let s = rng.below(m + 1);
        let d = rng.diagram(BoxShape::new(1, 0, s, m - s, Shading::Plus.flip_if_odd(s)));
        let c = rng.scalar();
        out.add_term(d, &c);
    }
    PhiElement::new(out).expect("Φ cells")
}

/// Basis of `Ω_o` and the perpendicular part of the basis of `Ω_e`, up to
/// `max_points` boundary points.
pub fn omega_test_set(max_points: usize) -> tlsym_core::Result<Vec<GradedElement>> {
    let mut out = Vec::new();
    for s in 0..=max_points {
        for t in (0..=max_points - s).filter(|t| (s + t) % 2 == 0 && t % 2 == s % 2) {
            let shape = BoxShape::new(0, 0, s, t, Shading::Plus.flip_if_odd(s));
            for d in TLDiagram::enumerate(shape)? {
                let r = v(d);
                if s % 2 == 1 {
                    out.push(r);
                } else {
                    let perp = &r - &conditional_expectation(&r)?;
                    if !perp.is_zero() {
                        out.push(perp);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Leibniz rule for `δ̃_Q` and the kernel of `Q ↦ δ_Q`.
pub fn derivations(max_points: usize, max_degree: usize, samples: usize, seed: u64) -> Report {
    let mut rng = Sampler::new(seed);
    let mut leibniz = Check::new("δ̃_Q(xy) = x·δ̃_Q(y) + δ̃_Q(x)·y");
    for _ in 0..samples {
        let q = phi_sample(&mut rng, 5, 2);
        let x = rng.gr(0, Shading::Plus, max_degree, 2);
        let y = rng.gr(0, Shading::Plus, max_degree, 2);
        let ok = (|| -> tlsym_core::Result<bool> {
            let lhs = delta_tilde(&q, &v_product(&x, &y))?;
            let rhs = &v_product(&hat_left(&x)?, &delta_tilde(&q, &y)?) + &v_product(&hat_right(&y)?, &delta_tilde(&q, &x)?);
            Ok(lhs == rhs)
        })();
        leibniz.record_result(ok, || format!("Q = {}; x = {x}; y = {y}", q.element()));
    }
    let mut vanish = Check::new("δ_{ρ(R)} = 0");
    let mut recon = Check::new("kernel_reconstruct(ρ(R)) = R");
    match omega_test_set(max_points) {
        Ok(set) => {
            let basis: Vec<GradedElement> =
                (0..=max_degree).flat_map(|n| gr_basis(0, n, Shading::Plus)).map(v).collect();
            for r in set {
                let q = rho(&OmegaElement::new(r.clone()).expect("Ω cells"));
                for x in &basis {
                    vanish.record_result(delta_vanishes(&q, x), || format!("R = {r}; x = {x}"));
                }
                let back = kernel_reconstruct(&q, 0);
                recon.record_result(back.map(|b| *b.element() == r), || format!("R = {r}"));
            }
        }
        Err(e) => vanish.record(false, || e.to_string()),
    }
    Report { suite: "derivation-check".into(), checks: vec![leibniz, vanish, recon] }
}

/// `∂_Q` is coassociative on the basis of `A` up to `max_degree`.
pub fn coassociativity(max_degree: usize) -> Report {
    let mut c = Check::new("(∂⊗1)∂ = (1⊗∂)∂");
    for n in 0..=max_degree {
        for x in gr_basis(0, n, Shading::Plus) {
            c.record_result(coassociativity_sides(&x).map(|(a, b)| a == b), || x.to_string());
        }
    }
    Report { suite: "derivation-check".into(), checks: vec![c] }
}

/// `⟨δ_Q(x), 1⊗1⟩ = ⟨x, ξ_Q⟩` for every basis `Q` and `x`.
pub fn conjugate(max_q_points: usize, max_degree: usize) -> Report {
    let mut c = Check::new("⟨δ_Q(x), 1⊗1⟩ = ⟨x, ξ_Q⟩");
    let xs: Vec<TLDiagram> = (0..=max_degree).flat_map(|n| gr_basis(0, n, Shading::Plus)).collect();
    for m in (1..max_q_points).step_by(2) {
        for s in 0..=m {
            let shape = BoxShape::new(1, 0, s, m - s, Shading::Plus.flip_if_odd(s));
            for dq in TLDiagram::enumerate(shape).expect("even") {
                let q = PhiElement::new(v(dq.clone())).expect("Φ cell");
                for x in &xs {
                    c.record_result(conjugate_pairing(&q, &v(x.clone())).map(|(a, b)| a == b), || format!("Q = {dq}; x = {x}"));
                }
            }
        }
    }
    Report { suite: "conjugate-check".into(), checks: vec![c] }
}

fn graph(ids: &[(&str, bool)], edges: &[(&str, &str)]) -> PrincipalGraph {
    let vertices = ids
        .iter()
        .map(|&(id, even)| Vertex { id: id.into(), parity: if even { VertexParity::Even } else { VertexParity::Odd } })
        .collect();
    let edges: Vec<(String, String)> = edges.iter().map(|&(a, b)| (a.into(), b.into())).collect();
    PrincipalGraph::new(vertices, &edges, ids[0].0, false, None).expect("valid graph")
}

/// Index data of small principal graphs and the closing arithmetic identity.
pub fn index_arithmetic(samples: usize, seed: u64) -> Report {
    let mut a3 = Check::new("A_3: I = 2 and r_0 = 4√2 - 3");
    let g = PrincipalGraph::path(3).expect("path");
    let ok = (|| -> tlsym_core::Result<bool> {
        let pf = pf_dimensions(&g)?;
        let i = global_index(&g)?.value();
        let r0 = r_parameter(0, pf.delta, i)?;
        Ok((i - 2.0).abs() <= 1e-9 && (r0 - (4.0 * 2f64.sqrt() - 3.0)).abs() <= 1e-9)
    })();
    a3.record_result(ok, || "A_3".into());
    let mut ident = Check::new("2δI - (2I - 1) = 1 + 2I(δ - 1)");
    let mut rng = Sampler::new(seed);
    for _ in 0..samples {
        let delta = 1.0 + 3.0 * rng.unit_interval();
        let index = 1.0 + 20.0 * rng.unit_interval();
        let (lhs, rhs) = dimension_identity(delta, index);
        let r0 = r_parameter(0, delta, index);
        ident.record((lhs - rhs).abs() <= 1e-12 && r0.is_ok_and(|r| (r - rhs).abs() <= 1e-12), || {
            format!("δ = {delta}, I = {index}")
        });
    }
    let mut residual = Check::new("‖A·dims - δ·dims‖ ≤ 1e-10");
    let mut graphs: Vec<(String, PrincipalGraph)> =
        (2..=10).map(|n| (format!("A_{n}"), PrincipalGraph::path(n).expect("path"))).collect();
    graphs.push((
        "D_5".into(),
        graph(&[("*", true), ("a", false), ("b", true), ("c", false), ("d", false)], &[("*", "a"), ("a", "b"), ("b", "c"), ("b", "d")]),
    ));
    graphs.push((
        "E_6".into(),
        graph(
            &[("*", true), ("a", false), ("b", true), ("c", false), ("d", true), ("e", false)],
            &[("*", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("b", "e")],
        ),
    ));
    for (name, g) in &graphs {
        let r = pf_dimensions(g).map(|pf| g.residual(pf.delta, &pf.dims) <= 1e-10);
        residual.record_result(r, || name.clone());
    }
    Report { suite: "index".into(), checks: vec![a3, ident, residual] }
}

/// Emit/parse/emit is the identity on a random corpus, and documents with
/// crossing pairs are refused.
pub fn serialization(documents: usize, seed: u64) -> Report {
    let mut rng = Sampler::new(seed);
    let mut round = Check::new("emit(parse(doc)) = doc byte for byte");
    for _ in 0..documents {
        let flavor = if rng.below(2) == 0 { Flavor::V } else { Flavor::W };
        let mut e = GradedElement::zero(flavor);
        for _ in 0..rng.below(3) + 1 {
            let shape = rng.shape(8);
            let terms = rng.below(4) + 1;
            e = &e + &rng.element(flavor, shape, terms);
        }
        let text = emit_element(&e, None);
        let back = parse_element(&text).and_then(|p| p.strict());
        round.record(back.as_ref().is_ok_and(|b| b.element == e && emit_element(&b.element, None) == text), || text.clone());
    }
    let mut crossing = Check::new("crossing pairs are rejected");
    for _ in 0..documents / 5 {
        let half = rng.below(3) + 2;
        let m = 2 * half;
        let top = rng.below(m + 1);
        // (0,2) and (1,3) cross; the rest are adjacent
        let mut pairs = vec![[0, 2], [1, 3]];
        pairs.extend((2..half).map(|i| [2 * i, 2 * i + 1]));
        let doc = serde_json::json!({
            "shape": {"left": 0, "right": m - top, "top": top, "bottom": 0, "shading": "+"},
            "pairs": pairs,
        });
        let text = doc.to_string();
        crossing.record(parse_diagram(&text).is_err(), || text.clone());
    }
    Report { suite: "serialization".into(), checks: vec![round, crossing] }
}
