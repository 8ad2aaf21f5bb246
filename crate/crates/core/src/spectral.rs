//! Spectral radius and Perron vector by shifted power iteration.
//!
//! Each component is solved separately with the iteration `x ← (A + cI)x`,
//! `c` the component's maximum degree, starting from the all-ones vector. The
//! shift makes the spectrum of `A + cI` nonnegative so the Perron root
//! dominates even for bipartite components. Iteration stops once the
//! eigen-equation residual `max_v |λx_v − Σ_{u~v} x_u|` (with `λ` the Rayleigh
//! quotient) falls below the tolerance.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralConfig {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig { tol: DEFAULT_TOLERANCE, max_iterations: DEFAULT_MAX_ITERATIONS }
    }
}

impl SpectralConfig {
    pub fn with_tol(tol: f64) -> Self {
        SpectralConfig { tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub lambda: f64,
    /// Unit eigenvector over all vertices; zero outside the maximizing
    /// component.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    Empty,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("power iteration stopped after {} iterations with residual {:e}", best.iterations, best.residual)]
    NoConvergence { best: Box<SpectralResult> },
    #[error("Perron vector requires a connected graph")]
    Disconnected,
    #[error("vector has {got} entries, graph has {want} vertices")]
    DimensionMismatch { got: usize, want: usize },
}

/// Largest adjacency eigenvalue; for disconnected graphs the largest over
/// components (ties go to the component with the lowest vertex).
pub fn spectral_radius(g: &Graph, cfg: &SpectralConfig) -> Result<SpectralResult, SpectralError> {
    if g.n() == 0 {
        return Err(SpectralError::Empty);
    }
    if !(cfg.tol > 0.0) {
        return Err(SpectralError::BadTolerance(cfg.tol));
    }
    let components = g.components();
    let connected = components.len() == 1;
    let mut best: Option<SpectralResult> = None;
    for comp in components {
        let mut r = solve_component(g, comp, cfg)?;
        r.connected = connected;
        if best.as_ref().is_none_or(|b| r.lambda > b.lambda) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one component"))
}

/// Positive unit eigenvector for `λ(G)` of a connected graph.
pub fn perron_vector(g: &Graph, cfg: &SpectralConfig) -> Result<SpectralResult, SpectralError> {
    if g.n() == 0 {
        return Err(SpectralError::Empty);
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    spectral_radius(g, cfg)
}

fn solve_component(g: &Graph, comp: VertexSet, cfg: &SpectralConfig) -> Result<SpectralResult, SpectralError> {
    let n = g.n();
    let verts: Vec<usize> = comp.iter().collect();
    let mut x = vec![0.0; n];
    if verts.len() == 1 {
        x[verts[0]] = 1.0;
        return Ok(SpectralResult { lambda: 0.0, vector: x, residual: 0.0, iterations: 0, connected: false });
    }
    let shift = verts.iter().map(|&v| g.degree(v)).max().unwrap_or(0) as f64;
    let start = 1.0 / (verts.len() as f64).sqrt();
    for &v in &verts {
        x[v] = start;
    }
    let mut ax = vec![0.0; n];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iterations {
        adjacency_apply(g, &verts, &x, &mut ax);
        lambda = verts.iter().map(|&v| x[v] * ax[v]).sum::<f64>();
        residual = verts.iter().map(|&v| (lambda * x[v] - ax[v]).abs()).fold(0.0, f64::max);
        if residual <= cfg.tol {
            return Ok(SpectralResult { lambda, vector: x, residual, iterations: it - 1, connected: false });
        }
        let norm = verts.iter().map(|&v| (ax[v] + shift * x[v]).powi(2)).sum::<f64>().sqrt();
        for &v in &verts {
            x[v] = (ax[v] + shift * x[v]) / norm;
        }
    }
    Err(SpectralError::NoConvergence {
        best: Box::new(SpectralResult {
            lambda,
            vector: x,
            residual,
            iterations: cfg.max_iterations,
            connected: false,
        }),
    })
}

#[inline]
fn adjacency_apply(g: &Graph, verts: &[usize], x: &[f64], out: &mut [f64]) {
    for &v in verts {
        out[v] = VertexSet::from_bits(g.row(v)).iter().map(|u| x[u]).sum();
    }
}

/// `max_v |λx_v − Σ_{u∈N(v)} x_u|`.
pub fn eigen_residual(g: &Graph, lambda: f64, x: &[f64]) -> Result<f64, SpectralError> {
    if x.len() != g.n() {
        return Err(SpectralError::DimensionMismatch { got: x.len(), want: g.n() });
    }
    Ok((0..g.n())
        .map(|v| {
            let s: f64 = VertexSet::from_bits(g.row(v)).iter().map(|u| x[u]).sum();
            (lambda * x[v] - s).abs()
        })
        .fold(0.0, f64::max))
}

/// `|λ − Σ_{uv∈E} 2x_u x_v|` for a unit eigenvector.
pub fn quadratic_form_check(g: &Graph, r: &SpectralResult) -> f64 {
    let form: f64 = g.edges().iter().map(|&(u, v)| 2.0 * r.vector[u] * r.vector[v]).sum();
    (r.lambda - form).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SpectralConfig {
        SpectralConfig::default()
    }

    #[test]
    fn closed_form_radii() {
        let star = spectral_radius(&Graph::star(4).unwrap(), &cfg()).unwrap();
        assert!((star.lambda - 2.0).abs() < 1e-12);
        let c4 = spectral_radius(&Graph::cycle(4).unwrap(), &cfg()).unwrap();
        assert!((c4.lambda - 2.0).abs() < 1e-12);
        let k5 = spectral_radius(&Graph::complete(5).unwrap(), &cfg()).unwrap();
        assert!((k5.lambda - 4.0).abs() < 1e-12);
    }

    #[test]
    fn perron_examples() {
        let k2 = perron_vector(&Graph::complete(2).unwrap(), &cfg()).unwrap();
        assert!((k2.lambda - 1.0).abs() < 1e-12);
        for x in &k2.vector {
            assert!((x - 0.5f64.sqrt()).abs() < 1e-12);
        }
        let c5 = perron_vector(&Graph::cycle(5).unwrap(), &cfg()).unwrap();
        assert!((c5.lambda - 2.0).abs() < 1e-12);
        for x in &c5.vector {
            assert!((x - 0.2f64.sqrt()).abs() < 1e-12);
        }
        // P3: λ = √2, eigenvector (1, √2, 1)/2
        let p3 = perron_vector(&Graph::path(3).unwrap(), &cfg()).unwrap();
        assert!((p3.lambda - 2f64.sqrt()).abs() < 1e-12);
        assert!((p3.vector[1] / p3.vector[0] - 2f64.sqrt()).abs() < 1e-10);
        assert!((p3.vector[0] - 0.5).abs() < 1e-11);
    }

    #[test]
    fn disconnected_graphs() {
        let g = Graph::disjoint_union(&Graph::complete(2).unwrap(), &Graph::complete(3).unwrap()).unwrap();
        let r = spectral_radius(&g, &cfg()).unwrap();
        assert!(!r.connected);
        assert!((r.lambda - 2.0).abs() < 1e-12);
        assert_eq!(&r.vector[..2], &[0.0, 0.0]);
        assert_eq!(perron_vector(&g, &cfg()), Err(SpectralError::Disconnected));
        let isolated = spectral_radius(&Graph::empty(3).unwrap(), &cfg()).unwrap();
        assert_eq!(isolated.lambda, 0.0);
        assert_eq!(spectral_radius(&Graph::empty(0).unwrap(), &cfg()), Err(SpectralError::Empty));
    }

    #[test]
    fn configuration_errors() {
        let g = Graph::path(6).unwrap();
        assert_eq!(spectral_radius(&g, &SpectralConfig::with_tol(0.0)), Err(SpectralError::BadTolerance(0.0)));
        let tight = SpectralConfig { tol: 1e-14, max_iterations: 3 };
        match spectral_radius(&g, &tight) {
            Err(SpectralError::NoConvergence { best }) => {
                assert_eq!(best.iterations, 3);
                assert!(best.residual > 1e-14);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn residual_and_quadratic_form() {
        let k2 = Graph::complete(2).unwrap();
        let s = 0.5f64.sqrt();
        assert_eq!(eigen_residual(&k2, 1.0, &[s, s]).unwrap(), 0.0);
        let bumped = {
            let (a, b) = (s + 0.1, s);
            let nrm = (a * a + b * b).sqrt();
            [a / nrm, b / nrm]
        };
        assert!(eigen_residual(&k2, 1.0, &bumped).unwrap() > 0.0);
        assert_eq!(
            eigen_residual(&k2, 1.0, &[1.0]),
            Err(SpectralError::DimensionMismatch { got: 1, want: 2 })
        );
        let r = perron_vector(&k2, &cfg()).unwrap();
        assert!(quadratic_form_check(&k2, &r) < 1e-15);
        let c4 = Graph::cycle(4).unwrap();
        let r = perron_vector(&c4, &cfg()).unwrap();
        assert!(quadratic_form_check(&c4, &r) <= 1e-10);
    }
}
