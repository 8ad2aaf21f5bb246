//! Equitable partitions, quotient matrices, and the local structure around a
//! vertex of maximum Perron weight.
//!
//! For a connected graph with Perron vector `x` and `u*` a vertex of maximum
//! weight, write `U = N(u*)`, `W = V ∖ (U ∪ {u*})`, `U₀` for the vertices of
//! `U` with no neighbor in `U`, and `U₊ = U ∖ U₀`. The checkers here verify
//! the counting identity `m = |U| + e(U₊) + e(U,W) + e(W)`, the eigen-equation
//! expansions of `λx_{u*}`, `λ²x_{u*}` and `(λ²−λ)x_{u*}`, the star structure
//! of dense neighborhoods in `H(4,3)`-free graphs, the edge-relocation
//! monotonicity of `λ`, and the two `e(W)` bounds.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::families::threshold;
use crate::forbidden::{contains_h_l3, FishWitness};
use crate::graph::{Graph, VertexSet};
use crate::io::to_graph6;
use crate::poly::{char_poly_leverrier, largest_real_root, Poly, RatMatrix, RootError};
use crate::report::{CheckStatus, LemmaRow};
use crate::spectral::{perron_vector, spectral_radius, SpectralConfig, SpectralError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error("blocks do not partition the vertex set: {0}")]
    NotAPartition(String),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("partition is not equitable")]
    NotEquitable,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph contains H(4,3): {0:?}")]
    NotH43Free(FishWitness),
    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("vertex {0} is in neither W nor U+")]
    NotInDomain(usize),
    #[error("relocation preconditions violated: {0:?}")]
    Relocation(Vec<RelocationViolation>),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Vertex partition with its quotient matrix of average block row sums.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientSpec {
    pub blocks: Vec<VertexSet>,
    pub matrix: RatMatrix,
    pub equitable: bool,
}

impl QuotientSpec {
    pub fn matrix_f64(&self) -> Vec<Vec<f64>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|q| q.to_f64().expect("finite")).collect())
            .collect()
    }
}

fn check_partition(g: &Graph, blocks: &[VertexSet]) -> Result<(), PartitionError> {
    let mut seen = VertexSet::EMPTY;
    for (i, &b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(PartitionError::EmptyBlock(i));
        }
        if !b.is_subset(g.vertices()) {
            return Err(PartitionError::NotAPartition(format!("block {i} has vertices outside the graph")));
        }
        if !seen.intersection(b).is_empty() {
            return Err(PartitionError::NotAPartition(format!("block {i} overlaps an earlier block")));
        }
        seen = seen.union(b);
    }
    if seen != g.vertices() {
        return Err(PartitionError::NotAPartition(format!(
            "vertices {:?} are uncovered",
            g.vertices().difference(seen)
        )));
    }
    Ok(())
}

pub fn is_equitable(g: &Graph, blocks: &[VertexSet]) -> Result<bool, PartitionError> {
    Ok(quotient_matrix(g, blocks)?.equitable)
}

pub fn quotient_matrix(g: &Graph, blocks: &[VertexSet]) -> Result<QuotientSpec, PartitionError> {
    check_partition(g, blocks)?;
    let mut equitable = true;
    let matrix = blocks
        .iter()
        .map(|&bi| {
            blocks
                .iter()
                .map(|&bj| {
                    let counts: Vec<usize> = bi.iter().map(|v| g.degree_in(v, bj)).collect();
                    equitable &= counts.windows(2).all(|w| w[0] == w[1]);
                    let total: usize = counts.iter().sum();
                    BigRational::new(total.into(), bi.len().into())
                })
                .collect()
        })
        .collect();
    Ok(QuotientSpec { blocks: blocks.to_vec(), matrix, equitable })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientCheck {
    pub char_poly: String,
    pub quotient_lambda: f64,
    pub graph_lambda: f64,
    pub difference: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Compares the largest root of `det(xI − M_π)` with `λ(G)` for an equitable
/// partition of a connected graph.
pub fn quotient_spectral_check(
    g: &Graph,
    blocks: &[VertexSet],
    cfg: &SpectralConfig,
    tol: f64,
) -> Result<QuotientCheck, PartitionError> {
    let q = quotient_matrix(g, blocks)?;
    if !q.equitable {
        return Err(PartitionError::NotEquitable);
    }
    if !g.is_connected() {
        return Err(PartitionError::Disconnected);
    }
    let poly = char_poly_leverrier(&q.matrix);
    let quotient_lambda = largest_real_root(&poly, None)?;
    let graph_lambda = spectral_radius(g, cfg)?.lambda;
    let difference = (quotient_lambda - graph_lambda).abs();
    Ok(QuotientCheck {
        char_poly: poly.to_string(),
        quotient_lambda,
        graph_lambda,
        difference,
        tol,
        pass: difference <= tol,
    })
}

/// Weights within this distance of the maximum count as tied for `u*`.
pub const WEIGHT_TIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborhoodDecomposition {
    pub u_star: usize,
    pub u: VertexSet,
    pub w: VertexSet,
    pub u0: VertexSet,
    pub u_plus: VertexSet,
    /// `e(U)`; equal to `e(U₊)` since `U₀` has no neighbors in `U`.
    pub e_u: usize,
    pub e_u_plus: usize,
    pub e_uw: usize,
    pub e_w: usize,
    /// `d_U(v)` for every vertex.
    pub d_u: Vec<usize>,
    pub lambda: f64,
    pub weights: Vec<f64>,
}

impl NeighborhoodDecomposition {
    /// `|U| + e(U₊) + e(U,W) + e(W)`.
    pub fn counted_edges(&self) -> usize {
        self.u.len() + self.e_u_plus + self.e_uw + self.e_w
    }

    pub fn x_star(&self) -> f64 {
        self.weights[self.u_star]
    }

    /// `Σ_{v∈U₀} x_v`.
    pub fn u0_weight(&self) -> f64 {
        self.u0.iter().map(|v| self.weights[v]).sum()
    }
}

/// Decomposition around the lowest-indexed vertex of maximum Perron weight.
pub fn neighborhood_decomposition(g: &Graph, cfg: &SpectralConfig) -> Result<NeighborhoodDecomposition, PartitionError> {
    if !g.is_connected() {
        return Err(PartitionError::Disconnected);
    }
    let r = perron_vector(g, cfg)?;
    let top = r.vector.iter().copied().fold(f64::MIN, f64::max);
    let u_star = r
        .vector
        .iter()
        .position(|&x| x >= top - WEIGHT_TIE_TOL)
        .expect("maximum exists");
    Ok(decompose_at(g, u_star, r.lambda, r.vector))
}

/// Decomposition around an arbitrary base vertex with given eigenpair.
pub fn decompose_at(g: &Graph, base: usize, lambda: f64, weights: Vec<f64>) -> NeighborhoodDecomposition {
    let u = g.neighborhood(base);
    let w = g.vertices().difference(u).without(base);
    let d_u: Vec<usize> = (0..g.n()).map(|v| g.degree_in(v, u)).collect();
    let u0: VertexSet = u.iter().filter(|&v| d_u[v] == 0).collect();
    let u_plus = u.difference(u0);
    NeighborhoodDecomposition {
        u_star: base,
        u,
        w,
        u0,
        u_plus,
        e_u: g.edges_within(u),
        e_u_plus: g.edges_within(u_plus),
        e_uw: g.edges_between(u, w),
        e_w: g.edges_within(w),
        d_u,
        lambda,
        weights,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityChecks {
    pub m: usize,
    pub counted_edges: usize,
    /// `m = |U| + e(U₊) + e(U,W) + e(W)` exactly.
    pub edge_count_exact: bool,
    /// `e(U) = e(U₊)` self-test.
    pub e_u_matches: bool,
    /// `|λx_{u*} − Σ_{u∈U} x_u|`.
    pub first_order: f64,
    /// `|λ²x_{u*} − (|U|x_{u*} + Σ_{U₊} d_U(u)x_u + Σ_W d_U(w)x_w)|`.
    pub second_order: f64,
    /// `|(λ²−λ)x_{u*} − (|U|x_{u*} + Σ_{U₊}(d_U(v)−1)x_v + Σ_W d_U(w)x_w − Σ_{U₀} x_v)|`.
    pub shifted: f64,
    pub tol: f64,
    pub pass: bool,
}

pub fn identity_checks(g: &Graph, d: &NeighborhoodDecomposition, tol: f64) -> IdentityChecks {
    let x = &d.weights;
    let xs = d.x_star();
    let lam = d.lambda;
    let sum = |s: VertexSet, f: &dyn Fn(usize) -> f64| s.iter().map(f).sum::<f64>();
    let u_len = d.u.len() as f64;

    let first_order = (lam * xs - sum(d.u, &|v| x[v])).abs();
    let w_term = sum(d.w, &|v| d.d_u[v] as f64 * x[v]);
    let second_rhs = u_len * xs + sum(d.u_plus, &|v| d.d_u[v] as f64 * x[v]) + w_term;
    let second_order = (lam * lam * xs - second_rhs).abs();
    let shifted_rhs = u_len * xs + sum(d.u_plus, &|v| (d.d_u[v] as f64 - 1.0) * x[v]) + w_term
        - sum(d.u0, &|v| x[v]);
    let shifted = ((lam * lam - lam) * xs - shifted_rhs).abs();

    let counted_edges = d.counted_edges();
    let edge_count_exact = counted_edges == g.m();
    let e_u_matches = d.e_u == d.e_u_plus;
    IdentityChecks {
        m: g.m(),
        counted_edges,
        edge_count_exact,
        e_u_matches,
        first_order,
        second_order,
        shifted,
        tol,
        pass: edge_count_exact && e_u_matches && first_order <= tol && second_order <= tol && shifted <= tol,
    }
}

/// A dense neighborhood with a non-star component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarViolation {
    pub vertex: usize,
    pub neighborhood_edges: usize,
    pub component: Vec<usize>,
}

/// For every vertex whose neighborhood spans at least 7 edges, reports each
/// non-trivial component of `G[N(u)]` that is not a star.
pub fn star_neighborhood_check(g: &Graph) -> Result<Vec<StarViolation>, PartitionError> {
    if let Some(w) = contains_h_l3(g, 4).expect("l = 4 is valid") {
        return Err(PartitionError::NotH43Free(w));
    }
    let mut out = Vec::new();
    for u in 0..g.n() {
        let nbrs = g.neighborhood(u);
        let e = g.edges_within(nbrs);
        if e < 7 {
            continue;
        }
        let sub = g.induced_subgraph(nbrs).expect("neighborhood in range");
        for comp in sub.graph.components() {
            let k = comp.len();
            let edges = sub.graph.edges_within(comp);
            if edges == 0 {
                continue;
            }
            let is_star = edges == k - 1 && comp.iter().any(|v| sub.graph.degree(v) == k - 1);
            if !is_star {
                out.push(StarViolation {
                    vertex: u,
                    neighborhood_edges: e,
                    component: comp.iter().map(|v| sub.labels[v]).collect(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RelocationViolation {
    Disconnected,
    VertexOutOfRange(usize),
    SameVertex,
    EmptyMoveSet,
    MovesEndpoint(usize),
    NotNeighborOfSource(usize),
    AlreadyNeighborOfTarget(usize),
}

fn relocation_violations(g: &Graph, u: usize, v: usize, moved: VertexSet) -> Vec<RelocationViolation> {
    use RelocationViolation::*;
    let mut out = Vec::new();
    for z in [u, v] {
        if z >= g.n() {
            out.push(VertexOutOfRange(z));
        }
    }
    if !out.is_empty() {
        return out;
    }
    if !g.is_connected() {
        out.push(Disconnected);
    }
    if u == v {
        out.push(SameVertex);
    }
    if moved.is_empty() {
        out.push(EmptyMoveSet);
    }
    for z in moved {
        if z >= g.n() {
            out.push(VertexOutOfRange(z));
        } else if z == u || z == v {
            out.push(MovesEndpoint(z));
        } else if !g.has_edge(v, z) {
            out.push(NotNeighborOfSource(z));
        } else if g.has_edge(u, z) {
            out.push(AlreadyNeighborOfTarget(z));
        }
    }
    out
}

/// `G* = G − {v z : z ∈ moved} + {u z : z ∈ moved}`.
pub fn edge_relocation(g: &Graph, u: usize, v: usize, moved: VertexSet) -> Result<Graph, PartitionError> {
    let violations = relocation_violations(g, u, v, moved);
    if !violations.is_empty() {
        return Err(PartitionError::Relocation(violations));
    }
    let mut out = g.clone();
    for z in moved {
        out = out.without_edge(v, z).expect("checked edge vz");
        out = out.with_edge(u, z).expect("checked non-edge uz");
    }
    Ok(out)
}

/// Default strict-increase margin for relocation checks.
pub const RELOCATION_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct RelocationReport {
    pub x_u: f64,
    pub x_v: f64,
    pub lambda_before: f64,
    pub lambda_after: f64,
    pub status: CheckStatus,
}

/// Checks `λ(G*) > λ(G)` when `x_u ≥ x_v`. Failed preconditions or a failed
/// weight hypothesis give [`CheckStatus::Skip`]; an increase inside
/// `[0, margin]` gives [`CheckStatus::Warn`].
///
/// The weight hypothesis accepts `x_u ≥ x_v − 10·tol` so that vertices with
/// equal weight by symmetry are not lost to rounding.
pub fn relocation_lambda_test(
    g: &Graph,
    u: usize,
    v: usize,
    moved: VertexSet,
    cfg: &SpectralConfig,
    margin: f64,
) -> Result<RelocationReport, PartitionError> {
    let violations = relocation_violations(g, u, v, moved);
    if !violations.is_empty() {
        return Ok(RelocationReport {
            x_u: f64::NAN,
            x_v: f64::NAN,
            lambda_before: f64::NAN,
            lambda_after: f64::NAN,
            status: CheckStatus::Skip(format!("preconditions: {violations:?}")),
        });
    }
    let before = perron_vector(g, cfg)?;
    let (x_u, x_v) = (before.vector[u], before.vector[v]);
    if x_u < x_v - 10.0 * cfg.tol {
        return Ok(RelocationReport {
            x_u,
            x_v,
            lambda_before: before.lambda,
            lambda_after: f64::NAN,
            status: CheckStatus::Skip(format!("x_u = {x_u} < x_v = {x_v}")),
        });
    }
    let moved_graph = edge_relocation(g, u, v, moved)?;
    let after = spectral_radius(&moved_graph, cfg)?;
    let gain = after.lambda - before.lambda;
    let status = if gain > margin {
        CheckStatus::Pass
    } else if gain >= 0.0 {
        CheckStatus::Warn(format!("increase {gain:e} within margin {margin:e}"))
    } else {
        CheckStatus::Fail
    };
    Ok(RelocationReport { x_u, x_v, lambda_before: before.lambda, lambda_after: after.lambda, status })
}

/// Which of the two `e(W)` bounds to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EwVariant {
    /// Needs `λ > (1+√(4m−5))/2`; constant `3/2`.
    ThreeHalves,
    /// Needs `λ > (1+√(4m−7))/2`; constant `2`.
    Two,
}

impl EwVariant {
    fn threshold_k(self) -> usize {
        match self {
            EwVariant::ThreeHalves => 5,
            EwVariant::Two => 7,
        }
    }

    fn constant(self) -> f64 {
        match self {
            EwVariant::ThreeHalves => 1.5,
            EwVariant::Two => 2.0,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            EwVariant::ThreeHalves => "ew-3/2",
            EwVariant::Two => "ew-2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Membership {
    W,
    UPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaBoundQuery {
    pub alpha: f64,
    pub v_j: usize,
    pub variant: EwVariant,
}

/// Hypotheses the `e(W)` checker treats as complete.
pub const EW_ASSUMPTIONS: &str =
    "hypotheses taken as: connected graph, lambda above threshold, x_j < (1 - alpha) x_u*";

#[derive(Debug, Clone, Serialize)]
pub struct EwReport {
    pub variant: EwVariant,
    pub membership: Membership,
    pub alpha: f64,
    pub lambda: f64,
    pub threshold: f64,
    pub lhs: usize,
    pub rhs: f64,
    pub status: CheckStatus,
    pub assumptions: &'static str,
}

impl EwReport {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs as f64
    }

    pub fn row(&self, g: &Graph) -> LemmaRow {
        let hypothesis = match &self.status {
            CheckStatus::Skip(why) => format!("unmet: {why}"),
            _ => "held".to_string(),
        };
        LemmaRow {
            graph6: to_graph6(g),
            m: g.m(),
            lemma: self.variant.id().to_string(),
            hypothesis,
            lhs: self.lhs as f64,
            rhs: self.rhs,
            margin: self.margin(),
            status: self.status.label().to_string(),
        }
    }
}

/// `e(W) < e(U) − |U₊| + c − α·d_U(v_j)` for `v_j ∈ W`, or with
/// `α·(d_U(v_j) − 1)` for `v_j ∈ U₊`, where `c` is 3/2 or 2.
pub fn ew_bound_check(
    g: &Graph,
    d: &NeighborhoodDecomposition,
    q: &LemmaBoundQuery,
) -> Result<EwReport, PartitionError> {
    if !(q.alpha > 0.0 && q.alpha < 1.0) {
        return Err(PartitionError::InvalidAlpha(q.alpha));
    }
    let membership = if d.w.contains(q.v_j) {
        Membership::W
    } else if d.u_plus.contains(q.v_j) {
        Membership::UPlus
    } else {
        return Err(PartitionError::NotInDomain(q.v_j));
    };
    let du = d.d_u[q.v_j] as f64;
    let scaled = match membership {
        Membership::W => q.alpha * du,
        Membership::UPlus => q.alpha * (du - 1.0),
    };
    let lhs = d.e_w;
    let rhs = d.e_u as f64 - d.u_plus.len() as f64 + q.variant.constant() - scaled;
    let thr = threshold(g.m(), q.variant.threshold_k());
    let x_j = d.weights[q.v_j];
    let status = if !g.is_connected() {
        CheckStatus::Skip("graph is disconnected".into())
    } else if d.lambda <= thr {
        CheckStatus::Skip(format!("lambda = {:.12} <= threshold {thr:.12}", d.lambda))
    } else if x_j >= (1.0 - q.alpha) * d.x_star() {
        CheckStatus::Skip(format!("x_j = {x_j:.12} >= (1 - alpha) x_u* = {:.12}", (1.0 - q.alpha) * d.x_star()))
    } else if (lhs as f64) < rhs {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(EwReport {
        variant: q.variant,
        membership,
        alpha: q.alpha,
        lambda: d.lambda,
        threshold: thr,
        lhs,
        rhs,
        status,
        assumptions: EW_ASSUMPTIONS,
    })
}

/// Largest admissible `α` for `v_j` shrunk by a relative factor, so that the
/// weight hypothesis holds strictly; `None` when `x_j` is not below `x_{u*}`.
pub fn alpha_for(d: &NeighborhoodDecomposition, v_j: usize) -> Option<f64> {
    let gap = 1.0 - d.weights[v_j] / d.x_star();
    (gap > 1e-9).then_some(gap * (1.0 - 1e-6))
}

/// Characteristic polynomial of a quotient matrix, for reports.
pub fn quotient_poly(q: &QuotientSpec) -> Poly {
    char_poly_leverrier(&q.matrix)
}

/// Whether every entry of an equitable quotient is an integer.
pub fn integral(q: &QuotientSpec) -> bool {
    q.matrix.iter().flatten().all(|x| x.is_integer() || x.is_zero())
}
