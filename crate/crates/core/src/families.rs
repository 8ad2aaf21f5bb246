//! Extremal graph families and their exact characteristic polynomials.
//!
//! * book graph `K₂ ∨ ((m−1)/2)K₁`, odd `m`, spectral radius `(1+√(4m−3))/2`;
//! * `K₁ ∨ (K_{1,(m−3)/2} ∪ 2K₁)`, odd `m`, spectral radius the largest root
//!   of `x⁴ − mx² − (m−3)x + (m−3)`;
//! * `S⁻`: `K₂ ∨ (m/2)K₁` minus one edge at a degree-two vertex, even `m`,
//!   spectral radius the largest root of `x⁴ − mx² − (m−2)x + m/2 − 1`.
//!
//! Two four-block partitions come with explicit quotient matrices. The
//! "hub" partition of [`book_with_hub`] gives `f(x)`; the "apex" partition of
//! [`apex_star`] with `t` pendant vertices gives `f_t(x)`, and `f_2` is the
//! quartic above. All polynomial identities are checked over the rationals.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::poly::{char_poly_cofactor, rat, ratio, Poly, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("m must be odd, got {0}")]
    MustBeOdd(i64),
    #[error("m must be even, got {0}")]
    MustBeEven(i64),
    #[error("m = {m} is below the minimum {min} for this family")]
    TooSmall { m: i64, min: i64 },
    #[error("family graph needs {vertices} vertices, above the explicit-graph capacity of {MAX_VERTICES}; use the polynomial path")]
    TooLarge { vertices: usize },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    Book,
    TheoremExtremal,
    SMinus,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Book => "book",
            FamilyKind::TheoremExtremal => "theorem-extremal",
            FamilyKind::SMinus => "s-minus",
        }
    }
}

/// A validated family member, usable without building the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub m: usize,
    /// Pages of the book (`Book`, `SMinus`) or leaves of the star
    /// (`TheoremExtremal`).
    pub r: usize,
    /// Pendant vertices on the apex (`TheoremExtremal` only).
    pub t: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, m: usize) -> Result<Self, FamilyError> {
        let mi = m as i64;
        match kind {
            FamilyKind::Book => {
                if m.is_multiple_of(2) {
                    return Err(FamilyError::MustBeOdd(mi));
                }
                if m < 3 {
                    return Err(FamilyError::TooSmall { m: mi, min: 3 });
                }
                Ok(FamilySpec { kind, m, r: (m - 1) / 2, t: 0 })
            }
            FamilyKind::TheoremExtremal => {
                if m.is_multiple_of(2) {
                    return Err(FamilyError::MustBeOdd(mi));
                }
                if m < 5 {
                    return Err(FamilyError::TooSmall { m: mi, min: 5 });
                }
                Ok(FamilySpec { kind, m, r: (m - 3) / 2, t: 2 })
            }
            FamilyKind::SMinus => {
                if m % 2 == 1 {
                    return Err(FamilyError::MustBeEven(mi));
                }
                if m < 4 {
                    return Err(FamilyError::TooSmall { m: mi, min: 4 });
                }
                Ok(FamilySpec { kind, m, r: m / 2, t: 0 })
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            FamilyKind::Book | FamilyKind::SMinus => self.r + 2,
            FamilyKind::TheoremExtremal => 1 + (self.r + 1) + self.t,
        }
    }

    /// Polynomial whose largest root is the spectral radius.
    pub fn lambda_poly(&self) -> Poly {
        let m = self.m as i64;
        match self.kind {
            FamilyKind::Book => book_poly(m),
            FamilyKind::TheoremExtremal => theorem_quartic(m),
            FamilyKind::SMinus => even_quartic(m),
        }
    }

    pub fn graph(&self) -> Result<Graph, FamilyError> {
        let n = self.vertex_count();
        if n > MAX_VERTICES {
            return Err(FamilyError::TooLarge { vertices: n });
        }
        let k2 = Graph::complete(2)?;
        Ok(match self.kind {
            FamilyKind::Book => Graph::join(&k2, &Graph::empty(self.r)?)?,
            FamilyKind::TheoremExtremal => {
                let inner = Graph::disjoint_union(&Graph::star(self.r)?, &Graph::empty(self.t)?)?;
                Graph::join(&Graph::empty(1)?, &inner)?
            }
            FamilyKind::SMinus => Graph::join(&k2, &Graph::empty(self.r)?)?
                .without_edge(1, 2)
                .expect("spine vertex 1 is adjacent to page 2"),
        })
    }
}

/// `K₂ ∨ ((m−1)/2)K₁`: spine `{0, 1}`, pages `2..`.
pub fn book_graph(m: usize) -> Result<Graph, FamilyError> {
    FamilySpec::new(FamilyKind::Book, m)?.graph()
}

/// `K₁ ∨ (K_{1,(m−3)/2} ∪ 2K₁)`: apex 0, star center 1, leaves
/// `2..=(m−1)/2`, and the two pendant vertices last.
pub fn theorem_extremal(m: usize) -> Result<Graph, FamilyError> {
    FamilySpec::new(FamilyKind::TheoremExtremal, m)?.graph()
}

/// `K₂ ∨ (m/2)K₁` with the edge between spine vertex 1 and page 2 removed.
pub fn s_minus(m: usize) -> Result<Graph, FamilyError> {
    FamilySpec::new(FamilyKind::SMinus, m)?.graph()
}

/// `x² − x − (m−1)`, whose largest root is `(1+√(4m−3))/2`.
pub fn book_poly(m: i64) -> Poly {
    Poly::from_ints(&[-(m - 1), -1, 1])
}

/// `x⁴ − mx² − (m−3)x + (m−3)`.
pub fn theorem_quartic(m: i64) -> Poly {
    Poly::from_ints(&[m - 3, -(m - 3), -m, 0, 1])
}

/// `x⁴ − mx² − (m−2)x + m/2 − 1`.
pub fn even_quartic(m: i64) -> Poly {
    Poly::new(vec![ratio(m - 2, 2), rat(-(m - 2)), rat(-m), rat(0), rat(1)])
}

/// `(1+√(4m−3))/2`.
pub fn book_lambda(m: usize) -> f64 {
    threshold(m, 3)
}

/// `(1+√(4m−k))/2`; `k ∈ {3, 5, 7}` are the values in use.
pub fn threshold(m: usize, k: usize) -> f64 {
    (1.0 + ((4 * m) as f64 - k as f64).sqrt()) / 2.0
}

/// `q(x) = x² − x − (m−2)`, vanishing at `threshold(m, 7)`.
pub fn q_poly(m: i64) -> Poly {
    Poly::from_ints(&[-(m - 2), -1, 1])
}

fn check_hub(m: usize, s: usize) -> Result<(), FamilyError> {
    if s < 2 {
        return Err(FamilyError::Infeasible(format!("s = {s} must be at least 2")));
    }
    if m < 3 * s + 2 || !(m - 3 * s - 1).is_multiple_of(2) {
        return Err(FamilyError::Infeasible(format!(
            "m − 3s − 1 = {} must be positive and even",
            m as i64 - 3 * s as i64 - 1
        )));
    }
    Ok(())
}

/// Quotient matrix of the hub partition: rows for `{u*, v₀}`, the `s`
/// leaves adjacent to `w`, the other `r − s` leaves, and `{w}`.
pub fn pi1_matrix(m: usize, s: usize) -> Result<RatMatrix, FamilyError> {
    check_hub(m, s)?;
    let (m, s) = (m as i64, s as i64);
    Ok(vec![
        vec![rat(1), rat(s), ratio(m - 3 * s - 1, 2), rat(0)],
        vec![rat(2), rat(0), rat(0), rat(1)],
        vec![rat(2), rat(0), rat(0), rat(0)],
        vec![rat(0), rat(s), rat(0), rat(0)],
    ])
}

/// `f(x) = x⁴ − x³ + (1−m)x² + sx − 3s² + ms − s`.
pub fn f_pi1_poly(m: usize, s: usize) -> Result<Poly, FamilyError> {
    check_hub(m, s)?;
    let (m, s) = (m as i64, s as i64);
    Ok(Poly::from_ints(&[-3 * s * s + m * s - s, s, 1 - m, -1, 1]))
}

/// `K₂ ∨ rK₁` with one extra vertex `w` adjacent to `s` of the pages, where
/// `2r = m − s − 1`. Vertices: `u* = 0`, `v₀ = 1`, pages `2..r+2` (the first
/// `s` adjacent to `w`), `w = r + 2`.
pub fn book_with_hub(m: usize, s: usize) -> Result<Graph, FamilyError> {
    check_hub(m, s)?;
    let r = (m - s - 1) / 2;
    let n = r + 3;
    if n > MAX_VERTICES {
        return Err(FamilyError::TooLarge { vertices: n });
    }
    let mut g = Graph::join(&Graph::complete(2)?, &Graph::empty(r)?)?.with_isolated(1)?;
    for leaf in 2..2 + s {
        g = g.with_edge(leaf, r + 2)?;
    }
    Ok(g)
}

/// Blocks of the hub partition of [`book_with_hub`].
pub fn pi1_blocks(m: usize, s: usize) -> Result<Vec<VertexSet>, FamilyError> {
    check_hub(m, s)?;
    let r = (m - s - 1) / 2;
    Ok(vec![
        [0, 1].into_iter().collect(),
        (2..2 + s).collect(),
        (2 + s..2 + r).collect(),
        VertexSet::singleton(r + 2),
    ])
}

fn check_apex(m: usize, t: usize) -> Result<(), FamilyError> {
    if t < 2 || !t.is_multiple_of(2) {
        return Err(FamilyError::Infeasible(format!("t = {t} must be even and at least 2")));
    }
    if m < t + 3 {
        return Err(FamilyError::Infeasible(format!(
            "m − t − 1 = {} must be at least 2",
            m as i64 - t as i64 - 1
        )));
    }
    Ok(())
}

fn check_apex_graph(m: usize, t: usize) -> Result<usize, FamilyError> {
    check_apex(m, t)?;
    if !(m - t - 1).is_multiple_of(2) {
        return Err(FamilyError::Infeasible(format!("m − t − 1 = {} must be even", m - t - 1)));
    }
    Ok((m - t - 1) / 2)
}

/// `f_t(x) = x⁴ − mx² − (m−t−1)x + t(m−t−1)/2`.
///
/// Defined for any `m ≥ t + 3`; only odd `m` is realized by a graph.
pub fn f_t_poly(m: usize, t: usize) -> Result<Poly, FamilyError> {
    check_apex(m, t)?;
    let (m, t) = (m as i64, t as i64);
    Ok(Poly::new(vec![ratio(t * (m - t - 1), 2), rat(-(m - t - 1)), rat(-m), rat(0), rat(1)]))
}

/// Quotient matrix of the apex partition: rows for `{u*}`, `{v₀}`, the `r`
/// star leaves, and the `t` pendant vertices.
pub fn pi2_matrix(m: usize, t: usize) -> Result<RatMatrix, FamilyError> {
    check_apex(m, t)?;
    let (m, t) = (m as i64, t as i64);
    let half = ratio(m - t - 1, 2);
    Ok(vec![
        vec![rat(0), rat(1), half.clone(), rat(t)],
        vec![rat(1), rat(0), half, rat(0)],
        vec![rat(1), rat(1), rat(0), rat(0)],
        vec![rat(1), rat(0), rat(0), rat(0)],
    ])
}

/// `K₁ ∨ (K_{1,r} ∪ tK₁)` with `2r = m − t − 1`; `t = 2` is
/// [`theorem_extremal`]. Same labeling: apex 0, center 1, leaves, pendants.
pub fn apex_star(m: usize, t: usize) -> Result<Graph, FamilyError> {
    let r = check_apex_graph(m, t)?;
    let n = r + t + 2;
    if n > MAX_VERTICES {
        return Err(FamilyError::TooLarge { vertices: n });
    }
    let inner = Graph::disjoint_union(&Graph::star(r)?, &Graph::empty(t)?)?;
    Ok(Graph::join(&Graph::empty(1)?, &inner)?)
}

/// Blocks of the apex partition of [`apex_star`].
pub fn pi2_blocks(m: usize, t: usize) -> Result<Vec<VertexSet>, FamilyError> {
    let r = check_apex_graph(m, t)?;
    Ok(vec![
        VertexSet::singleton(0),
        VertexSet::singleton(1),
        (2..2 + r).collect(),
        (2 + r..2 + r + t).collect(),
    ])
}

/// Result of an exact identity plus a sampled positivity check.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub m: usize,
    pub t: Option<usize>,
    /// Left side computed from its definition.
    pub lhs: String,
    /// Closed form it is claimed to equal.
    pub rhs: String,
    pub exact: bool,
    /// Smallest value of the positivity target over the samples, if any.
    pub min_sample: Option<f64>,
    pub positive_on_samples: bool,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.exact && self.positive_on_samples
    }
}

fn min_over(p: &Poly, xs: &[f64]) -> Option<f64> {
    xs.iter().map(|&x| p.eval_f64(x)).reduce(f64::min)
}

/// `f_t − f_4 = (t−4)x + (t(m−t−1) − 4(m−5))/2`, and positivity of the
/// difference on `xs` (expected for `t ≥ 6`, `x > 0`).
pub fn identity_ft_minus_f4(m: usize, t: usize, xs: &[f64]) -> Result<IdentityReport, FamilyError> {
    let lhs = &f_t_poly(m, t)? - &f_t_poly(m, 4)?;
    let (mi, ti) = (m as i64, t as i64);
    let rhs = Poly::new(vec![ratio(ti * (mi - ti - 1) - 4 * (mi - 5), 2), rat(ti - 4)]);
    let min_sample = min_over(&lhs, xs);
    Ok(IdentityReport {
        m,
        t: Some(t),
        exact: lhs == rhs,
        positive_on_samples: min_sample.is_none_or(|v| v > 0.0),
        min_sample,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// `f_4 = (x² + x − 1)·q + 2x + (m − 8)`, and positivity of `f_4` on `xs`.
pub fn identity_f4_decomposition(m: usize, xs: &[f64]) -> Result<IdentityReport, FamilyError> {
    let mi = m as i64;
    let f4 = f_t_poly(m, 4)?;
    let rhs = &(&Poly::from_ints(&[-1, 1, 1]) * &q_poly(mi)) + &Poly::from_ints(&[mi - 8, 2]);
    let min_sample = min_over(&f4, xs);
    Ok(IdentityReport {
        m,
        t: None,
        exact: f4 == rhs,
        positive_on_samples: min_sample.is_none_or(|v| v > 0.0),
        min_sample,
        lhs: f4.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Whether `det(xI − A)` of `matrix` equals `printed` coefficient-wise.
pub fn determinant_matches(matrix: &RatMatrix, printed: &Poly) -> bool {
    let det = char_poly_cofactor(matrix);
    (&det - printed).coeffs().iter().all(Zero::is_zero)
}
