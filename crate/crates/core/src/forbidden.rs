//! Detection of `H(ℓ,3)`: a cycle `C_ℓ` and a triangle sharing exactly one
//! vertex. `H(4,3)` is the 6-vertex, 7-edge fish graph; `H(3,3)` is the
//! bowtie.
//!
//! Containment is subgraph containment, so chords are allowed.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForbiddenError {
    #[error("cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("{m} edges do not fit on {n} vertices")]
    Infeasible { m: usize, n: usize },
    #[error("no H(4,3)-free graph with {m} edges on {n} vertices found after {attempts} attempts")]
    RetriesExhausted { m: usize, n: usize, attempts: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An embedded `H(ℓ,3)`: `apex` + `triangle` span a triangle, `apex` +
/// `cycle` (in cyclic order) span a `C_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FishWitness {
    pub apex: usize,
    pub triangle: [usize; 2],
    pub cycle: Vec<usize>,
}

impl FishWitness {
    /// Checks distinctness and that every required edge is present in `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let all: Vec<usize> = std::iter::once(self.apex)
            .chain(self.triangle)
            .chain(self.cycle.iter().copied())
            .collect();
        if all.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let set: VertexSet = all.iter().copied().collect();
        if set.len() != all.len() || self.cycle.len() < 2 {
            return false;
        }
        let [a, b] = self.triangle;
        let triangle_ok = g.has_edge(self.apex, a) && g.has_edge(self.apex, b) && g.has_edge(a, b);
        let mut ring = vec![self.apex];
        ring.extend(&self.cycle);
        let cycle_ok = (0..ring.len()).all(|i| g.has_edge(ring[i], ring[(i + 1) % ring.len()]));
        triangle_ok && cycle_ok
    }

    pub fn cycle_length(&self) -> usize {
        self.cycle.len() + 1
    }
}

/// `H(ℓ,3)` itself: apex 0, triangle on {0,1,2}, cycle 0-3-4-..-(ℓ+1)-0.
pub fn fish_graph(l: usize) -> Result<Graph, ForbiddenError> {
    if l < 3 {
        return Err(ForbiddenError::CycleTooShort(l));
    }
    let n = l + 2;
    let mut edges = vec![(0, 1), (0, 2), (1, 2), (0, 3), (l + 1, 0)];
    edges.extend((3..=l).map(|v| (v, v + 1)));
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Finds an `H(ℓ,3)` subgraph if one exists.
pub fn contains_h_l3(g: &Graph, l: usize) -> Result<Option<FishWitness>, ForbiddenError> {
    if l < 3 {
        return Err(ForbiddenError::CycleTooShort(l));
    }
    for apex in 0..g.n() {
        let nbrs = g.neighborhood(apex);
        if nbrs.len() < 4 {
            continue;
        }
        for a in nbrs {
            // b > a with ab an edge closes a triangle through the apex
            for b in VertexSet::from_bits(g.row(a) & nbrs.bits() & !(u64::MAX >> (63 - a))) {
                let blocked = VertexSet::from_bits(1 << apex | 1 << a | 1 << b);
                if let Some(cycle) = cycle_through(g, apex, l, blocked) {
                    return Ok(Some(FishWitness { apex, triangle: [a, b], cycle }));
                }
            }
        }
    }
    Ok(None)
}

/// Searches for a cycle of length `l` through `apex` whose other vertices
/// avoid `blocked`. Returns the `l-1` non-apex vertices in cyclic order.
fn cycle_through(g: &Graph, apex: usize, l: usize, blocked: VertexSet) -> Option<Vec<usize>> {
    let ends = g.neighborhood(apex).difference(blocked);
    if ends.len() < 2 {
        return None;
    }
    let mut path = Vec::with_capacity(l - 1);
    for start in ends {
        path.push(start);
        // endpoints other than the start must be larger to skip mirrored cycles
        let targets = VertexSet::from_bits(ends.bits() & !(u64::MAX >> (63 - start)));
        if extend_path(g, &mut path, l - 1, blocked.with(start), targets) {
            return Some(path);
        }
        path.pop();
    }
    None
}

fn extend_path(g: &Graph, path: &mut Vec<usize>, want: usize, used: VertexSet, targets: VertexSet) -> bool {
    let last = *path.last().expect("path starts non-empty");
    let free = VertexSet::from_bits(g.row(last)).difference(used);
    if path.len() + 1 == want {
        if let Some(end) = free.intersection(targets).first() {
            path.push(end);
            return true;
        }
        return false;
    }
    for next in free {
        path.push(next);
        if extend_path(g, path, want, used.with(next), targets) {
            return true;
        }
        path.pop();
    }
    false
}

pub fn is_h43_free(g: &Graph) -> bool {
    contains_h_l3(g, 4).expect("l = 4 is valid").is_none()
}

/// Plain backtracking search for an injection `V(h) → V(g)` mapping edges to
/// edges. Intended as a test oracle on small graphs.
pub fn brute_force_contains(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() || h.m() > g.m() {
        return false;
    }
    let mut image = vec![usize::MAX; h.n()];
    place(g, h, 0, &mut image, VertexSet::EMPTY)
}

fn place(g: &Graph, h: &Graph, i: usize, image: &mut [usize], used: VertexSet) -> bool {
    if i == h.n() {
        return true;
    }
    for v in g.vertices().difference(used) {
        let fits = (0..i).all(|j| !h.has_edge(i, j) || g.has_edge(v, image[j]));
        if fits {
            image[i] = v;
            if place(g, h, i + 1, image, used.with(v)) {
                return true;
            }
        }
    }
    false
}

/// Maximum attempts before [`random_h43_free`] reports failure.
pub const RANDOM_RETRY_BUDGET: usize = 64;

/// Random `H(4,3)`-free graph with exactly `m` edges and no isolated vertices
/// on at most `n` vertices.
///
/// Each attempt walks a shuffled list of all vertex pairs, keeping an edge
/// only if the graph stays `H(4,3)`-free, and stops at `m` edges. The
/// distribution is not uniform over `H(4,3)`-free graphs.
pub fn random_h43_free(m: usize, n: usize, seed: u64) -> Result<Graph, ForbiddenError> {
    if m > n * n.saturating_sub(1) / 2 || m == 0 && n > 0 {
        return Err(ForbiddenError::Infeasible { m, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    for _ in 0..RANDOM_RETRY_BUDGET {
        pairs.shuffle(&mut rng);
        let mut g = Graph::empty(n)?;
        for &(u, v) in &pairs {
            let candidate = g.with_edge(u, v)?;
            // only fish through the new edge can appear; its endpoints are in
            // every such copy, so testing the whole graph is simplest
            if candidate.m() < 7 || is_h43_free(&candidate) {
                g = candidate;
                if g.m() == m {
                    return Ok(g.remove_isolated_vertices().graph);
                }
            }
        }
    }
    Err(ForbiddenError::RetriesExhausted { m, n, attempts: RANDOM_RETRY_BUDGET })
}
