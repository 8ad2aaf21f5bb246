//! Small simple undirected graphs stored as one neighbor bitset per vertex.
//!
//! Every graph has at most [`MAX_VERTICES`] vertices, labeled `0..n`. Values
//! are immutable once built; all operations return new graphs.

use std::fmt;

use thiserror::Error;

/// Hard vertex capacity: one `u64` adjacency row per vertex.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} exceeds capacity of {MAX_VERTICES}")]
    Capacity(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("star needs at least one leaf")]
    EmptyStar,
    #[error("vertex set contains vertices outside 0..{0}")]
    SetOutOfRange(usize),
}

/// A set of vertices drawn from `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, 1, .., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Simple undirected graph on at most 64 vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    m: usize,
}

/// Result of [`Graph::induced_subgraph`]: the relabeled subgraph and, for each
/// new vertex `i`, its label in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

/// Result of [`Graph::remove_isolated_vertices`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    pub graph: Graph,
    pub labels: Vec<usize>,
    /// Set when every vertex was isolated; the graph then has no vertices.
    pub empty: bool,
}

impl Graph {
    /// Edgeless graph on `n` vertices (`n·K₁`).
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        Ok(Graph { adj: vec![0; n], m: 0 })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows without validation; callers own the
    /// symmetry and loop-free invariants.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        let m = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        let g = Graph { adj, m };
        debug_assert!(g.check_invariants());
        g
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.m += 1;
        Ok(())
    }

    /// Copy of `self` with edge `uv` added. Fails on loops, duplicates and
    /// out-of-range endpoints.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.try_add_edge(u, v)?;
        Ok(g)
    }

    /// Copy of `self` with edge `uv` removed, or `None` when absent.
    pub fn without_edge(&self, u: usize, v: usize) -> Option<Self> {
        if u >= self.n() || v >= self.n() || !self.has_edge(u, v) {
            return None;
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        g.m -= 1;
        Some(g)
    }

    /// Copy of `self` with `extra` new isolated vertices appended.
    pub fn with_isolated(&self, extra: usize) -> Result<Self, GraphError> {
        let n = self.n() + extra;
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let mut adj = self.adj.clone();
        adj.resize(n, 0);
        Ok(Graph { adj, m: self.m })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).without(v).bits();
        }
        g.m = n * n.saturating_sub(1) / 2;
        Ok(g)
    }

    /// `K_{1,k}`: vertex 0 is the center, `1..=k` the leaves.
    pub fn star(k: usize) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::EmptyStar);
        }
        Graph::join(&Graph::empty(1)?, &Graph::empty(k)?)
    }

    /// `C_l` on `0..l` in cyclic order.
    pub fn cycle(l: usize) -> Result<Self, GraphError> {
        if l < 3 {
            return Err(GraphError::CycleTooShort(l));
        }
        let edges: Vec<_> = (0..l).map(|i| (i, (i + 1) % l)).collect();
        Graph::from_edge_list(l, &edges)
    }

    /// `P_n` on `0..n` in order.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self, GraphError> {
        Graph::join(&Graph::empty(s)?, &Graph::empty(t)?)
    }

    /// `G ∨ H`: vertices of `g` keep their labels, vertices of `h` are shifted
    /// by `n(g)`.
    pub fn join(g: &Graph, h: &Graph) -> Result<Self, GraphError> {
        let mut u = Graph::disjoint_union(g, h)?;
        let (a, b) = (g.n(), h.n());
        let left = VertexSet::full(a).bits();
        let right = VertexSet::full(a + b).bits() & !left;
        for v in 0..a {
            u.adj[v] |= right;
        }
        for v in a..a + b {
            u.adj[v] |= left;
        }
        u.m += a * b;
        Ok(u)
    }

    /// `G ∪ H` with `h` relabeled after `g`.
    pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Self, GraphError> {
        let n = g.n() + h.n();
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let shift = g.n();
        let mut adj = g.adj.clone();
        adj.extend(h.adj.iter().map(|&r| r << shift));
        Ok(Graph { adj, m: g.m + h.m })
    }

    /// `k·G`, the union of `k` disjoint copies.
    pub fn k_copies(g: &Graph, k: usize) -> Result<Self, GraphError> {
        let mut out = Graph::empty(0)?;
        for _ in 0..k {
            out = Graph::disjoint_union(&out, g)?;
        }
        Ok(out)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// `N(v)`, never containing `v` itself.
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Number of neighbors of `v` inside `s`.
    #[inline]
    pub fn degree_in(&self, v: usize, s: VertexSet) -> usize {
        (self.adj[v] & s.bits()).count_ones() as usize
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for v in VertexSet(self.adj[u] & !(u64::MAX >> (63 - u))) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.degree_in(v, s)).sum::<usize>() / 2
    }

    /// Number of edges with one endpoint in `a` and the other in `b`
    /// (`a` and `b` disjoint).
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        debug_assert!(a.intersection(b).is_empty());
        a.iter().map(|v| self.degree_in(v, b)).sum()
    }

    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Induced, GraphError> {
        if !s.is_subset(self.vertices()) {
            return Err(GraphError::SetOutOfRange(self.n()));
        }
        let labels: Vec<usize> = s.iter().collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in labels.iter().enumerate() {
            index[v] = i;
        }
        let adj = labels
            .iter()
            .map(|&v| VertexSet(self.adj[v] & s.bits()).iter().fold(0u64, |r, w| r | 1 << index[w]))
            .collect();
        Ok(Induced { graph: Graph::from_rows_unchecked(adj), labels })
    }

    pub fn remove_isolated_vertices(&self) -> Stripped {
        let keep: VertexSet = (0..self.n()).filter(|&v| self.adj[v] != 0).collect();
        let Induced { graph, labels } = self
            .induced_subgraph(keep)
            .expect("kept vertices are in range");
        Stripped { empty: graph.n() == 0, graph, labels }
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = vec![0u64; self.n()];
        for (v, &row) in self.adj.iter().enumerate() {
            adj[perm[v]] = VertexSet(row).iter().fold(0u64, |r, w| r | 1 << perm[w]);
        }
        Graph { adj, m: self.m }
    }

    /// Connected components, each as a vertex set, ordered by lowest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen.contains(start) {
                continue;
            }
            let comp = self.component_of(start);
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut comp = VertexSet::singleton(v).bits();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            for w in VertexSet(frontier) {
                next |= self.adj[w];
            }
            frontier = next & !comp;
            comp |= next;
        }
        VertexSet(comp)
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_of(0).len() == self.n()
    }

    /// Checks symmetry, loop-freeness and the cached edge count.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        if n > MAX_VERTICES {
            return false;
        }
        let full = VertexSet::full(n).bits();
        let mut deg_sum = 0;
        for (v, &row) in self.adj.iter().enumerate() {
            if row & !full != 0 || row >> v & 1 == 1 {
                return false;
            }
            if VertexSet(row).iter().any(|w| !self.has_edge(w, v)) {
                return false;
            }
            deg_sum += row.count_ones() as usize;
        }
        deg_sum == 2 * self.m
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}
