//! Canonical labeling by partition refinement and individualization.
//!
//! Each connected component is labeled separately: the unit partition is
//! refined to an equitable one, then the search individualizes vertices of
//! the first non-singleton cell until the partition is discrete. The labeling
//! whose relabeled adjacency rows are lexicographically smallest wins.
//! Branches are pruned when the vertex is a twin of, or in the same orbit as,
//! an already explored sibling under automorphisms found so far that fix the
//! current path.
//!
//! The search is exhaustive over what pruning leaves, so cost grows with the
//! symmetry of the graph; highly regular components beyond ~20 vertices may be
//! slow.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{Graph, VertexSet};
use crate::io::to_graph6;

/// Byte string identifying an isomorphism class: the graph6 encoding of the
/// canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(to_graph6(&canonical_graph(g)).into_bytes())
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

/// Returns `perm` with `perm[v]` the canonical label of vertex `v`.
///
/// Components are placed in increasing order of (size, canonical rows).
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let mut parts: Vec<(Vec<u64>, Vec<usize>)> = g
        .components()
        .into_iter()
        .map(|comp| {
            let sub = g.induced_subgraph(comp).expect("component vertices are in range");
            let (rows, perm) = label_connected(&sub.graph);
            // map perm back to parent labels: vertex labels[i] gets perm[i]
            let mut by_label = vec![0; sub.labels.len()];
            for (i, &p) in perm.iter().enumerate() {
                by_label[p] = sub.labels[i];
            }
            (rows, by_label)
        })
        .collect();
    parts.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let mut perm = vec![0; g.n()];
    let mut next = 0;
    for (_, order) in parts {
        for v in order {
            perm[v] = next;
            next += 1;
        }
    }
    perm
}

/// Canonical rows and labeling for a connected graph.
fn label_connected(g: &Graph) -> (Vec<u64>, Vec<usize>) {
    let n = g.n();
    if n <= 1 {
        return (vec![0; n], (0..n).collect());
    }
    let mut search = Search { g, best: None, generators: Vec::new() };
    let root = refine(g, vec![g.vertices().bits()]);
    search.descend(root, &mut Vec::new());
    let (rows, perm) = search.best.expect("search visits at least one leaf");
    (rows, perm)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = VertexSet::from_bits(cells[target]);
        let mut tried: Vec<usize> = Vec::new();
        for v in cell {
            if tried.iter().any(|&w| self.is_twin(v, w)) {
                continue;
            }
            if !tried.is_empty() {
                let orbits = self.orbits_fixing(path);
                if tried.iter().any(|&w| find(&orbits, w) == find(&orbits, v)) {
                    continue;
                }
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(cells[target] & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            self.descend(refine(self.g, child), path);
            path.pop();
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let n = self.g.n();
        let mut perm = vec![0; n];
        for (i, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = i;
        }
        let mut rows = vec![0u64; n];
        for v in 0..n {
            rows[perm[v]] = VertexSet::from_bits(self.g.row(v))
                .iter()
                .fold(0u64, |r, w| r | 1 << perm[w]);
        }
        match &self.best {
            None => self.best = Some((rows, perm)),
            Some((best_rows, best_perm)) => match rows.cmp(best_rows) {
                Ordering::Less => self.best = Some((rows, perm)),
                Ordering::Equal => {
                    // best_perm⁻¹ ∘ perm is an automorphism
                    let mut inv = vec![0; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let auto: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
                    if auto.iter().enumerate().any(|(v, &w)| v != w) {
                        self.generators.push(auto);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    fn is_twin(&self, v: usize, w: usize) -> bool {
        let (rv, rw) = (self.g.row(v), self.g.row(w));
        rv & !(1u64 << w) == rw & !(1u64 << v)
    }

    /// Union-find parents of the orbits of the group generated by the known
    /// automorphisms that fix every vertex of `path`.
    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.g.n()).collect();
        for gen in &self.generators {
            if path.iter().any(|&p| gen[p] != p) {
                continue;
            }
            for (v, &w) in gen.iter().enumerate() {
                let (a, b) = (find(&parent, v), find(&parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        parent
    }
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

/// Refines an ordered partition (cells as bitsets) until it is equitable.
/// Fragments of a split cell are ordered by their neighbor count into the
/// splitter, which keeps the result isomorphism-invariant.
fn refine(g: &Graph, mut cells: Vec<u64>) -> Vec<u64> {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                if cells[c].count_ones() < 2 {
                    continue;
                }
                let mut groups: BTreeMap<u32, u64> = BTreeMap::new();
                for v in VertexSet::from_bits(cells[c]) {
                    *groups.entry((g.row(v) & splitter).count_ones()).or_default() |= 1 << v;
                }
                if groups.len() > 1 {
                    cells.splice(c..=c, groups.into_values());
                    continue 'restart;
                }
            }
        }
        return cells;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.permuted(&perm)
    }

    #[test]
    fn relabeled_cycle_matches() {
        let a = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = Graph::from_edge_list(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_ne!(a, b);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn star_and_path_differ() {
        let star = Graph::star(3).unwrap();
        let path = Graph::path(4).unwrap();
        assert_ne!(canonical_form(&star), canonical_form(&path));
    }

    #[test]
    fn labeling_is_a_permutation() {
        let g = Graph::disjoint_union(&Graph::cycle(5).unwrap(), &Graph::star(3).unwrap()).unwrap();
        let mut perm = canonical_labeling(&g);
        perm.sort_unstable();
        assert_eq!(perm, (0..g.n()).collect::<Vec<_>>());
    }

    #[test]
    fn symmetric_graphs_are_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k2 = Graph::complete(2).unwrap();
        let graphs = [
            Graph::k_copies(&k2, 12).unwrap(),
            Graph::complete(9).unwrap(),
            Graph::cycle(16).unwrap(),
            Graph::complete_bipartite(5, 6).unwrap(),
            // 3-cube
            Graph::from_edge_list(
                8,
                &[(0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6), (6, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
            )
            .unwrap(),
        ];
        for g in &graphs {
            let c = canonical_form(g);
            for _ in 0..20 {
                assert_eq!(canonical_form(&shuffled(g, &mut rng)), c);
            }
        }
    }

    #[test]
    fn disjoint_components_order_independent() {
        let a = Graph::disjoint_union(&Graph::complete(3).unwrap(), &Graph::path(4).unwrap()).unwrap();
        let b = Graph::disjoint_union(&Graph::path(4).unwrap(), &Graph::complete(3).unwrap()).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let c = Graph::disjoint_union(&Graph::star(3).unwrap(), &Graph::complete(3).unwrap()).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }

    #[test]
    fn refinement_is_equitable() {
        let g = Graph::path(6).unwrap();
        let cells = refine(&g, vec![g.vertices().bits()]);
        for &c in &cells {
            for &s in &cells {
                let counts: Vec<u32> =
                    VertexSet::from_bits(c).iter().map(|v| (g.row(v) & s).count_ones()).collect();
                assert!(counts.windows(2).all(|w| w[0] == w[1]));
            }
        }
        assert_eq!(cells.len(), 3);
    }
}
