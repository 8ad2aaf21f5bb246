//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fishgraph::canon::canonical_form;
use fishgraph::Graph;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

pub fn adjacency(g: &Graph) -> Vec<Vec<f64>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| if g.has_edge(u, v) { 1.0 } else { 0.0 }).collect()).collect()
}

pub fn jacobi_radius(g: &Graph) -> f64 {
    jacobi_eigenvalues(adjacency(g)).into_iter().fold(0.0, f64::max)
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 0..n {
        for u in 0..v {
            if bits.get(k).copied().unwrap_or(false) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.gen_bool(p)).collect();
    graph_from_bits(n, &bits)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=n.min(max)).rev() {
        cur.push(p);
        partitions(n - p, p, cur, out);
        cur.pop();
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Unlabeled graphs on `n` vertices with exactly `m` edges, by averaging the
/// edge-count generating function over the pair action of each cycle type.
pub fn polya_count(n: usize, m: usize) -> u64 {
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    let nf = factorial(n);
    let mut total = BigUint::zero();
    for lam in parts {
        let mut pair_cycles: Vec<usize> = Vec::new();
        for (i, &a) in lam.iter().enumerate() {
            if a % 2 == 1 {
                pair_cycles.extend(std::iter::repeat_n(a, (a - 1) / 2));
            } else {
                pair_cycles.extend(std::iter::repeat_n(a, (a - 2) / 2));
                pair_cycles.push(a / 2);
            }
            for &b in &lam[i + 1..] {
                let g = gcd(a, b);
                pair_cycles.extend(std::iter::repeat_n(a / g * b, g));
            }
        }
        // coefficient of x^m in Π (1 + x^len)
        let mut poly = vec![BigUint::zero(); m + 1];
        poly[0] = BigUint::one();
        for len in pair_cycles {
            for d in (len..=m).rev() {
                let add = poly[d - len].clone();
                poly[d] += add;
            }
        }
        // |class| = n! / z_λ
        let mut z = BigUint::one();
        let mut i = 0;
        while i < lam.len() {
            let a = lam[i];
            let k = lam[i..].iter().take_while(|&&b| b == a).count();
            z *= BigUint::from(a).pow(k as u32) * factorial(k);
            i += k;
        }
        total += &poly[m] * (&nf / z);
    }
    (total / nf).to_u64().unwrap()
}

/// Graphs with `m` edges and no isolated vertices: with `2m` vertices
/// available, every such graph appears once after deleting isolated ones.
pub fn polya_no_isolated(m: usize) -> u64 {
    if m == 0 { 1 } else { polya_count(2 * m, m) }
}

/// Connected counts from totals by inverting the Euler transform.
pub fn connected_from_totals(totals: &[u64]) -> Vec<i128> {
    let a: Vec<i128> = totals.iter().map(|&x| x as i128).collect();
    let n = a.len() - 1;
    // b_k = Σ_{d|k} d·c_d, with k·a_k = Σ_{j=1..k} b_j a_{k−j}
    let mut b = vec![0i128; n + 1];
    let mut c = vec![0i128; n + 1];
    for k in 1..=n {
        let s: i128 = (1..k).map(|j| b[j] * a[k - j]).sum();
        b[k] = k as i128 * a[k] - s;
        let divisors: i128 = (1..k).filter(|d| k % d == 0).map(|d| d as i128 * c[d]).sum();
        c[k] = (b[k] - divisors) / k as i128;
    }
    c
}

fn next_combination(idx: &mut [usize], len: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < len - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Canonical forms of all graphs with `m ≥ 1` edges and no isolated
/// vertices, by listing every labeled graph on each feasible vertex count.
pub fn brute_classes(m: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for n in 2..=2 * m {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        if m > pairs.len() {
            continue;
        }
        let mut idx: Vec<usize> = (0..m).collect();
        loop {
            let edges: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            if g.min_degree() > 0 {
                out.insert(canonical_form(&g).as_str().to_string());
            }
            if !next_combination(&mut idx, pairs.len()) {
                break;
            }
        }
    }
    out
}
