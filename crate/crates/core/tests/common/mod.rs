#![allow(dead_code)]

use entrank_core::Digraph;
use proptest::prelude::*;

/// Digraphs on `lo..=hi` vertices, each ordered pair (loops included)
/// present independently.
pub fn digraphs(lo: usize, hi: usize) -> impl Strategy<Value = Digraph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |bits| {
            let edges = (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n));
            Digraph::from_edges(n, edges).unwrap()
        })
    })
}

/// Every digraph on `n` vertices.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    (0u64..1 << (n * n)).map(move |mask| {
        let edges = (0..n * n).filter(|&i| mask >> i & 1 == 1).map(|i| (i / n, i % n));
        Digraph::from_edges(n, edges).unwrap()
    })
}

/// `reach[u][v]`: a nonempty path from `u` to `v` inside `live`.
pub fn closure(g: &Digraph, live: &[bool]) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            r[u][v] = live[u] && live[v] && g.has_edge(u, v);
        }
    }
    for m in 0..n {
        for u in 0..n {
            for v in 0..n {
                if r[u][m] && r[m][v] {
                    r[u][v] = true;
                }
            }
        }
    }
    r
}

/// Nontrivial strongly connected components of `live`, each as a sorted
/// vertex list, sorted by first vertex.
pub fn nontrivial_sccs(g: &Digraph, live: &[bool]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let r = closure(g, live);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for u in 0..n {
        if !live[u] || seen[u] || !r[u][u] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&v| v == u || (r[u][v] && r[v][u])).collect();
        for &v in &comp {
            seen[v] = true;
        }
        out.push(comp);
    }
    out
}

/// Rank straight from its definition, over vertex lists.
pub fn naive_rank(g: &Digraph, live: &[bool]) -> usize {
    let comps = nontrivial_sccs(g, live);
    if comps.is_empty() {
        return 0;
    }
    let live_count = live.iter().filter(|&&b| b).count();
    if comps.len() == 1 && comps[0].len() == live_count {
        return 1 + comps[0]
            .iter()
            .map(|&v| {
                let mut rest = live.to_vec();
                rest[v] = false;
                naive_rank(g, &rest)
            })
            .min()
            .unwrap();
    }
    comps
        .iter()
        .map(|c| {
            let mut sub = vec![false; live.len()];
            for &v in c {
                sub[v] = true;
            }
            naive_rank(g, &sub)
        })
        .max()
        .unwrap()
}

pub fn all_live(g: &Digraph) -> Vec<bool> {
    vec![true; g.vertex_count()]
}
