use alloc::vec::Vec;
use core::fmt;

use crate::vertex_set::{Vertex, VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    TooManyVertices { n: usize },
    VertexOutOfRange { vertex: Vertex, n: usize },
    DuplicateEdge { from: Vertex, to: Vertex },
    NotASubset { set: VertexSet, n: usize },
    NotNontrivial { component: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooManyVertices { n } => {
                write!(f, "{n} vertices requested, at most {MAX_VERTICES} supported")
            }
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for a graph on {n} vertices")
            }
            GraphError::DuplicateEdge { from, to } => write!(f, "duplicate edge {from} -> {to}"),
            GraphError::NotASubset { set, n } => {
                write!(f, "{set} is not a subset of the {n} graph vertices")
            }
            GraphError::NotNontrivial { component } => {
                write!(f, "component {component} is not a nontrivial strongly connected component")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A finite digraph on vertices `0..n`. Self-loops are allowed, parallel edges
/// are not.
///
/// Adjacency is kept as successor and predecessor bitmasks, which makes the
/// subgraph-heavy game solvers work on `(graph, live set)` pairs without
/// copying.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    succ: Vec<VertexSet>,
    pred: Vec<VertexSet>,
}

impl Digraph {
    /// Edgeless digraph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(Digraph {
            succ: alloc::vec![VertexSet::EMPTY; n],
            pred: alloc::vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Digraph::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, from: Vertex, to: Vertex) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for vertex in [from, to] {
            if vertex >= n {
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
        }
        if self.succ[from].contains(to) {
            return Err(GraphError::DuplicateEdge { from, to });
        }
        self.succ[from].insert(to);
        self.pred[to].insert(from);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn successors(&self, v: Vertex) -> VertexSet {
        self.succ[v]
    }

    pub fn predecessors(&self, v: Vertex) -> VertexSet {
        self.pred[v]
    }

    pub fn has_edge(&self, from: Vertex, to: Vertex) -> bool {
        self.succ[from].contains(to)
    }

    pub fn has_loop(&self, v: Vertex) -> bool {
        self.succ[v].contains(v)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// The subgraph induced by `set`, compacted to vertices `0..|set|`.
    ///
    /// Renaming is order-preserving: the i-th smallest member of `set`
    /// becomes vertex `i`. The returned vector maps new identifiers back to
    /// the old ones.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<(Digraph, Vec<Vertex>), GraphError> {
        if !set.is_subset(self.vertices()) {
            return Err(GraphError::NotASubset {
                set,
                n: self.vertex_count(),
            });
        }
        let old: Vec<Vertex> = set.iter().collect();
        let mut new_id = [usize::MAX; MAX_VERTICES];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Digraph::new(old.len())?;
        for (i, &u) in old.iter().enumerate() {
            for v in self.succ[u].intersection(set) {
                g.succ[i].insert(new_id[v]);
                g.pred[new_id[v]].insert(i);
            }
        }
        Ok((g, old))
    }

    /// `G \ v`, with vertices above `v` shifted down by one.
    pub fn remove_vertex(&self, v: Vertex) -> Result<Digraph, GraphError> {
        self.check_vertex(v)?;
        self.induced_subgraph(self.vertices().without(v))
            .map(|(g, _)| g)
    }

    /// Vertices reachable from `from` by a path of length >= 0 inside `live`.
    pub fn reach_within(&self, from: VertexSet, live: VertexSet) -> VertexSet {
        let mut seen = from.intersection(live);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.succ[u]);
            }
            frontier = next.intersection(live).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Kahn's algorithm on the whole graph.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = self.pred.iter().map(|p| p.len()).collect();
        let mut stack: Vec<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = stack.pop() {
            removed += 1;
            for v in self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        removed == n
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, [", self.vertex_count())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        f.write_str("])")
    }
}

/// Named graph families used by the corpus generator and the tests.
pub mod families {
    use super::*;

    fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Digraph {
        Digraph::from_edges(n, edges).expect("family edges are valid and distinct")
    }

    /// `0 -> 1 -> .. -> n-1`.
    pub fn directed_path(n: usize) -> Digraph {
        build(n, (1..n).map(|i| (i - 1, i)))
    }

    /// `0 -> 1 -> .. -> n-1 -> 0`; for `n = 1` a single self-loop.
    pub fn directed_cycle(n: usize) -> Digraph {
        build(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path with every undirected edge stored as two arcs.
    pub fn undirected_path(n: usize) -> Digraph {
        build(n, (1..n).flat_map(|i| [(i - 1, i), (i, i - 1)]))
    }

    /// Cycle with every undirected edge stored as two arcs. For `n < 3` this
    /// degenerates to the undirected path.
    pub fn undirected_cycle(n: usize) -> Digraph {
        if n < 3 {
            return undirected_path(n);
        }
        build(
            n,
            (0..n).flat_map(|i| {
                let j = (i + 1) % n;
                [(i, j), (j, i)]
            }),
        )
    }

    /// Complete digraph without loops: `n(n-1)` arcs.
    pub fn clique(n: usize) -> Digraph {
        build(
            n,
            (0..n).flat_map(move |u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))),
        )
    }

    /// Transitive tournament `u -> v` for all `u < v`.
    pub fn transitive_dag(n: usize) -> Digraph {
        build(n, (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v))))
    }
}
