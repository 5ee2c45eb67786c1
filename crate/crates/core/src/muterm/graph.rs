use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::MuTerm;
use crate::digraph::{Digraph, GraphError};
use crate::entanglement::{min_k, Variant};
use crate::game::SolveError;
use crate::rank::rank;

/// Label of the construction used by [`term_graph`].
pub const TERM_GRAPH_CONSTRUCTION: &str = "binder-backedge";

/// Digraph of a term: one vertex per AST node in preorder, an edge from each
/// node to its children, and an edge from every bound occurrence to the node
/// binding it (the `mu`/`nu` node, or the root of the substituted term).
/// Bindings of a substitution whose variable does not occur free in the
/// body are left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermGraph {
    pub graph: Digraph,
    pub labels: Vec<String>,
}

pub fn term_graph(t: &MuTerm) -> Result<TermGraph, GraphError> {
    let mut builder = Builder::default();
    builder.node(t, &mut Vec::new());
    let n = builder.labels.len();
    let graph = Digraph::from_edges(n, builder.edges)?;
    Ok(TermGraph { graph, labels: builder.labels })
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn node<'t>(&mut self, t: &'t MuTerm, scope: &mut Vec<(&'t str, usize)>) -> usize {
        let id = self.labels.len();
        match t {
            MuTerm::Var(x) => {
                self.labels.push(x.clone());
                if let Some(&(_, binder)) = scope.iter().rev().find(|(y, _)| y == x) {
                    self.edges.push((id, binder));
                }
            }
            MuTerm::Op(f, args) => {
                self.labels.push(f.clone());
                for a in args {
                    let child = self.node(a, scope);
                    self.edges.push((id, child));
                }
            }
            MuTerm::Subst(body, bindings) => {
                self.labels.push(String::from("[]"));
                let live = body.free_vars();
                let depth = scope.len();
                let mut inner = Vec::new();
                for (x, u) in bindings.iter().filter(|(x, _)| live.contains(x)) {
                    let child = self.node(u, scope);
                    self.edges.push((id, child));
                    inner.push((x.as_str(), child));
                }
                scope.extend(inner);
                let child = self.node(body, scope);
                self.edges.push((id, child));
                scope.truncate(depth);
            }
            MuTerm::Fix(theta, x, body) => {
                self.labels.push(format!("{} {x}", theta.keyword()));
                scope.push((x, id));
                let child = self.node(body, scope);
                scope.pop();
                self.edges.push((id, child));
            }
        }
        id
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnalyzeError {
    Graph(GraphError),
    Solve(SolveError),
}

impl fmt::Display for AnalyzeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyzeError::Graph(e) => write!(f, "term graph: {e}"),
            AnalyzeError::Solve(e) => write!(f, "entanglement: {e}"),
        }
    }
}

impl core::error::Error for AnalyzeError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermReport {
    pub star_height: usize,
    pub rank: usize,
    pub entanglement: usize,
    pub free_vars: BTreeSet<String>,
    pub bound_names: usize,
    pub nodes: usize,
    pub construction: &'static str,
}

impl fmt::Display for TermReport {
    /// One `key=value` line per field.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h={}", self.star_height)?;
        writeln!(f, "rank={}", self.rank)?;
        writeln!(f, "ent={}", self.entanglement)?;
        let free: Vec<&str> = self.free_vars.iter().map(String::as_str).collect();
        writeln!(f, "free_vars={}", free.join(","))?;
        writeln!(f, "bound_names={}", self.bound_names)?;
        writeln!(f, "nodes={}", self.nodes)?;
        writeln!(f, "term_graph={}", self.construction)
    }
}

pub fn analyze(t: &MuTerm, ceiling: usize) -> Result<TermReport, AnalyzeError> {
    let tg = term_graph(t).map_err(AnalyzeError::Graph)?;
    Ok(TermReport {
        star_height: t.star_height(),
        rank: rank(&tg.graph),
        entanglement: min_k(&tg.graph, Variant::Ent, ceiling).map_err(AnalyzeError::Solve)?,
        free_vars: t.free_vars(),
        bound_names: t.bound_name_count(),
        nodes: tg.labels.len(),
        construction: TERM_GRAPH_CONSTRUCTION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::DEFAULT_CEILING;
    use crate::muterm::parse;
    use crate::scc::scc_decompose;

    #[test]
    fn single_binder_is_a_triangle() {
        let tg = term_graph(&parse("mu x. f(x)").unwrap()).unwrap();
        assert_eq!(tg.labels, ["mu x", "f", "x"]);
        assert_eq!(tg.graph.edges().collect::<Vec<_>>(), [(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn binder_free_terms_are_acyclic() {
        let tg = term_graph(&parse("f(g(x), h(y, x)[y := g(z)])").unwrap()).unwrap();
        assert!(tg.graph.is_acyclic());
    }

    #[test]
    fn sibling_binders_give_separate_components() {
        let tg = term_graph(&parse("mu x. f(mu y. g(y), x)").unwrap()).unwrap();
        let d = scc_decompose(&tg.graph);
        assert_eq!(d.nontrivial().count(), 2);
    }

    #[test]
    fn dead_bindings_are_dropped() {
        let tg = term_graph(&parse("f(x)[y := mu z. g(z)]").unwrap()).unwrap();
        assert_eq!(tg.labels, ["[]", "f", "x"]);
    }

    #[test]
    fn reports() {
        let r = analyze(&parse("mu x. f(x)").unwrap(), DEFAULT_CEILING).unwrap();
        assert_eq!((r.star_height, r.rank, r.entanglement), (1, 1, 1));
        let r = analyze(&parse("x").unwrap(), DEFAULT_CEILING).unwrap();
        assert_eq!((r.star_height, r.rank, r.entanglement), (0, 0, 0));
        let r = analyze(&parse("mu x. nu y. f(x, y)").unwrap(), DEFAULT_CEILING).unwrap();
        assert_eq!(r.star_height, 2);
        assert!(r.rank <= 2 && r.entanglement <= r.rank);
        assert_eq!(
            alloc::string::ToString::to_string(&r),
            "h=2\nrank=1\nent=1\nfree_vars=\nbound_names=2\nnodes=5\nterm_graph=binder-backedge\n"
        );
    }
}
