//! Strongly connected components, the reachability order between the
//! nontrivial ones, and the sets of components reachable from a given one.

use alloc::vec::Vec;

use crate::digraph::{Digraph, GraphError};
use crate::vertex_set::{Vertex, VertexSet, MAX_VERTICES};

/// Tarjan's algorithm restricted to the vertices in `live`.
///
/// Components come out in reverse topological order of the condensation:
/// a component is emitted only after every component it reaches.
fn tarjan(g: &Digraph, live: VertexSet) -> Vec<VertexSet> {
    const UNSEEN: u32 = u32::MAX;
    let mut index = [UNSEEN; MAX_VERTICES];
    let mut low = [0u32; MAX_VERTICES];
    let mut on_stack = VertexSet::EMPTY;
    let mut stack: Vec<Vertex> = Vec::new();
    let mut calls: Vec<(Vertex, VertexSet)> = Vec::new();
    let mut components = Vec::new();
    let mut next = 0u32;

    for root in live {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack.insert(root);
        calls.push((root, g.successors(root).intersection(live)));

        while let Some(top) = calls.len().checked_sub(1) {
            let (v, pending) = calls[top];
            if let Some(w) = pending.first() {
                calls[top].1 = pending.without(w);
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack.insert(w);
                    calls.push((w, g.successors(w).intersection(live)));
                } else if on_stack.contains(w) {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = VertexSet::EMPTY;
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack.remove(w);
                    component.insert(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

/// A component is nontrivial unless it is a single vertex without a loop.
pub fn is_nontrivial(g: &Digraph, component: VertexSet) -> bool {
    match component.len() {
        0 => false,
        1 => {
            let v = component.first().unwrap();
            g.has_loop(v)
        }
        _ => true,
    }
}

/// Nontrivial SCCs of the subgraph induced by `live`, ordered by their
/// smallest vertex.
pub fn nontrivial_components(g: &Digraph, live: VertexSet) -> Vec<VertexSet> {
    let mut comps: Vec<VertexSet> = tarjan(g, live)
        .into_iter()
        .filter(|&c| is_nontrivial(g, c))
        .collect();
    comps.sort_by_key(|c| c.first());
    comps
}

/// The SCC of `v` inside `live` (`v` must be live).
pub fn component_of(g: &Digraph, live: VertexSet, v: Vertex) -> VertexSet {
    let forward = g.reach_within(VertexSet::singleton(v), live);
    let mut backward = VertexSet::singleton(v);
    let mut frontier = backward;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for u in frontier {
            next = next.union(g.predecessors(u));
        }
        frontier = next.intersection(live).difference(backward);
        backward = backward.union(frontier);
    }
    forward.intersection(backward)
}

/// Index of a component inside an [`SccDecomposition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(pub usize);

/// Partition of a (sub)graph into strongly connected components.
///
/// Components are indexed in canonical order (by smallest vertex). `reach`
/// holds, per component, the bitmask of component indices strictly reachable
/// from it, so `≺` restricted to the nontrivial components is
/// `precedes(a, b) = a != b && reach[a] ∋ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    live: VertexSet,
    components: Vec<VertexSet>,
    nontrivial: Vec<bool>,
    scc_of: Vec<Option<ComponentId>>,
    reach: Vec<u64>,
}

impl SccDecomposition {
    pub fn of(g: &Digraph) -> Self {
        Self::within(g, g.vertices())
    }

    /// Decomposition of the subgraph induced by `live`.
    pub fn within(g: &Digraph, live: VertexSet) -> Self {
        let emitted = tarjan(g, live);
        let mut emitted_of = [usize::MAX; MAX_VERTICES];
        for (i, c) in emitted.iter().enumerate() {
            for v in *c {
                emitted_of[v] = i;
            }
        }
        // sinks first, so every successor component is already closed
        let mut emitted_reach = alloc::vec![0u64; emitted.len()];
        for (i, c) in emitted.iter().enumerate() {
            let mut r = 0u64;
            for u in *c {
                for w in g.successors(u).intersection(live) {
                    let j = emitted_of[w];
                    if j != i {
                        r |= (1u64 << j) | emitted_reach[j];
                    }
                }
            }
            emitted_reach[i] = r;
        }

        let mut order: Vec<usize> = (0..emitted.len()).collect();
        order.sort_by_key(|&i| emitted[i].first());
        let mut canonical_of = alloc::vec![0usize; emitted.len()];
        for (new, &old) in order.iter().enumerate() {
            canonical_of[old] = new;
        }

        let components: Vec<VertexSet> = order.iter().map(|&i| emitted[i]).collect();
        let nontrivial = components.iter().map(|&c| is_nontrivial(g, c)).collect();
        let reach = order
            .iter()
            .map(|&old| {
                let mut r = 0u64;
                let mut bits = emitted_reach[old];
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    r |= 1u64 << canonical_of[j];
                }
                r
            })
            .collect();
        let mut scc_of = alloc::vec![None; g.vertex_count()];
        for (i, c) in components.iter().enumerate() {
            for v in *c {
                scc_of[v] = Some(ComponentId(i));
            }
        }
        SccDecomposition {
            live,
            components,
            nontrivial,
            scc_of,
            reach,
        }
    }

    pub fn live(&self) -> VertexSet {
        self.live
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    pub fn component(&self, id: ComponentId) -> VertexSet {
        self.components[id.0]
    }

    pub fn is_nontrivial(&self, id: ComponentId) -> bool {
        self.nontrivial[id.0]
    }

    /// Nontrivial components, in canonical order.
    pub fn nontrivial(&self) -> impl Iterator<Item = ComponentId> + '_ {
        (0..self.components.len())
            .filter(|&i| self.nontrivial[i])
            .map(ComponentId)
    }

    pub fn has_nontrivial(&self) -> bool {
        self.nontrivial.iter().any(|&b| b)
    }

    /// Component holding `v`, or `None` when `v` is not live.
    pub fn scc_of(&self, v: Vertex) -> Option<ComponentId> {
        self.scc_of.get(v).copied().flatten()
    }

    /// `a ≺ b` on nontrivial components.
    pub fn precedes(&self, a: ComponentId, b: ComponentId) -> bool {
        a != b
            && self.nontrivial[a.0]
            && self.nontrivial[b.0]
            && self.reach[a.0] & (1u64 << b.0) != 0
    }

    /// `{ c' nontrivial | c ≺ c' }` in canonical order.
    pub fn reachable_sccs(&self, c: ComponentId) -> Result<Vec<ComponentId>, GraphError> {
        if c.0 >= self.components.len() || !self.nontrivial[c.0] {
            return Err(GraphError::NotNontrivial { component: c.0 });
        }
        Ok(self.nontrivial().filter(|&d| self.precedes(c, d)).collect())
    }
}

/// `scc_decompose` of the whole graph.
pub fn scc_decompose(g: &Digraph) -> SccDecomposition {
    SccDecomposition::of(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::families::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn single_vertex_is_trivial() {
        let g = Digraph::new(1).unwrap();
        let d = scc_decompose(&g);
        assert_eq!(d.len(), 1);
        assert_eq!(d.nontrivial().count(), 0);
    }

    #[test]
    fn three_cycle_is_one_nontrivial_component() {
        let d = scc_decompose(&directed_cycle(3));
        assert_eq!(d.components(), &[set(&[0, 1, 2])]);
        assert!(d.is_nontrivial(ComponentId(0)));
        assert_eq!(d.reachable_sccs(ComponentId(0)).unwrap(), alloc::vec![]);
    }

    #[test]
    fn two_linked_two_cycles() {
        let g = Digraph::from_edges(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]).unwrap();
        let d = scc_decompose(&g);
        let nt: Vec<_> = d.nontrivial().map(|c| d.component(c)).collect();
        assert_eq!(nt, alloc::vec![set(&[0, 1]), set(&[2, 3])]);
        let a = d.scc_of(0).unwrap();
        let b = d.scc_of(3).unwrap();
        assert!(d.precedes(a, b));
        assert!(!d.precedes(b, a));
        assert_eq!(d.reachable_sccs(a).unwrap(), alloc::vec![b]);
        assert_eq!(d.reachable_sccs(b).unwrap(), alloc::vec![]);
    }

    #[test]
    fn reachable_sccs_rejects_trivial_component() {
        let d = scc_decompose(&directed_path(3));
        assert_eq!(
            d.reachable_sccs(ComponentId(1)),
            Err(GraphError::NotNontrivial { component: 1 })
        );
        assert!(d.reachable_sccs(ComponentId(9)).is_err());
    }

    #[test]
    fn self_loop_makes_singleton_nontrivial() {
        let g = Digraph::from_edges(2, [(0, 0), (0, 1)]).unwrap();
        let d = scc_decompose(&g);
        assert_eq!(d.nontrivial().count(), 1);
        assert_eq!(d.component(d.nontrivial().next().unwrap()), set(&[0]));
    }

    #[test]
    fn decomposition_within_live_set() {
        let g = clique(4);
        let d = SccDecomposition::within(&g, set(&[1, 3]));
        assert_eq!(d.components(), &[set(&[1, 3])]);
        assert_eq!(d.scc_of(0), None);
        assert_eq!(component_of(&g, set(&[1, 3]), 3), set(&[1, 3]));
    }
}
