//! The rank game with come back.
//!
//! Positions are `(G', P, L, n)` where `L` is a set of earlier Cops positions
//! the Thief may return to. Since `L` nests positions inside positions, they
//! are hash-consed: each [`ComebackGame`] interns every position it builds, so
//! structurally equal positions share one allocation and compare by pointer.

use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use hashbrown::HashSet;

use crate::digraph::Digraph;
use crate::game::{self, Game, GameKind, Player, SolutionOf, SolveError};
use crate::scc::{nontrivial_components, SccDecomposition};
use crate::vertex_set::{Vertex, VertexSet};

struct Node {
    graph: VertexSet,
    turn: Player,
    list: Vec<ComebackPosition>,
    counter: usize,
    digest: u64,
}

fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(5) ^ x).wrapping_mul(0x517c_c1b7_2722_0a95)
}

/// An immutable, shareable come-back game position.
#[derive(Clone)]
pub struct ComebackPosition(Rc<Node>);

impl ComebackPosition {
    /// Builds a position without interning. `list` is sorted and deduplicated.
    pub fn new(graph: VertexSet, turn: Player, mut list: Vec<ComebackPosition>, counter: usize) -> Self {
        list.sort();
        list.dedup();
        let mut digest = mix(mix(mix(0, graph.bits()), turn as u64), counter as u64);
        digest = mix(digest, list.len() as u64);
        for entry in &list {
            digest = mix(digest, entry.0.digest);
        }
        ComebackPosition(Rc::new(Node {
            graph,
            turn,
            list,
            counter,
            digest,
        }))
    }

    pub fn graph(&self) -> VertexSet {
        self.0.graph
    }

    pub fn turn(&self) -> Player {
        self.0.turn
    }

    /// The recorded come-back targets `L`, sorted.
    pub fn list(&self) -> &[ComebackPosition] {
        &self.0.list
    }

    pub fn counter(&self) -> usize {
        self.0.counter
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for ComebackPosition {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
            || (self.0.digest == other.0.digest
                && self.0.graph == other.0.graph
                && self.0.turn == other.0.turn
                && self.0.counter == other.0.counter
                && self.0.list == other.0.list)
    }
}

impl Eq for ComebackPosition {}

impl Hash for ComebackPosition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.digest);
    }
}

impl Ord for ComebackPosition {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        self.0
            .graph
            .cmp(&other.0.graph)
            .then(self.0.counter.cmp(&other.0.counter))
            .then(self.0.turn.cmp(&other.0.turn))
            .then_with(|| self.0.list.cmp(&other.0.list))
    }
}

impl PartialOrd for ComebackPosition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ComebackPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(G={},{},L=[", self.0.graph, self.0.turn)?;
        for (i, entry) in self.0.list.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{entry}")?;
        }
        write!(f, "],n={})", self.0.counter)
    }
}

impl fmt::Debug for ComebackPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ComebackMove {
    /// Thief enters a nontrivial SCC, recording the SCCs it precedes.
    Forward(VertexSet),
    /// Thief returns to a recorded position.
    ComeBack(ComebackPosition),
    Remove(Vertex),
}

impl fmt::Display for ComebackMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComebackMove::Forward(c) => write!(f, "forward {c}"),
            ComebackMove::ComeBack(b) => write!(f, "come-back {b}"),
            ComebackMove::Remove(v) => write!(f, "remove {v}"),
        }
    }
}

/// The rank game with come back `γ(G, k)`.
///
/// Halting rules for Thief positions: nontrivial SCCs left with counter 0
/// is a Thief win whatever `L` holds; no nontrivial SCC and `L = ∅` is a
/// Cops win; no nontrivial SCC with `L ≠ ∅` leaves only come-back moves.
pub struct ComebackGame<'g> {
    graph: &'g Digraph,
    k: usize,
    interned: RefCell<HashSet<ComebackPosition>>,
}

impl<'g> ComebackGame<'g> {
    pub fn new(graph: &'g Digraph, k: usize) -> Self {
        ComebackGame {
            graph,
            k,
            interned: RefCell::new(HashSet::new()),
        }
    }

    pub fn digraph(&self) -> &'g Digraph {
        self.graph
    }

    /// Interned position `(graph, turn, list, counter)`.
    pub fn position(
        &self,
        graph: VertexSet,
        turn: Player,
        list: Vec<ComebackPosition>,
        counter: usize,
    ) -> ComebackPosition {
        let candidate = ComebackPosition::new(graph, turn, list, counter);
        let mut interned = self.interned.borrow_mut();
        if let Some(existing) = interned.get(&candidate) {
            return existing.clone();
        }
        interned.insert(candidate.clone());
        candidate
    }

    /// Number of distinct positions built so far.
    pub fn interned_count(&self) -> usize {
        self.interned.borrow().len()
    }

    /// Target of a forward move from the Thief position `from` into the
    /// nontrivial SCC `component` of its graph.
    pub fn forward(&self, from: &ComebackPosition, component: VertexSet) -> ComebackPosition {
        let decomposition = SccDecomposition::within(self.graph, from.graph());
        let entered = decomposition
            .scc_of(component.first().expect("nonempty component"))
            .expect("component of the current graph");
        let mut list: Vec<ComebackPosition> = from.list().to_vec();
        for later in decomposition.reachable_sccs(entered).expect("nontrivial component") {
            list.push(self.position(
                decomposition.component(later),
                Player::Cops,
                from.list().to_vec(),
                from.counter(),
            ));
        }
        self.position(component, Player::Cops, list, from.counter())
    }
}

impl Game for ComebackGame<'_> {
    type Position = ComebackPosition;
    type Move = ComebackMove;

    fn kind(&self) -> GameKind {
        GameKind::Comeback
    }

    fn budget(&self) -> usize {
        self.k
    }

    fn initial(&self) -> ComebackPosition {
        self.position(self.graph.vertices(), Player::Thief, Vec::new(), self.k)
    }

    fn owner(&self, p: &ComebackPosition) -> Player {
        p.turn()
    }

    fn outcome(&self, p: &ComebackPosition) -> Option<Player> {
        if p.turn() == Player::Cops {
            return None;
        }
        let cyclic = !nontrivial_components(self.graph, p.graph()).is_empty();
        if cyclic && p.counter() == 0 {
            Some(Player::Thief)
        } else if !cyclic && p.list().is_empty() {
            Some(Player::Cops)
        } else {
            None
        }
    }

    fn moves(&self, p: &ComebackPosition) -> Vec<ComebackMove> {
        match p.turn() {
            Player::Thief => {
                let mut moves: Vec<ComebackMove> = nontrivial_components(self.graph, p.graph())
                    .into_iter()
                    .map(ComebackMove::Forward)
                    .collect();
                moves.extend(p.list().iter().cloned().map(ComebackMove::ComeBack));
                moves
            }
            Player::Cops => p.graph().iter().map(ComebackMove::Remove).collect(),
        }
    }

    fn play(&self, p: &ComebackPosition, mv: &ComebackMove) -> ComebackPosition {
        match mv {
            ComebackMove::Forward(c) => self.forward(p, *c),
            ComebackMove::ComeBack(b) => self.position(b.graph(), b.turn(), b.list().to_vec(), b.counter()),
            ComebackMove::Remove(v) => self.position(
                p.graph().without(*v),
                Player::Thief,
                p.list().to_vec(),
                p.counter() - 1,
            ),
        }
    }

    fn infinite_winner(&self) -> Option<Player> {
        None
    }
}

pub fn solve_comeback_game(
    g: &Digraph,
    k: usize,
    ceiling: usize,
) -> Result<SolutionOf<ComebackGame<'_>>, SolveError> {
    game::solve(&ComebackGame::new(g, k), ceiling)
}

pub fn comeback_game_winner(g: &Digraph, k: usize, ceiling: usize) -> Result<Player, SolveError> {
    game::winner(&ComebackGame::new(g, k), ceiling)
}

/// Least `k` for which Cops win the rank game with come back.
pub fn comeback_min_k(g: &Digraph, ceiling: usize) -> Result<usize, SolveError> {
    for k in 0..=g.vertex_count() {
        if comeback_game_winner(g, k, ceiling)? == Player::Cops {
            return Ok(k);
        }
    }
    unreachable!("Cops win once k = |V|")
}
