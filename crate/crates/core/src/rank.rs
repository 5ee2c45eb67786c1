//! The rank of a digraph, by its recursive definition and through the rank
//! game.

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::digraph::Digraph;
use crate::game::{self, Game, GameKind, Player, SolutionOf, SolveError};
use crate::scc::nontrivial_components;
use crate::vertex_set::{Vertex, VertexSet};

/// Memoized evaluation of the rank on induced subgraphs of one digraph.
pub struct RankSolver<'g> {
    graph: &'g Digraph,
    memo: HashMap<VertexSet, usize>,
}

impl<'g> RankSolver<'g> {
    pub fn new(graph: &'g Digraph) -> Self {
        RankSolver {
            graph,
            memo: HashMap::new(),
        }
    }

    /// Rank of the subgraph induced by `live`:
    ///
    /// * 0 without nontrivial SCCs,
    /// * `1 + min_v rank(live \ v)` when `live` is one nontrivial SCC,
    /// * the maximum over the nontrivial SCCs otherwise.
    pub fn rank_of(&mut self, live: VertexSet) -> usize {
        if let Some(&r) = self.memo.get(&live) {
            return r;
        }
        let comps = nontrivial_components(self.graph, live);
        let r = match comps.as_slice() {
            [] => 0,
            [only] if *only == live => {
                let mut best = usize::MAX;
                for v in live {
                    best = best.min(self.rank_of(live.without(v)));
                    if best == 0 {
                        break;
                    }
                }
                1 + best
            }
            _ => comps.iter().map(|&c| self.rank_of(c)).max().unwrap_or(0),
        };
        self.memo.insert(live, r);
        r
    }

    /// A removal achieving the minimum for a strongly connected `live`;
    /// lowest vertex on ties.
    pub fn best_removal(&mut self, live: VertexSet) -> Option<Vertex> {
        live.iter().min_by_key(|&v| self.rank_of(live.without(v)))
    }
}

pub fn rank(g: &Digraph) -> usize {
    RankSolver::new(g).rank_of(g.vertices())
}

/// Position `(G', P, n)` of the rank game.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankGamePosition {
    pub graph: VertexSet,
    pub turn: Player,
    pub counter: usize,
}

impl fmt::Display for RankGamePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(G={},{},n={})", self.graph, self.turn, self.counter)
    }
}

impl fmt::Debug for RankGamePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankMove {
    /// Thief moves into a nontrivial SCC.
    Enter(VertexSet),
    /// Cops delete a vertex.
    Remove(Vertex),
}

impl fmt::Display for RankMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankMove::Enter(c) => write!(f, "enter {c}"),
            RankMove::Remove(v) => write!(f, "remove {v}"),
        }
    }
}

/// The rank game `Γ(G, k)`.
pub struct RankGame<'g> {
    graph: &'g Digraph,
    k: usize,
}

impl<'g> RankGame<'g> {
    pub fn new(graph: &'g Digraph, k: usize) -> Self {
        RankGame { graph, k }
    }
}

impl Game for RankGame<'_> {
    type Position = RankGamePosition;
    type Move = RankMove;

    fn kind(&self) -> GameKind {
        GameKind::Rank
    }

    fn budget(&self) -> usize {
        self.k
    }

    fn initial(&self) -> RankGamePosition {
        RankGamePosition {
            graph: self.graph.vertices(),
            turn: Player::Thief,
            counter: self.k,
        }
    }

    fn owner(&self, p: &RankGamePosition) -> Player {
        p.turn
    }

    fn outcome(&self, p: &RankGamePosition) -> Option<Player> {
        if nontrivial_components(self.graph, p.graph).is_empty() {
            Some(Player::Cops)
        } else if p.counter == 0 {
            Some(Player::Thief)
        } else {
            None
        }
    }

    fn moves(&self, p: &RankGamePosition) -> Vec<RankMove> {
        match p.turn {
            Player::Thief => nontrivial_components(self.graph, p.graph)
                .into_iter()
                .map(RankMove::Enter)
                .collect(),
            Player::Cops => p.graph.iter().map(RankMove::Remove).collect(),
        }
    }

    fn play(&self, p: &RankGamePosition, mv: &RankMove) -> RankGamePosition {
        match *mv {
            RankMove::Enter(c) => RankGamePosition {
                graph: c,
                turn: Player::Cops,
                counter: p.counter,
            },
            RankMove::Remove(v) => RankGamePosition {
                graph: p.graph.without(v),
                turn: Player::Thief,
                counter: p.counter - 1,
            },
        }
    }

    fn infinite_winner(&self) -> Option<Player> {
        None
    }
}

pub fn solve_rank_game(g: &Digraph, k: usize) -> SolutionOf<RankGame<'_>> {
    // positions are (subset, turn, counter): always far below the ceiling
    // for graphs where subsets are enumerable at all
    game::solve(&RankGame::new(g, k), usize::MAX).expect("no ceiling")
}

/// Least `k` for which Cops win the rank game.
pub fn rank_via_game(g: &Digraph) -> usize {
    (0..=g.vertex_count())
        .find(|&k| game::winner(&RankGame::new(g, k), usize::MAX) == Ok(Player::Cops))
        .expect("Cops win with k = |V|")
}

pub fn rank_game_winner(g: &Digraph, k: usize, ceiling: usize) -> Result<Player, SolveError> {
    game::winner(&RankGame::new(g, k), ceiling)
}
