//! Entanglement games: the original game, the variant where Cops may retire
//! any number of cops (ET), and the variant with virtual cops (Entv).

use alloc::vec::Vec;
use core::fmt;

use crate::digraph::Digraph;
use crate::game::{self, Game, GameKind, Player, SolutionOf, SolveError};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Ent,
    Et,
    Entv,
}

impl Variant {
    pub fn kind(self) -> GameKind {
        match self {
            Variant::Ent => GameKind::Ent,
            Variant::Et => GameKind::Et,
            Variant::Entv => GameKind::Entv,
        }
    }
}

/// Position `(v, C, Vir, P)`; `current` is `None` before the Thief has picked
/// a start vertex. `virtual_cops` stays empty outside Entv.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntPosition {
    pub current: Option<Vertex>,
    pub cops: VertexSet,
    pub virtual_cops: VertexSet,
    pub turn: Player,
}

pub type EntvPosition = EntPosition;

impl EntPosition {
    pub const START: EntPosition = EntPosition {
        current: None,
        cops: VertexSet::EMPTY,
        virtual_cops: VertexSet::EMPTY,
        turn: Player::Thief,
    };

    pub fn at(current: Vertex, cops: VertexSet, virtual_cops: VertexSet, turn: Player) -> Self {
        EntPosition {
            current: Some(current),
            cops,
            virtual_cops,
            turn,
        }
    }
}

impl fmt::Display for EntPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.current {
            None => f.write_str("start"),
            Some(v) => write!(
                f,
                "(v={v},C={},Vir={},{})",
                self.cops, self.virtual_cops, self.turn
            ),
        }
    }
}

impl fmt::Debug for EntPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Cops move. Which actions are legal depends on the variant and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CopAction {
    Skip,
    /// New cop on the current vertex.
    Add,
    /// Move the cop on `from` to the current vertex.
    Replace { from: Vertex },
    /// ET generalized skip: keep only `keep ⊆ C`.
    Retire { keep: VertexSet },
    /// ET generalized replace: keep `keep ⊆ C` and add a cop on the current
    /// vertex.
    RetireAndAdd { keep: VertexSet },
    /// Entv: a generalized skip/replace on `C` combined with the virtual
    /// update `Vir' = keep_virtual ∪ {place}`.
    Update {
        keep: VertexSet,
        add: bool,
        keep_virtual: VertexSet,
        place: Option<Vertex>,
    },
    /// Entv forced move when the Thief stands on a virtual cop.
    Materialize,
}

impl fmt::Display for CopAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopAction::Skip => f.write_str("skip"),
            CopAction::Add => f.write_str("add"),
            CopAction::Replace { from } => write!(f, "replace {from}"),
            CopAction::Retire { keep } => write!(f, "retire keep={keep}"),
            CopAction::RetireAndAdd { keep } => write!(f, "retire-add keep={keep}"),
            CopAction::Update {
                keep,
                add,
                keep_virtual,
                place,
            } => {
                write!(f, "update keep={keep} add={add} keep-virtual={keep_virtual} place=")?;
                match place {
                    Some(w) => write!(f, "{w}"),
                    None => f.write_str("-"),
                }
            }
            CopAction::Materialize => f.write_str("materialize"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntMove {
    /// Thief goes to (or, initially, picks) a vertex.
    Thief(Vertex),
    Cops(CopAction),
}

impl fmt::Display for EntMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntMove::Thief(v) => write!(f, "goto {v}"),
            EntMove::Cops(a) => fmt::Display::fmt(a, f),
        }
    }
}

/// `Ent(G, k)`, `ET(G, k)` or `Entv(G, k)`. Infinite plays are won by the
/// Thief; a Thief with no free successor is caught.
pub struct EntanglementGame<'g> {
    graph: &'g Digraph,
    k: usize,
    variant: Variant,
}

impl<'g> EntanglementGame<'g> {
    pub fn new(graph: &'g Digraph, k: usize, variant: Variant) -> Self {
        EntanglementGame { graph, k, variant }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn cop_actions(&self, v: Vertex, cops: VertexSet, virtual_cops: VertexSet) -> Vec<CopAction> {
        let k = self.k;
        let mut actions = Vec::new();
        match self.variant {
            Variant::Ent => {
                actions.push(CopAction::Skip);
                if cops.len() < k {
                    actions.push(CopAction::Add);
                }
                actions.extend(cops.iter().map(|from| CopAction::Replace { from }));
            }
            Variant::Et => {
                for keep in cops.subsets() {
                    actions.push(CopAction::Retire { keep });
                    if keep.len() < k {
                        actions.push(CopAction::RetireAndAdd { keep });
                    }
                }
            }
            Variant::Entv => {
                if virtual_cops.contains(v) {
                    actions.push(CopAction::Materialize);
                    return actions;
                }
                let all = self.graph.vertices();
                for keep in cops.subsets() {
                    for add in [false, true] {
                        let new_cops = if add { keep.with(v) } else { keep };
                        if new_cops.len() > k {
                            continue;
                        }
                        for keep_virtual in virtual_cops.subsets() {
                            let base = new_cops.len() + keep_virtual.len();
                            if base > k {
                                continue;
                            }
                            actions.push(CopAction::Update {
                                keep,
                                add,
                                keep_virtual,
                                place: None,
                            });
                            if base == k {
                                continue;
                            }
                            for w in all.difference(new_cops.union(keep_virtual)) {
                                actions.push(CopAction::Update {
                                    keep,
                                    add,
                                    keep_virtual,
                                    place: Some(w),
                                });
                            }
                        }
                    }
                }
            }
        }
        actions
    }
}

impl Game for EntanglementGame<'_> {
    type Position = EntPosition;
    type Move = EntMove;

    fn kind(&self) -> GameKind {
        self.variant.kind()
    }

    fn budget(&self) -> usize {
        self.k
    }

    fn initial(&self) -> EntPosition {
        EntPosition::START
    }

    fn owner(&self, p: &EntPosition) -> Player {
        p.turn
    }

    fn outcome(&self, _: &EntPosition) -> Option<Player> {
        None
    }

    fn moves(&self, p: &EntPosition) -> Vec<EntMove> {
        match (p.turn, p.current) {
            (Player::Thief, None) => self.graph.vertices().iter().map(EntMove::Thief).collect(),
            (Player::Thief, Some(v)) => self
                .graph
                .successors(v)
                .difference(p.cops)
                .iter()
                .map(EntMove::Thief)
                .collect(),
            (Player::Cops, Some(v)) => self
                .cop_actions(v, p.cops, p.virtual_cops)
                .into_iter()
                .map(EntMove::Cops)
                .collect(),
            (Player::Cops, None) => Vec::new(),
        }
    }

    fn play(&self, p: &EntPosition, mv: &EntMove) -> EntPosition {
        match *mv {
            EntMove::Thief(w) => EntPosition::at(w, p.cops, p.virtual_cops, Player::Cops),
            EntMove::Cops(action) => {
                let v = p.current.expect("Cops move after the Thief picked a vertex");
                let (cops, virtual_cops) = match action {
                    CopAction::Skip => (p.cops, p.virtual_cops),
                    CopAction::Add => (p.cops.with(v), p.virtual_cops),
                    CopAction::Replace { from } => (p.cops.without(from).with(v), p.virtual_cops),
                    CopAction::Retire { keep } => (keep, p.virtual_cops),
                    CopAction::RetireAndAdd { keep } => (keep.with(v), p.virtual_cops),
                    CopAction::Update {
                        keep,
                        add,
                        keep_virtual,
                        place,
                    } => {
                        let cops = if add { keep.with(v) } else { keep };
                        let virtual_cops = match place {
                            Some(w) => keep_virtual.with(w),
                            None => keep_virtual,
                        };
                        (cops, virtual_cops)
                    }
                    CopAction::Materialize => (p.cops.with(v), p.virtual_cops.without(v)),
                };
                EntPosition::at(v, cops, virtual_cops, Player::Thief)
            }
        }
    }

    fn infinite_winner(&self) -> Option<Player> {
        Some(Player::Thief)
    }
}

pub fn solve_ent_game(g: &Digraph, k: usize, ceiling: usize) -> Result<SolutionOf<EntanglementGame<'_>>, SolveError> {
    game::solve(&EntanglementGame::new(g, k, Variant::Ent), ceiling)
}

pub fn solve_et_game(g: &Digraph, k: usize, ceiling: usize) -> Result<SolutionOf<EntanglementGame<'_>>, SolveError> {
    game::solve(&EntanglementGame::new(g, k, Variant::Et), ceiling)
}

pub fn solve_entv_game(g: &Digraph, k: usize, ceiling: usize) -> Result<SolutionOf<EntanglementGame<'_>>, SolveError> {
    game::solve(&EntanglementGame::new(g, k, Variant::Entv), ceiling)
}

pub fn game_winner(g: &Digraph, k: usize, variant: Variant, ceiling: usize) -> Result<Player, SolveError> {
    game::winner(&EntanglementGame::new(g, k, variant), ceiling)
}

/// Least `k ∈ {0, .., |V|}` for which Cops win the given variant.
pub fn min_k(g: &Digraph, variant: Variant, ceiling: usize) -> Result<usize, SolveError> {
    for k in 0..=g.vertex_count() {
        if game_winner(g, k, variant, ceiling)? == Player::Cops {
            return Ok(k);
        }
    }
    unreachable!("Cops catch the Thief with |V| cops")
}

/// The entanglement of `g`.
pub fn entanglement(g: &Digraph) -> usize {
    min_k(g, Variant::Ent, usize::MAX).expect("no ceiling")
}

pub fn et_min_k(g: &Digraph, ceiling: usize) -> Result<usize, SolveError> {
    min_k(g, Variant::Et, ceiling)
}

pub fn entv_min_k(g: &Digraph, ceiling: usize) -> Result<usize, SolveError> {
    min_k(g, Variant::Entv, ceiling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::families::*;
    use crate::game::{verify_certificate, DEFAULT_CEILING};

    const CEIL: usize = DEFAULT_CEILING;

    #[test]
    fn ent_examples() {
        assert_eq!(solve_ent_game(&directed_path(3), 0, CEIL).unwrap().winner, Player::Cops);
        assert_eq!(solve_ent_game(&directed_cycle(5), 1, CEIL).unwrap().winner, Player::Cops);
        assert_eq!(solve_ent_game(&directed_cycle(5), 0, CEIL).unwrap().winner, Player::Thief);
        // one cop on the middle vertex traps the Thief on a leaf
        let p3 = undirected_path(3);
        assert_eq!(solve_ent_game(&p3, 0, CEIL).unwrap().winner, Player::Thief);
        assert_eq!(solve_ent_game(&p3, 1, CEIL).unwrap().winner, Player::Cops);
        let p4 = undirected_path(4);
        assert_eq!(solve_ent_game(&p4, 1, CEIL).unwrap().winner, Player::Thief);
        assert_eq!(solve_ent_game(&p4, 2, CEIL).unwrap().winner, Player::Cops);
    }

    #[test]
    fn entanglement_examples() {
        assert_eq!(entanglement(&transitive_dag(5)), 0);
        assert_eq!(entanglement(&clique(4)), 3);
        assert_eq!(entanglement(&undirected_path(16)), 2);
        assert_eq!(entanglement(&Digraph::new(0).unwrap()), 0);
        assert_eq!(entanglement(&Digraph::from_edges(1, [(0, 0)]).unwrap()), 1);
    }

    #[test]
    fn et_and_entv_examples() {
        assert_eq!(solve_et_game(&directed_cycle(5), 1, CEIL).unwrap().winner, Player::Cops);
        assert_eq!(solve_et_game(&undirected_path(3), 1, CEIL).unwrap().winner, Player::Cops);
        assert_eq!(solve_et_game(&undirected_path(4), 1, CEIL).unwrap().winner, Player::Thief);
        assert_eq!(solve_entv_game(&directed_cycle(3), 1, CEIL).unwrap().winner, Player::Cops);
        for g in [directed_cycle(3), clique(3), undirected_cycle(4)] {
            assert_eq!(solve_entv_game(&g, 0, CEIL).unwrap().winner, Player::Thief);
        }
    }

    #[test]
    fn entv_forced_materialize_is_the_only_move() {
        let g = directed_cycle(3);
        let game = EntanglementGame::new(&g, 2, Variant::Entv);
        let p = EntPosition::at(1, VertexSet::EMPTY, VertexSet::singleton(1), Player::Cops);
        assert_eq!(game.moves(&p), alloc::vec![EntMove::Cops(CopAction::Materialize)]);
        let q = game.play(&p, &EntMove::Cops(CopAction::Materialize));
        assert_eq!(q.cops, VertexSet::singleton(1));
        assert!(q.virtual_cops.is_empty());
    }

    #[test]
    fn entv_moves_respect_budget_and_disjointness() {
        let g = clique(4);
        let game = EntanglementGame::new(&g, 2, Variant::Entv);
        let p = EntPosition::at(0, VertexSet::singleton(1), VertexSet::singleton(2), Player::Cops);
        for mv in game.moves(&p) {
            let q = game.play(&p, &mv);
            assert!(q.cops.union(q.virtual_cops).len() <= 2, "{mv}");
            assert!(q.cops.is_disjoint(q.virtual_cops), "{mv}");
        }
    }

    #[test]
    fn thief_blocked_by_cops_not_by_virtual_cops() {
        let g = directed_cycle(2);
        let game = EntanglementGame::new(&g, 2, Variant::Entv);
        let blocked = EntPosition::at(0, VertexSet::singleton(1), VertexSet::EMPTY, Player::Thief);
        assert!(game.moves(&blocked).is_empty());
        let open = EntPosition::at(0, VertexSet::EMPTY, VertexSet::singleton(1), Player::Thief);
        assert_eq!(game.moves(&open), alloc::vec![EntMove::Thief(1)]);
    }

    #[test]
    fn certificates_replay_for_both_winners() {
        for g in [directed_cycle(4), undirected_path(4), clique(3)] {
            for variant in [Variant::Ent, Variant::Et, Variant::Entv] {
                for k in 0..=g.vertex_count() {
                    let game = EntanglementGame::new(&g, k, variant);
                    let sol = game::solve(&game, CEIL).unwrap();
                    let verdict = verify_certificate(&game, &sol.certificate, CEIL);
                    assert!(verdict.passed(), "{g:?} {variant:?} k={k}: {:?}", verdict.failure);
                }
            }
        }
    }

    #[test]
    fn always_skip_on_two_cycle_fails_with_cycle() {
        let g = directed_cycle(2);
        let game = EntanglementGame::new(&g, 1, Variant::Ent);
        let entries = [0, 1]
            .into_iter()
            .map(|v| {
                (
                    EntPosition::at(v, VertexSet::EMPTY, VertexSet::EMPTY, Player::Cops),
                    EntMove::Cops(CopAction::Skip),
                )
            })
            .collect();
        let cert = game::StrategyCertificate {
            game: GameKind::Ent,
            budget: 1,
            winner: Player::Cops,
            entries,
        };
        let verdict = verify_certificate(&game, &cert, CEIL);
        assert!(matches!(verdict.failure, Some(game::VerifyFailure::Cycle(_))));
        assert!(verdict.trace.len() >= 3);
    }

    #[test]
    fn truncated_certificate_names_missing_position() {
        let g = directed_cycle(3);
        let game = EntanglementGame::new(&g, 1, Variant::Ent);
        let mut cert = game::solve(&game, CEIL).unwrap().certificate;
        let (dropped, _) = cert.entries.remove(0);
        let verdict = verify_certificate(&game, &cert, CEIL);
        assert_eq!(verdict.failure, Some(game::VerifyFailure::MissingPosition(dropped)));
    }
}
