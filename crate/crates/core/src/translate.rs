//! Turning a Cops strategy for the rank game with come back into a Cops
//! strategy for the entanglement game with virtual cops.
//!
//! The translated strategy keeps a stack of rank-game levels. Level 0 is the
//! initial Thief position; level `ℓ ≥ 1` records the component `G_ℓ` the
//! Thief entered, the vertex `x_ℓ` the rank strategy removed from it, and
//! the resulting Thief position. Every removed vertex carries a cop, real or
//! virtual, so `C ∪ Vir = {x_1, .., x_m}`.
//!
//! When the Thief arrives at `w`:
//!
//! * `w ∈ Vir`: the forced materialization;
//! * the SCC of `w` in `G \ (C ∪ Vir)` is trivial: skip;
//! * otherwise take the deepest level `j` whose graph contains `w` and the
//!   SCC `T` of `w` there. At the top level this is a forward move into `T`.
//!   Below it, it is the come-back move to the recorded `(T, Cops, L_j, n_j)`
//!   when that position is in the current `L`, and otherwise the forward move
//!   into `T` from level `j`, which the Thief could have played at that time.
//!   Either way the cops of the abandoned levels (those inside `G_{j+1}`) are
//!   released, and the rank strategy's removal `x` in `T` becomes a real cop
//!   when `x = w`, a virtual one otherwise.
//!
//! The resulting certificate is positional: the first strategy state that
//! reaches an Entv position decides its move.

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::comeback::{ComebackGame, ComebackMove, ComebackPosition};
use crate::digraph::Digraph;
use crate::entanglement::{CopAction, EntMove, EntPosition, EntanglementGame, Variant};
use crate::game::{CertificateOf, Game, GameKind, Player, StrategyCertificate};
use crate::scc::{component_of, is_nontrivial};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslationError {
    /// The input is not a Cops certificate for the rank game with come back.
    NotCopsWinning,
    /// The rank strategy has no move at a position the simulation reached.
    MissingRankMove(ComebackPosition),
    /// The rank strategy answers with something other than a removal from
    /// the current graph.
    BadRankMove(ComebackPosition),
    /// No rank-game level matches the Thief's component.
    Unmatched { position: EntPosition },
    /// The simulation reached a Thief-winning rank position.
    ThiefWinsRankGame(ComebackPosition),
    /// More than `k` cops would be needed.
    OverBudget { position: EntPosition },
    CeilingExceeded,
}

impl fmt::Display for TranslationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslationError::NotCopsWinning => {
                f.write_str("not a Cops certificate for the rank game with come back")
            }
            TranslationError::MissingRankMove(p) => write!(f, "rank strategy has no move at {p}"),
            TranslationError::BadRankMove(p) => write!(f, "rank strategy move at {p} is not a removal"),
            TranslationError::Unmatched { position } => {
                write!(f, "no rank-game level matches {position}")
            }
            TranslationError::ThiefWinsRankGame(p) => write!(f, "simulation reached Thief win {p}"),
            TranslationError::OverBudget { position } => write!(f, "cop budget exceeded at {position}"),
            TranslationError::CeilingExceeded => f.write_str("translation exceeded the position ceiling"),
        }
    }
}

impl core::error::Error for TranslationError {}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TranslationStats {
    /// Entv positions where Cops decide.
    pub cops_positions: usize,
    pub skips: usize,
    pub materializations: usize,
    pub forward_moves: usize,
    pub come_backs: usize,
    /// Returns to an earlier level through a position not recorded in `L`.
    pub rewinds: usize,
    /// Positions reached again by a state that would have moved differently.
    pub conflicts: usize,
}

#[derive(Clone, Debug)]
pub struct Translation {
    pub certificate: StrategyCertificate<EntPosition, EntMove>,
    pub stats: TranslationStats,
}

#[derive(Clone, Debug)]
struct Level {
    thief: ComebackPosition,
    entered: VertexSet,
    removed: Option<Vertex>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Skip,
    Materialize,
    Forward,
    ComeBack,
    Rewind,
}

struct Translator<'a, 'g> {
    graph: &'g Digraph,
    k: usize,
    rank_game: ComebackGame<'g>,
    strategy: HashMap<&'a ComebackPosition, &'a ComebackMove>,
}

impl Translator<'_, '_> {
    fn removal_at(&self, p: &ComebackPosition) -> Result<Vertex, TranslationError> {
        match self.strategy.get(p) {
            None => Err(TranslationError::MissingRankMove(p.clone())),
            Some(ComebackMove::Remove(x)) if p.graph().contains(*x) => Ok(*x),
            Some(_) => Err(TranslationError::BadRankMove(p.clone())),
        }
    }

    /// The Cops answer at `position` under `levels`, with the levels that
    /// hold afterwards.
    fn decide(
        &self,
        position: &EntPosition,
        levels: &[Level],
    ) -> Result<(CopAction, Vec<Level>, Step), TranslationError> {
        let w = position.current.expect("Cops positions have a current vertex");
        let (cops, virtual_cops) = (position.cops, position.virtual_cops);
        let skip = CopAction::Update {
            keep: cops,
            add: false,
            keep_virtual: virtual_cops,
            place: None,
        };
        if virtual_cops.contains(w) {
            return Ok((CopAction::Materialize, levels.to_vec(), Step::Materialize));
        }
        let free = self.graph.vertices().difference(cops.union(virtual_cops));
        if !is_nontrivial(self.graph, component_of(self.graph, free, w)) {
            return Ok((skip, levels.to_vec(), Step::Skip));
        }

        let unmatched = || TranslationError::Unmatched { position: *position };
        let depth = levels
            .iter()
            .rposition(|level| level.thief.graph().contains(w))
            .ok_or_else(unmatched)?;
        let base = &levels[depth].thief;
        let target = component_of(self.graph, base.graph(), w);
        if !is_nontrivial(self.graph, target) {
            return Err(unmatched());
        }

        let top = levels.len() - 1;
        let (cops_position, step) = if depth == top {
            if base.counter() == 0 {
                return Err(TranslationError::ThiefWinsRankGame(base.clone()));
            }
            (self.rank_game.forward(base, target), Step::Forward)
        } else {
            let recorded = self.rank_game.position(
                target,
                Player::Cops,
                base.list().to_vec(),
                base.counter(),
            );
            if levels[top].thief.list().contains(&recorded) {
                (recorded, Step::ComeBack)
            } else {
                (self.rank_game.forward(base, target), Step::Rewind)
            }
        };
        let x = self.removal_at(&cops_position)?;

        // cops of abandoned levels all sit in the component entered just
        // below the matched level
        let released = match levels.get(depth + 1) {
            Some(abandoned) => {
                let expected: VertexSet = levels[depth + 1..].iter().filter_map(|l| l.removed).collect();
                if !expected.is_subset(abandoned.entered) {
                    return Err(unmatched());
                }
                abandoned.entered
            }
            None => VertexSet::EMPTY,
        };
        let keep = cops.difference(released);
        let keep_virtual = virtual_cops.difference(released);
        let action = if x == w {
            CopAction::Update {
                keep,
                add: true,
                keep_virtual,
                place: None,
            }
        } else {
            CopAction::Update {
                keep,
                add: false,
                keep_virtual,
                place: Some(x),
            }
        };
        if keep.len() + keep_virtual.len() + 1 > self.k || keep.union(keep_virtual).contains(x) {
            return Err(TranslationError::OverBudget { position: *position });
        }

        let mut next = levels[..=depth].to_vec();
        next.push(Level {
            thief: self.rank_game.play(&cops_position, &ComebackMove::Remove(x)),
            entered: target,
            removed: Some(x),
        });
        Ok((action, next, step))
    }
}

/// Builds the Entv strategy induced by a winning Cops strategy for the rank
/// game with come back on `g`, with the same `k`.
pub fn translate_rank_strategy(
    g: &Digraph,
    cert: &CertificateOf<ComebackGame<'_>>,
    ceiling: usize,
) -> Result<Translation, TranslationError> {
    if cert.game != GameKind::Comeback || cert.winner != Player::Cops {
        return Err(TranslationError::NotCopsWinning);
    }
    let k = cert.budget;
    let translator = Translator {
        graph: g,
        k,
        rank_game: ComebackGame::new(g, k),
        strategy: cert.lookup(),
    };
    let entv = EntanglementGame::new(g, k, Variant::Entv);
    let root = alloc::vec![Level {
        thief: translator.rank_game.initial(),
        entered: g.vertices(),
        removed: None,
    }];

    let mut stats = TranslationStats::default();
    let mut decided: HashMap<EntPosition, CopAction> = HashMap::new();
    let mut entries = Vec::new();
    let mut seen: hashbrown::HashSet<EntPosition> = hashbrown::HashSet::new();
    let mut stack: Vec<(EntPosition, Vec<Level>)> = alloc::vec![(EntPosition::START, root)];
    seen.insert(EntPosition::START);

    while let Some((position, levels)) = stack.pop() {
        if seen.len() > ceiling {
            return Err(TranslationError::CeilingExceeded);
        }
        match position.turn {
            Player::Thief => {
                for mv in entv.moves(&position) {
                    let next = entv.play(&position, &mv);
                    if seen.insert(next) {
                        stack.push((next, levels.clone()));
                    } else if let Some(&chosen) = decided.get(&next) {
                        // same position, possibly another history
                        if let Ok((other, _, _)) = translator.decide(&next, &levels) {
                            if other != chosen {
                                stats.conflicts += 1;
                            }
                        }
                    }
                }
            }
            Player::Cops => {
                let (action, next_levels, step) = translator.decide(&position, &levels)?;
                match step {
                    Step::Skip => stats.skips += 1,
                    Step::Materialize => stats.materializations += 1,
                    Step::Forward => stats.forward_moves += 1,
                    Step::ComeBack => stats.come_backs += 1,
                    Step::Rewind => stats.rewinds += 1,
                }
                stats.cops_positions += 1;
                decided.insert(position, action);
                entries.push((position, EntMove::Cops(action)));
                let next = entv.play(&position, &EntMove::Cops(action));
                if seen.insert(next) {
                    stack.push((next, next_levels));
                }
            }
        }
    }

    Ok(Translation {
        certificate: StrategyCertificate {
            game: GameKind::Entv,
            budget: k,
            winner: Player::Cops,
            entries,
        },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comeback::solve_comeback_game;
    use crate::digraph::families::*;
    use crate::game::{verify_certificate, DEFAULT_CEILING};
    use crate::rank::rank;

    fn translated_wins(g: &Digraph, k: usize) -> TranslationStats {
        let sol = solve_comeback_game(g, k, DEFAULT_CEILING).unwrap();
        assert_eq!(sol.winner, Player::Cops);
        let t = translate_rank_strategy(g, &sol.certificate, DEFAULT_CEILING).unwrap();
        let game = EntanglementGame::new(g, k, Variant::Entv);
        let verdict = verify_certificate(&game, &t.certificate, DEFAULT_CEILING);
        assert!(verdict.passed(), "{g:?} k={k}: {:?} via {:?}", verdict.failure, verdict.trace);
        t.stats
    }

    #[test]
    fn five_cycle_with_one_cop() {
        translated_wins(&directed_cycle(5), 1);
    }

    #[test]
    fn undirected_path_with_two_cops() {
        translated_wins(&undirected_path(4), 2);
    }

    #[test]
    fn acyclic_graph_needs_no_cops() {
        let stats = translated_wins(&transitive_dag(4), 0);
        assert_eq!(stats.forward_moves, 0);
        assert_eq!(stats.skips, stats.cops_positions);
    }

    #[test]
    fn families_at_their_rank() {
        for n in 1..=5 {
            for g in [clique(n), undirected_cycle(n), undirected_path(n), directed_cycle(n)] {
                translated_wins(&g, rank(&g));
            }
        }
    }

    #[test]
    fn rejects_thief_certificate() {
        let g = directed_cycle(3);
        let sol = solve_comeback_game(&g, 0, DEFAULT_CEILING).unwrap();
        assert_eq!(sol.winner, Player::Thief);
        assert_eq!(
            translate_rank_strategy(&g, &sol.certificate, DEFAULT_CEILING).unwrap_err(),
            TranslationError::NotCopsWinning
        );
    }
}
