//! Two-player pursuit games over explicit finite arenas.
//!
//! Every game in this crate (the two rank games and the three entanglement
//! games) implements [`Game`]. [`solve`] explores the reachable arena, computes
//! the Cops attractor of the Cops-winning halting positions, and extracts a
//! positional strategy for whichever side wins. [`verify_certificate`] checks
//! such a strategy by exhaustive replay using nothing but the game rules.

use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use hashbrown::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Thief,
    Cops,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Thief => Player::Cops,
            Player::Cops => Player::Thief,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Thief => "Thief",
            Player::Cops => "Cops",
        })
    }
}

/// Which game a certificate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameKind {
    /// Rank game without come back.
    Rank,
    /// Rank game with come back.
    Comeback,
    Ent,
    Et,
    Entv,
}

impl GameKind {
    pub fn name(self) -> &'static str {
        match self {
            GameKind::Rank => "rank",
            GameKind::Comeback => "comeback",
            GameKind::Ent => "ent",
            GameKind::Et => "et",
            GameKind::Entv => "entv",
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub trait Game {
    type Position: Clone + Eq + Hash + fmt::Debug + fmt::Display;
    type Move: Clone + Eq + fmt::Debug + fmt::Display;

    fn kind(&self) -> GameKind;

    /// The parameter `k` of the game.
    fn budget(&self) -> usize;

    fn initial(&self) -> Self::Position;

    fn owner(&self, position: &Self::Position) -> Player;

    /// Winner at a halting position, `None` while play continues. A
    /// non-halting position without moves is lost by its owner.
    fn outcome(&self, position: &Self::Position) -> Option<Player>;

    /// Legal moves in canonical order. Strategies break ties by taking the
    /// first suitable move of this list.
    fn moves(&self, position: &Self::Position) -> Vec<Self::Move>;

    fn play(&self, position: &Self::Position, mv: &Self::Move) -> Self::Position;

    /// Winner of infinite plays, or `None` for games without infinite plays.
    fn infinite_winner(&self) -> Option<Player>;
}

/// Default bound on explored positions.
pub const DEFAULT_CEILING: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    CeilingExceeded { ceiling: usize },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::CeilingExceeded { ceiling } => {
                write!(f, "arena exceeds the ceiling of {ceiling} positions")
            }
        }
    }
}

impl core::error::Error for SolveError {}

/// A positional strategy for the declared winner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyCertificate<P, M> {
    pub game: GameKind,
    pub budget: usize,
    pub winner: Player,
    /// Winner-owned positions reachable under the strategy, each with its move.
    pub entries: Vec<(P, M)>,
}

pub type CertificateOf<G> = StrategyCertificate<<G as Game>::Position, <G as Game>::Move>;

impl<P: Eq + Hash, M> StrategyCertificate<P, M> {
    pub fn lookup(&self) -> HashMap<&P, &M> {
        self.entries.iter().map(|(p, m)| (p, m)).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ArenaStats {
    pub positions: usize,
    pub moves: usize,
    /// No position can be revisited along a play.
    pub acyclic: bool,
}

/// Reachable part of a game, with successors stored in move order.
pub struct Arena<G: Game> {
    pub positions: Vec<G::Position>,
    index: HashMap<G::Position, usize>,
    owner: Vec<Player>,
    /// Winner at halting positions, including stuck ones.
    halted: Vec<Option<Player>>,
    succ_start: Vec<usize>,
    succ: Vec<u32>,
}

impl<G: Game> Arena<G> {
    pub fn explore(game: &G, ceiling: usize) -> Result<Self, SolveError> {
        let root = game.initial();
        let mut arena: Arena<G> = Arena {
            positions: alloc::vec![root.clone()],
            index: HashMap::new(),
            owner: Vec::new(),
            halted: Vec::new(),
            succ_start: alloc::vec![0],
            succ: Vec::new(),
        };
        arena.index.insert(root, 0);

        let mut cursor = 0;
        while cursor < arena.positions.len() {
            let position = arena.positions[cursor].clone();
            let owner = game.owner(&position);
            let mut halted = game.outcome(&position);
            if halted.is_none() {
                let moves = game.moves(&position);
                if moves.is_empty() {
                    halted = Some(owner.opponent());
                }
                for mv in &moves {
                    let next = game.play(&position, mv);
                    let id = match arena.index.get(&next) {
                        Some(&id) => id,
                        None => {
                            let id = arena.positions.len();
                            if id >= ceiling {
                                return Err(SolveError::CeilingExceeded { ceiling });
                            }
                            arena.index.insert(next.clone(), id);
                            arena.positions.push(next);
                            id
                        }
                    };
                    arena.succ.push(id as u32);
                }
            }
            arena.owner.push(owner);
            arena.halted.push(halted);
            arena.succ_start.push(arena.succ.len());
            cursor += 1;
        }
        Ok(arena)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn id_of(&self, position: &G::Position) -> Option<usize> {
        self.index.get(position).copied()
    }

    pub fn successors(&self, id: usize) -> &[u32] {
        &self.succ[self.succ_start[id]..self.succ_start[id + 1]]
    }

    fn predecessors(&self) -> (Vec<usize>, Vec<u32>) {
        let n = self.len();
        let mut start = alloc::vec![0usize; n + 1];
        for &s in &self.succ {
            start[s as usize + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut pred = alloc::vec![0u32; self.succ.len()];
        for p in 0..n {
            for &s in self.successors(p) {
                pred[fill[s as usize]] = p as u32;
                fill[s as usize] += 1;
            }
        }
        (start, pred)
    }

    /// Whether the position graph is free of cycles.
    pub fn is_acyclic(&self) -> bool {
        let n = self.len();
        let mut indeg = alloc::vec![0usize; n];
        for &s in &self.succ {
            indeg[s as usize] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(p) = stack.pop() {
            seen += 1;
            for &s in self.successors(p) {
                indeg[s as usize] -= 1;
                if indeg[s as usize] == 0 {
                    stack.push(s as usize);
                }
            }
        }
        seen == n
    }

    /// Cops attractor of the Cops-winning halting positions.
    ///
    /// Returns, per position, the step at which it entered the attractor
    /// (`u32::MAX` outside). Every attracted non-halting Cops position has a
    /// successor that entered strictly earlier, and every successor of an
    /// attracted Thief position did.
    pub fn cops_attractor(&self) -> Vec<u32> {
        let n = self.len();
        let (pred_start, pred) = self.predecessors();
        let mut order = alloc::vec![u32::MAX; n];
        let mut remaining: Vec<usize> = (0..n).map(|i| self.successors(i).len()).collect();
        let mut queue: Vec<usize> = Vec::new();
        let mut step = 0u32;
        for (i, slot) in order.iter_mut().enumerate() {
            if self.halted[i] == Some(Player::Cops) {
                *slot = step;
                step += 1;
                queue.push(i);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let s = queue[head];
            head += 1;
            for &p in &pred[pred_start[s]..pred_start[s + 1]] {
                let p = p as usize;
                if order[p] != u32::MAX {
                    continue;
                }
                let attracted = match self.owner[p] {
                    Player::Cops => true,
                    Player::Thief => {
                        remaining[p] -= 1;
                        remaining[p] == 0
                    }
                };
                if attracted {
                    order[p] = step;
                    step += 1;
                    queue.push(p);
                }
            }
        }
        order
    }
}

/// Result of solving one game instance.
#[derive(Clone, Debug)]
pub struct Solution<P, M> {
    pub winner: Player,
    pub certificate: StrategyCertificate<P, M>,
    pub stats: ArenaStats,
}

pub type SolutionOf<G> = Solution<<G as Game>::Position, <G as Game>::Move>;

/// Winner only, without extracting a strategy.
pub fn winner<G: Game>(game: &G, ceiling: usize) -> Result<Player, SolveError> {
    let arena = Arena::explore(game, ceiling)?;
    Ok(if arena.cops_attractor()[0] != u32::MAX {
        Player::Cops
    } else {
        Player::Thief
    })
}

/// Solves `game` exactly and returns a winning positional strategy.
pub fn solve<G: Game>(game: &G, ceiling: usize) -> Result<SolutionOf<G>, SolveError> {
    let arena = Arena::explore(game, ceiling)?;
    let order = arena.cops_attractor();
    let winner = if order[0] != u32::MAX {
        Player::Cops
    } else {
        Player::Thief
    };

    // walk the winner's strategy from the root, recording its choices
    let mut entries = Vec::new();
    let mut visited = alloc::vec![false; arena.len()];
    let mut stack = alloc::vec![0usize];
    visited[0] = true;
    while let Some(p) = stack.pop() {
        if arena.halted[p].is_some() {
            continue;
        }
        let succs = arena.successors(p);
        let next: Vec<usize> = if arena.owner[p] == winner {
            let choice = succs.iter().position(|&s| match winner {
                Player::Cops => order[s as usize] < order[p],
                Player::Thief => order[s as usize] == u32::MAX,
            });
            let choice = choice.expect("winning region is closed under the winner's strategy");
            let mv = game.moves(&arena.positions[p]).swap_remove(choice);
            entries.push((arena.positions[p].clone(), mv));
            alloc::vec![succs[choice] as usize]
        } else {
            succs.iter().map(|&s| s as usize).collect()
        };
        for s in next {
            if !visited[s] {
                visited[s] = true;
                stack.push(s);
            }
        }
    }

    let stats = ArenaStats {
        positions: arena.len(),
        moves: arena.succ.len(),
        acyclic: arena.is_acyclic(),
    };
    Ok(Solution {
        winner,
        certificate: StrategyCertificate {
            game: game.kind(),
            budget: game.budget(),
            winner,
            entries,
        },
        stats,
    })
}

/// Why a certificate failed to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure<P, M> {
    WrongGame {
        expected: (GameKind, usize),
        found: (GameKind, usize),
    },
    /// A winner-owned position reached in replay has no entry.
    MissingPosition(P),
    IllegalMove(P, M),
    /// A play halts with the opponent winning at this position.
    Lost(P),
    /// A position repeats along a play the certificate owner cannot win
    /// infinitely.
    Cycle(P),
    CeilingExceeded,
}

impl<P: fmt::Display, M: fmt::Display> fmt::Display for VerifyFailure<P, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::WrongGame { expected, found } => write!(
                f,
                "certificate is for {}(k={}) but the game is {}(k={})",
                found.0, found.1, expected.0, expected.1
            ),
            VerifyFailure::MissingPosition(p) => write!(f, "no move for position {p}"),
            VerifyFailure::IllegalMove(p, m) => write!(f, "illegal move {m} at {p}"),
            VerifyFailure::Lost(p) => write!(f, "play lost at {p}"),
            VerifyFailure::Cycle(p) => write!(f, "position {p} repeats"),
            VerifyFailure::CeilingExceeded => f.write_str("replay exceeded the position ceiling"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict<P, M> {
    pub failure: Option<VerifyFailure<P, M>>,
    /// For failures: the play from the initial position to the offending one.
    pub trace: Vec<P>,
    /// Distinct positions visited during replay.
    pub explored: usize,
}

impl<P, M> Verdict<P, M> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub type VerdictOf<G> = Verdict<<G as Game>::Position, <G as Game>::Move>;

/// Replays `cert` against every opponent move.
///
/// Passes iff every play ends in a win for the certificate's owner. A play
/// that revisits a position is infinite under the positional strategy; it
/// counts as a failure unless the owner wins infinite plays.
pub fn verify_certificate<G: Game>(
    game: &G,
    cert: &CertificateOf<G>,
    ceiling: usize,
) -> VerdictOf<G> {
    let fail = |failure, trace| Verdict {
        failure: Some(failure),
        trace,
        explored: 0,
    };
    if (cert.game, cert.budget) != (game.kind(), game.budget()) {
        return fail(
            VerifyFailure::WrongGame {
                expected: (game.kind(), game.budget()),
                found: (cert.game, cert.budget),
            },
            Vec::new(),
        );
    }
    let strategy = cert.lookup();
    let owner_wins_infinite = game.infinite_winner() == Some(cert.winner);

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Closed,
    }
    let mut marks: HashMap<G::Position, Mark> = HashMap::new();
    // (position, successors, next successor to visit)
    type Frame<P> = (P, Vec<P>, usize);
    let mut stack: Vec<Frame<G::Position>> = Vec::new();

    let trace_of = |stack: &Vec<Frame<G::Position>>, last: &G::Position| {
        let mut t: Vec<G::Position> = stack.iter().map(|f| f.0.clone()).collect();
        t.push(last.clone());
        t
    };

    let mut pending = Some(game.initial());
    loop {
        if let Some(position) = pending.take() {
            if marks.len() >= ceiling {
                return fail(VerifyFailure::CeilingExceeded, Vec::new());
            }
            match game.outcome(&position) {
                Some(w) if w == cert.winner => {
                    marks.insert(position, Mark::Closed);
                }
                Some(_) => {
                    let trace = trace_of(&stack, &position);
                    return fail(VerifyFailure::Lost(position), trace);
                }
                None => {
                    let owner = game.owner(&position);
                    let legal = game.moves(&position);
                    let next: Vec<G::Position> = if legal.is_empty() {
                        if owner == cert.winner {
                            let trace = trace_of(&stack, &position);
                            return fail(VerifyFailure::Lost(position), trace);
                        }
                        Vec::new()
                    } else if owner == cert.winner {
                        let Some(&mv) = strategy.get(&position) else {
                            let trace = trace_of(&stack, &position);
                            return fail(VerifyFailure::MissingPosition(position), trace);
                        };
                        if !legal.contains(mv) {
                            let trace = trace_of(&stack, &position);
                            return fail(VerifyFailure::IllegalMove(position, mv.clone()), trace);
                        }
                        alloc::vec![game.play(&position, mv)]
                    } else {
                        legal.iter().map(|m| game.play(&position, m)).collect()
                    };
                    marks.insert(position.clone(), Mark::Open);
                    stack.push((position, next, 0));
                }
            }
        }

        let Some(frame) = stack.last_mut() else {
            break;
        };
        if frame.2 < frame.1.len() {
            let child = frame.1[frame.2].clone();
            frame.2 += 1;
            match marks.get(&child) {
                None => pending = Some(child),
                Some(Mark::Closed) => {}
                Some(Mark::Open) => {
                    if !owner_wins_infinite {
                        let trace = trace_of(&stack, &child);
                        return fail(VerifyFailure::Cycle(child), trace);
                    }
                }
            }
        } else {
            let (position, _, _) = stack.pop().unwrap();
            marks.insert(position, Mark::Closed);
        }
    }

    Verdict {
        failure: None,
        trace: Vec::new(),
        explored: marks.len(),
    }
}
