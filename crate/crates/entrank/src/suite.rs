//! Verification suites over graph corpora.
//!
//! Graphs are checked in parallel and the results merged in corpus order, so
//! a report depends only on its corpus and options.

use std::time::Instant;

use entrank_core::comeback::solve_comeback_game;
use entrank_core::entanglement::{game_winner, min_k, EntanglementGame, Variant};
use entrank_core::game::{verify_certificate, SolveError, DEFAULT_CEILING};
use entrank_core::rank::{rank, rank_game_winner};
use entrank_core::translate::translate_rank_strategy;
use entrank_core::{Digraph, Player};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::NamedGraph;

/// Longest trace kept in a witness.
const TRACE_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub ceiling: usize,
    /// Largest graphs for the rank game.
    pub rank_game_max: usize,
    /// Largest graphs for the rank game with come back.
    pub comeback_max: usize,
    /// Largest graphs for the comparison of entanglement variants.
    pub variants_max: usize,
    /// Largest graphs for strategy translation in the theorem suite.
    pub translate_max: usize,
    /// Include wall time in the summary.
    pub timing: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            ceiling: DEFAULT_CEILING,
            rank_game_max: 6,
            comeback_max: 5,
            variants_max: 6,
            translate_max: 5,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub rank: usize,
    pub entanglement: Option<usize>,
    pub rank_game_min_k: Option<usize>,
    pub comeback_min_k: Option<usize>,
    pub ent_min_k: Option<usize>,
    pub et_min_k: Option<usize>,
    pub entv_min_k: Option<usize>,
    pub theorem_ok: Option<bool>,
    pub certificate_ok: Option<bool>,
}

/// Enough to replay a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: Option<usize>,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph: String,
    pub check: String,
    pub detail: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub graph: String,
    pub check: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checked: usize,
    pub violations: usize,
    pub ceiling_skips: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<GraphRecord>,
    pub violations: Vec<Violation>,
    pub skips: Vec<Skip>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Default)]
struct Outcome {
    record: GraphRecord,
    violations: Vec<Violation>,
    skips: Vec<Skip>,
}

impl Outcome {
    fn new(named: &NamedGraph) -> Self {
        Outcome {
            record: GraphRecord {
                graph: named.id.clone(),
                n: named.graph.vertex_count(),
                edges: named.graph.edge_count(),
                rank: rank(&named.graph),
                ..GraphRecord::default()
            },
            ..Outcome::default()
        }
    }

    fn violation(&mut self, g: &Digraph, check: &str, detail: String, k: Option<usize>, trace: Vec<String>) {
        self.violations.push(Violation {
            graph: self.record.graph.clone(),
            check: check.to_string(),
            detail,
            witness: Witness {
                n: g.vertex_count(),
                edges: g.edges().collect(),
                k,
                trace: trace.into_iter().take(TRACE_LIMIT).collect(),
            },
        });
    }

    fn skip(&mut self, check: &str, err: SolveError) {
        self.skips.push(Skip {
            graph: self.record.graph.clone(),
            check: check.to_string(),
            reason: err.to_string(),
        });
    }

    /// Entanglement and the comparison with the rank.
    fn entanglement(&mut self, g: &Digraph, ceiling: usize) {
        let r = self.record.rank;
        let e = match min_k(g, Variant::Ent, ceiling) {
            Ok(e) => e,
            Err(err) => return self.skip("entanglement", err),
        };
        self.record.entanglement = Some(e);
        self.record.theorem_ok = Some(e <= r);
        if e > r {
            self.violation(g, "theorem", format!("entanglement {e} exceeds rank {r}"), Some(r), Vec::new());
        }
        let acyclic = g.is_acyclic();
        if (r == 0) != acyclic || (e == 0) != acyclic {
            self.violation(
                g,
                "degenerate",
                format!("acyclic={acyclic} rank={r} entanglement={e}"),
                None,
                Vec::new(),
            );
        }
    }

    fn translation(&mut self, g: &Digraph, ceiling: usize) {
        let k = self.record.rank;
        let solution = match solve_comeback_game(g, k, ceiling) {
            Ok(s) => s,
            Err(err) => return self.skip("translation", err),
        };
        if solution.winner != Player::Cops {
            self.record.certificate_ok = Some(false);
            let detail = format!("Thief wins the rank game with come back at k = rank = {k}");
            return self.violation(g, "translation", detail, Some(k), Vec::new());
        }
        let translation = match translate_rank_strategy(g, &solution.certificate, ceiling) {
            Ok(t) => t,
            Err(err) => {
                self.record.certificate_ok = Some(false);
                return self.violation(g, "translation", err.to_string(), Some(k), Vec::new());
            }
        };
        let game = EntanglementGame::new(g, k, Variant::Entv);
        let verdict = verify_certificate(&game, &translation.certificate, ceiling);
        self.record.certificate_ok = Some(verdict.passed());
        if let Some(failure) = verdict.failure {
            let trace = verdict.trace.iter().map(ToString::to_string).collect();
            self.violation(g, "translation", format!("{failure:?}"), Some(k), trace);
        }
    }

    fn rank_game(&mut self, g: &Digraph, ceiling: usize) {
        let r = self.record.rank;
        let mut found = None;
        for k in 0..=g.vertex_count() {
            match rank_game_winner(g, k, ceiling) {
                Ok(Player::Cops) => {
                    found = Some(k);
                    break;
                }
                Ok(Player::Thief) => {}
                Err(err) => return self.skip("rank-game", err),
            }
        }
        self.record.rank_game_min_k = found;
        if found != Some(r) {
            self.violation(g, "rank-game", format!("rank game needs {found:?} cops, rank is {r}"), found, Vec::new());
        }
    }

    fn comeback_game(&mut self, g: &Digraph, ceiling: usize) {
        let r = self.record.rank;
        let mut found = None;
        for k in 0..=g.vertex_count() {
            let solution = match solve_comeback_game(g, k, ceiling) {
                Ok(s) => s,
                Err(err) => return self.skip("comeback-game", err),
            };
            if !solution.stats.acyclic {
                self.violation(g, "comeback-termination", "arena has a cycle".into(), Some(k), Vec::new());
            }
            if solution.winner == Player::Cops {
                found = Some(k);
                break;
            }
        }
        self.record.comeback_min_k = found;
        let target = self.record.rank_game_min_k.unwrap_or(r);
        if found != Some(target) {
            let detail = format!("come-back game needs {found:?} cops, rank game {target}");
            self.violation(g, "comeback-game", detail, found, Vec::new());
        }
    }

    fn variants(&mut self, g: &Digraph, ceiling: usize) {
        const VARIANTS: [Variant; 3] = [Variant::Ent, Variant::Et, Variant::Entv];
        let mut first_cops = [None; 3];
        for k in 0..=g.vertex_count() {
            let mut winners = [Player::Thief; 3];
            for (i, &variant) in VARIANTS.iter().enumerate() {
                match game_winner(g, k, variant, ceiling) {
                    Ok(w) => winners[i] = w,
                    Err(err) => return self.skip("variants", err),
                }
                if winners[i] == Player::Cops {
                    first_cops[i].get_or_insert(k);
                } else if first_cops[i].is_some() {
                    let detail = format!("{variant:?}: Thief wins with {k} cops after Cops won with fewer");
                    self.violation(g, "monotonicity", detail, Some(k), Vec::new());
                }
            }
            if winners.iter().any(|&w| w != winners[0]) {
                let detail = format!("winners ent={} et={} entv={}", winners[0], winners[1], winners[2]);
                self.violation(g, "variants", detail, Some(k), Vec::new());
            }
        }
        [self.record.ent_min_k, self.record.et_min_k, self.record.entv_min_k] = first_cops;
    }
}

fn run<F>(suite: &str, corpus: &[NamedGraph], options: &SuiteOptions, check: F) -> VerificationReport
where
    F: Fn(&NamedGraph) -> Outcome + Sync + Send,
{
    let start = Instant::now();
    let outcomes: Vec<Outcome> = corpus.par_iter().map(check).collect();
    let mut report = VerificationReport {
        suite: suite.to_string(),
        records: Vec::with_capacity(outcomes.len()),
        violations: Vec::new(),
        skips: Vec::new(),
        summary: Summary {
            checked: outcomes.len(),
            violations: 0,
            ceiling_skips: 0,
            wall_time_ms: None,
        },
    };
    for outcome in outcomes {
        report.records.push(outcome.record);
        report.violations.extend(outcome.violations);
        report.skips.extend(outcome.skips);
    }
    report.summary.violations = report.violations.len();
    report.summary.ceiling_skips = report.skips.len();
    if options.timing {
        report.summary.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

/// Entanglement against rank on every graph, plus strategy translation on
/// the small ones.
pub fn run_theorem_suite(corpus: &[NamedGraph], options: &SuiteOptions) -> VerificationReport {
    run("theorem", corpus, options, |named| {
        let g = &named.graph;
        let mut outcome = Outcome::new(named);
        outcome.entanglement(g, options.ceiling);
        if g.vertex_count() <= options.translate_max {
            outcome.translation(g, options.ceiling);
        }
        outcome
    })
}

/// Rank against both rank games, and the three entanglement games against
/// each other, within the size limits of `options`.
pub fn run_equivalence_suite(corpus: &[NamedGraph], options: &SuiteOptions) -> VerificationReport {
    run("equivalence", corpus, options, |named| {
        let g = &named.graph;
        let n = g.vertex_count();
        let mut outcome = Outcome::new(named);
        outcome.entanglement(g, options.ceiling);
        if n <= options.rank_game_max {
            outcome.rank_game(g, options.ceiling);
        }
        if n <= options.comeback_max {
            outcome.comeback_game(g, options.ceiling);
        }
        if n <= options.variants_max {
            outcome.variants(g, options.ceiling);
        }
        outcome
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusSpec;

    fn corpus(spec: &str) -> Vec<NamedGraph> {
        spec.parse::<CorpusSpec>().unwrap().generate()
    }

    #[test]
    fn dags_measure_zero() {
        let report = run_theorem_suite(&corpus("dag:1..6"), &SuiteOptions::default());
        assert!(report.passed());
        for r in &report.records {
            assert_eq!((r.rank, r.entanglement), (0, Some(0)));
            assert_eq!(r.certificate_ok, (r.n <= 5).then_some(true));
        }
    }

    #[test]
    fn self_loop_measures_one() {
        let g = Digraph::from_edges(1, [(0, 0)]).unwrap();
        let named = [NamedGraph { id: "loop".into(), graph: g }];
        let report = run_equivalence_suite(&named, &SuiteOptions::default());
        assert!(report.passed(), "{:?}", report.violations);
        let r = &report.records[0];
        assert_eq!(r.rank, 1);
        for k in [r.entanglement, r.rank_game_min_k, r.comeback_min_k, r.ent_min_k, r.et_min_k, r.entv_min_k] {
            assert_eq!(k, Some(1));
        }
    }

    #[test]
    fn empty_graph_measures_zero() {
        let named = [NamedGraph { id: "empty".into(), graph: Digraph::new(0).unwrap() }];
        let report = run_equivalence_suite(&named, &SuiteOptions::default());
        assert!(report.passed());
        let r = &report.records[0];
        assert_eq!(r.rank, 0);
        assert_eq!(r.entv_min_k, Some(0));
    }

    #[test]
    fn tiny_ceiling_is_reported_as_skip() {
        let options = SuiteOptions { ceiling: 3, ..SuiteOptions::default() };
        let report = run_equivalence_suite(&corpus("clique:4"), &options);
        assert!(!report.skips.is_empty());
        assert_eq!(report.summary.ceiling_skips, report.skips.len());
    }
}
