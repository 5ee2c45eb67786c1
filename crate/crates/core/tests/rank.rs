mod common;

use std::collections::HashMap;

use common::{all_digraphs, all_live, digraphs, naive_rank, nontrivial_sccs};
use entrank_core::comeback::comeback_min_k;
use entrank_core::game::DEFAULT_CEILING;
use entrank_core::rank::{rank, rank_via_game, solve_rank_game, RankGame};
use entrank_core::{families, Digraph, Player};
use proptest::prelude::*;

/// Plain minimax on the rank game: does Thief win from `(live, Thief, n)`?
fn thief_wins(g: &Digraph, live: Vec<bool>, n: usize, memo: &mut HashMap<(Vec<bool>, usize), bool>) -> bool {
    if let Some(&w) = memo.get(&(live.clone(), n)) {
        return w;
    }
    let comps = nontrivial_sccs(g, &live);
    let w = if comps.is_empty() {
        false
    } else if n == 0 {
        true
    } else {
        comps.iter().any(|c| {
            c.iter().all(|&v| {
                let mut rest = vec![false; live.len()];
                for &u in c {
                    rest[u] = u != v;
                }
                thief_wins(g, rest, n - 1, memo)
            })
        })
    };
    memo.insert((live, n), w);
    w
}

fn minimax_min_k(g: &Digraph) -> usize {
    let mut memo = HashMap::new();
    (0..=g.vertex_count())
        .find(|&k| !thief_wins(g, all_live(g), k, &mut memo))
        .unwrap()
}

#[test]
fn every_small_digraph() {
    for n in 0..=3 {
        for g in all_digraphs(n) {
            let r = naive_rank(&g, &all_live(&g));
            assert_eq!(rank(&g), r, "{g:?}");
            assert_eq!(rank_via_game(&g), r, "{g:?}");
            assert_eq!(comeback_min_k(&g, DEFAULT_CEILING).unwrap(), r, "{g:?}");
        }
    }
}

#[test]
fn undirected_paths() {
    for n in 1..=20usize {
        assert_eq!(rank(&families::undirected_path(n)), n.ilog2() as usize, "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recursion_matches_definition(g in digraphs(0, 7)) {
        prop_assert_eq!(rank(&g), naive_rank(&g, &all_live(&g)));
    }

    #[test]
    fn game_matches_rank(g in digraphs(0, 6)) {
        let r = rank(&g);
        prop_assert_eq!(rank_via_game(&g), r);
        prop_assert_eq!(minimax_min_k(&g), r);
        if r > 0 {
            prop_assert_eq!(solve_rank_game(&g, r - 1).winner, Player::Thief);
        }
        let sol = solve_rank_game(&g, r);
        prop_assert_eq!(sol.winner, Player::Cops);
        prop_assert!(sol.stats.acyclic);
        let verdict = entrank_core::game::verify_certificate(&RankGame::new(&g, r), &sol.certificate, DEFAULT_CEILING);
        prop_assert!(verdict.passed());
    }

    #[test]
    fn comeback_matches_rank(g in digraphs(0, 5)) {
        prop_assert_eq!(comeback_min_k(&g, DEFAULT_CEILING).unwrap(), rank(&g));
    }

    #[test]
    fn removing_a_vertex_never_raises_rank(g in digraphs(1, 7), v in 0usize..7) {
        let v = v % g.vertex_count();
        let mut live = all_live(&g);
        live[v] = false;
        let r = naive_rank(&g, &live);
        prop_assert!(r <= rank(&g));
        prop_assert!(rank(&g) <= r + 1);
    }
}
