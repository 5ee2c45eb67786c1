mod common;

use common::digraphs;
use entrank_core::comeback::solve_comeback_game;
use entrank_core::entanglement::{EntanglementGame, Variant};
use entrank_core::game::{verify_certificate, DEFAULT_CEILING};
use entrank_core::rank::rank;
use entrank_core::translate::translate_rank_strategy;
use entrank_core::Player;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn translated_strategies_win(g in digraphs(0, 5), extra in 0usize..2) {
        let k = rank(&g) + extra;
        let sol = solve_comeback_game(&g, k, DEFAULT_CEILING).unwrap();
        prop_assert_eq!(sol.winner, Player::Cops);
        let t = translate_rank_strategy(&g, &sol.certificate, DEFAULT_CEILING).unwrap();
        let verdict = verify_certificate(&EntanglementGame::new(&g, k, Variant::Entv), &t.certificate, DEFAULT_CEILING);
        prop_assert!(verdict.passed(), "{:?} {:?}", verdict.failure, verdict.trace);
    }
}
