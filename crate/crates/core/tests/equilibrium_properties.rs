mod common;

use common::*;
use gamevalue::equilibria::{max_surplus_ce, nash_set, Completeness};
use gamevalue::game::opt as lib_opt;
use gamevalue::Game;
use proptest::prelude::*;

fn game(counts: Vec<usize>, max: i64) -> impl Strategy<Value = Game> {
    let profiles: usize = counts.iter().product();
    let n = counts.len();
    prop::collection::vec(prop::collection::vec(0..=max, profiles), n).prop_map(move |layers| {
        Game::new(counts.clone(), layers.into_iter().map(|l| l.into_iter().map(r).collect()).collect()).unwrap()
    })
}

fn two_player() -> impl Strategy<Value = Game> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| game(vec![a, b], 5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn listed_equilibria_pass_the_oracle(g in two_player()) {
        let set = nash_set(&g, &[]).unwrap();
        prop_assert_eq!(set.completeness, Completeness::Complete);
        prop_assert!(!set.equilibria.is_empty());
        for e in &set.equilibria {
            prop_assert!(is_nash(&g, e.profile.strategies()));
            prop_assert_eq!(mixed_surplus(&g, e.profile.strategies()), e.surplus.clone());
        }
        for p in pure_nash(&g) {
            prop_assert!(set.equilibria.iter().any(|e| e.profile.strategies().iter().zip(&p).all(|(s, &k)| s[k] == r(1))));
        }
    }

    #[test]
    fn best_ce_is_certified(g in two_player()) {
        let sol = max_surplus_ce(&g).unwrap();
        let mu: Dist = sol.distribution.support().map(|(p, w)| (p.0.clone(), w.clone())).collect();
        prop_assert!(is_ce(&g, &mu));
        prop_assert_eq!(dist_surplus(&g, &mu), sol.value.clone());
        prop_assert!(dual_feasible(&g, &sol.certificate.alpha, &sol.value));
        prop_assert!(sol.value <= opt(&g));
        prop_assert_eq!(lib_opt(&g), opt(&g));
    }

    #[test]
    fn three_player_pure_equilibria_match(g in game(vec![2, 2, 2], 4)) {
        let set = nash_set(&g, &[]).unwrap();
        let pure: Vec<Vec<usize>> = pure_nash(&g);
        let listed: Vec<Vec<usize>> = set
            .equilibria
            .iter()
            .map(|e| e.profile.strategies().iter().map(|s| s.iter().position(|x| *x == r(1)).unwrap()).collect())
            .collect();
        prop_assert_eq!(listed, pure);
        let sol = max_surplus_ce(&g).unwrap();
        prop_assert!(dual_feasible(&g, &sol.certificate.alpha, &sol.value));
    }
}
