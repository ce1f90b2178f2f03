mod common;

use common::*;
use gamevalue::congestion::induce_game;
use gamevalue::game::{dominance, Dominance};
use gamevalue::registry::{self, example, example_from_spec, Example};
use gamevalue::Error;

#[test]
fn aumann_matrix_and_optimum() {
    let g = registry::aumann();
    assert_eq!(payoff(&g, 0, &[1, 0]), r(4));
    assert_eq!(payoff(&g, 1, &[1, 1]), r(5));
    assert_eq!(opt(&g), r(8));
    assert_eq!(pure_nash(&g), vec![vec![0, 0], vec![1, 1]]);
}

#[test]
fn gamma_entries_scale_with_x() {
    let g = registry::gamma_x(&r(4)).unwrap();
    assert_eq!((payoff(&g, 0, &[1, 0]), payoff(&g, 1, &[1, 0])), (r(3), r(3)));
    assert_eq!(surplus_at(&g, &[0, 0]), r(5));
    assert!(matches!(registry::gamma_x(&r(1)), Err(Error::InvalidParameter(_))));
}

#[test]
fn prisoners_dilemma_layout() {
    let g = registry::prisoners_dilemma(&q(5, 2)).unwrap();
    assert_eq!(surplus_at(&g, &[0, 0]), r(5));
    assert_eq!((payoff(&g, 0, &[0, 1]), payoff(&g, 1, &[0, 1])), (r(0), q(7, 2)));
    assert_eq!(surplus_at(&g, &[1, 1]), r(2));
    for i in 0..2 {
        assert_eq!(dominance(&g, i, 1, 0).unwrap(), Dominance::StrictlyDominates);
    }
    assert_eq!(pure_nash(&g), vec![vec![1, 1]]);
}

#[test]
fn congestion_examples_induce_expected_games() {
    let g = induce_game(&registry::example1());
    assert_eq!(
        (0..3).map(|i| payoff(&g, i, &[0, 0, 1])).collect::<Vec<_>>(),
        vec![r(12), r(12), r(8)]
    );
    let g2 = induce_game(&registry::example2());
    assert_eq!(g2.profile_count(), 64);
    assert_eq!(opt(&g2), r(24));
}

#[test]
fn lookup_by_name() {
    assert!(matches!(example("aumann", None).unwrap(), Example::Game(_)));
    assert!(matches!(example_from_spec("example2").unwrap(), Example::Form(_)));
    assert!(matches!(example_from_spec("pd:10").unwrap(), Example::Game(_)));
    assert!(matches!(example_from_spec("nope"), Err(Error::UnknownExample(_))));
    assert!(matches!(example_from_spec("gamma_x"), Err(Error::InvalidParameter(_))));
    assert!(matches!(example_from_spec("aumann:3"), Err(Error::InvalidParameter(_))));
    assert!(example_from_spec("pd:1/2").is_err());
}
