//! Symmetric forms: uniform optimal correlated equilibria and the concave
//! load-value test.

use super::{
    all_vectors, enumerate_a, induce_game, surplus_of_vector, CongestionForm, CongestionVector,
};
use crate::equilibria::{is_correlated_equilibrium, pure_nash};
use crate::error::{Error, Result};
use crate::game::{opt, CorrelatedStrategy, PureProfile};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniformCeOutcome {
    /// The uniform distribution over `A_π` is a correlated equilibrium
    /// attaining the optimal surplus.
    Achieved {
        vector: CongestionVector,
        distribution: CorrelatedStrategy,
    },
    /// No optimal vector yields a uniform correlated equilibrium. On
    /// non-increasing forms this proves no correlated equilibrium attains
    /// `opt`; on other symmetric forms it only says no uniform witness exists.
    NotAchieved {
        tested: Vec<CongestionVector>,
        proves_gap: bool,
    },
}

fn require_symmetric(form: &CongestionForm) -> Result<()> {
    if form.is_symmetric() {
        Ok(())
    } else {
        Err(Error::Precondition("all facilities must share one payoff table".into()))
    }
}

/// Tests optimal vectors in ascending-sorted lexicographic order, one per
/// permutation class, and returns the first that works.
pub fn uniform_optimal_ce(form: &CongestionForm) -> Result<UniformCeOutcome> {
    require_symmetric(form)?;
    let game = induce_game(form);
    let best = opt(&game);
    let mut tested = Vec::new();
    for counts in all_vectors(form.players(), form.facility_count()) {
        if counts.windows(2).any(|p| p[0] > p[1]) {
            continue;
        }
        let pi = CongestionVector::new(form, counts)?;
        if surplus_of_vector(form, &pi) != best {
            continue;
        }
        let mu = CorrelatedStrategy::uniform(&game, enumerate_a(form, &pi))?;
        if is_correlated_equilibrium(&game, &mu)? {
            return Ok(UniformCeOutcome::Achieved {
                vector: pi,
                distribution: mu,
            });
        }
        tested.push(pi);
    }
    Ok(UniformCeOutcome::NotAchieved {
        tested,
        proves_gap: form.is_non_increasing(),
    })
}

/// `v(k) = k·w(k)` has non-increasing increments on `k = 1..n`.
pub fn is_concave_load_value(w: &[Rational]) -> bool {
    let v: Vec<Rational> = w
        .iter()
        .enumerate()
        .map(|(k, x)| Rational::from_integer((k + 1).into()) * x)
        .collect();
    v.windows(3).all(|t| &t[2] - &t[1] <= &t[1] - &t[0])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConcaveOutcome {
    NotConcave,
    /// A pure equilibrium attaining the optimal surplus.
    OptimalEquilibrium(PureProfile),
    /// Concave, yet no pure equilibrium is optimal.
    Violation,
}

/// On symmetric non-increasing forms with `n ≥ m` and concave `v`, finds a
/// pure equilibrium of maximal surplus by scanning every profile.
pub fn concave_optimal_equilibrium(form: &CongestionForm) -> Result<ConcaveOutcome> {
    require_symmetric(form)?;
    if !form.is_non_increasing() {
        return Err(Error::Precondition("payoffs must be non-increasing".into()));
    }
    if form.players() < form.facility_count() {
        return Err(Error::Precondition(format!(
            "needs at least as many players as facilities ({} < {})",
            form.players(),
            form.facility_count()
        )));
    }
    if !is_concave_load_value(&form.tables()[0]) {
        return Ok(ConcaveOutcome::NotConcave);
    }
    let game = induce_game(form);
    let best = opt(&game);
    let found = pure_nash(&game).into_iter().find(|p| {
        let idx = game.profile_index(p).expect("profile from this game");
        game.surplus_at(idx) == best
    });
    Ok(found.map_or(ConcaveOutcome::Violation, ConcaveOutcome::OptimalEquilibrium))
}
