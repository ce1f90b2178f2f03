//! Finite strategic-form games with exact payoffs.
//!
//! Payoffs are stored densely. A pure profile `s = (s¹,…,sⁿ)` maps to a
//! row-major index `Σ sⁱ·strideᵢ` with `strideᵢ = ∏_{k>i} m_k`, so the last
//! player's strategy varies fastest. The flat payoff vector is player-major:
//! player `i`'s payoff at profile index `p` sits at `i·|S| + p`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile(pub Vec<usize>);

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    strategy_counts: Vec<usize>,
    strides: Vec<usize>,
    profile_count: usize,
    payoffs: Vec<Rational>,
}

impl Game {
    /// Builds a game from per-player payoff layers indexed by row-major
    /// profile index. Negative payoffs are rejected.
    pub fn new(strategy_counts: Vec<usize>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        if strategy_counts.is_empty() {
            return Err(Error::Dimension("a game needs at least one player".into()));
        }
        if let Some(i) = strategy_counts.iter().position(|&m| m == 0) {
            return Err(Error::Dimension(format!("player {i} has no strategies")));
        }
        let n = strategy_counts.len();
        if payoffs.len() != n {
            return Err(Error::Dimension(format!(
                "{} payoff layers for {n} players",
                payoffs.len()
            )));
        }
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1]
                .checked_mul(strategy_counts[i + 1])
                .ok_or_else(|| Error::Dimension("profile space too large".into()))?;
        }
        let profile_count = strides[0]
            .checked_mul(strategy_counts[0])
            .ok_or_else(|| Error::Dimension("profile space too large".into()))?;
        let mut flat = Vec::with_capacity(n * profile_count);
        for (i, layer) in payoffs.into_iter().enumerate() {
            if layer.len() != profile_count {
                return Err(Error::Dimension(format!(
                    "player {i} has {} payoffs, expected {profile_count}",
                    layer.len()
                )));
            }
            flat.extend(layer);
        }
        let game = Game {
            strategy_counts,
            strides,
            profile_count,
            payoffs: flat,
        };
        for i in 0..n {
            for p in 0..profile_count {
                let u = game.payoff(i, p);
                if u.is_negative() {
                    return Err(Error::NegativePayoff {
                        locus: format!("player {i}, profile {}", game.profile(p)),
                        value: format_rational(u),
                    });
                }
            }
        }
        Ok(game)
    }

    /// Two-player game from row-player matrix `a` and column-player matrix `b`.
    pub fn bimatrix(a: Vec<Vec<Rational>>, b: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let shape_ok = b.len() == rows
            && a.iter().chain(b.iter()).all(|r| r.len() == cols);
        if !shape_ok {
            return Err(Error::Dimension("bimatrix shapes differ or are ragged".into()));
        }
        let flatten = |m: Vec<Vec<Rational>>| m.into_iter().flatten().collect::<Vec<_>>();
        Game::new(vec![rows, cols], vec![flatten(a), flatten(b)])
    }

    pub fn player_count(&self) -> usize {
        self.strategy_counts.len()
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.strategy_counts[player]
    }

    pub fn profile_count(&self) -> usize {
        self.profile_count
    }

    pub fn stride(&self, player: usize) -> usize {
        self.strides[player]
    }

    /// Player `player`'s payoffs at every profile index.
    pub fn payoff_layer(&self, player: usize) -> &[Rational] {
        let start = player * self.profile_count;
        &self.payoffs[start..start + self.profile_count]
    }

    pub fn payoff(&self, player: usize, profile_index: usize) -> &Rational {
        &self.payoffs[player * self.profile_count + profile_index]
    }

    pub fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.player_count() {
            return Err(Error::IndexOutOfRange(format!(
                "player {player} of {}",
                self.player_count()
            )));
        }
        Ok(())
    }

    pub fn check_strategy(&self, player: usize, strategy: usize) -> Result<()> {
        self.check_player(player)?;
        if strategy >= self.strategy_counts[player] {
            return Err(Error::IndexOutOfRange(format!(
                "strategy {strategy} of player {player} (has {})",
                self.strategy_counts[player]
            )));
        }
        Ok(())
    }

    pub fn profile_index(&self, profile: &PureProfile) -> Result<usize> {
        if profile.0.len() != self.player_count() {
            return Err(Error::Dimension(format!(
                "profile {profile} has {} entries for {} players",
                profile.0.len(),
                self.player_count()
            )));
        }
        let mut idx = 0;
        for (i, &s) in profile.0.iter().enumerate() {
            self.check_strategy(i, s)?;
            idx += s * self.strides[i];
        }
        Ok(idx)
    }

    pub fn profile(&self, index: usize) -> PureProfile {
        PureProfile(
            (0..self.player_count())
                .map(|i| self.strategy_at(index, i))
                .collect(),
        )
    }

    /// Player `player`'s strategy within the profile at `index`.
    pub fn strategy_at(&self, index: usize, player: usize) -> usize {
        (index / self.strides[player]) % self.strategy_counts[player]
    }

    /// Index of the profile obtained from `index` when `player` switches to `strategy`.
    pub fn deviate(&self, index: usize, player: usize, strategy: usize) -> usize {
        let current = self.strategy_at(index, player);
        index - current * self.strides[player] + strategy * self.strides[player]
    }

    pub fn profiles(&self) -> impl Iterator<Item = PureProfile> + '_ {
        (0..self.profile_count).map(|p| self.profile(p))
    }

    /// Total payoff `u(s) = Σᵢ uⁱ(s)` at a profile index.
    pub fn surplus_at(&self, index: usize) -> Rational {
        (0..self.player_count()).fold(Rational::zero(), |acc, i| acc + self.payoff(i, index))
    }

    /// Multiplies every payoff by `factor` (must be nonnegative).
    pub fn scaled(&self, factor: &Rational) -> Result<Game> {
        if factor.is_negative() {
            return Err(Error::Precondition("scale factor must be nonnegative".into()));
        }
        let mut g = self.clone();
        for u in g.payoffs.iter_mut() {
            *u *= factor;
        }
        Ok(g)
    }
}

/// Independent randomization for every player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedProfile {
    strategies: Vec<Vec<Rational>>,
}

impl MixedProfile {
    pub fn new(game: &Game, strategies: Vec<Vec<Rational>>) -> Result<Self> {
        if strategies.len() != game.player_count() {
            return Err(Error::Dimension(format!(
                "{} mixed strategies for {} players",
                strategies.len(),
                game.player_count()
            )));
        }
        for (i, p) in strategies.iter().enumerate() {
            if p.len() != game.strategy_count(i) {
                return Err(Error::Dimension(format!(
                    "player {i}: {} probabilities for {} strategies",
                    p.len(),
                    game.strategy_count(i)
                )));
            }
            if p.iter().any(Signed::is_negative) {
                return Err(Error::InvalidDistribution(format!(
                    "player {i} has a negative probability"
                )));
            }
            let total: Rational = p.iter().sum();
            if total != Rational::from_integer(1.into()) {
                return Err(Error::InvalidDistribution(format!(
                    "player {i}'s probabilities sum to {}",
                    format_rational(&total)
                )));
            }
        }
        Ok(MixedProfile { strategies })
    }

    /// Point masses on `profile`.
    pub fn pure(game: &Game, profile: &PureProfile) -> Result<Self> {
        game.profile_index(profile)?;
        let strategies = profile
            .0
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let mut p = vec![Rational::zero(); game.strategy_count(i)];
                p[s] = Rational::from_integer(1.into());
                p
            })
            .collect();
        Ok(MixedProfile { strategies })
    }

    pub fn player(&self, i: usize) -> &[Rational] {
        &self.strategies[i]
    }

    pub fn strategies(&self) -> &[Vec<Rational>] {
        &self.strategies
    }

    pub fn support(&self, i: usize) -> Vec<usize> {
        self.strategies[i]
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, _)| s)
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        (0..self.strategies.len()).all(|i| self.support(i).len() == 1)
    }
}

impl fmt::Display for MixedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.strategies.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = p.iter().map(format_rational).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, ")")
    }
}

/// A distribution over pure profiles. Only nonzero weights are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelatedStrategy {
    weights: BTreeMap<PureProfile, Rational>,
}

impl CorrelatedStrategy {
    pub fn new(
        game: &Game,
        weights: impl IntoIterator<Item = (PureProfile, Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut total = Rational::zero();
        for (profile, w) in weights {
            game.profile_index(&profile)?;
            if w.is_negative() {
                return Err(Error::InvalidDistribution(format!(
                    "negative weight on {profile}"
                )));
            }
            total += &w;
            if w.is_zero() {
                continue;
            }
            if map.insert(profile.clone(), w).is_some() {
                return Err(Error::InvalidDistribution(format!(
                    "profile {profile} listed twice"
                )));
            }
        }
        if total != Rational::from_integer(1.into()) {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        Ok(CorrelatedStrategy { weights: map })
    }

    /// Weights indexed by row-major profile index.
    pub fn from_dense(game: &Game, weights: &[Rational]) -> Result<Self> {
        if weights.len() != game.profile_count() {
            return Err(Error::Dimension(format!(
                "{} weights for {} profiles",
                weights.len(),
                game.profile_count()
            )));
        }
        CorrelatedStrategy::new(
            game,
            weights
                .iter()
                .enumerate()
                .map(|(p, w)| (game.profile(p), w.clone())),
        )
    }

    pub fn point_mass(game: &Game, profile: PureProfile) -> Result<Self> {
        CorrelatedStrategy::new(game, [(profile, Rational::from_integer(1.into()))])
    }

    /// Equal weight on each listed profile; duplicates are rejected.
    pub fn uniform(game: &Game, profiles: impl IntoIterator<Item = PureProfile>) -> Result<Self> {
        let profiles: Vec<PureProfile> = profiles.into_iter().collect();
        if profiles.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        let w = Rational::new(1.into(), profiles.len().into());
        CorrelatedStrategy::new(game, profiles.into_iter().map(|p| (p, w.clone())))
    }

    pub fn weight(&self, profile: &PureProfile) -> Rational {
        self.weights.get(profile).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&PureProfile, &Rational)> {
        self.weights.iter()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// Weights indexed by profile index; errors if a profile does not fit `game`.
    pub fn dense(&self, game: &Game) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); game.profile_count()];
        for (profile, w) in &self.weights {
            out[game.profile_index(profile)?] = w.clone();
        }
        Ok(out)
    }
}

/// `uⁱ(μ) = Σ_s uⁱ(s)·μ(s)`.
pub fn expected_payoff(game: &Game, mu: &CorrelatedStrategy, player: usize) -> Result<Rational> {
    game.check_player(player)?;
    let mut total = Rational::zero();
    for (profile, w) in mu.support() {
        let idx = game.profile_index(profile)?;
        total += game.payoff(player, idx) * w;
    }
    Ok(total)
}

/// `u(μ) = Σᵢ uⁱ(μ)`.
pub fn surplus(game: &Game, mu: &CorrelatedStrategy) -> Result<Rational> {
    let mut total = Rational::zero();
    for i in 0..game.player_count() {
        total += expected_payoff(game, mu, i)?;
    }
    Ok(total)
}

/// The product measure `μ_p(s) = ∏ᵢ pⁱ(sⁱ)`.
pub fn product_distribution(game: &Game, p: &MixedProfile) -> CorrelatedStrategy {
    let weights = product_weights(game, p);
    let map = weights
        .into_iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(idx, w)| (game.profile(idx), w))
        .collect();
    CorrelatedStrategy { weights: map }
}

/// Dense product weights by profile index.
pub fn product_weights(game: &Game, p: &MixedProfile) -> Vec<Rational> {
    let mut weights = vec![Rational::from_integer(1.into())];
    // Build row-major: each new player multiplies out the innermost axis.
    for i in 0..game.player_count() {
        let mut next = Vec::with_capacity(weights.len() * game.strategy_count(i));
        for w in &weights {
            for q in p.player(i) {
                next.push(if w.is_zero() || q.is_zero() {
                    Rational::zero()
                } else {
                    w * q
                });
            }
        }
        weights = next;
    }
    weights
}

/// `uⁱ(p⁻ⁱ, t)` for every pure strategy `t` of `player`.
pub fn deviation_payoffs(game: &Game, p: &MixedProfile, player: usize) -> Vec<Rational> {
    let m = game.strategy_count(player);
    let mut out = vec![Rational::zero(); m];
    // Weight of each profile ignoring `player`'s own randomization.
    let mut others = p.clone();
    others.strategies[player] = {
        let mut point = vec![Rational::zero(); m];
        point[0] = Rational::from_integer(1.into());
        point
    };
    let weights = product_weights(game, &others);
    for (idx, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        for (t, slot) in out.iter_mut().enumerate() {
            *slot += game.payoff(player, game.deviate(idx, player, t)) * w;
        }
    }
    out
}

/// `opt(Γ) = max_s u(s)`.
pub fn opt(game: &Game) -> Rational {
    (0..game.profile_count())
        .map(|p| game.surplus_at(p))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Profiles attaining `opt`.
pub fn opt_profiles(game: &Game) -> Vec<PureProfile> {
    let best = opt(game);
    (0..game.profile_count())
        .filter(|&p| game.surplus_at(p) == best)
        .map(|p| game.profile(p))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    StrictlyDominates,
    WeaklyDominates,
    Equivalent,
    None,
}

/// How strategy `s` of `player` compares against strategy `t`.
pub fn dominance(game: &Game, player: usize, s: usize, t: usize) -> Result<Dominance> {
    game.check_strategy(player, s)?;
    game.check_strategy(player, t)?;
    if s == t {
        return Err(Error::Precondition("dominance needs two distinct strategies".into()));
    }
    let (mut all_strict, mut any_strict, mut all_weak) = (true, false, true);
    for idx in 0..game.profile_count() {
        if game.strategy_at(idx, player) != s {
            continue;
        }
        let us = game.payoff(player, idx);
        let ut = game.payoff(player, game.deviate(idx, player, t));
        if us > ut {
            any_strict = true;
        } else {
            all_strict = false;
        }
        if us < ut {
            all_weak = false;
        }
    }
    Ok(if all_strict {
        Dominance::StrictlyDominates
    } else if all_weak && any_strict {
        Dominance::WeaklyDominates
    } else if all_weak {
        Dominance::Equivalent
    } else {
        Dominance::None
    })
}

/// Some strategy strictly dominates every other one. A player with a single
/// strategy counts as having one (the universal condition is vacuous).
pub fn has_strictly_dominant_strategy(game: &Game, player: usize) -> Result<bool> {
    game.check_player(player)?;
    let m = game.strategy_count(player);
    for s in 0..m {
        let mut dominant = true;
        for t in (0..m).filter(|&t| t != s) {
            if dominance(game, player, s, t)? != Dominance::StrictlyDominates {
                dominant = false;
                break;
            }
        }
        if dominant {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::registry;
    use proptest::prelude::*;

    fn aumann() -> Game {
        registry::aumann()
    }

    fn three_profile_ce(g: &Game) -> CorrelatedStrategy {
        CorrelatedStrategy::uniform(
            g,
            [PureProfile(vec![0, 0]), PureProfile(vec![1, 0]), PureProfile(vec![1, 1])],
        )
        .unwrap()
    }

    #[test]
    fn profile_indexing_round_trips() {
        let g = Game::new(vec![2, 3, 2], vec![vec![int(0); 12]; 3]).unwrap();
        for idx in 0..g.profile_count() {
            assert_eq!(g.profile_index(&g.profile(idx)).unwrap(), idx);
        }
        assert_eq!(g.profile_index(&PureProfile(vec![1, 2, 1])).unwrap(), 11);
        assert_eq!(g.deviate(11, 1, 0), 7);
        assert!(g.profile_index(&PureProfile(vec![2, 0, 0])).is_err());
    }

    #[test]
    fn construction_rejects_negative_and_ragged() {
        let err = Game::new(vec![1, 2], vec![vec![int(1), int(-1)], vec![int(0), int(0)]]);
        assert!(matches!(err, Err(Error::NegativePayoff { .. })));
        assert!(Game::new(vec![2], vec![vec![int(1)]]).is_err());
        assert!(Game::new(vec![], vec![]).is_err());
        assert!(Game::new(vec![0], vec![vec![]]).is_err());
    }

    #[test]
    fn aumann_payoffs_and_surplus() {
        let g = aumann();
        let top_left = CorrelatedStrategy::point_mass(&g, PureProfile(vec![0, 0])).unwrap();
        assert_eq!(expected_payoff(&g, &top_left, 0).unwrap(), int(5));
        let mu = three_profile_ce(&g);
        assert_eq!(expected_payoff(&g, &mu, 0).unwrap(), ratio(10, 3));
        assert_eq!(surplus(&g, &mu).unwrap(), ratio(20, 3));
        let all = CorrelatedStrategy::uniform(&g, g.profiles()).unwrap();
        assert_eq!(surplus(&g, &all).unwrap(), int(5));
        assert_eq!(opt(&g), int(8));
        assert!(expected_payoff(&g, &mu, 2).is_err());
    }

    #[test]
    fn point_mass_payoff_is_entry() {
        let g = aumann();
        for idx in 0..g.profile_count() {
            let mu = CorrelatedStrategy::point_mass(&g, g.profile(idx)).unwrap();
            for i in 0..2 {
                assert_eq!(&expected_payoff(&g, &mu, i).unwrap(), g.payoff(i, idx));
            }
        }
    }

    #[test]
    fn zero_game_surplus() {
        let g = Game::new(vec![2, 2], vec![vec![int(0); 4]; 2]).unwrap();
        let mu = CorrelatedStrategy::uniform(&g, g.profiles()).unwrap();
        assert_eq!(surplus(&g, &mu).unwrap(), int(0));
        assert_eq!(opt(&g), int(0));
    }

    #[test]
    fn product_weights_by_hand() {
        let g = aumann();
        let half = ratio(1, 2);
        let p = MixedProfile::new(&g, vec![vec![half.clone(), half.clone()], vec![half.clone(), half]]).unwrap();
        assert_eq!(product_weights(&g, &p), vec![ratio(1, 4); 4]);
        let p = MixedProfile::new(
            &g,
            vec![vec![ratio(1, 3), ratio(2, 3)], vec![ratio(1, 2), ratio(1, 2)]],
        )
        .unwrap();
        assert_eq!(
            product_weights(&g, &p),
            vec![ratio(1, 6), ratio(1, 6), ratio(1, 3), ratio(1, 3)]
        );
        let pure = MixedProfile::pure(&g, &PureProfile(vec![1, 0])).unwrap();
        assert_eq!(
            product_distribution(&g, &pure),
            CorrelatedStrategy::point_mass(&g, PureProfile(vec![1, 0])).unwrap()
        );
    }

    #[test]
    fn distribution_validation() {
        let g = aumann();
        assert!(CorrelatedStrategy::new(&g, [(PureProfile(vec![0, 0]), ratio(1, 2))]).is_err());
        assert!(CorrelatedStrategy::new(
            &g,
            [(PureProfile(vec![0, 0]), int(2)), (PureProfile(vec![0, 1]), int(-1))]
        )
        .is_err());
        assert!(MixedProfile::new(&g, vec![vec![int(1), int(0)]]).is_err());
        assert!(MixedProfile::new(&g, vec![vec![int(1), int(0)], vec![ratio(1, 2), ratio(1, 3)]]).is_err());
    }

    #[test]
    fn opt_of_gamma_x() {
        assert_eq!(opt(&registry::gamma_x(&int(4)).unwrap()), int(6));
    }

    #[test]
    fn dominance_cases() {
        let pd = registry::prisoners_dilemma(&int(3)).unwrap();
        // strategy 1 = D, 0 = C
        assert_eq!(dominance(&pd, 0, 1, 0).unwrap(), Dominance::StrictlyDominates);
        assert_eq!(dominance(&pd, 1, 1, 0).unwrap(), Dominance::StrictlyDominates);
        assert_eq!(dominance(&pd, 0, 0, 1).unwrap(), Dominance::None);
        assert!(has_strictly_dominant_strategy(&pd, 0).unwrap());
        assert!(has_strictly_dominant_strategy(&pd, 1).unwrap());

        let g = aumann();
        assert_eq!(dominance(&g, 0, 0, 1).unwrap(), Dominance::None);
        assert!(!has_strictly_dominant_strategy(&g, 0).unwrap());
        assert!(!has_strictly_dominant_strategy(&g, 1).unwrap());

        let dup = Game::bimatrix(
            vec![vec![int(1), int(2)], vec![int(1), int(2)]],
            vec![vec![int(0), int(1)], vec![int(3), int(1)]],
        )
        .unwrap();
        assert_eq!(dominance(&dup, 0, 0, 1).unwrap(), Dominance::Equivalent);

        let weak = Game::bimatrix(
            vec![vec![int(1), int(2)], vec![int(1), int(1)]],
            vec![vec![int(0), int(0)], vec![int(0), int(0)]],
        )
        .unwrap();
        assert_eq!(dominance(&weak, 0, 0, 1).unwrap(), Dominance::WeaklyDominates);
        assert!(dominance(&weak, 0, 0, 0).is_err());
        assert!(dominance(&weak, 0, 0, 5).is_err());

        let single = Game::new(vec![1, 2], vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap();
        assert!(has_strictly_dominant_strategy(&single, 0).unwrap());
    }

    fn random_game(max_players: usize) -> impl Strategy<Value = Game> {
        prop::collection::vec(1usize..=3, 1..=max_players).prop_flat_map(|counts| {
            let profiles: usize = counts.iter().product();
            let n = counts.len();
            prop::collection::vec(prop::collection::vec(0i64..8, profiles), n).prop_map(
                move |layers| {
                    Game::new(
                        counts.clone(),
                        layers.into_iter().map(|l| l.into_iter().map(int).collect()).collect(),
                    )
                    .unwrap()
                },
            )
        })
    }

    fn random_mixed(g: &Game, seeds: &[u32]) -> MixedProfile {
        let mut it = seeds.iter().cycle();
        let strategies = (0..g.player_count())
            .map(|i| {
                let raw: Vec<u32> = (0..g.strategy_count(i)).map(|_| *it.next().unwrap() % 5).collect();
                let total: u32 = raw.iter().sum();
                if total == 0 {
                    let mut p = vec![int(0); raw.len()];
                    p[0] = int(1);
                    p
                } else {
                    raw.iter().map(|&r| ratio(r as i64, total as i64)).collect()
                }
            })
            .collect();
        MixedProfile::new(g, strategies).unwrap()
    }

    /// Nested expectation over each player's mixture, without building μ_p.
    fn nested_expected_surplus(g: &Game, p: &MixedProfile) -> Rational {
        fn go(g: &Game, p: &MixedProfile, player: usize, prefix: usize, weight: Rational) -> Rational {
            if player == g.player_count() {
                return g.surplus_at(prefix) * weight;
            }
            let mut acc = Rational::zero();
            for (s, q) in p.player(player).iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                acc += go(g, p, player + 1, prefix + s * g.stride(player), &weight * q);
            }
            acc
        }
        go(g, p, 0, 0, Rational::from_integer(1.into()))
    }

    proptest! {
        #[test]
        fn product_surplus_matches_nested_expectation(
            g in random_game(3), seeds in prop::collection::vec(0u32..100, 1..12)
        ) {
            let p = random_mixed(&g, &seeds);
            let mu = product_distribution(&g, &p);
            prop_assert_eq!(surplus(&g, &mu).unwrap(), nested_expected_surplus(&g, &p));
        }

        #[test]
        fn payoff_is_linear_in_mu(
            g in random_game(3),
            a in prop::collection::vec(0u32..5, 27),
            b in prop::collection::vec(0u32..5, 27),
            lambda in 0i64..=6,
        ) {
            let make = |raw: &[u32]| {
                let mut w: Vec<Rational> = raw[..g.profile_count()].iter().map(|&x| int(x as i64)).collect();
                w[0] += int(1);
                let total: Rational = w.iter().sum();
                w.into_iter().map(|x| x / &total).collect::<Vec<_>>()
            };
            let (wa, wb) = (make(&a), make(&b));
            let l = ratio(lambda, 6);
            let mix: Vec<Rational> = wa.iter().zip(&wb)
                .map(|(x, y)| &l * x + (int(1) - &l) * y).collect();
            let (ma, mb, mm) = (
                CorrelatedStrategy::from_dense(&g, &wa).unwrap(),
                CorrelatedStrategy::from_dense(&g, &wb).unwrap(),
                CorrelatedStrategy::from_dense(&g, &mix).unwrap(),
            );
            for i in 0..g.player_count() {
                let lhs = expected_payoff(&g, &mm, i).unwrap();
                let rhs = &l * expected_payoff(&g, &ma, i).unwrap()
                    + (int(1) - &l) * expected_payoff(&g, &mb, i).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            prop_assert!(opt(&g) >= surplus(&g, &ma).unwrap());
            prop_assert!(opt(&g) >= surplus(&g, &mm).unwrap());
        }

        #[test]
        fn opt_invariant_under_relabeling(g in random_game(2), shift in 0usize..3) {
            // Cyclically relabel player 0's strategies.
            let m0 = g.strategy_count(0);
            let layers: Vec<Vec<Rational>> = (0..g.player_count()).map(|i| {
                (0..g.profile_count()).map(|idx| {
                    let s = g.strategy_at(idx, 0);
                    g.payoff(i, g.deviate(idx, 0, (s + shift) % m0)).clone()
                }).collect()
            }).collect();
            let relabeled = Game::new(g.strategy_counts().to_vec(), layers).unwrap();
            prop_assert_eq!(opt(&relabeled), opt(&g));
        }
    }
}
