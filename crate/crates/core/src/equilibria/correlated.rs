//! Correlated equilibria: the incentive test and the maximal-surplus LP.
//!
//! The LP over `μ ∈ Δ(S)` maximizes `Σ_s μ(s)·u(s)` subject to `Σ_s μ(s) = 1`
//! and, for every player `i` and ordered pair `s ≠ t` of her strategies,
//! `Σ_{s⁻ⁱ} μ(s⁻ⁱ,s)·[uⁱ(s⁻ⁱ,t) − uⁱ(s⁻ⁱ,s)] ≤ 0`. Its dual assigns
//! `αⁱ(t|s) ≥ 0` to the incentive rows and a free `β` to the normalization
//! row; `β` bounds the best correlated surplus from above, with equality at
//! the optimum.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{CorrelatedStrategy, Game};
use crate::lp::{self, LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;

/// Deviation gains `Σ_{s⁻ⁱ} μ(s⁻ⁱ,s)·[uⁱ(s⁻ⁱ,t) − uⁱ(s⁻ⁱ,s)]`, indexed
/// `[player][recommended][deviation]`. The diagonal is zero. A correlated
/// equilibrium has every entry `≤ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegretTable {
    entries: Vec<Vec<Vec<Rational>>>,
}

impl RegretTable {
    pub fn gain(&self, player: usize, recommended: usize, deviation: usize) -> &Rational {
        &self.entries[player][recommended][deviation]
    }

    pub fn entries(&self) -> &[Vec<Vec<Rational>>] {
        &self.entries
    }

    /// The largest deviation gain over all players and pairs.
    pub fn max_gain(&self) -> Rational {
        self.entries
            .iter()
            .flatten()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

pub fn regret_table(game: &Game, mu: &CorrelatedStrategy) -> Result<RegretTable> {
    let mut entries: Vec<Vec<Vec<Rational>>> = (0..game.player_count())
        .map(|i| {
            let m = game.strategy_count(i);
            vec![vec![Rational::zero(); m]; m]
        })
        .collect();
    for (profile, w) in mu.support() {
        let idx = game.profile_index(profile)?;
        for (i, table) in entries.iter_mut().enumerate() {
            let s = profile.0[i];
            let here = game.payoff(i, idx);
            for t in 0..game.strategy_count(i) {
                if t == s {
                    continue;
                }
                let there = game.payoff(i, game.deviate(idx, i, t));
                table[s][t] += (there - here) * w;
            }
        }
    }
    Ok(RegretTable { entries })
}

pub fn is_correlated_equilibrium(game: &Game, mu: &CorrelatedStrategy) -> Result<bool> {
    Ok(!regret_table(game, mu)?.max_gain().is_positive())
}

/// A feasible point of the dual LP. `alpha[i][s][t]` prices the incentive
/// row for player `i` recommended `s` and tempted by `t`; the diagonal is
/// unused and kept at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub alpha: Vec<Vec<Vec<Rational>>>,
    pub beta: Rational,
}

impl DualCertificate {
    /// All `α = 0` with the given `β`.
    pub fn trivial(game: &Game, beta: Rational) -> Self {
        let alpha = (0..game.player_count())
            .map(|i| {
                let m = game.strategy_count(i);
                vec![vec![Rational::zero(); m]; m]
            })
            .collect();
        DualCertificate { alpha, beta }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeSolution {
    pub value: Rational,
    pub distribution: CorrelatedStrategy,
    pub certificate: DualCertificate,
}

/// Row labels of [`ce_program`]: row 0 is the normalization, the rest are
/// `(player, recommended, deviation)` incentive rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeProgram {
    pub lp: LinearProgram,
    pub incentive_rows: Vec<(usize, usize, usize)>,
}

/// Builds the maximal-surplus correlated-equilibrium LP. Variable `k` is
/// `μ` at profile index `k`.
pub fn ce_program(game: &Game) -> CeProgram {
    let profiles = game.profile_count();
    let objective = (0..profiles).map(|p| game.surplus_at(p)).collect();
    let mut program = LinearProgram::maximize(objective);
    let one = Rational::from_integer(1.into());
    program
        .add_constraint(vec![one.clone(); profiles], Relation::Eq, one)
        .expect("row width matches");
    let mut incentive_rows = Vec::new();
    for i in 0..game.player_count() {
        let m = game.strategy_count(i);
        for s in 0..m {
            for t in (0..m).filter(|&t| t != s) {
                let mut row = vec![Rational::zero(); profiles];
                for (idx, slot) in row.iter_mut().enumerate() {
                    if game.strategy_at(idx, i) == s {
                        *slot = game.payoff(i, game.deviate(idx, i, t)) - game.payoff(i, idx);
                    }
                }
                program
                    .add_constraint(row, Relation::Le, Rational::zero())
                    .expect("row width matches");
                incentive_rows.push((i, s, t));
            }
        }
    }
    CeProgram {
        lp: program,
        incentive_rows,
    }
}

/// The best correlated equilibrium and a dual certificate of its optimality.
///
/// Ties between optimal vertices are broken by the simplex pivoting order;
/// the returned distribution is one optimum, not a canonical one.
pub fn max_surplus_ce(game: &Game) -> Result<CeSolution> {
    let program = ce_program(game);
    let solution = match lp::solve(&program.lp)? {
        LpOutcome::Optimal(s) => s,
        other => {
            return Err(Error::Lp(format!(
                "correlated-equilibrium program reported {other:?}"
            )))
        }
    };
    let distribution = CorrelatedStrategy::from_dense(game, &solution.primal)?;
    let mut certificate = DualCertificate::trivial(game, solution.duals[0].clone());
    for (row, &(i, s, t)) in program.incentive_rows.iter().enumerate() {
        certificate.alpha[i][s][t] = solution.duals[row + 1].clone();
    }
    Ok(CeSolution {
        value: solution.objective_value,
        distribution,
        certificate,
    })
}

/// Checks every dual constraint exactly:
/// `αⁱ(t|s) ≥ 0` and, for every profile `s`,
/// `Σᵢ Σ_{t≠sⁱ} αⁱ(t|sⁱ)·[uⁱ(t,s⁻ⁱ) − uⁱ(s)] + β ≥ u(s)`.
/// Any certificate that passes proves the best correlated surplus is at most `β`.
pub fn verify_dual_certificate(game: &Game, cert: &DualCertificate) -> Result<bool> {
    if cert.alpha.len() != game.player_count() {
        return Err(Error::Dimension(format!(
            "certificate covers {} players, game has {}",
            cert.alpha.len(),
            game.player_count()
        )));
    }
    for (i, a) in cert.alpha.iter().enumerate() {
        let m = game.strategy_count(i);
        if a.len() != m || a.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension(format!(
                "certificate for player {i} is not {m}×{m}"
            )));
        }
        if a.iter().flatten().any(Signed::is_negative) {
            return Ok(false);
        }
    }
    for idx in 0..game.profile_count() {
        let mut lhs = cert.beta.clone();
        for (i, a) in cert.alpha.iter().enumerate() {
            let s = game.strategy_at(idx, i);
            let here = game.payoff(i, idx);
            for (t, alpha) in a[s].iter().enumerate() {
                if t == s || alpha.is_zero() {
                    continue;
                }
                lhs += alpha * (game.payoff(i, game.deviate(idx, i, t)) - here);
            }
        }
        if lhs < game.surplus_at(idx) {
            return Ok(false);
        }
    }
    Ok(true)
}
