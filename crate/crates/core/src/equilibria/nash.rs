//! Nash equilibria at desk scale.
//!
//! Two-player games are solved exactly. In a nondegenerate game every
//! equilibrium has equal-size supports and is found by support enumeration.
//! Degenerate games (a mixed strategy with more pure best responses than its
//! support size) are detected through the label counts of the best-response
//! polytopes and solved by enumerating completely labeled vertex pairs, which
//! yields every extreme equilibrium. Surplus is bilinear, so its maximum over
//! the equilibrium set is attained at an extreme equilibrium either way.
//!
//! For three or more players only pure equilibria plus caller-supplied,
//! verified candidates are available; the result says so.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{deviation_payoffs, product_distribution, surplus, Game, MixedProfile, PureProfile};
use crate::linalg::{combinations, solve_square};
use crate::rational::Rational;

/// How much of the equilibrium set a [`NashSet`] covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Completeness {
    /// Every extreme equilibrium is listed; the best surplus is exact.
    Complete,
    /// Only pure equilibria were enumerated.
    PureOnly,
    /// Pure equilibria plus verified candidates.
    Partial,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::Complete => "complete",
            Completeness::PureOnly => "pure_only",
            Completeness::Partial => "partial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashEquilibrium {
    pub profile: MixedProfile,
    pub surplus: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashSet {
    pub equilibria: Vec<NashEquilibrium>,
    pub completeness: Completeness,
    pub degenerate: bool,
}

impl NashSet {
    pub fn best_surplus(&self) -> Option<Rational> {
        self.equilibria.iter().map(|e| e.surplus.clone()).max()
    }
}

fn is_pure_nash(game: &Game, idx: usize) -> bool {
    (0..game.player_count()).all(|i| {
        let here = game.payoff(i, idx);
        (0..game.strategy_count(i)).all(|t| game.payoff(i, game.deviate(idx, i, t)) <= here)
    })
}

/// Pure profiles where no player gains by a unilateral pure deviation.
pub fn pure_nash(game: &Game) -> Vec<PureProfile> {
    (0..game.profile_count())
        .filter(|&idx| is_pure_nash(game, idx))
        .map(|idx| game.profile(idx))
        .collect()
}

/// `maxᵢ max_t [uⁱ(p⁻ⁱ,t) − uⁱ(p)]`. Always `≥ 0`; zero exactly at a Nash
/// equilibrium.
pub fn best_regret(game: &Game, p: &MixedProfile) -> Rational {
    let mut worst = Rational::zero();
    for i in 0..game.player_count() {
        let dev = deviation_payoffs(game, p, i);
        let current: Rational = dev
            .iter()
            .zip(p.player(i))
            .filter(|(_, q)| !q.is_zero())
            .map(|(u, q)| u * q)
            .sum();
        if let Some(best) = dev.iter().max() {
            let gain = best - current;
            if gain > worst {
                worst = gain;
            }
        }
    }
    worst
}

fn equilibrium(game: &Game, profile: MixedProfile) -> NashEquilibrium {
    let surplus = surplus(game, &product_distribution(game, &profile))
        .expect("profile built from this game");
    NashEquilibrium { profile, surplus }
}

fn require_two_players(game: &Game) -> Result<(usize, usize)> {
    if game.player_count() != 2 {
        return Err(Error::Unsupported(format!(
            "two-player enumeration called on a {}-player game",
            game.player_count()
        )));
    }
    Ok((game.strategy_count(0), game.strategy_count(1)))
}

/// Row player's payoff `A[r][c]` and column player's `B[r][c]`.
fn matrices(game: &Game) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let (m1, m2) = (game.strategy_count(0), game.strategy_count(1));
    let layer = |i: usize| {
        (0..m1)
            .map(|r| (0..m2).map(|c| game.payoff(i, r * m2 + c).clone()).collect())
            .collect()
    };
    (layer(0), layer(1))
}

/// Solves for a mixture over `cols` that makes every row in `rows` earn the
/// same payoff `v` against it. Returns `(mixture over cols, v)`.
fn indifference(
    payoff: impl Fn(usize, usize) -> Rational,
    rows: &[usize],
    cols: &[usize],
) -> Option<(Vec<Rational>, Rational)> {
    let k = cols.len();
    debug_assert_eq!(rows.len(), k);
    let mut a = Vec::with_capacity(k + 1);
    let mut b = Vec::with_capacity(k + 1);
    for &r in rows {
        let mut row: Vec<Rational> = cols.iter().map(|&c| payoff(r, c)).collect();
        row.push(-Rational::one());
        a.push(row);
        b.push(Rational::zero());
    }
    let mut norm = vec![Rational::one(); k];
    norm.push(Rational::zero());
    a.push(norm);
    b.push(Rational::one());
    let mut x = solve_square(a, b)?;
    let v = x.pop()?;
    Some((x, v))
}

fn spread(support: &[usize], weights: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&s, w) in support.iter().zip(weights) {
        out[s] = w.clone();
    }
    out
}

fn nondegenerate_support_enumeration(game: &Game) -> Vec<MixedProfile> {
    let (a, b) = matrices(game);
    let (m1, m2) = (a.len(), a[0].len());
    let mut found = Vec::new();
    for k in 1..=m1.min(m2) {
        for rows in combinations(m1, k) {
            for cols in combinations(m2, k) {
                // Column mixture keeps the row player indifferent over `rows`.
                let Some((q, v)) = indifference(|r, c| a[r][c].clone(), &rows, &cols) else {
                    continue;
                };
                if q.iter().any(|x| !x.is_positive()) {
                    continue;
                }
                let Some((p, w)) = indifference(|c, r| b[r][c].clone(), &cols, &rows) else {
                    continue;
                };
                if p.iter().any(|x| !x.is_positive()) {
                    continue;
                }
                let q_full = spread(&cols, &q, m2);
                let p_full = spread(&rows, &p, m1);
                let row_ok = (0..m1).all(|r| {
                    let payoff: Rational = (0..m2).map(|c| &a[r][c] * &q_full[c]).sum();
                    payoff <= v
                });
                let col_ok = (0..m2).all(|c| {
                    let payoff: Rational = (0..m1).map(|r| &b[r][c] * &p_full[r]).sum();
                    payoff <= w
                });
                if row_ok && col_ok {
                    found.push(
                        MixedProfile::new(game, vec![p_full, q_full])
                            .expect("indifference solution is a distribution"),
                    );
                }
            }
        }
    }
    found
}

/// A vertex of a best-response polytope with its label set.
#[derive(Debug, Clone)]
struct LabeledVertex {
    point: Vec<Rational>,
    labels: BTreeSet<usize>,
}

/// Vertices of `{z ∈ ℝᵈ : z ≥ 0, M z ≤ 1}` where `M` has `k` rows. Label
/// `sign_label(j)` marks `z_j = 0`; `row_label(r)` marks `(M z)_r = 1`.
fn polytope_vertices(
    m: &[Vec<Rational>],
    dim: usize,
    sign_label: impl Fn(usize) -> usize,
    row_label: impl Fn(usize) -> usize,
) -> Vec<LabeledVertex> {
    let rows = m.len();
    let total = dim + rows;
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut out = Vec::new();
    for tight in combinations(total, dim) {
        let mut a = Vec::with_capacity(dim);
        let mut rhs = Vec::with_capacity(dim);
        for &c in &tight {
            if c < dim {
                let mut e = vec![Rational::zero(); dim];
                e[c] = Rational::one();
                a.push(e);
                rhs.push(Rational::zero());
            } else {
                a.push(m[c - dim].clone());
                rhs.push(Rational::one());
            }
        }
        let Some(z) = solve_square(a, rhs) else {
            continue;
        };
        if z.iter().any(Signed::is_negative) {
            continue;
        }
        let products: Vec<Rational> = m
            .iter()
            .map(|row| row.iter().zip(&z).map(|(x, y)| x * y).sum())
            .collect();
        if products.iter().any(|v| *v > Rational::one()) {
            continue;
        }
        if !seen.insert(z.clone()) {
            continue;
        }
        let mut labels = BTreeSet::new();
        for (j, x) in z.iter().enumerate() {
            if x.is_zero() {
                labels.insert(sign_label(j));
            }
        }
        for (r, v) in products.iter().enumerate() {
            if v.is_one() {
                labels.insert(row_label(r));
            }
        }
        out.push(LabeledVertex { point: z, labels });
    }
    out
}

struct BestResponsePolytopes {
    row_side: Vec<LabeledVertex>,
    col_side: Vec<LabeledVertex>,
    degenerate: bool,
}

/// Best-response polytopes `P = {x ≥ 0 : Bᵀx ≤ 1}` and `Q = {y ≥ 0 : Ay ≤ 1}`
/// for payoffs shifted to be strictly positive. Labels `0..m1` are row
/// strategies, `m1..m1+m2` column strategies.
fn best_response_polytopes(game: &Game) -> BestResponsePolytopes {
    let (a, b) = matrices(game);
    let (m1, m2) = (a.len(), a[0].len());
    let shift = |x: &Rational| x + Rational::one();
    let a_pos: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(shift).collect()).collect();
    let b_t_pos: Vec<Vec<Rational>> = (0..m2)
        .map(|c| (0..m1).map(|r| shift(&b[r][c])).collect())
        .collect();
    let row_side = polytope_vertices(&b_t_pos, m1, |j| j, |r| m1 + r);
    let col_side = polytope_vertices(&a_pos, m2, |j| m1 + j, |r| r);
    let degenerate = row_side.iter().any(|v| v.labels.len() > m1)
        || col_side.iter().any(|v| v.labels.len() > m2);
    BestResponsePolytopes {
        row_side,
        col_side,
        degenerate,
    }
}

fn normalize(z: &[Rational]) -> Vec<Rational> {
    let total: Rational = z.iter().sum();
    z.iter().map(|x| x / &total).collect()
}

/// Every extreme equilibrium of a two-player game, found as completely
/// labeled vertex pairs of the best-response polytopes. Works for degenerate
/// games.
pub fn vertex_enumeration_2p(game: &Game) -> Result<Vec<MixedProfile>> {
    let (m1, m2) = require_two_players(game)?;
    let polys = best_response_polytopes(game);
    Ok(labeled_pairs(game, &polys, m1 + m2))
}

fn labeled_pairs(game: &Game, polys: &BestResponsePolytopes, labels: usize) -> Vec<MixedProfile> {
    let mut out = Vec::new();
    for x in &polys.row_side {
        if x.point.iter().all(Zero::is_zero) {
            continue;
        }
        for y in &polys.col_side {
            if y.point.iter().all(Zero::is_zero) {
                continue;
            }
            if x.labels.union(&y.labels).count() == labels {
                out.push(
                    MixedProfile::new(game, vec![normalize(&x.point), normalize(&y.point)])
                        .expect("normalized vertex is a distribution"),
                );
            }
        }
    }
    out
}

/// All Nash equilibria of a two-player game (extreme ones, for degenerate
/// games), with surpluses.
pub fn support_enumeration_2p(game: &Game) -> Result<NashSet> {
    let (m1, m2) = require_two_players(game)?;
    let polys = best_response_polytopes(game);
    let profiles = if polys.degenerate {
        labeled_pairs(game, &polys, m1 + m2)
    } else {
        nondegenerate_support_enumeration(game)
    };
    let equilibria = profiles.into_iter().map(|p| equilibrium(game, p)).collect();
    Ok(NashSet {
        equilibria,
        completeness: Completeness::Complete,
        degenerate: polys.degenerate,
    })
}

/// Equilibria available for `game`: exact for one or two players, pure
/// enumeration plus the verified `candidates` otherwise.
pub fn nash_set(game: &Game, candidates: &[MixedProfile]) -> Result<NashSet> {
    for (k, c) in candidates.iter().enumerate() {
        let regret = best_regret(game, c);
        if !regret.is_zero() {
            return Err(Error::NotAnEquilibrium(format!(
                "candidate {k} {c} has best deviation gain {}",
                crate::rational::format_rational(&regret)
            )));
        }
    }
    match game.player_count() {
        2 => support_enumeration_2p(game),
        n => {
            let mut equilibria: Vec<NashEquilibrium> = pure_nash(game)
                .iter()
                .map(|s| equilibrium(game, MixedProfile::pure(game, s).expect("valid profile")))
                .collect();
            // One player: every equilibrium mixes over maximizers, all with
            // the same payoff, so pure enumeration is exhaustive.
            let completeness = if n == 1 {
                Completeness::Complete
            } else if candidates.is_empty() {
                Completeness::PureOnly
            } else {
                Completeness::Partial
            };
            for c in candidates {
                if !equilibria.iter().any(|e| &e.profile == c) {
                    equilibria.push(equilibrium(game, c.clone()));
                }
            }
            Ok(NashSet {
                equilibria,
                completeness,
                degenerate: false,
            })
        }
    }
}

/// Best Nash surplus. `value` is `None` only when nothing was found by an
/// incomplete method; with `Complete` it is exact, otherwise a lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashValue {
    pub value: Option<Rational>,
    pub completeness: Completeness,
}

impl From<&NashSet> for NashValue {
    fn from(set: &NashSet) -> Self {
        NashValue {
            value: set.best_surplus(),
            completeness: set.completeness,
        }
    }
}

pub fn nash_value(game: &Game) -> Result<NashValue> {
    nash_set(game, &[]).map(|s| NashValue::from(&s))
}
