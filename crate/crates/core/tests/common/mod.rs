//! Brute-force reference computations, written directly from the
//! definitions and sharing no code with the library beyond payoff storage.

#![allow(dead_code)]

use gamevalue::rational::Rational;
use gamevalue::Game;
use num_traits::{One, Signed, Zero};

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Row-major index with the last player fastest.
pub fn index(counts: &[usize], profile: &[usize]) -> usize {
    profile.iter().zip(counts).fold(0, |acc, (s, m)| acc * m + s)
}

pub fn profiles(counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; counts.len()];
    loop {
        out.push(cur.clone());
        let mut i = counts.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < counts[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn payoff(g: &Game, player: usize, profile: &[usize]) -> Rational {
    g.payoff_layer(player)[index(g.strategy_counts(), profile)].clone()
}

pub fn surplus_at(g: &Game, profile: &[usize]) -> Rational {
    (0..g.player_count()).map(|i| payoff(g, i, profile)).sum()
}

pub fn opt(g: &Game) -> Rational {
    profiles(g.strategy_counts())
        .iter()
        .map(|p| surplus_at(g, p))
        .max()
        .unwrap()
}

fn with(profile: &[usize], i: usize, t: usize) -> Vec<usize> {
    let mut p = profile.to_vec();
    p[i] = t;
    p
}

pub fn pure_nash(g: &Game) -> Vec<Vec<usize>> {
    let counts = g.strategy_counts().to_vec();
    profiles(&counts)
        .into_iter()
        .filter(|p| {
            (0..counts.len()).all(|i| {
                let here = payoff(g, i, p);
                (0..counts[i]).all(|t| payoff(g, i, &with(p, i, t)) <= here)
            })
        })
        .collect()
}

pub type Dist = Vec<(Vec<usize>, Rational)>;

pub fn uniform(profiles: &[Vec<usize>]) -> Dist {
    let w = q(1, profiles.len() as i64);
    profiles.iter().map(|p| (p.clone(), w.clone())).collect()
}

/// Largest conditional deviation gain over players and ordered pairs.
pub fn max_ce_gain(g: &Game, mu: &Dist) -> Rational {
    let counts = g.strategy_counts();
    let mut best = Rational::zero();
    for i in 0..counts.len() {
        for s in 0..counts[i] {
            for t in 0..counts[i] {
                if s == t {
                    continue;
                }
                let gain: Rational = mu
                    .iter()
                    .filter(|(p, _)| p[i] == s)
                    .map(|(p, w)| w * (payoff(g, i, &with(p, i, t)) - payoff(g, i, p)))
                    .sum();
                if gain > best {
                    best = gain;
                }
            }
        }
    }
    best
}

pub fn is_ce(g: &Game, mu: &Dist) -> bool {
    let total: Rational = mu.iter().map(|(_, w)| w.clone()).sum();
    total == Rational::one() && mu.iter().all(|(_, w)| !w.is_negative()) && !max_ce_gain(g, mu).is_positive()
}

pub fn dist_surplus(g: &Game, mu: &Dist) -> Rational {
    mu.iter().map(|(p, w)| w * surplus_at(g, p)).sum()
}

pub fn product(strategies: &[Vec<Rational>]) -> Dist {
    let counts: Vec<usize> = strategies.iter().map(Vec::len).collect();
    profiles(&counts)
        .into_iter()
        .map(|p| {
            let w = p
                .iter()
                .enumerate()
                .fold(Rational::one(), |acc, (i, &s)| acc * &strategies[i][s]);
            (p, w)
        })
        .filter(|(_, w)| !w.is_zero())
        .collect()
}

fn expected(g: &Game, player: usize, strategies: &[Vec<Rational>]) -> Rational {
    product(strategies)
        .iter()
        .map(|(p, w)| w * payoff(g, player, p))
        .sum()
}

/// No player gains by any pure deviation.
pub fn is_nash(g: &Game, strategies: &[Vec<Rational>]) -> bool {
    (0..g.player_count()).all(|i| {
        let here = expected(g, i, strategies);
        (0..g.strategy_count(i)).all(|t| {
            let mut dev = strategies.to_vec();
            dev[i] = vec![Rational::zero(); g.strategy_count(i)];
            dev[i][t] = Rational::one();
            expected(g, i, &dev) <= here
        })
    })
}

pub fn mixed_surplus(g: &Game, strategies: &[Vec<Rational>]) -> Rational {
    dist_surplus(g, &product(strategies))
}

/// Dual feasibility: `α ≥ 0` and for every profile
/// `β + Σᵢ Σ_t αⁱ(t|sⁱ)(uⁱ(t,s⁻ⁱ) − uⁱ(s)) ≥ u(s)`.
pub fn dual_feasible(g: &Game, alpha: &[Vec<Vec<Rational>>], beta: &Rational) -> bool {
    if alpha.iter().flatten().flatten().any(Signed::is_negative) {
        return false;
    }
    profiles(g.strategy_counts()).iter().all(|p| {
        let mut lhs = beta.clone();
        for (i, a) in alpha.iter().enumerate() {
            for t in 0..g.strategy_count(i) {
                if t != p[i] {
                    lhs += &a[p[i]][t] * (payoff(g, i, &with(p, i, t)) - payoff(g, i, p));
                }
            }
        }
        lhs >= surplus_at(g, p)
    })
}

/// `v ≤ φ·b` for `b ≥ 0`, with `φ = (1 + √5)/2`.
pub fn at_most_phi_times(v: &Rational, b: &Rational) -> bool {
    let lhs = r(2) * v - b;
    !lhs.is_positive() || &lhs * &lhs <= r(5) * b * b
}
