//! Simple congestion games.
//!
//! Each of `n` players picks one of `m` facilities; a user of facility `j`
//! shared by `k` players receives `w_j(k)` (with `w_j(0) = 0`). Payoffs
//! depend on a profile only through its occupancy vector `π`, so most
//! questions here are answered on vectors rather than on the `mⁿ` profiles.

mod symmetric;
mod two_facility;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, PureProfile};
use crate::rational::{format_rational, Rational};

pub use symmetric::{
    concave_optimal_equilibrium, is_concave_load_value, uniform_optimal_ce, ConcaveOutcome,
    UniformCeOutcome,
};
pub use two_facility::{
    golden_ratio_audit, largest_equilibrium_split, lower_splits_bounded, mixed_split_profile,
    mixed_split_surplus_formula, GoldenRatioAudit, MixedSplit, SplitInfo,
};

/// Facility payoff tables `w[j][k-1] = w_j(k)` for `k = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongestionForm {
    players: usize,
    w: Vec<Vec<Rational>>,
}

impl CongestionForm {
    pub fn new(players: usize, w: Vec<Vec<Rational>>) -> Result<Self> {
        if players == 0 {
            return Err(Error::Dimension("a congestion form needs at least one player".into()));
        }
        if w.is_empty() {
            return Err(Error::Dimension("a congestion form needs at least one facility".into()));
        }
        for (j, table) in w.iter().enumerate() {
            if table.len() != players {
                return Err(Error::Dimension(format!(
                    "facility {j} has {} payoffs, expected {players}",
                    table.len()
                )));
            }
            if let Some(k) = table.iter().position(Signed::is_negative) {
                return Err(Error::NegativePayoff {
                    locus: format!("facility {j}, load {}", k + 1),
                    value: format_rational(&table[k]),
                });
            }
        }
        Ok(CongestionForm { players, w })
    }

    /// Every facility uses the same table.
    pub fn symmetric(players: usize, facilities: usize, w: Vec<Rational>) -> Result<Self> {
        CongestionForm::new(players, vec![w; facilities])
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn facility_count(&self) -> usize {
        self.w.len()
    }

    pub fn tables(&self) -> &[Vec<Rational>] {
        &self.w
    }

    /// `w_j(k)`, zero for `k = 0`.
    pub fn payoff(&self, facility: usize, load: usize) -> Rational {
        if load == 0 {
            Rational::zero()
        } else {
            self.w[facility][load - 1].clone()
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.w.windows(2).all(|p| p[0] == p[1])
    }

    pub fn is_non_increasing(&self) -> bool {
        self.w.iter().all(|t| t.windows(2).all(|p| p[0] >= p[1]))
    }

    /// `d_j = w_j(k) − w_j(k+1)` when constant over `k = 1..n−1`.
    pub fn decrement(&self, facility: usize) -> Option<Rational> {
        let t = &self.w[facility];
        if t.len() < 2 {
            return Some(Rational::zero());
        }
        let d = &t[0] - &t[1];
        t.windows(2).all(|p| &p[0] - &p[1] == d).then_some(d)
    }

    pub fn is_linear(&self) -> bool {
        (0..self.facility_count()).all(|j| self.decrement(j).is_some())
    }

    /// Same form with facilities reordered: new facility `j` is old `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> CongestionForm {
        CongestionForm {
            players: self.players,
            w: order.iter().map(|&j| self.w[j].clone()).collect(),
        }
    }
}

/// Occupancy counts `π_j`, summing to the number of players.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongestionVector(Vec<usize>);

impl CongestionVector {
    pub fn new(form: &CongestionForm, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != form.facility_count() {
            return Err(Error::Dimension(format!(
                "vector has {} entries for {} facilities",
                counts.len(),
                form.facility_count()
            )));
        }
        let total: usize = counts.iter().sum();
        if total != form.players() {
            return Err(Error::Dimension(format!(
                "vector sums to {total}, expected {} players",
                form.players()
            )));
        }
        Ok(CongestionVector(counts))
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for CongestionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The strategic-form game: player `i` choosing `j` earns `w_j(σ_j)`.
pub fn induce_game(form: &CongestionForm) -> Game {
    let n = form.players();
    let m = form.facility_count();
    let profiles = m.pow(n as u32);
    let mut layers = vec![Vec::with_capacity(profiles); n];
    let mut choice = vec![0usize; n];
    let mut load = vec![0usize; m];
    for idx in 0..profiles {
        // row-major: the last player varies fastest
        let mut rest = idx;
        for i in (0..n).rev() {
            choice[i] = rest % m;
            rest /= m;
        }
        load.iter_mut().for_each(|l| *l = 0);
        for &j in &choice {
            load[j] += 1;
        }
        for (i, layer) in layers.iter_mut().enumerate() {
            layer.push(form.payoff(choice[i], load[choice[i]]));
        }
    }
    Game::new(vec![m; n], layers).expect("induced game is well formed")
}

pub fn vector_of_profile(form: &CongestionForm, profile: &PureProfile) -> Result<CongestionVector> {
    if profile.0.len() != form.players() {
        return Err(Error::Dimension(format!(
            "profile {profile} has {} entries for {} players",
            profile.0.len(),
            form.players()
        )));
    }
    let mut counts = vec![0usize; form.facility_count()];
    for &j in &profile.0 {
        *counts.get_mut(j).ok_or_else(|| {
            Error::IndexOutOfRange(format!("facility {j} in profile {profile}"))
        })? += 1;
    }
    Ok(CongestionVector(counts))
}

/// `u(π) = Σ_j π_j·w_j(π_j)`.
pub fn surplus_of_vector(form: &CongestionForm, pi: &CongestionVector) -> Rational {
    pi.0.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| Rational::from_integer(c.into()) * form.payoff(j, c))
        .sum()
}

/// All occupancy vectors for `players` players over `facilities` facilities,
/// in lexicographic order.
pub fn all_vectors(players: usize, facilities: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            go(left - c, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if facilities > 0 {
        go(players, facilities, &mut Vec::new(), &mut out);
    }
    out
}

/// `B_π`: profiles realizing `π`, in lexicographic order.
pub fn enumerate_b(form: &CongestionForm, pi: &CongestionVector) -> Vec<PureProfile> {
    fn go(remaining: &mut [usize], prefix: &mut Vec<usize>, n: usize, out: &mut Vec<PureProfile>) {
        if prefix.len() == n {
            out.push(PureProfile(prefix.clone()));
            return;
        }
        for j in 0..remaining.len() {
            if remaining[j] == 0 {
                continue;
            }
            remaining[j] -= 1;
            prefix.push(j);
            go(remaining, prefix, n, out);
            prefix.pop();
            remaining[j] += 1;
        }
    }
    let mut out = Vec::new();
    let mut remaining = pi.0.clone();
    go(&mut remaining, &mut Vec::new(), form.players(), &mut out);
    out
}

/// Distinct rearrangements `τπ` of a vector.
pub fn permutations_of(pi: &CongestionVector) -> Vec<CongestionVector> {
    fn go(pool: &mut Vec<(usize, usize)>, prefix: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for k in 0..pool.len() {
            if pool[k].1 == 0 {
                continue;
            }
            pool[k].1 -= 1;
            prefix.push(pool[k].0);
            go(pool, prefix, len, out);
            prefix.pop();
            pool[k].1 += 1;
        }
    }
    let mut values: Vec<usize> = pi.0.clone();
    values.sort_unstable();
    values.dedup();
    let mut pool: Vec<(usize, usize)> = values
        .iter()
        .map(|&v| (v, pi.0.iter().filter(|&&c| c == v).count()))
        .collect();
    let mut out = Vec::new();
    go(&mut pool, &mut Vec::new(), pi.0.len(), &mut out);
    out.into_iter().map(CongestionVector).collect()
}

/// `A_π = ⋃_τ B_{τπ}`, deduplicated and sorted.
pub fn enumerate_a(form: &CongestionForm, pi: &CongestionVector) -> Vec<PureProfile> {
    let set: BTreeSet<PureProfile> = permutations_of(pi)
        .iter()
        .flat_map(|tau_pi| enumerate_b(form, tau_pi))
        .collect();
    set.into_iter().collect()
}

/// No user of an occupied facility `j` gains by moving to another facility
/// `j'`, i.e. `w_{j'}(π_{j'} + 1) ≤ w_j(π_j)`. Payoffs depend only on counts,
/// so this decides equilibrium for every profile in `B_π` at once.
pub fn vector_in_equilibrium(form: &CongestionForm, pi: &CongestionVector) -> bool {
    let m = form.facility_count();
    (0..m).filter(|&j| pi.0[j] > 0).all(|j| {
        let here = form.payoff(j, pi.0[j]);
        (0..m)
            .filter(|&k| k != j)
            .all(|k| form.payoff(k, pi.0[k] + 1) <= here)
    })
}

/// Round-robin best-response dynamics from the all-on-facility-0 profile.
/// Each improving move raises the potential, so this terminates. Returns the
/// equilibrium and the number of moves taken.
pub fn rosenthal_pure_eq(form: &CongestionForm) -> (PureProfile, usize) {
    let n = form.players();
    let m = form.facility_count();
    let mut choice = vec![0usize; n];
    let mut load = vec![0usize; m];
    load[0] = n;
    let mut moves = 0;
    loop {
        let mut moved = false;
        for i in 0..n {
            let here = choice[i];
            let current = form.payoff(here, load[here]);
            let best = (0..m)
                .filter(|&k| k != here)
                .map(|k| (k, form.payoff(k, load[k] + 1)))
                .filter(|(_, v)| *v > current)
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
            if let Some((k, _)) = best {
                load[here] -= 1;
                load[k] += 1;
                choice[i] = k;
                moves += 1;
                moved = true;
            }
        }
        if !moved {
            return (PureProfile(choice), moves);
        }
    }
}

/// Rosenthal's potential `Σ_j Σ_{k=1}^{π_j} w_j(k)`.
pub fn potential(form: &CongestionForm, pi: &CongestionVector) -> Rational {
    pi.0.iter()
        .enumerate()
        .flat_map(|(j, &c)| (1..=c).map(move |k| form.payoff(j, k)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::pure_nash;
    use crate::rational::{int, ratio};
    use crate::registry::{example1, example2};
    use proptest::prelude::*;

    fn v(form: &CongestionForm, c: &[usize]) -> CongestionVector {
        CongestionVector::new(form, c.to_vec()).unwrap()
    }

    #[test]
    fn flags() {
        let e1 = example1();
        assert!(!e1.is_symmetric());
        assert!(e1.is_non_increasing());
        assert!(e1.is_linear());
        assert_eq!(e1.decrement(0), Some(int(12)));
        assert_eq!(e1.decrement(1), Some(int(0)));
        let e2 = example2();
        assert!(e2.is_symmetric());
        assert!(!e2.is_non_increasing());
        assert!(!e2.is_linear());
        assert!(CongestionForm::new(2, vec![vec![int(1), int(-1)]]).is_err());
        assert!(CongestionForm::new(2, vec![vec![int(1)]]).is_err());
    }

    #[test]
    fn example1_induced_payoffs() {
        let f = example1();
        let g = induce_game(&f);
        let idx = g.profile_index(&PureProfile(vec![0, 0, 1])).unwrap();
        assert_eq!(
            (0..3).map(|i| g.payoff(i, idx).clone()).collect::<Vec<_>>(),
            vec![int(12), int(12), int(8)]
        );
        assert_eq!(g.surplus_at(idx), int(32));
    }

    #[test]
    fn single_player_payoffs() {
        let f = CongestionForm::new(1, vec![vec![int(3)], vec![int(7)]]).unwrap();
        let g = induce_game(&f);
        assert_eq!(g.payoff_layer(0), &[int(3), int(7)]);
        assert_eq!(rosenthal_pure_eq(&f).0, PureProfile(vec![1]));
    }

    #[test]
    fn vectors_and_surplus() {
        let e1 = example1();
        assert_eq!(vector_of_profile(&e1, &PureProfile(vec![0, 0, 1])).unwrap().counts(), &[2, 1]);
        assert_eq!(vector_of_profile(&e1, &PureProfile(vec![0, 0, 0])).unwrap().counts(), &[3, 0]);
        assert_eq!(surplus_of_vector(&e1, &v(&e1, &[3, 0])), int(0));
        let e2 = example2();
        let one_five = PureProfile(vec![0, 1, 1, 1, 1, 1]);
        assert_eq!(vector_of_profile(&e2, &one_five).unwrap().counts(), &[1, 5]);
        assert_eq!(surplus_of_vector(&e2, &v(&e2, &[3, 3])), int(24));
        assert_eq!(surplus_of_vector(&e2, &v(&e2, &[1, 5])), int(24));
        assert!(CongestionVector::new(&e2, vec![1, 1]).is_err());
        assert!(vector_of_profile(&e2, &PureProfile(vec![0, 2, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        let e1 = example1();
        assert_eq!(enumerate_b(&e1, &v(&e1, &[2, 1])).len(), 3);
        assert_eq!(enumerate_b(&e1, &v(&e1, &[3, 0])).len(), 1);
        let e2 = example2();
        let a = enumerate_a(&e2, &v(&e2, &[1, 5]));
        assert_eq!(a.len(), 12);
        let b = enumerate_b(&e2, &v(&e2, &[1, 5]));
        assert!(b.iter().all(|p| a.contains(p)));
        assert_eq!(enumerate_a(&e2, &v(&e2, &[3, 3])).len(), 20);
    }

    #[test]
    fn equilibrium_vectors() {
        let e1 = example1();
        assert!(vector_in_equilibrium(&e1, &v(&e1, &[2, 1])));
        let e2 = example2();
        assert!(!vector_in_equilibrium(&e2, &v(&e2, &[3, 3])));
        assert!(!vector_in_equilibrium(&e2, &v(&e2, &[1, 5])));
        assert!(vector_in_equilibrium(&e2, &v(&e2, &[6, 0])));
    }

    #[test]
    fn rosenthal_examples() {
        let e1 = example1();
        let (p, _) = rosenthal_pure_eq(&e1);
        assert_eq!(vector_of_profile(&e1, &p).unwrap().counts(), &[2, 1]);
        let constant = CongestionForm::symmetric(4, 3, vec![int(2); 4]).unwrap();
        assert_eq!(rosenthal_pure_eq(&constant), (PureProfile(vec![0; 4]), 0));
    }

    #[test]
    fn vector_test_matches_profile_enumeration() {
        for f in [example1(), example2()] {
            let g = induce_game(&f);
            let nash: BTreeSet<PureProfile> = pure_nash(&g).into_iter().collect();
            for counts in all_vectors(f.players(), f.facility_count()) {
                let pi = v(&f, &counts);
                let members = enumerate_b(&f, &pi);
                let all_eq = members.iter().all(|p| nash.contains(p));
                let none_eq = members.iter().all(|p| !nash.contains(p));
                assert!(all_eq || none_eq);
                assert_eq!(vector_in_equilibrium(&f, &pi), all_eq, "vector {pi}");
            }
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn random_form(symmetric: bool) -> impl Strategy<Value = CongestionForm> {
        (1usize..=4, 1usize..=3).prop_flat_map(move |(n, m)| {
            let tables = if symmetric { 1 } else { m };
            prop::collection::vec(prop::collection::vec(0i64..8, n), tables).prop_map(move |w| {
                let w: Vec<Vec<Rational>> = w.into_iter().map(|t| t.into_iter().map(|x| ratio(x, 2)).collect()).collect();
                if symmetric {
                    CongestionForm::symmetric(n, m, w[0].clone()).unwrap()
                } else {
                    CongestionForm::new(n, w).unwrap()
                }
            })
        })
    }

    proptest! {
        #[test]
        fn profile_surplus_matches_vector_surplus(f in random_form(false)) {
            let g = induce_game(&f);
            for idx in 0..g.profile_count() {
                let pi = vector_of_profile(&f, &g.profile(idx)).unwrap();
                prop_assert_eq!(g.surplus_at(idx), surplus_of_vector(&f, &pi));
            }
        }

        #[test]
        fn class_sizes_are_multinomial(f in random_form(false)) {
            let (n, m) = (f.players(), f.facility_count());
            let mut total = 0;
            for counts in all_vectors(n, m) {
                let mut left = n;
                let mut expected = 1;
                for &c in &counts[..m - 1] {
                    expected *= binom(left, c);
                    left -= c;
                }
                let b = enumerate_b(&f, &CongestionVector::new(&f, counts).unwrap()).len();
                prop_assert_eq!(b, expected);
                total += b;
            }
            prop_assert_eq!(total, m.pow(n as u32));
        }

        #[test]
        fn symmetric_surplus_is_permutation_invariant(f in random_form(true)) {
            for counts in all_vectors(f.players(), f.facility_count()) {
                let pi = CongestionVector::new(&f, counts).unwrap();
                let u = surplus_of_vector(&f, &pi);
                for tau_pi in permutations_of(&pi) {
                    prop_assert_eq!(surplus_of_vector(&f, &tau_pi), u.clone());
                }
            }
        }

        #[test]
        fn dynamics_terminate_in_equilibrium(f in random_form(false)) {
            let g = induce_game(&f);
            let (p, moves) = rosenthal_pure_eq(&f);
            prop_assert!(moves <= g.profile_count() * f.players());
            prop_assert!(pure_nash(&g).contains(&p));
        }
    }
}
