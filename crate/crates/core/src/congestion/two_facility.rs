//! Two-facility machinery for linear, non-increasing forms.
//!
//! Facilities are relabeled internally so that `f` (index 0) has
//! `w_f(1) ≥ w_g(1)`; results are reported in the caller's labels. The split
//! `π_k = (n − k, k)` puts `k` players on `g`.
//!
//! The audit checks the mediation bound `v_C ≤ φ·B` with `φ = (1 + √5)/2`
//! and `B = max{u(π_s), u(q_{s+1})}`, where `s` is the largest equilibrium
//! split and `q_{s+1}` the mixed split profile at `k = s + 1`. The test is
//! exact: for `B ≥ 0`, `v_C ≤ φB ⟺ 2v_C − B ≤ 0 ∨ (2v_C − B)² ≤ 5B²`.

use num_traits::{One, Signed, Zero};

use super::{induce_game, surplus_of_vector, vector_in_equilibrium, CongestionForm, CongestionVector};
use crate::equilibria::max_surplus_ce;
use crate::error::{Error, Result};
use crate::game::{product_distribution, surplus, MixedProfile};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitInfo {
    /// Largest `s` with `(n − s, s)` in equilibrium, in normalized labels.
    pub s: usize,
    /// Whether the caller's facility 1 plays the role of `f`.
    pub swapped: bool,
}

fn require_two(form: &CongestionForm) -> Result<()> {
    if form.facility_count() != 2 {
        return Err(Error::Precondition(format!(
            "two facilities required, form has {}",
            form.facility_count()
        )));
    }
    Ok(())
}

/// `(normalized form, swapped)` with `w_f(1) ≥ w_g(1)`.
fn normalized(form: &CongestionForm) -> Result<(CongestionForm, bool)> {
    require_two(form)?;
    let swapped = form.payoff(0, 1) < form.payoff(1, 1);
    Ok(if swapped {
        (form.permuted(&[1, 0]), true)
    } else {
        (form.clone(), false)
    })
}

fn split(form: &CongestionForm, k: usize) -> CongestionVector {
    CongestionVector(vec![form.players() - k, k])
}

pub fn largest_equilibrium_split(form: &CongestionForm) -> Result<SplitInfo> {
    let (norm, swapped) = normalized(form)?;
    let n = norm.players();
    (0..=n)
        .rev()
        .find(|&k| vector_in_equilibrium(&norm, &split(&norm, k)))
        .map(|s| SplitInfo { s, swapped })
        .ok_or_else(|| Error::Precondition("no equilibrium split exists".into()))
}

/// `u(π_j) ≤ u(π_s)` for every `j ≤ s`.
pub fn lower_splits_bounded(form: &CongestionForm) -> Result<bool> {
    let (norm, _) = normalized(form)?;
    let s = largest_equilibrium_split(form)?.s;
    let top = surplus_of_vector(&norm, &split(&norm, s));
    Ok((0..=s).all(|j| surplus_of_vector(&norm, &split(&norm, j)) <= top))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSplit {
    /// In the caller's facility labels. The first `n − k` players sit on `f`.
    pub profile: MixedProfile,
    /// Probability each of the last `k` players picks `g`.
    pub p_k: Rational,
    pub k: usize,
    /// Closed-form surplus `n·w_f(n) + p_k·d_f·((n−k)k + k(k−1))`.
    pub formula_surplus: Rational,
}

fn linear_non_increasing(norm: &CongestionForm) -> Result<(Rational, Rational)> {
    if !norm.is_non_increasing() {
        return Err(Error::Precondition("facilities must be non-increasing".into()));
    }
    match (norm.decrement(0), norm.decrement(1)) {
        (Some(df), Some(dg)) => Ok((df, dg)),
        _ => Err(Error::Precondition("facilities must be linear".into())),
    }
}

pub fn mixed_split_surplus_formula(
    n: usize,
    k: usize,
    w_f_n: &Rational,
    d_f: &Rational,
    p_k: &Rational,
) -> Rational {
    let r = |x: usize| Rational::from_integer(x.into());
    r(n) * w_f_n + p_k * d_f * (r((n - k) * k) + r(k * (k - 1)))
}

/// The profile where `n − k` players sit on `f` and `k` players each pick `g`
/// with probability `p_k = (w_g(1) − w_f(n)) / ((k−1)(d_f + d_g))`.
pub fn mixed_split_profile(form: &CongestionForm, k: usize) -> Result<MixedSplit> {
    let (norm, swapped) = normalized(form)?;
    let (d_f, d_g) = linear_non_increasing(&norm)?;
    let n = norm.players();
    let s = largest_equilibrium_split(form)?.s;
    if k > n || k <= s {
        return Err(Error::Precondition(format!(
            "k = {k} must satisfy s = {s} < k <= n = {n}"
        )));
    }
    if k < 2 {
        return Err(Error::NotApplicable("k = 1 makes p_k undefined".into()));
    }
    let denom = Rational::from_integer((k - 1).into()) * (&d_f + &d_g);
    if denom.is_zero() {
        return Err(Error::NotApplicable("d_f + d_g = 0".into()));
    }
    let w_f_n = norm.payoff(0, n);
    let p_k = (norm.payoff(1, 1) - &w_f_n) / denom;
    if p_k.is_negative() || p_k > Rational::one() {
        return Err(Error::NotApplicable(format!(
            "p_k = {} is not a probability",
            crate::rational::format_rational(&p_k)
        )));
    }
    let (f_idx, g_idx) = if swapped { (1, 0) } else { (0, 1) };
    let strategies = (0..n)
        .map(|i| {
            let mut q = vec![Rational::zero(); 2];
            if i < n - k {
                q[f_idx] = Rational::one();
            } else {
                q[g_idx] = p_k.clone();
                q[f_idx] = Rational::one() - &p_k;
            }
            q
        })
        .collect();
    let profile = MixedProfile::new(&induce_game(form), strategies)?;
    let formula_surplus = mixed_split_surplus_formula(n, k, &w_f_n, &d_f, &p_k);
    Ok(MixedSplit {
        profile,
        p_k,
        k,
        formula_surplus,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRatioAudit {
    pub v_c: Rational,
    /// `B`; the bound is `φ·B`.
    pub base: Rational,
    pub split: usize,
    /// The mixed split at `s + 1` was not applicable, so `B = u(π_s)`.
    pub fallback: bool,
    pub pass: bool,
}

/// Exact `value ≤ φ·base` for `base ≥ 0`.
pub fn within_golden_ratio(value: &Rational, base: &Rational) -> bool {
    let lhs = Rational::from_integer(2.into()) * value - base;
    !lhs.is_positive() || &lhs * &lhs <= Rational::from_integer(5.into()) * base * base
}

pub fn golden_ratio_audit(form: &CongestionForm) -> Result<GoldenRatioAudit> {
    let (norm, _) = normalized(form)?;
    linear_non_increasing(&norm)?;
    let s = largest_equilibrium_split(form)?.s;
    let u_s = surplus_of_vector(&norm, &split(&norm, s));
    let game = induce_game(form);
    let (base, fallback) = if s < norm.players() {
        match mixed_split_profile(form, s + 1) {
            Ok(q) => {
                let u_q = surplus(&game, &product_distribution(&game, &q.profile))?;
                (u_s.max(u_q), false)
            }
            Err(Error::NotApplicable(_)) => (u_s, true),
            Err(e) => return Err(e),
        }
    } else {
        (u_s, true)
    };
    let v_c = max_surplus_ce(&game)?.value;
    let pass = within_golden_ratio(&v_c, &base);
    Ok(GoldenRatioAudit {
        v_c,
        base,
        split: s,
        fallback,
        pass,
    })
}
