//! Mediation and enforcement values.
//!
//! `MV = v_C / v_N` and `EV = opt / v_C`, with `0/0 = 1` and `x/0 = ∞` for
//! `x > 0`. Infinity is a variant, never a float.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::equilibria::{max_surplus_ce, nash_set, CeSolution, Completeness, NashSet, NashValue};
use crate::error::Result;
use crate::game::{opt, Game, MixedProfile};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinite,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            ExtendedRational::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinite)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(r) => f.write_str(&format_rational(r)),
            ExtendedRational::Infinite => f.write_str("inf"),
        }
    }
}

/// `num / den` with the zero-denominator conventions.
pub fn convention_ratio(num: &Rational, den: &Rational) -> ExtendedRational {
    if !den.is_zero() {
        ExtendedRational::Finite(num / den)
    } else if num.is_zero() {
        ExtendedRational::Finite(Rational::from_integer(1.into()))
    } else {
        ExtendedRational::Infinite
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MediationValue {
    /// `v_N` is exact.
    Exact(ExtendedRational),
    /// `v_N` is only a lower bound, so this over-estimates the true value.
    UpperBound(ExtendedRational),
    /// No equilibrium was found by an incomplete method.
    Indeterminate,
}

impl MediationValue {
    pub fn value(&self) -> Option<&ExtendedRational> {
        match self {
            MediationValue::Exact(v) | MediationValue::UpperBound(v) => Some(v),
            MediationValue::Indeterminate => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MediationValue::Exact(_))
    }
}

impl fmt::Display for MediationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MediationValue::Exact(v) => write!(f, "{v}"),
            MediationValue::UpperBound(v) => write!(f, "<= {v} (upper bound)"),
            MediationValue::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

/// A partial `v_N` is a lower bound; if it already reaches `v_C` then
/// `v_N = v_C` and the value is exact.
pub fn mediation_value_from(v_c: &Rational, nash: &NashValue) -> MediationValue {
    match (&nash.value, nash.completeness) {
        (None, _) => MediationValue::Indeterminate,
        (Some(v_n), Completeness::Complete) => MediationValue::Exact(convention_ratio(v_c, v_n)),
        (Some(v_n), _) if v_n == v_c => MediationValue::Exact(convention_ratio(v_c, v_n)),
        (Some(v_n), _) => MediationValue::UpperBound(convention_ratio(v_c, v_n)),
    }
}

pub fn mediation_value(game: &Game) -> Result<MediationValue> {
    let v_c = max_surplus_ce(game)?.value;
    let nash = NashValue::from(&nash_set(game, &[])?);
    Ok(mediation_value_from(&v_c, &nash))
}

pub fn enforcement_value(game: &Game) -> Result<ExtendedRational> {
    let v_c = max_surplus_ce(game)?.value;
    Ok(convention_ratio(&opt(game), &v_c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueReport {
    pub nash: NashValue,
    pub v_c: Rational,
    pub opt: Rational,
    pub mv: MediationValue,
    pub ev: ExtendedRational,
}

impl ValueReport {
    /// `mv·v_N = v_C` and `ev·v_C = opt` whenever those quantities are finite
    /// and exact. Also checks `v_N ≤ v_C ≤ opt`.
    pub fn is_consistent(&self) -> bool {
        if self.v_c > self.opt {
            return false;
        }
        if let Some(v_n) = &self.nash.value {
            if *v_n > self.v_c {
                return false;
            }
            if let MediationValue::Exact(ExtendedRational::Finite(mv)) = &self.mv {
                if !v_n.is_zero() && mv * v_n != self.v_c {
                    return false;
                }
            }
        }
        match &self.ev {
            ExtendedRational::Finite(ev) if !self.v_c.is_zero() => ev * &self.v_c == self.opt,
            _ => true,
        }
    }
}

/// A report together with the objects that justify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub report: ValueReport,
    pub ce: CeSolution,
    pub nash: NashSet,
}

/// Full analysis; `candidates` are extra mixed equilibria to verify and
/// include for games with three or more players.
pub fn analyze_with(game: &Game, candidates: &[MixedProfile]) -> Result<Analysis> {
    let ce = max_surplus_ce(game)?;
    let nash = nash_set(game, candidates)?;
    let nash_value = NashValue::from(&nash);
    let best = opt(game);
    let report = ValueReport {
        mv: mediation_value_from(&ce.value, &nash_value),
        ev: convention_ratio(&best, &ce.value),
        nash: nash_value,
        v_c: ce.value.clone(),
        opt: best,
    };
    Ok(Analysis { report, ce, nash })
}

pub fn analyze(game: &Game) -> Result<ValueReport> {
    analyze_with(game, &[]).map(|a| a.report)
}
