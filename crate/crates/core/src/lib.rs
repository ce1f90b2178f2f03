//! Exact analysis of finite strategic-form games: Nash and correlated
//! equilibria, the mediation value `v_C / v_N`, the enforcement value
//! `opt / v_C`, and tools specific to simple congestion games.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod congestion;
pub mod equilibria;
pub mod error;
pub mod game;
pub mod io;
mod linalg;
pub mod lp;
pub mod rational;
pub mod registry;
pub mod report;
pub mod search;
pub mod values;

pub use error::{Error, Result};
pub use game::{CorrelatedStrategy, Game, MixedProfile, PureProfile};
pub use rational::Rational;
pub use values::{analyze, analyze_with, Analysis, ExtendedRational, MediationValue, ValueReport};
