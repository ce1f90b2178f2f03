//! Seeded random search for games with a large mediation or enforcement
//! value.
//!
//! Iteration `i` draws its instance from its own splitmix64 stream seeded
//! with `substream_seed(seed, i)`, so iterations are independent and can be
//! evaluated in parallel. Results are merged in index order: the transcript
//! lists every iteration whose value beats all earlier ones, and ties go to
//! the lowest index. The winning game is regenerated from its stream and
//! re-analyzed before it is reported.

use rayon::prelude::*;

use crate::congestion::CongestionForm;
use crate::equilibria::{max_surplus_ce, nash_set, Completeness, NashValue};
use crate::error::{Error, Result};
use crate::game::{has_strictly_dominant_strategy, opt, Game};
use crate::rational::{format_rational, Rational};
use crate::registry::Example;
use crate::values::{analyze, convention_ratio, mediation_value_from, ExtendedRational, ValueReport};

/// Steele, Lea and Flood's splitmix64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform index below `n` by rejection sampling.
    pub fn below(&mut self, n: usize) -> usize {
        let n = n as u64;
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % n) as usize;
            }
        }
    }
}

/// Seed of the stream for iteration `index`: the `index`-th output of a
/// splitmix64 generator started at `seed`, computed directly.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    let mut g = SplitMix64::new(seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    g.next_u64()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongestionClass {
    /// Arbitrary facility tables.
    S,
    /// Non-increasing tables.
    SN,
    /// One table shared by every facility.
    I,
    /// One shared non-increasing table.
    IN,
}

impl CongestionClass {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "S" => Some(CongestionClass::S),
            "SN" => Some(CongestionClass::SN),
            "I" => Some(CongestionClass::I),
            "IN" => Some(CongestionClass::IN),
            _ => None,
        }
    }

    fn symmetric(self) -> bool {
        matches!(self, CongestionClass::I | CongestionClass::IN)
    }

    fn non_increasing(self) -> bool {
        matches!(self, CongestionClass::SN | CongestionClass::IN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameClass {
    General { strategies: Vec<usize> },
    Congestion {
        class: CongestionClass,
        players: usize,
        facilities: usize,
        /// Tables of the form `w(k) = a + (n − k)·d`.
        linear: bool,
    },
}

impl GameClass {
    fn player_count(&self) -> usize {
        match self {
            GameClass::General { strategies } => strategies.len(),
            GameClass::Congestion { players, .. } => *players,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Mv,
    Ev,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::Mv => "mv",
            Target::Ev => "ev",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub class: GameClass,
    pub grid: Vec<Rational>,
    pub seed: u64,
    pub iterations: u64,
    pub target: Target,
    pub threshold: Rational,
    /// Skip instances where some player has a strictly dominant strategy.
    pub no_strict_dominance: bool,
    /// Allow MV targets on classes where only some equilibria are found;
    /// values are then upper estimates.
    pub allow_partial: bool,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.iterations == 0 {
            return bad("iterations must be at least 1".into());
        }
        if self.grid.is_empty() {
            return bad("payoff grid is empty".into());
        }
        if let Some(r) = self.grid.iter().find(|r| **r < Rational::from_integer(0.into())) {
            return bad(format!("grid value {} is negative", format_rational(r)));
        }
        match &self.class {
            GameClass::General { strategies } => {
                if strategies.is_empty() || strategies.contains(&0) {
                    return bad("every player needs at least one strategy".into());
                }
            }
            GameClass::Congestion { players, facilities, .. } => {
                if *players == 0 || *facilities == 0 {
                    return bad("congestion class needs players and facilities".into());
                }
            }
        }
        if self.target == Target::Mv && self.class.player_count() != 2 && !self.allow_partial {
            return bad("mv search needs two players unless partial equilibrium sets are allowed".into());
        }
        Ok(())
    }

    /// The instance drawn at iteration `index`.
    pub fn instance(&self, index: u64) -> Example {
        let mut rng = SplitMix64::new(substream_seed(self.seed, index));
        let draw = |rng: &mut SplitMix64| self.grid[rng.below(self.grid.len())].clone();
        match &self.class {
            GameClass::General { strategies } => {
                let profiles: usize = strategies.iter().product();
                let layers = (0..strategies.len())
                    .map(|_| (0..profiles).map(|_| draw(&mut rng)).collect())
                    .collect();
                Example::Game(Game::new(strategies.clone(), layers).expect("grid values are nonnegative"))
            }
            GameClass::Congestion {
                class,
                players,
                facilities,
                linear,
            } => {
                let n = *players;
                let table = |rng: &mut SplitMix64| -> Vec<Rational> {
                    if *linear {
                        let a = draw(rng);
                        let d = draw(rng);
                        let increasing = !class.non_increasing() && rng.below(2) == 1;
                        (1..=n)
                            .map(|k| {
                                let steps = Rational::from_integer(if increasing { k - 1 } else { n - k }.into());
                                &a + steps * &d
                            })
                            .collect()
                    } else {
                        let mut t: Vec<Rational> = (0..n).map(|_| draw(rng)).collect();
                        if class.non_increasing() {
                            t.sort_by(|x, y| y.cmp(x));
                        }
                        t
                    }
                };
                let w = if class.symmetric() {
                    vec![table(&mut rng); *facilities]
                } else {
                    (0..*facilities).map(|_| table(&mut rng)).collect()
                };
                Example::Form(CongestionForm::new(n, w).expect("generated tables are valid"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Filtered,
    Indeterminate,
    Value(ExtendedRational),
}

fn evaluate(cfg: &SearchConfig, game: &Game) -> Result<Outcome> {
    if cfg.no_strict_dominance {
        for i in 0..game.player_count() {
            if has_strictly_dominant_strategy(game, i)? {
                return Ok(Outcome::Filtered);
            }
        }
    }
    let v_c = max_surplus_ce(game)?.value;
    Ok(match cfg.target {
        Target::Ev => Outcome::Value(convention_ratio(&opt(game), &v_c)),
        Target::Mv => {
            let nash = NashValue::from(&nash_set(game, &[])?);
            match mediation_value_from(&v_c, &nash).value() {
                Some(v) => Outcome::Value(v.clone()),
                None => Outcome::Indeterminate,
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Improvement {
    pub iteration: u64,
    pub value: ExtendedRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub transcript: Vec<Improvement>,
    pub best: Option<Best>,
    pub evaluated: u64,
    pub filtered: u64,
    pub indeterminate: u64,
    /// Whether the best value strictly exceeds the threshold.
    pub threshold_met: bool,
    /// MV values were computed from partial equilibrium sets.
    pub estimate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Best {
    pub iteration: u64,
    pub value: ExtendedRational,
    pub instance: Example,
    pub report: ValueReport,
}

/// Runs the search. Fails if the re-analysis of the winner disagrees with
/// the value recorded during the search.
pub fn witness_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let outcomes: Vec<Outcome> = (0..cfg.iterations)
        .into_par_iter()
        .map(|i| evaluate(cfg, &cfg.instance(i).into_game()))
        .collect::<Result<_>>()?;

    let mut transcript: Vec<Improvement> = Vec::new();
    let (mut filtered, mut indeterminate) = (0, 0);
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Filtered => filtered += 1,
            Outcome::Indeterminate => indeterminate += 1,
            Outcome::Value(v) => {
                if transcript.last().is_none_or(|b| v > b.value) {
                    transcript.push(Improvement {
                        iteration: i as u64,
                        value: v,
                    });
                }
            }
        }
    }

    let best = match transcript.last() {
        None => None,
        Some(last) => {
            let instance = cfg.instance(last.iteration);
            let report = analyze(&instance.clone().into_game())?;
            let recomputed = match cfg.target {
                Target::Ev => Some(report.ev.clone()),
                Target::Mv => report.mv.value().cloned(),
            };
            if recomputed.as_ref() != Some(&last.value) {
                return Err(Error::Lp(format!(
                    "re-analysis of iteration {} gave {:?}, search recorded {}",
                    last.iteration, recomputed, last.value
                )));
            }
            Some(Best {
                iteration: last.iteration,
                value: last.value.clone(),
                instance,
                report,
            })
        }
    };
    let threshold = ExtendedRational::Finite(cfg.threshold.clone());
    let estimate = cfg.target == Target::Mv
        && best
            .as_ref()
            .is_some_and(|b| b.report.nash.completeness != Completeness::Complete);
    Ok(SearchOutcome {
        threshold_met: best.as_ref().is_some_and(|b| b.value > threshold),
        evaluated: cfg.iterations - filtered,
        transcript,
        best,
        filtered,
        indeterminate,
        estimate,
    })
}
