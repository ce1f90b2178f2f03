//! Named reference games and congestion forms.
//!
//! | name      | parameter | object |
//! |-----------|-----------|--------|
//! | `aumann`  | –         | Aumann's 2×2 game |
//! | `gamma_x` | `x > 1`   | Aumann variant with payoffs scaled by `x` |
//! | `pd`      | `x > 1`   | Prisoner's Dilemma with cooperation payoff `x` |
//! | `example1`| –         | 3 players, `w_f = (24,12,0)`, `w_g = (8,8,8)` |
//! | `example2`| –         | 6 players, 2 identical facilities `w = (3/2,1,4,9/2,9/2,3)` |
//!
//! In the 2×2 games strategy 0 is the first row/column (`a¹`, `b¹`, or `C`).

use crate::congestion::CongestionForm;
use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::{format_rational, int, parse_rational, ratio, Rational};

pub const EXAMPLE_NAMES: &[&str] = &["aumann", "gamma_x", "pd", "example1", "example2"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Example {
    Game(Game),
    Form(CongestionForm),
}

impl Example {
    /// The strategic-form game, inducing it for congestion forms.
    pub fn into_game(self) -> Game {
        match self {
            Example::Game(g) => g,
            Example::Form(f) => crate::congestion::induce_game(&f),
        }
    }
}

/// Looks up a registry entry. Parameterized entries require `param`.
pub fn example(name: &str, param: Option<&Rational>) -> Result<Example> {
    let need_param = |name: &str| {
        param.ok_or_else(|| Error::InvalidParameter(format!("{name} needs a parameter x > 1")))
    };
    let no_param = |name: &str| match param {
        Some(_) => Err(Error::InvalidParameter(format!("{name} takes no parameter"))),
        None => Ok(()),
    };
    match name {
        "aumann" => no_param(name).map(|_| Example::Game(aumann())),
        "gamma_x" => gamma_x(need_param(name)?).map(Example::Game),
        "pd" => prisoners_dilemma(need_param(name)?).map(Example::Game),
        "example1" => no_param(name).map(|_| Example::Form(example1())),
        "example2" => no_param(name).map(|_| Example::Form(example2())),
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}

/// Parses `name` or `name:param` (e.g. `gamma_x:4`, `pd:5/2`).
pub fn example_from_spec(spec: &str) -> Result<Example> {
    match spec.split_once(':') {
        Some((name, p)) => example(name, Some(&parse_rational(p)?)),
        None => example(spec, None),
    }
}

fn bimatrix(a: [[Rational; 2]; 2], b: [[Rational; 2]; 2]) -> Game {
    Game::bimatrix(
        a.into_iter().map(Vec::from).collect(),
        b.into_iter().map(Vec::from).collect(),
    )
    .expect("2x2 literals are well formed")
}

pub fn aumann() -> Game {
    bimatrix(
        [[int(5), int(0)], [int(4), int(1)]],
        [[int(1), int(0)], [int(4), int(5)]],
    )
}

fn check_gt_one(name: &str, x: &Rational) -> Result<()> {
    if *x <= int(1) {
        return Err(Error::InvalidParameter(format!(
            "{name} requires x > 1, got {}",
            format_rational(x)
        )));
    }
    Ok(())
}

pub fn gamma_x(x: &Rational) -> Result<Game> {
    check_gt_one("gamma_x", x)?;
    let xm1 = x - int(1);
    Ok(bimatrix(
        [[x.clone(), int(0)], [xm1.clone(), int(1)]],
        [[int(1), int(0)], [xm1, x.clone()]],
    ))
}

/// Strategy 0 = cooperate, 1 = defect; defecting strictly dominates.
pub fn prisoners_dilemma(x: &Rational) -> Result<Game> {
    check_gt_one("pd", x)?;
    let xp1 = x + int(1);
    Ok(bimatrix(
        [[x.clone(), int(0)], [xp1.clone(), int(1)]],
        [[x.clone(), xp1], [int(0), int(1)]],
    ))
}

pub fn example1() -> CongestionForm {
    CongestionForm::new(3, vec![vec![int(24), int(12), int(0)], vec![int(8), int(8), int(8)]])
        .expect("literal form is valid")
}

pub fn example2() -> CongestionForm {
    let w = vec![ratio(3, 2), int(1), int(4), ratio(9, 2), ratio(9, 2), int(3)];
    CongestionForm::new(6, vec![w.clone(), w]).expect("literal form is valid")
}
