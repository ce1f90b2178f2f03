//! Congestion-form checks shared by `analyze --check` and `congestion`.

use gamevalue::congestion::{
    concave_optimal_equilibrium, golden_ratio_audit, largest_equilibrium_split,
    lower_splits_bounded, mixed_split_profile, uniform_optimal_ce, ConcaveOutcome,
    CongestionForm, UniformCeOutcome,
};
use gamevalue::equilibria::{best_regret, max_surplus_ce};
use gamevalue::game::{product_distribution, surplus};
use gamevalue::rational::format_rational as fr;
use gamevalue::{Error, Result};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Check {
    /// Uniform correlated equilibrium over an optimal vector class (symmetric forms).
    UniformCe,
    /// Two-facility golden-ratio bound on v_C (linear, non-increasing).
    Phi,
    /// Concave load value implies an optimal pure equilibrium (symmetric, non-increasing).
    Concave,
    /// Splits below the largest equilibrium split have no larger surplus (two facilities).
    LowerSplits,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::UniformCe => "uniform_ce",
            Check::Phi => "phi",
            Check::Concave => "concave",
            Check::LowerSplits => "lower_splits",
        }
    }

    /// Checks whose preconditions the form meets.
    pub fn applicable(form: &CongestionForm) -> Vec<Check> {
        let mut out = Vec::new();
        if form.is_symmetric() {
            out.push(Check::UniformCe);
            if form.is_non_increasing() && form.players() >= form.facility_count() {
                out.push(Check::Concave);
            }
        }
        if form.facility_count() == 2 {
            out.push(Check::LowerSplits);
            if form.is_linear() && form.is_non_increasing() {
                out.push(Check::Phi);
            }
        }
        out
    }
}

pub struct CheckResult {
    pub json: Value,
    pub text: String,
}

pub fn run(form: &CongestionForm, check: Check) -> Result<CheckResult> {
    match check {
        Check::UniformCe => uniform(form),
        Check::Phi => phi(form),
        Check::Concave => concave(form),
        Check::LowerSplits => lower(form),
    }
}

fn uniform(form: &CongestionForm) -> Result<CheckResult> {
    let v_c = max_surplus_ce(&gamevalue::congestion::induce_game(form))?.value;
    Ok(match uniform_optimal_ce(form)? {
        UniformCeOutcome::Achieved { vector, distribution } => CheckResult {
            text: format!(
                "uniform optimal CE: Achieved, π={vector} (support {} profiles); v_C = {}",
                distribution.support_len(),
                fr(&v_c)
            ),
            json: json!({
                "outcome": "achieved",
                "vector": vector.counts(),
                "support_size": distribution.support_len(),
                "v_c": fr(&v_c),
            }),
        },
        UniformCeOutcome::NotAchieved { tested, proves_gap } => {
            let meaning = if proves_gap {
                "no correlated equilibrium attains opt"
            } else {
                "no uniform witness found"
            };
            CheckResult {
                text: format!("uniform optimal CE: NotAchieved ({meaning}); v_C = {}", fr(&v_c)),
                json: json!({
                    "outcome": "not_achieved",
                    "proves_gap": proves_gap,
                    "tested": tested.iter().map(|v| v.counts().to_vec()).collect::<Vec<_>>(),
                    "v_c": fr(&v_c),
                }),
            }
        }
    })
}

fn phi(form: &CongestionForm) -> Result<CheckResult> {
    let a = golden_ratio_audit(form)?;
    let verdict = if a.pass { "pass" } else { "FAIL" };
    Ok(CheckResult {
        text: format!(
            "golden-ratio audit: {verdict}: v_C = {} <= φ·{}{} (split s = {})",
            fr(&a.v_c),
            fr(&a.base),
            if a.fallback { " [base from u(π_s) alone]" } else { "" },
            a.split
        ),
        json: json!({
            "pass": a.pass,
            "v_c": fr(&a.v_c),
            "base": fr(&a.base),
            "fallback": a.fallback,
            "split": a.split,
        }),
    })
}

fn concave(form: &CongestionForm) -> Result<CheckResult> {
    Ok(match concave_optimal_equilibrium(form)? {
        ConcaveOutcome::NotConcave => CheckResult {
            text: "concave load value: not concave, nothing claimed".into(),
            json: json!({ "outcome": "not_concave" }),
        },
        ConcaveOutcome::OptimalEquilibrium(p) => CheckResult {
            text: format!("concave load value: optimal pure equilibrium {p}"),
            json: json!({ "outcome": "optimal_equilibrium", "profile": p.0 }),
        },
        ConcaveOutcome::Violation => CheckResult {
            text: "concave load value: VIOLATION, no optimal pure equilibrium".into(),
            json: json!({ "outcome": "violation" }),
        },
    })
}

fn lower(form: &CongestionForm) -> Result<CheckResult> {
    let info = largest_equilibrium_split(form)?;
    let bounded = lower_splits_bounded(form)?;
    let mut mixed = Vec::new();
    let mut lines = Vec::new();
    let game = gamevalue::congestion::induce_game(form);
    for k in (info.s + 1)..=form.players() {
        match mixed_split_profile(form, k) {
            Ok(q) => {
                let regret = best_regret(&game, &q.profile);
                let direct = surplus(&game, &product_distribution(&game, &q.profile))?;
                lines.push(format!(
                    "  k={k}: p_k = {}, regret {}, surplus {} (formula {})",
                    fr(&q.p_k),
                    fr(&regret),
                    fr(&direct),
                    fr(&q.formula_surplus)
                ));
                mixed.push(json!({
                    "k": k, "p_k": fr(&q.p_k), "regret": fr(&regret),
                    "surplus": fr(&direct), "formula_surplus": fr(&q.formula_surplus),
                }));
            }
            Err(Error::NotApplicable(why) | Error::Precondition(why)) => {
                lines.push(format!("  k={k}: not applicable ({why})"));
            }
            Err(e) => return Err(e),
        }
    }
    let mut text = format!(
        "largest equilibrium split s = {}{}; lower splits bounded: {bounded}",
        info.s,
        if info.swapped { " (facility 1 has the larger w(1))" } else { "" }
    );
    if !lines.is_empty() {
        text.push_str("\nmixed splits:\n");
        text.push_str(&lines.join("\n"));
    }
    Ok(CheckResult {
        text,
        json: json!({
            "split": info.s,
            "swapped": info.swapped,
            "lower_splits_bounded": bounded,
            "mixed_splits": mixed,
        }),
    })
}
