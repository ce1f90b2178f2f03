mod checks;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gamevalue::congestion::{
    all_vectors, rosenthal_pure_eq, surplus_of_vector, vector_in_equilibrium,
    vector_of_profile, CongestionForm, CongestionVector,
};
use gamevalue::equilibria::{max_surplus_ce, nash_set};
use gamevalue::rational::{format_rational, parse_rational};
use gamevalue::registry::{example_from_spec, Example, EXAMPLE_NAMES};
use gamevalue::report::{self, Style};
use gamevalue::search::{witness_search, CongestionClass, GameClass, SearchConfig, Target};
use gamevalue::{analyze_with, io, Error, MediationValue, Rational, Result};
use serde_json::{json, Value};

use checks::Check;

/// Seed used by `search` when neither --seed nor GAMEVALUE_SEED is given.
const DEFAULT_SEED: u64 = 20_260_101;

#[derive(Parser)]
#[command(name = "gamevalue", version, about = "Exact mediation and enforcement values of finite games")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for `search`.
    #[arg(long, global = true, env = "GAMEVALUE_SEED")]
    seed: Option<u64>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Add approximate decimals next to exact values.
    #[arg(long, global = true)]
    float: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Values v_N, v_C, opt, MV and EV with their witnesses.
    Analyze {
        /// Game or congestion file, or a registry name such as gamma_x:4.
        input: String,
        /// Extra congestion-form check to run (repeatable).
        #[arg(long = "check", value_enum)]
        checks: Vec<Check>,
    },
    /// Nash equilibria.
    Nash { input: String },
    /// Best correlated equilibrium with its dual certificate.
    Ce { input: String },
    /// Congestion-vector structure and every applicable check.
    Congestion { input: String },
    /// Print a registry object as a canonical JSON file.
    Example {
        /// Name, optionally with a parameter: aumann, gamma_x:4, pd:10, example1, example2.
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Seeded random search for games with a large MV or EV.
    Search(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// General class as strategy counts, e.g. 2x3 or 2x2x2.
    #[arg(long, conflicts_with = "congestion")]
    class: Option<String>,
    /// Congestion class S, SN, I or IN (needs --players and --facilities).
    #[arg(long, requires_all = ["players", "facilities"])]
    congestion: Option<String>,
    /// Number of players in a congestion class.
    #[arg(long)]
    players: Option<usize>,
    /// Number of facilities in a congestion class.
    #[arg(long)]
    facilities: Option<usize>,
    /// Draw linear facility tables.
    #[arg(long)]
    linear: bool,
    /// Payoff grid: a range `0..10` or a list `0,1/2,3`.
    #[arg(long, default_value = "0..10")]
    grid: String,
    #[arg(long, default_value_t = 10_000)]
    iterations: u64,
    #[arg(long, value_enum, default_value_t = TargetArg::Mv)]
    target: TargetArg,
    #[arg(long, default_value = "4/3")]
    threshold: String,
    /// Skip games where a player has a strictly dominant strategy.
    #[arg(long)]
    no_strict_dominance: bool,
    /// Permit MV targets when equilibrium sets are partial (values become estimates).
    #[arg(long)]
    allow_partial: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Mv,
    Ev,
}

/// What a command produced, in both renderings.
struct Output {
    text: String,
    json: Value,
    indeterminate: bool,
}

fn load_input(input: &str) -> Result<Example> {
    let name = input.split(':').next().unwrap_or_default();
    if Path::new(input).exists() {
        io::load(input)
    } else if EXAMPLE_NAMES.contains(&name) {
        example_from_spec(input)
    } else if !input.contains(['/', '.']) {
        Err(Error::UnknownExample(name.to_string()))
    } else {
        io::load(input)
    }
}

fn require_form(doc: Example) -> Result<CongestionForm> {
    match doc {
        Example::Form(f) => Ok(f),
        Example::Game(_) => Err(Error::Precondition("input is a game, not a congestion form".into())),
    }
}

fn analyze_cmd(input: &str, check_list: &[Check], style: Style) -> Result<Output> {
    let doc = load_input(input)?;
    let form = match &doc {
        Example::Form(f) => Some(f.clone()),
        Example::Game(_) => None,
    };
    if !check_list.is_empty() && form.is_none() {
        return Err(Error::Precondition("--check applies to congestion forms only".into()));
    }
    let game = doc.into_game();
    let a = analyze_with(&game, &[])?;
    let mut text = report::values_text(&a.report, style);
    text.push_str(&report::nash_text(&a.nash, style));
    text.push_str(&report::ce_text(&a.ce, style));
    let mut checks_json = serde_json::Map::new();
    if let Some(f) = &form {
        for &c in check_list {
            let r = checks::run(f, c)?;
            text.push_str(&r.text);
            text.push('\n');
            checks_json.insert(c.name().into(), r.json);
        }
    }
    let mut json = json!({
        "input": input,
        "values": report::values_json(&a.report, style),
        "nash": report::nash_json(&a.nash, style),
        "ce": report::ce_json(&a.ce, style),
    });
    if !checks_json.is_empty() {
        json["checks"] = Value::Object(checks_json);
    }
    Ok(Output {
        text,
        json,
        indeterminate: a.report.mv == MediationValue::Indeterminate,
    })
}

fn nash_cmd(input: &str, style: Style) -> Result<Output> {
    let game = load_input(input)?.into_game();
    let set = nash_set(&game, &[])?;
    Ok(Output {
        text: report::nash_text(&set, style),
        json: report::nash_json(&set, style),
        indeterminate: set.equilibria.is_empty(),
    })
}

fn ce_cmd(input: &str, style: Style) -> Result<Output> {
    let sol = max_surplus_ce(&load_input(input)?.into_game())?;
    Ok(Output {
        text: report::ce_text(&sol, style),
        json: report::ce_json(&sol, style),
        indeterminate: false,
    })
}

fn congestion_cmd(input: &str) -> Result<Output> {
    let form = require_form(load_input(input)?)?;
    let (eq_profile, moves) = rosenthal_pure_eq(&form);
    let eq_vector = vector_of_profile(&form, &eq_profile)?;
    let mut text = format!(
        "{} players, {} facilities; symmetric {}, non-increasing {}, linear {}\n",
        form.players(),
        form.facility_count(),
        form.is_symmetric(),
        form.is_non_increasing(),
        form.is_linear()
    );
    text.push_str(&format!(
        "best-response dynamics: {eq_profile} with vector {eq_vector} after {moves} moves\nvectors:\n"
    ));
    let mut vectors = Vec::new();
    for counts in all_vectors(form.players(), form.facility_count()) {
        let pi = CongestionVector::new(&form, counts)?;
        let u = surplus_of_vector(&form, &pi);
        let eq = vector_in_equilibrium(&form, &pi);
        text.push_str(&format!(
            "  {pi}  surplus {}{}\n",
            format_rational(&u),
            if eq { "  equilibrium" } else { "" }
        ));
        vectors.push(json!({ "vector": pi.counts(), "surplus": format_rational(&u), "equilibrium": eq }));
    }
    let mut checks_json = serde_json::Map::new();
    for c in Check::applicable(&form) {
        let r = checks::run(&form, c)?;
        text.push_str(&r.text);
        text.push('\n');
        checks_json.insert(c.name().into(), r.json);
    }
    Ok(Output {
        text,
        json: json!({
            "players": form.players(),
            "facilities": form.facility_count(),
            "symmetric": form.is_symmetric(),
            "non_increasing": form.is_non_increasing(),
            "linear": form.is_linear(),
            "dynamics": { "profile": eq_profile.0, "vector": eq_vector.counts(), "moves": moves },
            "vectors": vectors,
            "checks": checks_json,
        }),
        indeterminate: false,
    })
}

fn example_cmd(name: Option<&str>, list: bool) -> Result<Output> {
    if list || name.is_none() {
        return Ok(Output {
            text: EXAMPLE_NAMES.join("\n") + "\n",
            json: json!(EXAMPLE_NAMES),
            indeterminate: false,
        });
    }
    let doc = example_from_spec(name.unwrap_or_default())?;
    let text = io::render(&doc);
    let json = serde_json::from_str(&text).expect("rendered JSON parses");
    Ok(Output {
        text,
        json,
        indeterminate: false,
    })
}

fn parse_grid(spec: &str) -> Result<Vec<Rational>> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let bound = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidConfig(format!("grid bound {s:?} is not an integer")))
        };
        let (lo, hi) = (bound(lo)?, bound(hi)?);
        return Ok((lo..=hi).map(|k| Rational::from_integer(k.into())).collect());
    }
    spec.split(',')
        .map(|s| parse_rational(s.trim()).map_err(Error::from))
        .collect()
}

fn search_config(args: &SearchArgs, seed: u64) -> Result<SearchConfig> {
    let class = match (&args.class, &args.congestion) {
        (_, Some(c)) => GameClass::Congestion {
            class: CongestionClass::parse(c)
                .ok_or_else(|| Error::InvalidConfig(format!("unknown congestion class {c:?}")))?,
            players: args.players.unwrap_or_default(),
            facilities: args.facilities.unwrap_or_default(),
            linear: args.linear,
        },
        (Some(c), None) => GameClass::General {
            strategies: c
                .split('x')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidConfig(format!("class {c:?} is not like 2x3")))?,
        },
        (None, None) => GameClass::General { strategies: vec![2, 3] },
    };
    Ok(SearchConfig {
        class,
        grid: parse_grid(&args.grid)?,
        seed,
        iterations: args.iterations,
        target: match args.target {
            TargetArg::Mv => Target::Mv,
            TargetArg::Ev => Target::Ev,
        },
        threshold: parse_rational(&args.threshold)?,
        no_strict_dominance: args.no_strict_dominance,
        allow_partial: args.allow_partial,
    })
}

fn search_cmd(args: &SearchArgs, seed: u64, style: Style) -> Result<Output> {
    let cfg = search_config(args, seed)?;
    let out = witness_search(&cfg)?;
    Ok(Output {
        text: report::search_text(&cfg, &out, style),
        json: report::search_json(&cfg, &out, style),
        indeterminate: false,
    })
}

fn run(cli: &Cli) -> Result<Output> {
    let style = Style { approx: cli.float };
    match &cli.command {
        Command::Analyze { input, checks } => analyze_cmd(input, checks, style),
        Command::Nash { input } => nash_cmd(input, style),
        Command::Ce { input } => ce_cmd(input, style),
        Command::Congestion { input } => congestion_cmd(input),
        Command::Example { name, list } => example_cmd(name.as_deref(), *list),
        Command::Search(args) => search_cmd(args, cli.seed.unwrap_or(DEFAULT_SEED), style),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Text => output.text,
        // `example` in JSON mode keeps the canonical file layout.
        Format::Json if matches!(cli.command, Command::Example { list: false, name: Some(_) }) => output.text,
        Format::Json => serde_json::to_string_pretty(&output.json).expect("values serialize") + "\n",
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if output.indeterminate {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
