//! JSON files for games and congestion forms.
//!
//! Game file:
//!
//! ```json
//! {
//!   "players": 2,
//!   "strategies": [2, 2],
//!   "payoffs": [
//!     [5, 0, 4, 1],
//!     [1, 0, 4, 5]
//!   ]
//! }
//! ```
//!
//! `payoffs[i]` lists player `i`'s payoff for every profile in row-major
//! order (last player fastest). Congestion file:
//!
//! ```json
//! {
//!   "players": 3,
//!   "facilities": 2,
//!   "w": [
//!     [24, 12, 0],
//!     [8, 8, 8]
//!   ]
//! }
//! ```
//!
//! `w[j][k-1]` is the payoff to each of `k` users of facility `j`. Numbers
//! are JSON integers, decimal strings (`"1.5"`) or fraction strings
//! (`"3/2"`). JSON floats are rejected so that every value is exact.

use std::fs;
use std::path::Path;

use num_traits::{Signed, ToPrimitive};
use serde_json::{Map, Value};

use crate::congestion::CongestionForm;
use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::registry::Example;

fn parse_err(locus: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        locus: locus.into(),
        message: message.into(),
    }
}

fn object(text: &str) -> Result<Map<String, Value>> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(parse_err("top level", "expected a JSON object")),
    }
}

fn field<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| parse_err(key, "missing field"))
}

fn count(value: &Value, locus: &str) -> Result<usize> {
    value
        .as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| parse_err(locus, "expected a nonnegative integer"))
}

fn array<'a>(value: &'a Value, locus: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| parse_err(locus, "expected an array"))
}

fn number(value: &Value, locus: &str) -> Result<Rational> {
    let r = match value {
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string())
            .map_err(|e| parse_err(locus, e.to_string()))?,
        Value::Number(n) => {
            return Err(parse_err(
                locus,
                format!("float {n} is not exact; write it as a string such as \"{n}\""),
            ))
        }
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(locus, e.to_string()))?,
        _ => return Err(parse_err(locus, "expected an integer or a numeric string")),
    };
    if r.is_negative() {
        return Err(Error::NegativePayoff {
            locus: locus.to_string(),
            value: format_rational(&r),
        });
    }
    Ok(r)
}

fn table(value: &Value, name: &str, rows: usize, cols: usize) -> Result<Vec<Vec<Rational>>> {
    let outer = array(value, name)?;
    if outer.len() != rows {
        return Err(Error::Dimension(format!(
            "{name} has {} rows, expected {rows}",
            outer.len()
        )));
    }
    outer
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let locus = format!("{name}[{i}]");
            let row = array(row, &locus)?;
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "{locus} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(j, v)| number(v, &format!("{locus}[{j}]")))
                .collect()
        })
        .collect()
}

fn game_from_map(map: &Map<String, Value>) -> Result<Game> {
    let players = count(field(map, "players")?, "players")?;
    let strategies: Vec<usize> = array(field(map, "strategies")?, "strategies")?
        .iter()
        .enumerate()
        .map(|(i, v)| count(v, &format!("strategies[{i}]")))
        .collect::<Result<_>>()?;
    if strategies.len() != players {
        return Err(Error::Dimension(format!(
            "strategies lists {} players, players is {players}",
            strategies.len()
        )));
    }
    let profiles = strategies
        .iter()
        .try_fold(1usize, |acc, &m| acc.checked_mul(m))
        .ok_or_else(|| Error::Dimension("profile space too large".into()))?;
    let payoffs = table(field(map, "payoffs")?, "payoffs", players, profiles)?;
    Game::new(strategies, payoffs)
}

fn form_from_map(map: &Map<String, Value>) -> Result<CongestionForm> {
    let players = count(field(map, "players")?, "players")?;
    let facilities = count(field(map, "facilities")?, "facilities")?;
    let w = table(field(map, "w")?, "w", facilities, players)?;
    CongestionForm::new(players, w)
}

pub fn parse_game(text: &str) -> Result<Game> {
    game_from_map(&object(text)?)
}

pub fn parse_form(text: &str) -> Result<CongestionForm> {
    form_from_map(&object(text)?)
}

/// Either kind of file; a `w` field marks a congestion form.
pub fn parse_document(text: &str) -> Result<Example> {
    let map = object(text)?;
    if map.contains_key("w") {
        form_from_map(&map).map(Example::Form)
    } else {
        game_from_map(&map).map(Example::Game)
    }
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), source }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

pub fn load_game(path: impl AsRef<Path>) -> Result<Game> {
    parse_game(&read(path.as_ref())?)
}

pub fn load_form(path: impl AsRef<Path>) -> Result<CongestionForm> {
    parse_form(&read(path.as_ref())?)
}

pub fn load(path: impl AsRef<Path>) -> Result<Example> {
    parse_document(&read(path.as_ref())?)
}

/// Integers that fit in `i64` as JSON numbers, everything else as `"p/q"`.
fn encode(r: &Rational) -> String {
    match (r.is_integer(), r.numer().to_i64()) {
        (true, Some(n)) => n.to_string(),
        _ => format!("\"{}\"", format_rational(r)),
    }
}

fn row(values: impl IntoIterator<Item = String>) -> String {
    format!("[{}]", values.into_iter().collect::<Vec<_>>().join(", "))
}

fn rows(table: &[Vec<Rational>]) -> String {
    let lines: Vec<String> = table
        .iter()
        .map(|r| format!("    {}", row(r.iter().map(encode))))
        .collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

/// Canonical text: loading it back yields the same game, and re-rendering a
/// loaded canonical file reproduces it byte for byte.
pub fn render_game(game: &Game) -> String {
    let layers: Vec<Vec<Rational>> = (0..game.player_count())
        .map(|i| game.payoff_layer(i).to_vec())
        .collect();
    format!(
        "{{\n  \"players\": {},\n  \"strategies\": {},\n  \"payoffs\": {}\n}}\n",
        game.player_count(),
        row(game.strategy_counts().iter().map(usize::to_string)),
        rows(&layers)
    )
}

pub fn render_form(form: &CongestionForm) -> String {
    format!(
        "{{\n  \"players\": {},\n  \"facilities\": {},\n  \"w\": {}\n}}\n",
        form.players(),
        form.facility_count(),
        rows(form.tables())
    )
}

pub fn render(doc: &Example) -> String {
    match doc {
        Example::Game(g) => render_game(g),
        Example::Form(f) => render_form(f),
    }
}

pub fn save(doc: &Example, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render(doc)).map_err(|e| io_error(path, e))
}
