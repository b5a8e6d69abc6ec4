//! Line-oriented scenario files.
//!
//! ```text
//! # comments run to the end of the line
//! procedure cut_and_choose
//! window 2
//! n_max 4
//! knowledge known_position_known_last
//!
//! player 1 arrive 1
//! segment 0 1/2 0
//! segment 1/2 1 1
//! misreport 0 1 1
//! ```
//!
//! Each `segment` and `misreport` line gives an interval and the total value
//! of that interval, and belongs to the most recent `player` line. Numbers are
//! integers or `p/q` fractions.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use online_cake::rational::{self, Rational};
use online_cake::{Knowledge, PlayerId, Procedure, Scenario, Valuation};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagnostic {
    /// Unknown directive or wrong number of fields.
    Syntax,
    BadNumber,
    BadName,
    /// A `segment` or `misreport` line before any `player` line.
    OutsidePlayer,
    Duplicate,
    NoPlayers,
    MalformedValuation,
    BadArrivalOrder,
    InvalidScenario,
}

impl Diagnostic {
    pub fn code(self) -> &'static str {
        match self {
            Diagnostic::Syntax => "E001",
            Diagnostic::BadNumber => "E002",
            Diagnostic::BadName => "E003",
            Diagnostic::OutsidePlayer => "E004",
            Diagnostic::Duplicate => "E005",
            Diagnostic::NoPlayers => "E010",
            Diagnostic::MalformedValuation => "E011",
            Diagnostic::BadArrivalOrder => "E012",
            Diagnostic::InvalidScenario => "E013",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: error[{code}]: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub code: Diagnostic,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &content[s..i],
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &content[s..],
            column: content[..s].chars().count() + 1,
        });
    }
    tokens
}

#[derive(Default)]
struct PlayerBlock {
    line: usize,
    arrive: usize,
    segments: Vec<(Rational, Rational, Rational)>,
    misreport: Vec<(Rational, Rational, Rational)>,
    misreport_line: usize,
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err(&self, column: usize, code: Diagnostic, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            code,
            message: message.into(),
        }
    }

    fn arity(&self, tokens: &[Token], n: usize, usage: &str) -> Result<(), ParseError> {
        if tokens.len() == n {
            Ok(())
        } else {
            let column = tokens.get(n).map_or(tokens[0].column, |t| t.column);
            Err(self.err(column, Diagnostic::Syntax, format!("expected `{usage}`")))
        }
    }

    fn number(&self, t: &Token) -> Result<Rational, ParseError> {
        rational::parse(t.text).map_err(|e| self.err(t.column, Diagnostic::BadNumber, e.to_string()))
    }

    fn count(&self, t: &Token) -> Result<usize, ParseError> {
        t.text.parse().map_err(|_| {
            self.err(
                t.column,
                Diagnostic::BadNumber,
                format!("expected a non-negative integer, got {:?}", t.text),
            )
        })
    }

    fn triple(&self, tokens: &[Token]) -> Result<(Rational, Rational, Rational), ParseError> {
        Ok((
            self.number(&tokens[1])?,
            self.number(&tokens[2])?,
            self.number(&tokens[3])?,
        ))
    }
}

fn set_once<T>(p: &Parser, slot: &mut Option<T>, value: T, t: &Token) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(p.err(t.column, Diagnostic::Duplicate, format!("`{}` given twice", t.text)));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses and validates a scenario file. A missing `procedure` line means
/// `cut_and_choose`.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let mut p = Parser { line: 0 };
    let mut procedure = None;
    let mut window = None;
    let mut n_max = None;
    let mut knowledge = None;
    let mut blocks: BTreeMap<PlayerId, PlayerBlock> = BTreeMap::new();
    let mut current: Option<PlayerId> = None;

    for (i, line) in text.lines().enumerate() {
        p.line = i + 1;
        let tokens = tokenize(line);
        let Some(head) = tokens.first() else { continue };
        match head.text {
            "procedure" => {
                p.arity(&tokens, 2, "procedure NAME")?;
                let value = tokens[1]
                    .text
                    .parse::<Procedure>()
                    .map_err(|e| p.err(tokens[1].column, Diagnostic::BadName, e))?;
                set_once(&p, &mut procedure, value, head)?;
            }
            "window" => {
                p.arity(&tokens, 2, "window K")?;
                let value = p.count(&tokens[1])?;
                set_once(&p, &mut window, value, head)?;
            }
            "n_max" => {
                p.arity(&tokens, 2, "n_max N")?;
                let value = p.count(&tokens[1])?;
                set_once(&p, &mut n_max, value, head)?;
            }
            "knowledge" => {
                p.arity(&tokens, 2, "knowledge CASE")?;
                let value = tokens[1]
                    .text
                    .parse::<Knowledge>()
                    .map_err(|e| p.err(tokens[1].column, Diagnostic::BadName, e))?;
                set_once(&p, &mut knowledge, value, head)?;
            }
            "player" => {
                p.arity(&tokens, 4, "player ID arrive POSITION")?;
                if tokens[2].text != "arrive" {
                    return Err(p.err(tokens[2].column, Diagnostic::Syntax, "expected `arrive`"));
                }
                let id = p.count(&tokens[1])?;
                let id = u32::try_from(id)
                    .ok()
                    .filter(|id| *id > 0)
                    .ok_or_else(|| p.err(tokens[1].column, Diagnostic::BadNumber, "player ids start at 1"))?;
                let arrive = p.count(&tokens[3])?;
                let id = PlayerId(id);
                if blocks.contains_key(&id) {
                    return Err(p.err(tokens[1].column, Diagnostic::Duplicate, format!("player {id} defined twice")));
                }
                blocks.insert(
                    id,
                    PlayerBlock {
                        line: p.line,
                        arrive,
                        ..PlayerBlock::default()
                    },
                );
                current = Some(id);
            }
            "segment" | "misreport" => {
                p.arity(&tokens, 4, &format!("{} LO HI VALUE", head.text))?;
                let Some(id) = current else {
                    return Err(p.err(head.column, Diagnostic::OutsidePlayer, "no `player` line yet"));
                };
                let triple = p.triple(&tokens)?;
                let block = blocks.get_mut(&id).expect("current player exists");
                if head.text == "segment" {
                    block.segments.push(triple);
                } else {
                    if block.misreport.is_empty() {
                        block.misreport_line = p.line;
                    }
                    block.misreport.push(triple);
                }
            }
            other => {
                return Err(p.err(head.column, Diagnostic::Syntax, format!("unknown directive `{other}`")));
            }
        }
    }

    p.line = text.lines().count().max(1);
    if blocks.is_empty() {
        return Err(p.err(1, Diagnostic::NoPlayers, "scenario has no players"));
    }
    let mut players = BTreeMap::new();
    let mut misreports = BTreeMap::new();
    for (id, block) in &blocks {
        p.line = block.line;
        let v = Valuation::from_segments(&block.segments)
            .map_err(|e| p.err(1, Diagnostic::MalformedValuation, format!("player {id}: {e}")))?;
        players.insert(*id, v);
        if !block.misreport.is_empty() {
            p.line = block.misreport_line;
            let v = Valuation::from_segments(&block.misreport).map_err(|e| {
                p.err(1, Diagnostic::MalformedValuation, format!("player {id} misreport: {e}"))
            })?;
            misreports.insert(*id, v);
        }
    }

    let n = blocks.len();
    let mut slots: Vec<Option<PlayerId>> = vec![None; n];
    for (id, block) in &blocks {
        p.line = block.line;
        let slot = block
            .arrive
            .checked_sub(1)
            .and_then(|i| slots.get_mut(i))
            .ok_or_else(|| {
                p.err(1, Diagnostic::BadArrivalOrder, format!("arrival position {} outside 1..={n}", block.arrive))
            })?;
        if let Some(other) = slot {
            return Err(p.err(
                1,
                Diagnostic::BadArrivalOrder,
                format!("{id} and {other} both arrive at position {}", block.arrive),
            ));
        }
        *slot = Some(*id);
    }

    let scenario = Scenario {
        players,
        arrival_order: slots.into_iter().map(|s| s.expect("positions form a permutation")).collect(),
        procedure: procedure.unwrap_or(Procedure::CutAndChoose),
        window,
        n_max,
        knowledge: knowledge.unwrap_or_default(),
        misreports,
    };
    if let Err(e) = scenario.validate() {
        // A missing bound is reported when the bounded procedure actually runs,
        // since `--n-max` may still supply it.
        if !matches!(e, online_cake::EngineError::Configuration(_)) {
            p.line = 1;
            return Err(p.err(1, Diagnostic::InvalidScenario, e.to_string()));
        }
    }
    Ok(scenario)
}

/// Writes `s` in the format read by [`parse_scenario`].
pub fn serialize_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    writeln!(out, "procedure {}", s.procedure).unwrap();
    if let Some(k) = s.window {
        writeln!(out, "window {k}").unwrap();
    }
    if let Some(n) = s.n_max {
        writeln!(out, "n_max {n}").unwrap();
    }
    if s.knowledge != Knowledge::default() {
        writeln!(out, "knowledge {}", s.knowledge).unwrap();
    }
    for (id, v) in &s.players {
        let position = s.arrival_order.iter().position(|p| p == id).map_or(0, |i| i + 1);
        writeln!(out, "\nplayer {} arrive {position}", id.0).unwrap();
        for (lo, hi, total) in v.raw_segments() {
            writeln!(out, "segment {lo} {hi} {total}").unwrap();
        }
        if let Some(m) = s.misreports.get(id) {
            for (lo, hi, total) in m.raw_segments() {
                writeln!(out, "misreport {lo} {hi} {total}").unwrap();
            }
        }
    }
    out
}
