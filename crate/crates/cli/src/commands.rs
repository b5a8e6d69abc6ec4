use std::io::{self, Write};

use online_cake::axioms::{self, Property};
use online_cake::procedures::run;
use online_cake::random::{random_scenario, rng};
use online_cake::{EngineError, Event, Outcome, Procedure, Scenario};
use serde_json::{json, Value};
use thiserror::Error;

use crate::audit::{self, AuditMatrix, Cell};
use crate::cli::{Cli, Command, FixturesAction, ScenarioArgs};
use crate::fixtures::{self, Fixture, LoadError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ENGINE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Load(_) => EXIT_USAGE,
            CliError::Engine(_) => EXIT_ENGINE,
            CliError::Io(_) => EXIT_ENGINE,
        }
    }
}

/// Executes a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli, out: &mut impl Write) -> Result<i32, CliError> {
    let machine = cli.machine;
    match &cli.command {
        Command::Run { input, trace } => {
            let (s, _) = resolve(input)?;
            let o = run(&s)?;
            print_run(out, &s, &o, *trace, machine)?;
            Ok(EXIT_OK)
        }
        Command::Audit {
            input,
            properties,
            expectations,
            all_procedures,
        } => {
            let (s, fixture) = resolve(input)?;
            let properties = if properties.is_empty() {
                Property::ALL.to_vec()
            } else {
                let mut chosen = properties.clone();
                chosen.extend(expectations.iter().map(|(p, _)| *p));
                chosen.dedup();
                chosen
            };
            let procedures = if *all_procedures {
                Procedure::MAIN.to_vec()
            } else {
                vec![s.procedure]
            };
            let matrix = audit::audit(&s, &procedures, &properties)?;
            let mut extra: Vec<(Property, bool)> =
                fixture.map_or(Vec::new(), |f| f.verdicts.to_vec());
            extra.extend(expectations.iter().copied());
            print_audit(out, &matrix, Some(s.procedure), &extra, machine)
        }
        Command::ScanOrders { input } => {
            let (s, _) = resolve(input)?;
            let scan = axioms::scan_orders(&s, s.procedure)?;
            print_scan(out, &s, &scan, machine)?;
            Ok(EXIT_OK)
        }
        Command::Fixtures { action } => match action {
            FixturesAction::List => {
                for f in fixtures::FIXTURES {
                    let procedure = f.scenario().procedure;
                    if machine {
                        let record = json!({
                            "type": "fixture",
                            "name": f.name,
                            "procedure": procedure.name(),
                            "provenance": f.provenance.to_string(),
                            "note": f.note,
                        });
                        writeln!(out, "{record}")?;
                    } else {
                        writeln!(out, "{:<38} {:<24} {:<20} {}", f.name, procedure, f.provenance, f.note)?;
                    }
                }
                Ok(EXIT_OK)
            }
            FixturesAction::Run { name, trace } => {
                let f = fixtures::find(name)
                    .ok_or_else(|| CliError::Usage(format!("no fixture named {name:?}")))?;
                let s = f.scenario();
                let o = run(&s)?;
                print_run(out, &s, &o, *trace, machine)?;
                let drift = f.verify()?;
                report_drift(out, f, &drift, machine)?;
                Ok(if drift.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
            }
            FixturesAction::VerifyAll => {
                let mut status = EXIT_OK;
                for f in fixtures::FIXTURES {
                    let drift = f.verify()?;
                    report_drift(out, f, &drift, machine)?;
                    if !drift.is_empty() {
                        status = EXIT_MISMATCH;
                    }
                }
                Ok(status)
            }
        },
    }
}

/// Loads (or generates) the scenario and applies command-line overrides.
fn resolve(input: &ScenarioArgs) -> Result<(Scenario, Option<&'static Fixture>), CliError> {
    let (mut s, fixture) = match (&input.scenario, input.seed) {
        (_, Some(seed)) => {
            if input.players < 2 {
                return Err(CliError::Usage("--players must be at least 2".into()));
            }
            if input.segments == 0 {
                return Err(CliError::Usage("--segments must be at least 1".into()));
            }
            let procedure = input.procedure.unwrap_or(Procedure::CutAndChoose);
            let s = random_scenario(&mut rng(seed), procedure, input.players, input.segments);
            (s, None)
        }
        (Some(path), None) => fixtures::load(path)?,
        (None, None) => return Err(CliError::Usage("no scenario given".into())),
    };
    let overridden = input.procedure.is_some()
        || input.window.is_some()
        || input.n_max.is_some()
        || input.knowledge.is_some();
    if let Some(p) = input.procedure {
        s.procedure = p;
    }
    if input.window.is_some() {
        s.window = input.window;
    }
    if input.n_max.is_some() {
        s.n_max = input.n_max;
    }
    if let Some(k) = input.knowledge {
        s.knowledge = k;
    }
    s.validate()?;
    // Overrides turn a fixture into a different scenario; its stored
    // verdicts no longer apply.
    let fixture = fixture.filter(|f| !overridden || f.scenario() == s);
    Ok((s, fixture))
}

fn print_run(
    out: &mut impl Write,
    s: &Scenario,
    o: &Outcome,
    trace: bool,
    machine: bool,
) -> io::Result<()> {
    if machine {
        writeln!(
            out,
            "{}",
            json!({"type": "scenario", "procedure": s.procedure.name(), "players": s.n()})
        )?;
    } else {
        writeln!(out, "procedure {}", s.procedure)?;
    }
    if trace {
        for (i, e) in o.trace.iter().enumerate() {
            if machine {
                let mut record = event_json(e);
                record["type"] = json!("event");
                record["index"] = json!(i);
                writeln!(out, "{record}")?;
            } else {
                writeln!(out, "{i:>3} {e}")?;
            }
        }
    }
    if !machine {
        writeln!(out, "player piece value share")?;
    }
    for p in o.departure_order() {
        let v = &s.players[&p];
        let value = o.own_value(p, v);
        let share = &value / v.total();
        if machine {
            let record = json!({
                "type": "allocation",
                "player": p.to_string(),
                "piece": o.piece(p).to_string(),
                "value": value.to_string(),
                "share": share.to_string(),
            });
            writeln!(out, "{record}")?;
        } else {
            writeln!(out, "{p} {} {value} {share}", o.piece(p))?;
        }
    }
    Ok(())
}

fn pieces_json(pieces: &[online_cake::Piece]) -> Value {
    pieces.iter().map(|p| p.to_string()).collect()
}

pub fn event_json(e: &Event) -> Value {
    match e {
        Event::Arrive(p) => json!({"event": "arrive", "player": p.to_string()}),
        Event::CutOffer { cutter, slice } => {
            json!({"event": "cut_offer", "player": cutter.to_string(), "slice": slice.to_string()})
        }
        Event::Accept { player, slice } => {
            json!({"event": "accept", "player": player.to_string(), "slice": slice.to_string()})
        }
        Event::Decline { player, slice } => {
            json!({"event": "decline", "player": player.to_string(), "slice": slice.to_string()})
        }
        Event::Mark { marker, pieces } => {
            json!({"event": "mark", "player": marker.to_string(), "pieces": pieces_json(pieces)})
        }
        Event::SelectFor {
            chooser,
            piece,
            recipient,
        } => json!({
            "event": "select_for",
            "player": chooser.to_string(),
            "piece": piece.to_string(),
            "recipient": recipient.to_string(),
        }),
        Event::KnifeCall {
            player,
            position,
            round,
        } => json!({
            "event": "knife_call",
            "player": player.to_string(),
            "position": position.to_string(),
            "round": round,
        }),
        Event::Depart { player, piece } => {
            json!({"event": "depart", "player": player.to_string(), "piece": piece.to_string()})
        }
        Event::Timeout(p) => json!({"event": "timeout", "player": p.to_string()}),
    }
}

fn print_audit(
    out: &mut impl Write,
    matrix: &AuditMatrix,
    extra_for: Option<Procedure>,
    extra: &[(Property, bool)],
    machine: bool,
) -> Result<i32, CliError> {
    for row in &matrix.rows {
        if !machine {
            writeln!(out, "procedure {}", row.procedure)?;
        }
        for (property, cell) in &row.cells {
            let (detail, note) = match cell {
                Cell::Verdict(r) => (r.witness.as_ref().map(|w| w.to_string()), r.note.clone()),
                Cell::Skipped(why) => (Some(format!("skipped: {why}")), None),
                Cell::Error(e) => (Some(format!("error: {e}")), None),
            };
            if machine {
                let record = json!({
                    "type": "cell",
                    "procedure": row.procedure.name(),
                    "property": property.name(),
                    "holds": cell.holds(),
                    "detail": detail,
                    "note": note,
                });
                writeln!(out, "{record}")?;
            } else {
                write!(out, "  {:<22} {}", property.name(), cell.symbol())?;
                if let Some(d) = detail {
                    write!(out, "  {d}")?;
                }
                if let Some(n) = note {
                    write!(out, "  ({n})")?;
                }
                writeln!(out)?;
            }
        }
    }
    let mut status = EXIT_OK;
    for row in &matrix.rows {
        for (strong, weak) in audit::implication_violations(row) {
            status = EXIT_MISMATCH;
            if machine {
                let record = json!({
                    "type": "implication_violation",
                    "procedure": row.procedure.name(),
                    "stronger": strong.name(),
                    "weaker": weak.name(),
                });
                writeln!(out, "{record}")?;
            } else {
                writeln!(out, "IMPLICATION {}: {strong} holds but {weak} fails", row.procedure)?;
            }
        }
    }
    for m in audit::mismatches(matrix, extra_for, extra) {
        status = EXIT_MISMATCH;
        if machine {
            let record = json!({
                "type": "mismatch",
                "procedure": m.procedure.name(),
                "property": m.property.name(),
                "expected": m.expected,
                "actual": m.actual,
            });
            writeln!(out, "{record}")?;
        } else {
            let actual = match m.actual {
                Some(true) => "✓",
                Some(false) => "✗",
                None => "-",
            };
            let expected = if m.expected { "✓" } else { "✗" };
            writeln!(
                out,
                "MISMATCH {} {}: expected {expected}, got {actual}",
                m.procedure, m.property
            )?;
        }
    }
    Ok(status)
}

fn order_string(order: &[online_cake::PlayerId]) -> String {
    let ids: Vec<String> = order.iter().map(|p| p.0.to_string()).collect();
    format!("({})", ids.join(","))
}

fn print_scan(
    out: &mut impl Write,
    s: &Scenario,
    scan: &axioms::OrderScan,
    machine: bool,
) -> io::Result<()> {
    for (order, outcome) in &scan.runs {
        if machine {
            let values: serde_json::Map<String, Value> = s
                .players
                .iter()
                .map(|(p, v)| (p.to_string(), json!(outcome.own_value(*p, v).to_string())))
                .collect();
            let pieces: serde_json::Map<String, Value> = outcome
                .allocation
                .iter()
                .map(|(p, piece)| (p.to_string(), json!(piece.to_string())))
                .collect();
            let record = json!({
                "type": "order",
                "order": order_string(order),
                "pieces": pieces,
                "values": values,
            });
            writeln!(out, "{record}")?;
        } else {
            write!(out, "{}", order_string(order))?;
            for (p, v) in &s.players {
                write!(out, " {p} {} {}", outcome.piece(*p), outcome.own_value(*p, v))?;
            }
            writeln!(out)?;
        }
    }
    for v in &scan.violations {
        if machine {
            let record = json!({
                "type": "violation",
                "player": v.player.to_string(),
                "before_order": order_string(&v.before_order),
                "after_order": order_string(&v.after_order),
                "before_value": v.before_value.to_string(),
                "after_value": v.after_value.to_string(),
            });
            writeln!(out, "{record}")?;
        } else {
            writeln!(out, "violation {v}")?;
        }
    }
    if !machine {
        writeln!(
            out,
            "{} orders, {} violations",
            scan.runs.len(),
            scan.violations.len()
        )?;
    }
    Ok(())
}

fn report_drift(out: &mut impl Write, f: &Fixture, drift: &[String], machine: bool) -> io::Result<()> {
    if machine {
        let record = json!({
            "type": "fixture_check",
            "name": f.name,
            "provenance": f.provenance.to_string(),
            "ok": drift.is_empty(),
            "drift": drift,
        });
        writeln!(out, "{record}")
    } else if drift.is_empty() {
        writeln!(out, "ok    {} [{}]", f.name, f.provenance)
    } else {
        writeln!(out, "DRIFT {} [{}]", f.name, f.provenance)?;
        for d in drift {
            writeln!(out, "      {d}")?;
        }
        Ok(())
    }
}
