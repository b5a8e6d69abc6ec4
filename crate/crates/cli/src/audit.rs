//! Audit matrices: every selected property checked against every procedure run.

use online_cake::axioms::{self, EnvyMode, Property, PropertyReport};
use online_cake::procedures::run;
use online_cake::rational::{int, rat, Rational};
use online_cake::{EngineError, Outcome, Procedure, Scenario};

/// Factors tried for the scale-invariance column.
pub fn scale_factors() -> [Rational; 3] {
    [rat(1, 3), int(1), int(7)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Verdict(PropertyReport),
    /// The property does not apply, e.g. truthfulness without a misreport.
    Skipped(String),
    /// The checker refused, typically a size guard.
    Error(EngineError),
}

impl Cell {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Cell::Verdict(r) => Some(r.holds),
            _ => None,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self.holds() {
            Some(true) => "✓",
            Some(false) => "✗",
            None => "-",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuditRow {
    pub procedure: Procedure,
    pub scenario: Scenario,
    pub outcome: Outcome,
    pub cells: Vec<(Property, Cell)>,
}

impl AuditRow {
    pub fn cell(&self, property: Property) -> Option<&Cell> {
        self.cells.iter().find(|(p, _)| *p == property).map(|(_, c)| c)
    }

    pub fn holds(&self, property: Property) -> Option<bool> {
        self.cell(property).and_then(Cell::holds)
    }
}

#[derive(Debug, Clone, Default)]
pub struct AuditMatrix {
    pub rows: Vec<AuditRow>,
}

fn lift(r: Result<PropertyReport, EngineError>) -> Cell {
    match r {
        Ok(report) => Cell::Verdict(report),
        Err(e) => Cell::Error(e),
    }
}

fn scale_cell(s: &Scenario) -> Cell {
    let mut last = None;
    for p in s.players.keys() {
        for c in scale_factors() {
            match axioms::check_scale_invariance(s, *p, &c) {
                Ok(r) if !r.holds => return Cell::Verdict(r),
                Ok(r) => last = Some(r),
                Err(e) => return Cell::Error(e),
            }
        }
    }
    Cell::Verdict(last.expect("scenario has players"))
}

fn truthful_cell(s: &Scenario) -> Cell {
    if s.misreports.is_empty() {
        return Cell::Skipped("no misreport in scenario".into());
    }
    let mut last = None;
    for (p, m) in &s.misreports {
        match axioms::check_manipulation(s, *p, m) {
            Ok(r) if !r.holds => return Cell::Verdict(r),
            Ok(r) => last = Some(r),
            Err(e) => return Cell::Error(e),
        }
    }
    Cell::Verdict(last.expect("at least one misreport"))
}

fn check(s: &Scenario, o: &Outcome, property: Property) -> Cell {
    let v = &s.players;
    match property {
        Property::Proportional => Cell::Verdict(axioms::check_proportional(o, v)),
        Property::ForwardProportional => Cell::Verdict(axioms::check_forward_proportional(o, v)),
        Property::EnvyFree => Cell::Verdict(axioms::check_envy(o, v, EnvyMode::Full)),
        Property::ForwardEnvyFree => Cell::Verdict(axioms::check_envy(o, v, EnvyMode::Forward)),
        Property::ImmediatelyEnvyFree => {
            Cell::Verdict(axioms::check_envy(o, v, EnvyMode::Immediate))
        }
        Property::Equitable => Cell::Verdict(axioms::check_equitable(o, v)),
        Property::ParetoPermutation => lift(axioms::check_pareto_permutation(o, v, false)),
        Property::WeakParetoPermutation => lift(axioms::check_pareto_permutation(o, v, true)),
        Property::ParetoAtoms => lift(axioms::check_pareto_atoms(o, v, false)),
        Property::WeakParetoAtoms => lift(axioms::check_pareto_atoms(o, v, true)),
        Property::Sequential => Cell::Verdict(axioms::check_sequential(o)),
        Property::ScaleInvariant => scale_cell(s),
        Property::OrderMonotonic => lift(axioms::check_order_monotonicity(s, s.procedure)),
        Property::Truthful => truthful_cell(s),
    }
}

/// Runs `s` under each procedure and checks `properties` on every outcome.
/// Engine failures abort the audit; checker failures are kept per cell.
pub fn audit(
    s: &Scenario,
    procedures: &[Procedure],
    properties: &[Property],
) -> Result<AuditMatrix, EngineError> {
    let mut rows = Vec::new();
    for &procedure in procedures {
        let scenario = s.clone().with_procedure(procedure);
        let outcome = run(&scenario)?;
        let cells = properties
            .iter()
            .map(|&p| (p, check(&scenario, &outcome, p)))
            .collect();
        rows.push(AuditRow {
            procedure,
            scenario,
            outcome,
            cells,
        });
    }
    Ok(AuditMatrix { rows })
}

/// Pairs `(stronger, weaker)`: whenever the first holds the second must too.
pub const IMPLICATIONS: [(Property, Property); 8] = [
    (Property::EnvyFree, Property::ForwardEnvyFree),
    (Property::ForwardEnvyFree, Property::ImmediatelyEnvyFree),
    (Property::EnvyFree, Property::Proportional),
    (Property::ForwardEnvyFree, Property::ForwardProportional),
    (Property::ParetoPermutation, Property::WeakParetoPermutation),
    (Property::ParetoAtoms, Property::WeakParetoAtoms),
    (Property::ParetoAtoms, Property::ParetoPermutation),
    (Property::WeakParetoAtoms, Property::WeakParetoPermutation),
];

/// Implications between verdicts in `row` that fail.
pub fn implication_violations(row: &AuditRow) -> Vec<(Property, Property)> {
    IMPLICATIONS
        .into_iter()
        .filter(|(strong, weak)| row.holds(*strong) == Some(true) && row.holds(*weak) == Some(false))
        .collect()
}

/// Verdicts every outcome of `procedure` is expected to have.
pub fn universal_expectations(procedure: Procedure) -> &'static [(Property, bool)] {
    match procedure {
        Procedure::Dictator => &[
            (Property::ForwardProportional, true),
            (Property::ForwardEnvyFree, true),
            (Property::WeakParetoAtoms, true),
            (Property::ScaleInvariant, true),
            (Property::Sequential, true),
            (Property::OrderMonotonic, true),
        ],
        Procedure::CutAndChoose | Procedure::MovingKnife => &[
            (Property::ForwardProportional, true),
            (Property::ImmediatelyEnvyFree, true),
            (Property::ScaleInvariant, true),
            (Property::Sequential, true),
        ],
        Procedure::MarkAndChoose => &[
            (Property::ForwardProportional, true),
            (Property::ImmediatelyEnvyFree, true),
            (Property::ScaleInvariant, true),
        ],
        Procedure::BoundedCutAndChoose => &[(Property::ScaleInvariant, true)],
    }
}

/// A verdict that differs from what was expected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub procedure: Procedure,
    pub property: Property,
    pub expected: bool,
    /// `None` when the cell was skipped or errored.
    pub actual: Option<bool>,
}

/// Compares each row against the universal expectations for its procedure,
/// plus `extra` expectations for rows running `extra_for`. A skipped or
/// refused cell only counts as a mismatch for the `extra` expectations.
pub fn mismatches(
    matrix: &AuditMatrix,
    extra_for: Option<Procedure>,
    extra: &[(Property, bool)],
) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for row in &matrix.rows {
        let specific = if extra_for == Some(row.procedure) { extra } else { &[] };
        let expected = universal_expectations(row.procedure)
            .iter()
            .map(|e| (e, false))
            .chain(specific.iter().map(|e| (e, true)));
        for (&(property, want), strict) in expected {
            let Some(cell) = row.cell(property) else { continue };
            let actual = cell.holds();
            let wrong = match actual {
                Some(got) => got != want,
                None => strict,
            };
            if wrong {
                out.push(Mismatch {
                    procedure: row.procedure,
                    property,
                    expected: want,
                    actual,
                });
            }
        }
    }
    out
}
