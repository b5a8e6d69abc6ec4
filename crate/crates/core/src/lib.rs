//! Online cake cutting with exact rational arithmetic.
//!
//! The cake is the unit interval. Players arrive one at a time, hold
//! piecewise-constant valuations, and depart with the cake they are allocated.
//! This crate provides:
//!
//! * [`piece`] and [`valuation`]: exact cake geometry and additive value measures,
//!   with the cut-point and marking primitives every procedure uses;
//! * [`procedures`]: a deterministic event-trace engine for the dictator,
//!   online cut-and-choose, online moving knife, online mark-and-choose and
//!   bounded cut-and-choose procedures, played by risk-averse agents;
//! * [`axioms`]: checkers for fairness, efficiency and strategic properties,
//!   plus brute-force oracles for small instances;
//! * [`random`]: seeded scenario generation for property suites.

pub mod axioms;
pub mod error;
pub mod piece;
pub mod procedures;
pub mod random;
pub mod rational;
pub mod valuation;

pub use error::{CakeError, EngineError};
pub use piece::{Interval, Piece};
pub use procedures::{
    Event, Knowledge, Outcome, PlayerId, Procedure, Scenario, Snapshot,
};
pub use rational::Rational;
pub use valuation::Valuation;
