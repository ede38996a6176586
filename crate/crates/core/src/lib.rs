//! Exact misère combinatorial game theory.
//!
//! Games live in a [`Games`] session that interns every tree once. On top of
//! it sit the misère/normal solver, the adjoint and tilde constructions,
//! comparison modulo restricted universes, impartial canonical forms,
//! enumeration of small games, and a registry of theorem checks.

mod arena;
pub mod census;
pub mod comparison;
pub mod constructions;
pub mod context;
pub mod error;
pub mod game;
pub mod harness;
pub mod impartial;
pub mod notation;
pub mod solver;

pub use census::{classify, count, ClassTable, EnumSpace, Filter};
pub use comparison::{Method, Status, SubWitness, UniverseSpec, Verdict};
pub use constructions::{BCompanions, Companions, Named, MAX_INDEX};
pub use error::{Error, Precondition, Result};
pub use game::{GameId, GameNode, Games};
pub use harness::{registry, run_all, run_check, CheckStatus, Counterexample, Params, Report, RunConfig};
pub use notation::{parse, GameExpr, ParseError, Style};
pub use solver::{outcome_geq, Convention, Mover, Outcome};
