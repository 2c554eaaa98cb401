//! Primal augmentation lab for bounded integer programs.
//!
//! Instances are maximization problems `max c·x` over the integer points of
//! a box intersected with linear rows, or over an explicit point list.
//! Augmentation schemes repeatedly ask an oracle for an improving point,
//! move along the direction as far as feasibility allows, and log every
//! step to a [`trace::Trace`].

pub mod algorithms;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod instance;
pub mod io;
pub mod metrics;
pub mod numeric;
pub mod oracle;
pub mod potential;
pub mod trace;
pub mod worstcase;

pub use error::{Error, Result};
pub use instance::{FeasibleSet, Instance, ObjectiveVector, PointSetInstance};
pub use oracle::{Oracle, OraclePolicy};
pub use potential::PotentialKind;
pub use trace::{Status, Trace};
