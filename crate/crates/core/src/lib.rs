//! Exact computations for set-valued maps on metric spaces.
//!
//! Points are exact rationals on a subinterval of the real line, or labelled
//! points of a finite metric space. Images are finite sets or finite unions of
//! closed intervals, and the Hausdorff distance between them is computed
//! exactly. On top of that sit:
//!
//! - control functions `ζ`, `G` and their class checks ([`contraction`]),
//! - α functions and admissibility checks ([`admissibility`]),
//! - pairwise certification of the contractive inequalities ([`certifier`]),
//! - orbit construction and fixed-point enumeration ([`solver`]),
//! - graph-endowed spaces reduced to indicator α ([`graphspace`]),
//! - a scenario file format and command runner ([`scenario`]).

pub mod admissibility;
pub mod certifier;
pub mod contraction;
pub mod error;
pub mod expr;
pub mod graphspace;
pub mod hyperspace;
pub mod multimap;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod solver;

pub use admissibility::AlphaFn;
pub use certifier::{CertVerdict, CertificationReport, Mode, PairSource};
pub use contraction::ContractionFamily;
pub use error::{Error, Result};
pub use graphspace::GraphSpace;
pub use hyperspace::{Point, PointSet, Space, Span};
pub use multimap::MultiMap;
pub use rational::Rational;
pub use report::{CheckReport, Verdict};
pub use scenario::{parse_scenario, Scenario};
pub use solver::{Orbit, Status};
