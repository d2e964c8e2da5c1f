//! Line-oriented scenario files, the two built-in examples and command
//! execution.
//!
//! ```text
//! name example-1
//! space interval (-10, 10)
//! branch [0, 2] -> interval [0, 5/6 * x]
//! branch (5, 10) -> set {9}
//! alpha indicator [0, 2]
//! zeta 5/6 * s - t
//! start x0=2 x1=5/3
//! ```
//!
//! Finite spaces use `space finite <n>`, `labels`, `dist <a> <b> <q>` and
//! `map <a> -> {b, c}` lines. `#` starts a comment.

mod builtin;
mod emit;
mod parse;
mod run;

pub use builtin::{builtin_text, EXAMPLE_ONE, EXAMPLE_TWO};
pub use emit::emit_scenario;
pub use parse::{parse_point, parse_scenario};
pub use run::{run, run_paper_example, Command, Format, Outcome};

use crate::admissibility::AlphaFn;
use crate::contraction::ContractionFamily;
use crate::error::Result;
use crate::graphspace::GraphSpace;
use crate::hyperspace::{Point, Space};
use crate::multimap::MultiMap;
use crate::rational::{q, Rational};
use crate::solver::{default_tol, Route, DEFAULT_MAX_ITER};

/// A parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// How pairs are related: an α function or a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Alpha(AlphaFn),
    Graph(GraphSpace),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Start {
    pub x0: Point,
    pub x1: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub space: Space,
    pub map: MultiMap,
    pub relation: Relation,
    pub family: ContractionFamily,
    pub start: Option<Start>,
    pub tol: Rational,
    pub max_iter: usize,
    pub grid_step: Rational,
    pub seed: u64,
    pub alpha_complete: Option<bool>,
    pub alpha_continuous: Option<bool>,
    pub route: Route,
}

pub fn default_grid_step() -> Rational {
    q(1, 8)
}

impl Scenario {
    /// Builds a scenario with default numeric controls.
    pub fn new(name: &str, map: MultiMap, relation: Relation, family: ContractionFamily) -> Self {
        Scenario {
            name: name.to_string(),
            space: map.space().clone(),
            map,
            relation,
            family,
            start: None,
            tol: default_tol(),
            max_iter: DEFAULT_MAX_ITER,
            grid_step: default_grid_step(),
            seed: 0,
            alpha_complete: None,
            alpha_continuous: None,
            route: Route::Continuity,
        }
    }

    /// The α in force: the given one, or the edge indicator of the graph.
    pub fn alpha(&self) -> Result<AlphaFn> {
        match &self.relation {
            Relation::Alpha(a) => Ok(a.clone()),
            Relation::Graph(g) => g.indicator_alpha(),
        }
    }
}
