//! Verdicts and witnesses shared by every class and admissibility check.

use std::fmt;

use crate::hyperspace::{Point, Space};
use crate::rational::Rational;

/// How many witnesses a rendered report lists per condition.
pub const WITNESS_DISPLAY_CAP: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Limit conditions can only be falsified by sampling.
    NotFalsified,
    Falsified,
    /// Recorded as an assumption, never checked.
    DeclaredNotChecked,
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        matches!(
            self,
            Verdict::Pass | Verdict::NotFalsified | Verdict::DeclaredNotChecked
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotFalsified => "NOT-FALSIFIED",
            Verdict::Falsified => "FALSIFIED",
            Verdict::DeclaredNotChecked => "DECLARED-NOT-CHECKED",
        })
    }
}

/// What a PASS covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every point of a finite space.
    Exhaustive,
    /// A finite grid of argument pairs.
    Grid,
    /// A finite probe set of a continuum space.
    Probe,
    /// Supplied sequences.
    Sequences,
    Declared,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Exhaustive => "exhaustive",
            Scope::Grid => "on grid",
            Scope::Probe => "on probe set",
            Scope::Sequences => "on supplied sequences",
            Scope::Declared => "declared",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Witness {
    /// A violating argument pair of a two-place function, as `(s, t)`.
    Args {
        s: Rational,
        t: Rational,
    },
    Pair {
        x: Point,
        y: Point,
    },
    Triple {
        x: Point,
        y: Point,
        z: Point,
    },
    /// Orbit positions `n < m`.
    Indices {
        n: usize,
        m: usize,
    },
    /// A sequence pair whose tail estimate reached the threshold.
    Sequence {
        index: usize,
        limsup: Rational,
    },
}

impl Witness {
    pub fn render(&self, space: Option<&Space>) -> String {
        let show = |p: &Point| match space {
            Some(sp) => sp.show(p),
            None => match p {
                Point::Real(r) => r.to_string(),
                Point::Vertex(i) => format!("#{i}"),
            },
        };
        match self {
            Witness::Args { s, t } => format!("(s={s}, t={t})"),
            Witness::Pair { x, y } => format!("(x={}, y={})", show(x), show(y)),
            Witness::Triple { x, y, z } => format!("(x={}, y={}, z={})", show(x), show(y), show(z)),
            Witness::Indices { n, m } => format!("(n={n}, m={m})"),
            Witness::Sequence { index, limsup } => format!("(sequence {index}, limsup~{limsup})"),
        }
    }
}

/// Outcome of one condition of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub verdict: Verdict,
    pub scope: Scope,
    pub checked: usize,
    /// Every violation found, sorted.
    pub witnesses: Vec<Witness>,
    pub note: Option<String>,
}

impl Condition {
    pub fn from_witnesses(
        label: impl Into<String>,
        scope: Scope,
        checked: usize,
        mut witnesses: Vec<Witness>,
    ) -> Self {
        witnesses.sort();
        witnesses.dedup();
        let verdict = if witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Condition {
            label: label.into(),
            verdict,
            scope,
            checked,
            witnesses,
            note: None,
        }
    }

    pub fn declared(label: impl Into<String>, note: impl Into<String>) -> Self {
        Condition {
            label: label.into(),
            verdict: Verdict::DeclaredNotChecked,
            scope: Scope::Declared,
            checked: 0,
            witnesses: Vec::new(),
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub conditions: Vec<Condition>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, conditions: Vec<Condition>) -> Self {
        CheckReport {
            name: name.into(),
            conditions,
        }
    }

    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict.is_ok())
    }

    pub fn verdict(&self) -> Verdict {
        if let Some(c) = self.conditions.iter().find(|c| !c.verdict.is_ok()) {
            return c.verdict;
        }
        if self
            .conditions
            .iter()
            .any(|c| c.verdict == Verdict::NotFalsified)
        {
            Verdict::NotFalsified
        } else {
            Verdict::Pass
        }
    }

    pub fn condition(&self, label_prefix: &str) -> Option<&Condition> {
        self.conditions
            .iter()
            .find(|c| c.label.starts_with(label_prefix))
    }

    pub fn render(&self, space: Option<&Space>) -> String {
        let mut out = format!("{}: {}\n", self.name, self.verdict());
        for c in &self.conditions {
            out.push_str(&format!(
                "  {} -> {} ({}, {} checked)",
                c.label, c.verdict, c.scope, c.checked
            ));
            if let Some(note) = &c.note {
                out.push_str(&format!(" [{note}]"));
            }
            out.push('\n');
            for w in c.witnesses.iter().take(WITNESS_DISPLAY_CAP) {
                out.push_str(&format!("    witness {}\n", w.render(space)));
            }
            if c.witnesses.len() > WITNESS_DISPLAY_CAP {
                out.push_str(&format!(
                    "    ... {} more witnesses not shown\n",
                    c.witnesses.len() - WITNESS_DISPLAY_CAP
                ));
            }
        }
        out
    }
}
