use num_traits::Signed;

use super::{builtin_text, parse_point, parse_scenario, Relation, Scenario};
use crate::admissibility::{
    is_alpha_admissible_mv, is_triangular_alpha_admissible_mv, is_triangular_alpha_star_admissible,
    probe_set,
};
use crate::certifier::{certify, CertVerdict, Mode, PairSource, DEFAULT_VIOLATION_CAP};
use crate::contraction::{check_family, default_sequences, Grid};
use crate::error::{Error, Result};
use crate::graphspace::{certify_eg, is_triangular_edge_preserving};
use crate::rational::Rational;
use crate::report::{CheckReport, Condition};
use crate::solver::{enumerate_fixed_points, iterate, EnumerateMode, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Certify {
        mode: Mode,
        grid_step: Option<Rational>,
    },
    /// `x1` is parsed against the scenario's space.
    Solve {
        tol: Option<Rational>,
        max_iter: Option<usize>,
        x1: Option<String>,
    },
    /// `None` means analytic on interval spaces and exhaustive on finite ones.
    Enumerate {
        mode: Option<EnumerateMode>,
    },
    CheckClasses,
}

/// Rendered output with its exit status: 0 for certified or found, 1 for
/// violated or not found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit: i32,
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn context(sc: &Scenario, e: Error) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(p),
        other => Error::Input(format!("scenario {}: {other}", sc.name)),
    }
}

/// Runs one command; `seed` overrides the scenario's seed.
pub fn run(sc: &Scenario, cmd: &Command, format: Format, seed: Option<u64>) -> Result<Outcome> {
    run_inner(sc, cmd, format, seed.unwrap_or(sc.seed)).map_err(|e| context(sc, e))
}

fn run_inner(sc: &Scenario, cmd: &Command, format: Format, seed: u64) -> Result<Outcome> {
    let space = &sc.space;
    match cmd {
        Command::Certify { mode, grid_step } => {
            let source = if space.is_finite() {
                PairSource::Exhaustive
            } else {
                let step = grid_step.clone().unwrap_or_else(|| sc.grid_step.clone());
                if !step.is_positive() {
                    return Err(Error::Input("grid step must be positive".into()));
                }
                PairSource::Grid { step }
            };
            let report = match &sc.relation {
                Relation::Graph(g) => certify_eg(&sc.name, g, &sc.map, &sc.family, &source, *mode)?,
                Relation::Alpha(a) => certify(
                    &sc.name,
                    &sc.map,
                    a,
                    &sc.family,
                    &source,
                    *mode,
                    DEFAULT_VIOLATION_CAP,
                )?,
            };
            let output = match format {
                Format::Text => report.render_text(space),
                Format::Records => report.render_records(space),
            };
            Ok(Outcome {
                output,
                exit: status(report.verdict == CertVerdict::CertifiedOnPairs),
            })
        }
        Command::Solve { tol, max_iter, x1 } => {
            let start = sc
                .start
                .as_ref()
                .ok_or_else(|| Error::Input("scenario has no `start` line".into()))?;
            let x1 = match x1 {
                Some(text) => Some(parse_point(space, text)?),
                None => start.x1.clone(),
            };
            let opts = SolveOptions {
                tol: tol.clone().unwrap_or_else(|| sc.tol.clone()),
                max_iter: max_iter.unwrap_or(sc.max_iter),
                route: sc.route,
                ..SolveOptions::default()
            };
            let orbit = iterate(&sc.map, &sc.alpha()?, &start.x0, x1.as_ref(), &opts)?;
            let output = match format {
                Format::Text => orbit.render_text(space),
                Format::Records => orbit.render_records(space),
            };
            Ok(Outcome {
                output,
                exit: status(orbit.found()),
            })
        }
        Command::Enumerate { mode } => {
            let mode = match mode {
                Some(m) => m.clone(),
                None if space.is_finite() => EnumerateMode::Exhaustive,
                None => EnumerateMode::Analytic,
            };
            let fp = enumerate_fixed_points(&sc.map, &mode)?;
            let output = match format {
                Format::Text => fp.render_text(space),
                Format::Records => fp.render_records(space),
            };
            Ok(Outcome {
                output,
                exit: status(!fp.is_empty()),
            })
        }
        Command::CheckClasses => {
            let reports = check_classes(sc, seed)?;
            let ok = reports.iter().all(|r| r.passed());
            let output = match format {
                Format::Text => reports
                    .iter()
                    .map(|r| r.render(Some(space)))
                    .collect::<Vec<_>>()
                    .join(""),
                Format::Records => reports.iter().map(|r| check_records(r, sc)).collect(),
            };
            Ok(Outcome {
                output,
                exit: status(ok),
            })
        }
    }
}

/// Contraction-family checks, admissibility on the probe set, graph checks
/// when a graph is given, and the declared attributes.
pub fn check_classes(sc: &Scenario, seed: u64) -> Result<Vec<CheckReport>> {
    let mut reports = check_family(&sc.family, &Grid::default_grid(seed), &default_sequences())?;
    let probe = probe_set(&sc.map, seed);
    let alpha = sc.alpha()?;
    reports.push(is_alpha_admissible_mv(&sc.map, &alpha, &probe)?);
    reports.push(is_triangular_alpha_admissible_mv(&sc.map, &alpha, &probe)?);
    reports.push(is_triangular_alpha_star_admissible(
        &sc.map, &alpha, &probe,
    )?);
    if let Relation::Graph(g) = &sc.relation {
        reports.push(is_triangular_edge_preserving(g, &sc.map, &probe)?);
        reports.push(g.graph_attributes());
    }
    let declared = |label: &str, v: Option<bool>| match v {
        Some(true) => Some(Condition::declared(label, "declared true")),
        Some(false) => Some(Condition::declared(label, "declared false")),
        None => None,
    };
    let conds: Vec<Condition> = [
        declared("alpha-complete", sc.alpha_complete),
        declared("alpha-continuous", sc.alpha_continuous),
    ]
    .into_iter()
    .flatten()
    .chain([Condition::declared("route", sc.route.to_string())])
    .collect();
    reports.push(CheckReport::new("declared attributes", conds));
    Ok(reports)
}

fn check_records(r: &CheckReport, sc: &Scenario) -> String {
    let mut out = format!("check name=\"{}\" verdict={}\n", r.name, r.verdict());
    for c in &r.conditions {
        out.push_str(&format!(
            "condition check=\"{}\" label=\"{}\" verdict={} scope=\"{}\" checked={} witnesses={}",
            r.name,
            c.label,
            c.verdict,
            c.scope,
            c.checked,
            c.witnesses.len()
        ));
        if let Some(w) = c.first_witness() {
            out.push_str(&format!(" first=\"{}\"", w.render(Some(&sc.space))));
        }
        out.push('\n');
    }
    out
}

/// Runs a command on built-in example 1 or 2.
pub fn run_paper_example(
    id: u8,
    cmd: &Command,
    format: Format,
    seed: Option<u64>,
) -> Result<Outcome> {
    let text = builtin_text(id)
        .ok_or_else(|| Error::Input(format!("no built-in example {id}; use 1 or 2")))?;
    let sc = parse_scenario(text)?;
    run(&sc, cmd, format, seed)
}
