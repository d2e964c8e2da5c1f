use std::fmt::Write;

use super::{Relation, Scenario};
use crate::admissibility::AlphaFn;
use crate::graphspace::Edges;
use crate::hyperspace::{PointSet, Space, Span};
use crate::multimap::{BranchDomain, Image};
use crate::solver::Route;

fn span_text(s: &Span) -> String {
    let lo = s.lo.as_ref().map_or("-inf".to_string(), |v| v.to_string());
    let hi = s.hi.as_ref().map_or("inf".to_string(), |v| v.to_string());
    format!(
        "{}{lo}, {hi}{}",
        if s.lo_closed { '[' } else { '(' },
        if s.hi_closed { ']' } else { ')' }
    )
}

fn region_text(space: &Space, set: &PointSet) -> String {
    match set {
        PointSet::Points(ps) => {
            let items: Vec<String> = ps.iter().map(|p| space.show(p)).collect();
            format!("{{{}}}", items.join(", "))
        }
        PointSet::Intervals(ivs) => ivs
            .iter()
            .map(|(l, r)| format!("[{l}, {r}]"))
            .collect::<Vec<_>>()
            .join(" u "),
    }
}

/// Canonical text for a scenario; parsing it gives back an equal value.
pub fn emit_scenario(sc: &Scenario) -> String {
    let mut out = String::new();
    let space = &sc.space;
    writeln!(out, "name {}", sc.name).unwrap();
    match space {
        Space::Line(span) => writeln!(out, "space interval {}", span_text(span)).unwrap(),
        Space::Finite(m) => {
            writeln!(out, "space finite {}", m.len()).unwrap();
            writeln!(out, "labels {}", m.labels().join(" ")).unwrap();
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    writeln!(
                        out,
                        "dist {} {} {}",
                        m.labels()[i],
                        m.labels()[j],
                        m.table()[i][j]
                    )
                    .unwrap();
                }
            }
        }
    }
    if let Some(branches) = sc.map.branches() {
        for b in branches {
            let domain = match &b.domain {
                BranchDomain::Span(s) => span_text(s),
                BranchDomain::Points(ps) => {
                    format!(
                        "{{{}}}",
                        ps.iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                }
            };
            let image = match &b.image {
                Image::Set(es) => format!(
                    "set {{{}}}",
                    es.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                Image::Interval(lo, hi) => format!("interval [{lo}, {hi}]"),
            };
            writeln!(out, "branch {domain} -> {image}").unwrap();
        }
    }
    if let (Some(images), Some(points)) = (sc.map.table_images(), space.points()) {
        for (p, img) in points.iter().zip(images) {
            writeln!(out, "map {} -> {}", space.show(p), region_text(space, img)).unwrap();
        }
    }
    match &sc.relation {
        Relation::Alpha(AlphaFn::Indicator { region, diagonal }) => {
            let flag = if *diagonal { " diagonal" } else { "" };
            writeln!(out, "alpha indicator {}{flag}", region_text(space, region)).unwrap();
        }
        Relation::Alpha(AlphaFn::Constant(c)) => writeln!(out, "alpha constant {c}").unwrap(),
        Relation::Alpha(AlphaFn::Table(rows)) => {
            writeln!(out, "alpha table").unwrap();
            for r in rows {
                writeln!(
                    out,
                    "row {}",
                    r.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
                .unwrap();
            }
        }
        Relation::Graph(g) => match g.edges() {
            Edges::Region(r) => writeln!(out, "graph region {}", region_text(space, r)).unwrap(),
            Edges::List(list) => {
                writeln!(out, "graph edges").unwrap();
                for (a, b) in list {
                    writeln!(out, "edge {} {}", space.show(a), space.show(b)).unwrap();
                }
            }
        },
    }
    writeln!(out, "zeta {}", sc.family.zeta()).unwrap();
    writeln!(out, "gfun {}", sc.family.gfun()).unwrap();
    writeln!(out, "cg {}", sc.family.cg()).unwrap();
    if let Some(st) = &sc.start {
        write!(out, "start x0={}", space.show(&st.x0)).unwrap();
        if let Some(x1) = &st.x1 {
            write!(out, " x1={}", space.show(x1)).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "tol {}", sc.tol).unwrap();
    writeln!(out, "max-iter {}", sc.max_iter).unwrap();
    writeln!(out, "grid-step {}", sc.grid_step).unwrap();
    writeln!(out, "seed {}", sc.seed).unwrap();
    if let Some(v) = sc.alpha_complete {
        writeln!(out, "declare alpha-complete {v}").unwrap();
    }
    if let Some(v) = sc.alpha_continuous {
        writeln!(out, "declare alpha-continuous {v}").unwrap();
    }
    let route = match sc.route {
        Route::Continuity => "continuity",
        Route::IvPrime => "iv-prime",
    };
    writeln!(out, "declare route {route}").unwrap();
    out
}
