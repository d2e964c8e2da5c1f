//! Metric spaces carrying a directed graph `G` with `V(G) = X` and
//! `Δ ⊆ E(G)`, and the reduction of edge conditions to indicator α.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::admissibility::AlphaFn;
use crate::certifier::{certify_on, CertificationReport, Mode, PairSource, DEFAULT_VIOLATION_CAP};
use crate::contraction::ContractionFamily;
use crate::error::{Error, Result};
use crate::hyperspace::{raw_dist, Point, PointSet, Space};
use crate::multimap::MultiMap;
use crate::rational::{midpoint, Rational};
use crate::report::{CheckReport, Condition, Scope, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edges {
    /// Explicit directed edges; the diagonal is implied.
    List(BTreeSet<(Point, Point)>),
    /// `E(G) = R × R ∪ Δ`.
    Region(PointSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpace {
    space: Space,
    edges: Edges,
}

impl GraphSpace {
    /// Builds a graph from an edge list. Loops are dropped (they are implied)
    /// and a pair of opposite edges `(x, y), (y, x)` is rejected.
    pub fn with_edges(
        space: Space,
        edges: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (x, y) in edges {
            space.check(&x)?;
            space.check(&y)?;
            if x != y {
                set.insert((x, y));
            }
        }
        for (x, y) in &set {
            if set.contains(&(y.clone(), x.clone())) {
                return Err(Error::Input(format!(
                    "parallel edges ({0}, {1}) and ({1}, {0}) are not allowed",
                    space.show(x),
                    space.show(y)
                )));
            }
        }
        Ok(GraphSpace {
            space,
            edges: Edges::List(set),
        })
    }

    /// `E(G) = R × R ∪ Δ`. Symmetric regions break the no-parallel-edges
    /// convention; they are accepted since the convention is only enforced on
    /// edge lists.
    pub fn with_region(space: Space, region: PointSet) -> Result<Self> {
        match (&region, region.pieces()) {
            (_, Some(pieces)) => {
                for (l, r) in pieces {
                    space.check(&Point::Real(l.clone()))?;
                    space.check(&Point::Real(r.clone()))?;
                }
            }
            (PointSet::Points(ps), None) => {
                for p in ps {
                    space.check(p)?;
                }
            }
            (PointSet::Intervals(_), None) => unreachable!("interval sets have pieces"),
        }
        Ok(GraphSpace {
            space,
            edges: Edges::Region(region),
        })
    }

    /// The graph with only loops.
    pub fn diagonal(space: Space) -> Self {
        GraphSpace {
            space,
            edges: Edges::List(BTreeSet::new()),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn edges(&self) -> &Edges {
        &self.edges
    }

    pub fn has_edge(&self, x: &Point, y: &Point) -> bool {
        x == y
            || match &self.edges {
                Edges::List(set) => set.contains(&(x.clone(), y.clone())),
                Edges::Region(r) => r.contains(x) && r.contains(y),
            }
    }

    /// Edges weighted by the distance between their end points; loops and
    /// region-defined edges are not listed.
    pub fn weighted_edges(&self) -> Vec<(Point, Point, Rational)> {
        let listed: Vec<(Point, Point)> = match (&self.edges, self.space.points()) {
            (Edges::List(set), _) => set.iter().cloned().collect(),
            (Edges::Region(_), Some(all)) => all
                .iter()
                .flat_map(|x| all.iter().map(move |y| (x.clone(), y.clone())))
                .filter(|(x, y)| x != y && self.has_edge(x, y))
                .collect(),
            (Edges::Region(_), None) => Vec::new(),
        };
        listed
            .into_iter()
            .map(|(x, y)| {
                let w = raw_dist(&self.space, &x, &y);
                (x, y, w)
            })
            .collect()
    }

    /// The α with `α(x, y) = 1` exactly on edges. For a region the loops
    /// outside it are dropped: `α` is the indicator of `R × R`, which agrees
    /// with `E(G)` on every pair `x ≠ y`.
    pub fn indicator_alpha(&self) -> Result<AlphaFn> {
        if let Some(all) = self.space.points() {
            let rows = all
                .iter()
                .map(|x| {
                    all.iter()
                        .map(|y| {
                            if self.has_edge(x, y) {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            return AlphaFn::table(&self.space, rows);
        }
        match &self.edges {
            Edges::Region(r) => Ok(AlphaFn::indicator(r.clone())),
            Edges::List(_) => Err(Error::Unsupported(
                "edge lists on a real interval have no α representation; use a region".into(),
            )),
        }
    }

    /// `E(G)`-completeness and `E(G)`-continuity: automatic on a finite space,
    /// declared otherwise.
    pub fn graph_attributes(&self) -> CheckReport {
        let conds = if self.space.is_finite() {
            vec![
                Condition::from_witnesses("E(G)-complete", Scope::Exhaustive, 0, Vec::new())
                    .with_note("every Cauchy sequence in a finite space is eventually constant"),
                Condition::from_witnesses("E(G)-continuous", Scope::Exhaustive, 0, Vec::new())
                    .with_note("convergent sequences in a finite space are eventually constant"),
            ]
        } else {
            vec![
                Condition::declared("E(G)-complete", "assumed for the real-interval space"),
                Condition::declared("E(G)-continuous", "assumed for the map"),
            ]
        };
        CheckReport::new("graph attributes", conds)
    }
}

/// A point `z` of `set` with `(from, z) ∉ E(G)`, restricted to `z` with
/// `(gate, z) ∈ E(G)` when a gate is given.
fn missing_edge(
    gs: &GraphSpace,
    from: &Point,
    set: &PointSet,
    gate: Option<&Point>,
) -> Option<Point> {
    let ok_gate = |z: &Point| gate.is_none_or(|g| gs.has_edge(g, z));
    if let Some(elems) = set.elements() {
        return elems
            .iter()
            .find(|z| ok_gate(z) && !gs.has_edge(from, z))
            .cloned();
    }
    // interval sets: the gated part is either all of the set (no gate), the
    // set within the region, or finitely many listed targets
    let mut finite: Vec<Point> = Vec::new();
    let mut region_part: Option<PointSet> = None;
    match (gate, &gs.edges) {
        (None, _) => region_part = Some(set.clone()),
        (Some(g), Edges::Region(r)) => {
            if r.contains(g) {
                region_part = set.intersect(r);
            }
            if set.contains(g) {
                finite.push(g.clone());
            }
        }
        (Some(g), Edges::List(edges)) => {
            finite.extend(
                edges
                    .iter()
                    .filter(|(a, b)| a == g && set.contains(b))
                    .map(|(_, b)| b.clone()),
            );
            if set.contains(g) {
                finite.push(g.clone());
            }
        }
    }
    if let Some(z) = finite.into_iter().find(|z| !gs.has_edge(from, z)) {
        return Some(z);
    }
    let part = region_part?;
    sample_points(&part)
        .into_iter()
        .find(|z| !gs.has_edge(from, z))
}

/// End points and the midpoints of every piece, plus midpoints between
/// region end points falling inside the set.
fn sample_points(set: &PointSet) -> Vec<Point> {
    let mut out = Vec::new();
    for (l, r) in set.pieces().unwrap_or_default() {
        out.push(Point::Real(l.clone()));
        out.push(Point::Real(r.clone()));
        let m = midpoint(l, r);
        out.push(Point::Real(midpoint(l, &m)));
        out.push(Point::Real(m.clone()));
        out.push(Point::Real(midpoint(&m, r)));
    }
    out
}

/// `y ∈ T x`, `(x, y), (y, z) ∈ E(G)` ⟹ `(x, z) ∈ E(G)` for every `z ∈ T y`,
/// over `domain`.
pub fn is_triangular_edge_preserving(
    gs: &GraphSpace,
    map: &MultiMap,
    domain: &[Point],
) -> Result<CheckReport> {
    if gs.space() != map.space() {
        return Err(Error::Input(
            "graph and map live on different spaces".into(),
        ));
    }
    let imgs: Vec<PointSet> = domain.iter().map(|p| map.apply(p)).collect::<Result<_>>()?;
    let scope = match gs.space.points() {
        Some(all) if all.iter().all(|p| domain.contains(p)) => Scope::Exhaustive,
        _ => Scope::Probe,
    };
    let mut bad = Vec::new();
    let mut checked = 0;
    for (x, tx) in domain.iter().zip(&imgs) {
        for (y, ty) in domain.iter().zip(&imgs) {
            if !tx.contains(y) || !gs.has_edge(x, y) {
                continue;
            }
            checked += 1;
            if let Some(z) = missing_edge(gs, x, ty, Some(y)) {
                bad.push(Witness::Triple {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                });
            }
        }
    }
    Ok(CheckReport::new(
        "triangular edge preserving",
        vec![Condition::from_witnesses(
            "y in Tx, (x,y), (y,z) in E(G) => (x,z) in E(G) for z in Ty",
            scope,
            checked,
            bad,
        )],
    ))
}

/// Certification required only on edges; other pairs count as vacuous.
pub fn certify_eg(
    scenario: &str,
    gs: &GraphSpace,
    map: &MultiMap,
    fam: &ContractionFamily,
    source: &PairSource,
    mode: Mode,
) -> Result<CertificationReport> {
    if gs.space() != map.space() {
        return Err(Error::Input(
            "graph and map live on different spaces".into(),
        ));
    }
    let alpha = gs.indicator_alpha()?;
    let edge = |x: &Point, y: &Point| gs.has_edge(x, y);
    certify_on(
        scenario,
        map,
        &alpha,
        fam,
        source,
        mode,
        DEFAULT_VIOLATION_CAP,
        Some(&edge),
    )
}
