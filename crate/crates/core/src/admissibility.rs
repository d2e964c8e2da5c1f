//! α functions and the admissibility notions for set-valued maps.
//!
//! Checks quantify over a finite domain: every point of a finite space, or a
//! probe set for a real interval. Successor sets `T y` are handled exactly,
//! including interval images when α is an indicator of a region.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hyperspace::{Point, PointSet, Space, Span};
use crate::multimap::{BranchDomain, MultiMap};
use crate::rational::{int, midpoint, q, Rational};
use crate::report::{CheckReport, Condition, Scope, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaFn {
    /// `α(x, y) = 1` when both points lie in `region` (or, with `diagonal`,
    /// when `x = y`), else 0.
    Indicator {
        region: PointSet,
        diagonal: bool,
    },
    /// Row `i`, column `j` holds `α(v_i, v_j)` on a finite space.
    Table(Vec<Vec<Rational>>),
    Constant(Rational),
}

impl AlphaFn {
    pub fn indicator(region: PointSet) -> Self {
        AlphaFn::Indicator {
            region,
            diagonal: false,
        }
    }

    pub fn table(space: &Space, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = match space {
            Space::Finite(m) => m.len(),
            Space::Line(_) => return Err(Error::Input("α tables need a finite space".into())),
        };
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input(format!("α table must be {n}x{n}")));
        }
        if rows.iter().flatten().any(|v| v.is_negative()) {
            return Err(Error::Input("α values must be non-negative".into()));
        }
        Ok(AlphaFn::Table(rows))
    }

    pub fn constant(c: Rational) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::Input("α values must be non-negative".into()));
        }
        Ok(AlphaFn::Constant(c))
    }

    pub fn eval(&self, x: &Point, y: &Point) -> Rational {
        match self {
            AlphaFn::Constant(c) => c.clone(),
            AlphaFn::Table(rows) => match (x, y) {
                (Point::Vertex(i), Point::Vertex(j)) => rows[*i][*j].clone(),
                _ => Rational::zero(),
            },
            AlphaFn::Indicator { region, diagonal } => {
                if (region.contains(x) && region.contains(y)) || (*diagonal && x == y) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
        }
    }

    pub fn admits(&self, x: &Point, y: &Point) -> bool {
        self.eval(x, y) >= Rational::one()
    }
}

/// `α_*(A, B) = inf { α(a, b) : a ∈ A, b ∈ B }`.
pub fn alpha_star(alpha: &AlphaFn, a: &PointSet, b: &PointSet) -> Result<Rational> {
    match alpha {
        AlphaFn::Constant(c) => Ok(c.clone()),
        AlphaFn::Indicator { region, diagonal } => {
            let inside = a.is_subset_of(region) && b.is_subset_of(region);
            let same_point = *diagonal && a == b && matches!(a.elements(), Some([_]));
            Ok(if inside || same_point {
                Rational::one()
            } else {
                Rational::zero()
            })
        }
        AlphaFn::Table(_) => {
            let (Some(ea), Some(eb)) = (a.elements(), b.elements()) else {
                return Err(Error::Unsupported("tabulated α over interval sets".into()));
            };
            Ok(ea
                .iter()
                .flat_map(|x| eb.iter().map(move |y| alpha.eval(x, y)))
                .min()
                .expect("nonempty sets"))
        }
    }
}

/// A `z ∈ set` with `α(anchor, z) < 1`, restricted to those `z` with
/// `α(gate, z) ≥ 1` when a gate is given.
fn bad_successor(
    alpha: &AlphaFn,
    anchor: &Point,
    set: &PointSet,
    gate: Option<&Point>,
) -> Result<Option<Point>> {
    if let Some(elems) = set.elements() {
        return Ok(elems
            .iter()
            .find(|z| gate.is_none_or(|g| alpha.admits(g, z)) && !alpha.admits(anchor, z))
            .cloned());
    }
    match alpha {
        AlphaFn::Table(_) => Err(Error::Unsupported("tabulated α over interval sets".into())),
        AlphaFn::Constant(c) => {
            // with c < 1 a gate admits no z at all
            Ok(if *c >= Rational::one() || gate.is_some() {
                None
            } else {
                Some(set.first())
            })
        }
        AlphaFn::Indicator { region, diagonal } => {
            let mut candidates: Vec<PointSet> = Vec::new();
            match gate {
                None => candidates.push(set.clone()),
                Some(g) => {
                    if region.contains(g) {
                        candidates.extend(set.intersect(region));
                    }
                    if *diagonal && set.contains(g) {
                        candidates.push(PointSet::Points(vec![g.clone()]));
                    }
                }
            }
            for cand in candidates {
                if region.contains(anchor) {
                    if let Some(z) = cand.point_outside(region) {
                        return Ok(Some(z));
                    }
                } else {
                    let picks = [cand.first(), cand.last(), interior_point(&cand)];
                    if let Some(z) = picks.into_iter().find(|z| !(*diagonal && z == anchor)) {
                        return Ok(Some(z));
                    }
                }
            }
            Ok(None)
        }
    }
}

fn interior_point(set: &PointSet) -> Point {
    match set {
        PointSet::Intervals(ivs) => {
            let (l, r) = ivs.iter().find(|(l, r)| l < r).unwrap_or(&ivs[0]);
            Point::Real(midpoint(l, r))
        }
        PointSet::Points(ps) => ps[ps.len() / 2].clone(),
    }
}

fn scope_for(space: &Space, domain: &[Point]) -> Scope {
    match space.points() {
        Some(all) if all.iter().all(|p| domain.contains(p)) => Scope::Exhaustive,
        _ => Scope::Probe,
    }
}

fn images(map: &MultiMap, domain: &[Point]) -> Result<Vec<PointSet>> {
    domain.iter().map(|p| map.apply(p)).collect()
}

fn admissible_condition(
    map: &MultiMap,
    alpha: &AlphaFn,
    domain: &[Point],
    imgs: &[PointSet],
) -> Result<Condition> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (x, tx) in domain.iter().zip(imgs) {
        for (y, ty) in domain.iter().zip(imgs) {
            if !tx.contains(y) || !alpha.admits(x, y) {
                continue;
            }
            checked += 1;
            if let Some(z) = bad_successor(alpha, y, ty, None)? {
                bad.push(Witness::Triple {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                });
            }
        }
    }
    Ok(Condition::from_witnesses(
        "y in Tx, alpha(x,y) >= 1 => alpha(y,z) >= 1 for all z in Ty",
        scope_for(map.space(), domain),
        checked,
        bad,
    ))
}

/// Multivalued α-admissibility over `domain`.
pub fn is_alpha_admissible_mv(
    map: &MultiMap,
    alpha: &AlphaFn,
    domain: &[Point],
) -> Result<CheckReport> {
    let imgs = images(map, domain)?;
    Ok(CheckReport::new(
        "alpha-admissible",
        vec![admissible_condition(map, alpha, domain, &imgs)?],
    ))
}

/// α-admissibility plus the triangle condition
/// `α(x,y) ≥ 1, α(y,z) ≥ 1 ⟹ α(x,z) ≥ 1` for every `z ∈ T y`, over all
/// pairs `x, y` of the domain.
pub fn is_triangular_alpha_admissible_mv(
    map: &MultiMap,
    alpha: &AlphaFn,
    domain: &[Point],
) -> Result<CheckReport> {
    let imgs = images(map, domain)?;
    let admissible = admissible_condition(map, alpha, domain, &imgs)?;
    let mut bad = Vec::new();
    let mut checked = 0;
    for x in domain {
        for (y, ty) in domain.iter().zip(&imgs) {
            if !alpha.admits(x, y) {
                continue;
            }
            checked += 1;
            if let Some(z) = bad_successor(alpha, x, ty, Some(y))? {
                bad.push(Witness::Triple {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                });
            }
        }
    }
    let triangle = Condition::from_witnesses(
        "alpha(x,y) >= 1, alpha(y,z) >= 1 => alpha(x,z) >= 1 for z in Ty",
        scope_for(map.space(), domain),
        checked,
        bad,
    );
    Ok(CheckReport::new(
        "triangular alpha-admissible",
        vec![admissible, triangle],
    ))
}

/// α_*-admissibility plus `α(x,y) ≥ 1, α_*(Tx,Ty) ≥ 1 ⟹ α(x,z) ≥ 1` for
/// every `z ∈ T y`.
pub fn is_triangular_alpha_star_admissible(
    map: &MultiMap,
    alpha: &AlphaFn,
    domain: &[Point],
) -> Result<CheckReport> {
    let imgs = images(map, domain)?;
    let scope = scope_for(map.space(), domain);
    let mut star_bad = Vec::new();
    let mut tri_bad = Vec::new();
    let mut checked = 0;
    for (x, tx) in domain.iter().zip(&imgs) {
        for (y, ty) in domain.iter().zip(&imgs) {
            if !alpha.admits(x, y) {
                continue;
            }
            checked += 1;
            if alpha_star(alpha, tx, ty)? < Rational::one() {
                star_bad.push(Witness::Pair {
                    x: x.clone(),
                    y: y.clone(),
                });
                continue;
            }
            if let Some(z) = bad_successor(alpha, x, ty, None)? {
                tri_bad.push(Witness::Triple {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                });
            }
        }
    }
    Ok(CheckReport::new(
        "triangular alpha*-admissible",
        vec![
            Condition::from_witnesses(
                "alpha(x,y) >= 1 => alpha*(Tx,Ty) >= 1",
                scope,
                checked,
                star_bad,
            ),
            Condition::from_witnesses(
                "alpha(x,y) >= 1, alpha*(Tx,Ty) >= 1 => alpha(x,z) >= 1 for z in Ty",
                scope,
                checked,
                tri_bad,
            ),
        ],
    ))
}

/// `α(x_n, x_m) ≥ 1` for every `n < m` along an orbit.
pub fn orbit_chain(alpha: &AlphaFn, orbit: &[Point]) -> Result<CheckReport> {
    if orbit.len() < 2 {
        return Err(Error::Input(
            "orbit chaining needs at least two points".into(),
        ));
    }
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 0..orbit.len() {
        for m in n + 1..orbit.len() {
            checked += 1;
            if !alpha.admits(&orbit[n], &orbit[m]) {
                bad.push(Witness::Indices { n, m });
            }
        }
    }
    Ok(CheckReport::new(
        "orbit chaining",
        vec![Condition::from_witnesses(
            "alpha(x_n, x_m) >= 1 for n < m",
            Scope::Exhaustive,
            checked,
            bad,
        )],
    ))
}

/// Number of seeded sample points drawn per branch.
pub const PROBE_SAMPLES_PER_BRANCH: usize = 128;

/// Domain for admissibility checks: every point of a finite space; on a real
/// interval, each branch's end points and midpoint plus seeded samples.
pub fn probe_set(map: &MultiMap, seed: u64) -> Vec<Point> {
    let space = map.space();
    if let Some(all) = space.points() {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Point> = Vec::new();
    for b in map.branches().unwrap_or_default() {
        match &b.domain {
            BranchDomain::Points(ps) => out.extend(ps.iter().cloned().map(Point::Real)),
            BranchDomain::Span(span) => {
                let (lo, hi) = window(span);
                for v in [&span.lo, &span.hi].into_iter().flatten() {
                    out.push(Point::Real(v.clone()));
                }
                out.push(Point::Real(midpoint(&lo, &hi)));
                for _ in 0..PROBE_SAMPLES_PER_BRANCH {
                    let den: i64 = rng.gen_range(2..=1000);
                    let k: i64 = rng.gen_range(1..den);
                    out.push(Point::Real(&lo + (&hi - &lo) * q(k, den)));
                }
            }
        }
    }
    out.retain(|p| space.contains(p));
    out.sort();
    out.dedup();
    out
}

fn window(span: &Span) -> (Rational, Rational) {
    let reach = int(10);
    match (&span.lo, &span.hi) {
        (Some(l), Some(h)) => (l.clone(), h.clone()),
        (Some(l), None) => (l.clone(), l + reach),
        (None, Some(h)) => (h - reach, h.clone()),
        (None, None) => (-reach.clone(), reach),
    }
}
