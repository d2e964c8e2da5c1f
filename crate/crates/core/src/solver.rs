//! Orbit construction `x_{n+1} ∈ T x_n` and fixed-point enumeration.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admissibility::AlphaFn;
use crate::certifier::{point_record, PairSource};
use crate::error::{Error, Result};
use crate::hyperspace::{hausdorff, nearest, raw_dist, Point, PointSet, Space, Span};
use crate::multimap::{BranchDomain, Image, MultiMap};
use crate::rational::{int, q, simplest_in, to_pq, Rational};

/// Number of trailing gaps in the Cauchy window.
pub const CAUCHY_WINDOW: usize = 8;
pub const DEFAULT_MAX_ITER: usize = 1000;

pub fn default_tol() -> Rational {
    Rational::new(1.into(), 1_000_000_000.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Nearest point of `T x` to `x`, leftmost on ties.
    Nearest,
    Infimum,
    Supremum,
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Continuity,
    /// Also require `α(x_n, u) ≥ 1` for every recorded `n` at the limit `u`.
    IvPrime,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Continuity => "continuity",
            Route::IvPrime => "iv-prime",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub tol: Rational,
    pub max_iter: usize,
    pub route: Route,
    pub policy: Policy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: default_tol(),
            max_iter: DEFAULT_MAX_ITER,
            route: Route::Continuity,
            policy: Policy::Nearest,
        }
    }
}

/// Next orbit point: a nearest point of `T x` to `x`, leftmost on ties.
pub fn select_next(map: &MultiMap, x: &Point) -> Result<Point> {
    let tx = map.apply(x)?;
    Ok(nearest(map.space(), x, &tx).1)
}

fn select(space: &Space, x: &Point, tx: &PointSet, policy: Policy, rng: &mut ChaCha8Rng) -> Point {
    match policy {
        Policy::Nearest => nearest(space, x, tx).1,
        Policy::Infimum => tx.first(),
        Policy::Supremum => tx.last(),
        Policy::Random(_) => match tx {
            PointSet::Points(ps) => ps[rng.gen_range(0..ps.len())].clone(),
            PointSet::Intervals(ivs) => {
                let (l, r) = &ivs[rng.gen_range(0..ivs.len())];
                let den: i64 = rng.gen_range(1..=1000);
                let k: i64 = rng.gen_range(0..=den);
                Point::Real(l + (r - l) * q(k, den))
            }
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    FixedPointFound,
    ConvergedTo,
    MaxIter,
    AdmissibilityBroken,
    LeftDomain,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::FixedPointFound => "FIXED-POINT-FOUND",
            Status::ConvergedTo => "CONVERGED-TO",
            Status::MaxIter => "MAX-ITER",
            Status::AdmissibilityBroken => "ADMISSIBILITY-BROKEN",
            Status::LeftDomain => "LEFT-DOMAIN",
        })
    }
}

/// Step `n`: `gap = d(x_n, x_{n+1})`, `h = H(T x_n, T x_{n+1})`,
/// `alpha = α(x_n, x_{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub gap: Rational,
    pub h: Rational,
    pub alpha: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<Point>,
    pub steps: Vec<Step>,
    pub status: Status,
    /// The claimed fixed point or limit.
    pub point: Option<Point>,
    /// `d(u, T u)` at the claimed point.
    pub residual: Option<Rational>,
    /// Limit outside the space, for `LEFT-DOMAIN`.
    pub escaped_to: Option<Rational>,
    pub route: Route,
}

impl Orbit {
    /// Index of the last iterate.
    pub fn iterations(&self) -> usize {
        self.points.len() - 1
    }

    pub fn found(&self) -> bool {
        matches!(self.status, Status::FixedPointFound | Status::ConvergedTo)
    }

    pub fn render_text(&self, space: &Space) -> String {
        let mut out = format!("orbit: {}", self.status);
        if let Some(u) = &self.point {
            out.push_str(&format!(" {}", space.show(u)));
        }
        out.push('\n');
        out.push_str(&format!("  iterations: {}\n", self.iterations()));
        if let Some(r) = &self.residual {
            out.push_str(&format!("  residual d(u, Tu): {r}\n"));
        }
        if let Some(e) = &self.escaped_to {
            out.push_str(&format!("  limit {e} lies outside X\n"));
        }
        out.push_str(&format!("  route: {}\n", self.route));
        let n = self.steps.len();
        for (i, s) in self.steps.iter().enumerate() {
            if n > 12 && (6..n - 3).contains(&i) {
                if i == 6 {
                    out.push_str(&format!("  ... {} steps omitted\n", n - 9));
                }
                continue;
            }
            out.push_str(&format!(
                "  n={i} x={} gap={} H={} alpha={}\n",
                space.show(&self.points[i]),
                s.gap,
                s.h,
                s.alpha
            ));
        }
        out
    }

    /// One record per step, then a summary record.
    pub fn render_records(&self, space: &Space) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step n={i} x={} gap={} h={} alpha={}\n",
                point_record(space, &self.points[i]),
                to_pq(&s.gap),
                to_pq(&s.h),
                to_pq(&s.alpha)
            ));
        }
        let mut summary = format!(
            "orbit status={} iterations={}",
            self.status,
            self.iterations()
        );
        summary.push_str(&format!(
            " last={}",
            point_record(space, self.points.last().expect("nonempty"))
        ));
        if let Some(u) = &self.point {
            summary.push_str(&format!(" u={}", point_record(space, u)));
        }
        if let Some(r) = &self.residual {
            summary.push_str(&format!(" residual={}", to_pq(r)));
        }
        if let Some(e) = &self.escaped_to {
            summary.push_str(&format!(" limit={}", to_pq(e)));
        }
        summary.push_str(&format!(" route={}\n", self.route));
        out.push_str(&summary);
        out
    }
}

/// Builds the orbit from `x0` (and `x1`, or the selected successor).
pub fn iterate(
    map: &MultiMap,
    alpha: &AlphaFn,
    x0: &Point,
    x1: Option<&Point>,
    opts: &SolveOptions,
) -> Result<Orbit> {
    let space = map.space();
    space
        .check(x0)
        .map_err(|e| Error::Input(format!("x0: {e}")))?;
    let seed = if let Policy::Random(s) = opts.policy {
        s
    } else {
        0
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orbit = Orbit {
        points: vec![x0.clone()],
        steps: Vec::new(),
        status: Status::MaxIter,
        point: None,
        residual: None,
        escaped_to: None,
        route: opts.route,
    };

    let mut cur = x0.clone();
    let mut t_cur = map.apply(&cur)?;
    let mut next = match x1 {
        Some(p) => {
            space
                .check(p)
                .map_err(|e| Error::Input(format!("x1: {e}")))?;
            if !t_cur.contains(p) {
                return Err(Error::Input(format!(
                    "x1 = {} is not in T x0 = {}",
                    space.show(p),
                    space.show_set(&t_cur)
                )));
            }
            p.clone()
        }
        None => {
            let (r0, _) = nearest(space, &cur, &t_cur);
            if r0.is_zero() {
                orbit.status = Status::FixedPointFound;
                orbit.point = Some(cur);
                orbit.residual = Some(r0);
                return Ok(orbit);
            }
            select(space, &cur, &t_cur, opts.policy, &mut rng)
        }
    };

    loop {
        let t_next = map.apply(&next)?;
        let a = alpha.eval(&cur, &next);
        orbit.steps.push(Step {
            gap: raw_dist(space, &cur, &next),
            h: hausdorff(space, &t_cur, &t_next)?,
            alpha: a.clone(),
        });
        orbit.points.push(next.clone());
        if a < Rational::one() {
            orbit.status = Status::AdmissibilityBroken;
            return Ok(orbit);
        }
        let (r, _) = nearest(space, &next, &t_next);
        if r.is_zero() {
            orbit.status = Status::FixedPointFound;
            orbit.point = Some(next);
            orbit.residual = Some(r);
            return finish_route(orbit, alpha);
        }
        let by_residual = r <= opts.tol;
        let by_window = orbit.steps.len() >= CAUCHY_WINDOW
            && orbit.steps[orbit.steps.len() - CAUCHY_WINDOW..]
                .iter()
                .fold(Rational::zero(), |acc, s| acc + &s.gap)
                < opts.tol;
        if by_residual || by_window {
            if let Some(out) = snap_limit(map, &orbit, &next, &opts.tol) {
                match out {
                    Snap::Fixed(u) => {
                        orbit.status = Status::ConvergedTo;
                        orbit.point = Some(u);
                        orbit.residual = Some(Rational::zero());
                        return finish_route(orbit, alpha);
                    }
                    Snap::Outside(u) => {
                        orbit.status = Status::LeftDomain;
                        orbit.escaped_to = Some(u);
                        return Ok(orbit);
                    }
                }
            }
            orbit.status = if by_residual {
                Status::FixedPointFound
            } else {
                Status::ConvergedTo
            };
            orbit.point = Some(next);
            orbit.residual = Some(r);
            return finish_route(orbit, alpha);
        }
        if orbit.steps.len() >= opts.max_iter {
            orbit.status = Status::MaxIter;
            return Ok(orbit);
        }
        let after = select(space, &next, &t_next, opts.policy, &mut rng);
        cur = next;
        t_cur = t_next;
        next = after;
    }
}

enum Snap {
    Fixed(Point),
    Outside(Rational),
}

/// Looks for an exact limit: the simplest rational within a radius of the
/// last iterate that bounds the remaining travel of a geometric tail.
fn snap_limit(map: &MultiMap, orbit: &Orbit, last: &Point, tol: &Rational) -> Option<Snap> {
    let x = last.real()?;
    let gaps = &orbit.steps;
    let mut radius = tol.clone();
    if gaps.len() >= 2 {
        let (g1, g0) = (&gaps[gaps.len() - 1].gap, &gaps[gaps.len() - 2].gap);
        if g0.is_positive() {
            let ratio = g1 / g0;
            if ratio < Rational::one() {
                let tail = int(2) * g1 / (Rational::one() - ratio);
                if tail > radius {
                    radius = tail;
                }
            }
        }
    }
    let u = simplest_in(&(x - &radius), &(x + &radius));
    let up = Point::Real(u.clone());
    if !map.space().contains(&up) {
        return Some(Snap::Outside(u));
    }
    let tu = map.apply(&up).ok()?;
    tu.contains(&up).then_some(Snap::Fixed(up))
}

fn finish_route(mut orbit: Orbit, alpha: &AlphaFn) -> Result<Orbit> {
    if orbit.route == Route::IvPrime {
        let u = orbit.point.clone().expect("claimed point");
        let ok = orbit
            .points
            .iter()
            .filter(|p| **p != u)
            .all(|p| alpha.admits(p, &u));
        if !ok {
            orbit.status = Status::AdmissibilityBroken;
        }
    }
    Ok(orbit)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerateMode {
    Analytic,
    Grid(Rational),
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPiece {
    Point(Point),
    /// A non-degenerate interval of fixed points.
    Span(Span),
}

/// Fixed points found by enumeration; every listed point has residual 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    pub mode: EnumerateMode,
    pub pieces: Vec<FixedPiece>,
}

impl FixedPoints {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.pieces.iter().any(|piece| match (piece, p) {
            (FixedPiece::Point(a), _) => a == p,
            (FixedPiece::Span(s), Point::Real(x)) => s.contains(x),
            (FixedPiece::Span(_), Point::Vertex(_)) => false,
        })
    }

    pub fn render_text(&self, space: &Space) -> String {
        if self.pieces.is_empty() {
            return "fixed points: none found\n".to_string();
        }
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| match p {
                FixedPiece::Point(x) => format!("{{{}}}", space.show(x)),
                FixedPiece::Span(s) => s.to_string(),
            })
            .collect();
        format!("fixed points: {}\n", parts.join(" ∪ "))
    }

    pub fn render_records(&self, space: &Space) -> String {
        let mut out = String::new();
        for p in &self.pieces {
            match p {
                FixedPiece::Point(x) => out.push_str(&format!(
                    "fixed kind=point x={} residual=0/1\n",
                    point_record(space, x)
                )),
                FixedPiece::Span(s) => out.push_str(&format!(
                    "fixed kind=interval lo={} lo_closed={} hi={} hi_closed={} residual=0/1\n",
                    s.lo.as_ref().map_or("-inf".into(), to_pq),
                    s.lo_closed,
                    s.hi.as_ref().map_or("inf".into(), to_pq),
                    s.hi_closed
                )),
            }
        }
        out.push_str(&format!("enumerate count={}\n", self.pieces.len()));
        out
    }
}

pub fn enumerate_fixed_points(map: &MultiMap, mode: &EnumerateMode) -> Result<FixedPoints> {
    let pieces = match mode {
        EnumerateMode::Analytic => {
            if map.branches().is_none() {
                return enumerate_fixed_points(map, &EnumerateMode::Exhaustive).map(|f| {
                    FixedPoints {
                        mode: mode.clone(),
                        ..f
                    }
                });
            }
            analytic(map)
        }
        EnumerateMode::Grid(step) => probe_fixed(map, &PairSource::Grid { step: step.clone() })?,
        EnumerateMode::Exhaustive => probe_fixed(map, &PairSource::Exhaustive)?,
    };
    Ok(FixedPoints {
        mode: mode.clone(),
        pieces,
    })
}

fn probe_fixed(map: &MultiMap, source: &PairSource) -> Result<Vec<FixedPiece>> {
    let mut out = Vec::new();
    for p in source.points(map)? {
        if map.apply(&p)?.contains(&p) {
            out.push(FixedPiece::Point(p));
        }
    }
    Ok(out)
}

/// Solves `x ∈ T x` branch by branch.
fn analytic(map: &MultiMap) -> Vec<FixedPiece> {
    let mut spans: Vec<Span> = Vec::new();
    for b in map.branches().unwrap_or_default() {
        let domains: Vec<Span> = match &b.domain {
            BranchDomain::Span(s) => vec![s.clone()],
            BranchDomain::Points(ps) => ps.iter().map(|p| Span::point(p.clone())).collect(),
        };
        for d in domains {
            match &b.image {
                Image::Set(es) => {
                    for e in es {
                        // x = slope·x + intercept
                        let sol = if e.slope.is_one() {
                            e.intercept.is_zero().then(|| d.clone())
                        } else {
                            let x = &e.intercept / (Rational::one() - &e.slope);
                            d.contains(&x).then(|| Span::point(x))
                        };
                        spans.extend(sol);
                    }
                }
                Image::Interval(lo, hi) => {
                    // lo(x) ≤ x and x ≤ hi(x), each a half-line or all/nothing
                    let s = d.intersect(&half_line(
                        &lo.slope - Rational::one(),
                        lo.intercept.clone(),
                    ));
                    let s = s.intersect(&half_line(
                        Rational::one() - &hi.slope,
                        -hi.intercept.clone(),
                    ));
                    if !s.is_empty() {
                        spans.push(s);
                    }
                }
            }
        }
    }
    merge_spans(spans)
}

/// `{ x : a·x + b ≤ 0 }`, with the empty set as an empty span.
fn half_line(a: Rational, b: Rational) -> Span {
    if a.is_zero() {
        return if b.is_positive() {
            Span::open(Rational::zero(), Rational::zero())
        } else {
            Span::new(None, false, None, false)
        };
    }
    let x = -b / &a;
    if a.is_positive() {
        Span::new(None, false, Some(x), true)
    } else {
        Span::new(Some(x), true, None, false)
    }
}

fn merge_spans(mut spans: Vec<Span>) -> Vec<FixedPiece> {
    spans.sort_by(|a, b| {
        (a.lo.is_some(), &a.lo, !a.lo_closed).cmp(&(b.lo.is_some(), &b.lo, !b.lo_closed))
    });
    let mut merged: Vec<Span> = Vec::new();
    for s in spans {
        if let Some(last) = merged.last_mut() {
            let joins = match (&last.hi, &s.lo) {
                (None, _) | (_, None) => true,
                (Some(h), Some(l)) => l < h || (l == h && (last.hi_closed || s.lo_closed)),
            };
            if joins {
                let extends = match (&last.hi, &s.hi) {
                    (None, _) => false,
                    (_, None) => true,
                    (Some(a), Some(b)) => b > a || (b == a && s.hi_closed && !last.hi_closed),
                };
                if extends {
                    last.hi = s.hi;
                    last.hi_closed = s.hi_closed;
                }
                continue;
            }
        }
        merged.push(s);
    }
    merged
        .into_iter()
        .map(|s| {
            if s.is_degenerate() {
                FixedPiece::Point(Point::Real(s.lo.expect("degenerate span is bounded")))
            } else {
                FixedPiece::Span(s)
            }
        })
        .collect()
}
