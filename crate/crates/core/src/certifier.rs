//! Pairwise certification of the contractive inequalities
//!
//! ```text
//! plain:        ζ(α(x,y)·H(Tx,Ty), d(x,y)) ≥ C_G
//! generalized:  ζ(α(x,y)·H(Tx,Ty), M(x,y)) ≥ C_G
//! M(x,y) = max{ d(x,y), d(x,Tx), d(y,Ty), (d(x,Ty) + d(y,Tx))/2 }
//! ```
//!
//! over every ordered pair `x ≠ y` of a finite pair source. On a finite space
//! the exhaustive source decides the definition completely; on a real interval
//! a certificate only covers the recorded grid.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::admissibility::AlphaFn;
use crate::contraction::ContractionFamily;
use crate::error::{Error, Result};
use crate::hyperspace::{hausdorff, nearest, raw_dist, Point, PointSet, Space};
use crate::multimap::MultiMap;
use crate::rational::{int, to_pq, Rational};

pub const DEFAULT_VIOLATION_CAP: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Generalized,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Generalized => "generalized",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSource {
    /// Every point of a finite space.
    Exhaustive,
    /// Multiples of `step` inside the space, plus every branch end point and
    /// the points `step/4` either side of it.
    Grid { step: Rational },
    /// An explicit point list.
    Points(Vec<Point>),
}

impl PairSource {
    pub fn points(&self, map: &MultiMap) -> Result<Vec<Point>> {
        let space = map.space();
        let mut pts = match (self, space) {
            (PairSource::Points(ps), _) => {
                for p in ps {
                    space.check(p)?;
                }
                ps.clone()
            }
            (_, Space::Finite(_)) => space.points().expect("finite space"),
            (PairSource::Exhaustive, Space::Line(_)) => {
                return Err(Error::Input(
                    "exhaustive certification needs a finite space; use a grid".into(),
                ))
            }
            (PairSource::Grid { step }, Space::Line(span)) => {
                if !step.is_positive() {
                    return Err(Error::Input(format!(
                        "grid step must be positive, got {step}"
                    )));
                }
                let (Some(lo), Some(hi)) = (&span.lo, &span.hi) else {
                    return Err(Error::Input(
                        "grid certification needs a bounded space".into(),
                    ));
                };
                let first = (lo / step).ceil().to_integer();
                let last = (hi / step).floor().to_integer();
                let mut out = Vec::new();
                let mut k = first;
                while k <= last {
                    out.push(Point::Real(Rational::from_integer(k.clone()) * step));
                    k += 1;
                }
                let offset = step / int(4);
                let mut anchors = map.breakpoints();
                anchors.extend([lo.clone(), hi.clone()]);
                for b in anchors {
                    out.push(Point::Real(&b - &offset));
                    out.push(Point::Real(&b + &offset));
                    out.push(Point::Real(b));
                }
                out
            }
        };
        pts.retain(|p| space.contains(p));
        pts.sort();
        pts.dedup();
        Ok(pts)
    }
}

impl fmt::Display for PairSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairSource::Exhaustive => f.write_str("exhaustive"),
            PairSource::Grid { step } => write!(f, "grid step {step}"),
            PairSource::Points(ps) => write!(f, "explicit list of {} points", ps.len()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertVerdict {
    CertifiedOnPairs,
    Violated,
}

impl fmt::Display for CertVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertVerdict::CertifiedOnPairs => "CERTIFIED-ON-PAIRS",
            CertVerdict::Violated => "VIOLATED",
        })
    }
}

/// One failing pair: `ζ(t, s) < C_G` with `t = α(x,y)·H(Tx,Ty)` and `s` the
/// mode's right argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub x: Point,
    pub y: Point,
    pub t: Rational,
    pub s: Rational,
    pub zeta: Rational,
    pub cg: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub scenario: String,
    pub mode: Mode,
    pub source: PairSource,
    pub verdict: CertVerdict,
    pub points: usize,
    pub pairs_checked: usize,
    /// Pairs with `α(x, y) < 1`; for graph certification, pairs that are not edges.
    pub pairs_alpha_below_one: usize,
    pub violations_total: usize,
    /// The first violations in `(x, y)` order, at most `cap` of them.
    pub violations: Vec<Violation>,
    pub cap: usize,
}

impl CertificationReport {
    pub fn render_text(&self, space: &Space) -> String {
        let mut out = String::new();
        out.push_str(&format!("certification: {}\n", self.verdict));
        out.push_str(&format!("  scenario: {}\n", self.scenario));
        out.push_str(&format!("  mode: {}\n", self.mode));
        out.push_str(&format!(
            "  pairs: {} ({} points)\n",
            self.source, self.points
        ));
        out.push_str(&format!("  pairs checked: {}\n", self.pairs_checked));
        out.push_str(&format!(
            "  pairs with alpha < 1: {}\n",
            self.pairs_alpha_below_one
        ));
        out.push_str(&format!("  violations: {}\n", self.violations_total));
        for v in &self.violations {
            out.push_str(&format!(
                "    x={} y={} t={} s={} zeta={} < C_G={}\n",
                space.show(&v.x),
                space.show(&v.y),
                v.t,
                v.s,
                v.zeta,
                v.cg
            ));
        }
        if self.violations_total > self.violations.len() {
            out.push_str(&format!(
                "    ... {} more (cap {})\n",
                self.violations_total - self.violations.len(),
                self.cap
            ));
        }
        if self.verdict == CertVerdict::CertifiedOnPairs
            && !matches!(self.source, PairSource::Exhaustive)
        {
            out.push_str("  note: certificate covers the listed pairs only\n");
        }
        out
    }

    /// One `key=value` record for the summary, then one per listed violation.
    pub fn render_records(&self, space: &Space) -> String {
        let source = match &self.source {
            PairSource::Exhaustive => "source=exhaustive".to_string(),
            PairSource::Grid { step } => format!("source=grid step={}", to_pq(step)),
            PairSource::Points(_) => "source=points".to_string(),
        };
        let mut out = format!(
            "certify scenario={} mode={} {source} points={} pairs={} alpha_below_one={} verdict={} violations={} shown={}\n",
            self.scenario,
            self.mode,
            self.points,
            self.pairs_checked,
            self.pairs_alpha_below_one,
            self.verdict,
            self.violations_total,
            self.violations.len()
        );
        for v in &self.violations {
            out.push_str(&format!(
                "violation x={} y={} t={} s={} zeta={} cg={}\n",
                point_record(space, &v.x),
                point_record(space, &v.y),
                to_pq(&v.t),
                to_pq(&v.s),
                to_pq(&v.zeta),
                to_pq(&v.cg)
            ));
        }
        out
    }
}

pub(crate) fn point_record(space: &Space, p: &Point) -> String {
    match p {
        Point::Real(r) => to_pq(r),
        Point::Vertex(_) => space.show(p),
    }
}

/// `M(x, y)`.
pub fn compute_m(map: &MultiMap, x: &Point, y: &Point) -> Result<Rational> {
    let tx = map.apply(x)?;
    let ty = map.apply(y)?;
    Ok(m_value(map.space(), x, y, &tx, &ty))
}

fn m_value(space: &Space, x: &Point, y: &Point, tx: &PointSet, ty: &PointSet) -> Rational {
    let dxy = raw_dist(space, x, y);
    let dx_tx = nearest(space, x, tx).0;
    let dy_ty = nearest(space, y, ty).0;
    let cross = (nearest(space, x, ty).0 + nearest(space, y, tx).0) / int(2);
    dxy.max(dx_tx).max(dy_ty).max(cross)
}

pub fn certify_plain(
    scenario: &str,
    map: &MultiMap,
    alpha: &AlphaFn,
    fam: &ContractionFamily,
    source: &PairSource,
) -> Result<CertificationReport> {
    certify(
        scenario,
        map,
        alpha,
        fam,
        source,
        Mode::Plain,
        DEFAULT_VIOLATION_CAP,
    )
}

pub fn certify_generalized(
    scenario: &str,
    map: &MultiMap,
    alpha: &AlphaFn,
    fam: &ContractionFamily,
    source: &PairSource,
) -> Result<CertificationReport> {
    certify(
        scenario,
        map,
        alpha,
        fam,
        source,
        Mode::Generalized,
        DEFAULT_VIOLATION_CAP,
    )
}

pub fn certify(
    scenario: &str,
    map: &MultiMap,
    alpha: &AlphaFn,
    fam: &ContractionFamily,
    source: &PairSource,
    mode: Mode,
    cap: usize,
) -> Result<CertificationReport> {
    certify_on(scenario, map, alpha, fam, source, mode, cap, None)
}

type Relation<'a> = &'a dyn Fn(&Point, &Point) -> bool;

/// Certification restricted to pairs in `relation`; other pairs are counted
/// as vacuously satisfied and not evaluated.
#[allow(clippy::too_many_arguments)]
pub(crate) fn certify_on(
    scenario: &str,
    map: &MultiMap,
    alpha: &AlphaFn,
    fam: &ContractionFamily,
    source: &PairSource,
    mode: Mode,
    cap: usize,
    relation: Option<Relation<'_>>,
) -> Result<CertificationReport> {
    let space = map.space();
    let points = source.points(map)?;
    let images: Vec<PointSet> = points.iter().map(|p| map.apply(p)).collect::<Result<_>>()?;
    let one = Rational::one();
    let mut report = CertificationReport {
        scenario: scenario.to_string(),
        mode,
        source: source.clone(),
        verdict: CertVerdict::CertifiedOnPairs,
        points: points.len(),
        pairs_checked: 0,
        pairs_alpha_below_one: 0,
        violations_total: 0,
        violations: Vec::new(),
        cap,
    };
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            report.pairs_checked += 1;
            let a = alpha.eval(x, y);
            if a < one {
                report.pairs_alpha_below_one += 1;
            }
            if let Some(rel) = relation {
                if !rel(x, y) {
                    continue;
                }
            }
            let t = if a.is_zero() {
                Rational::zero()
            } else {
                a * hausdorff(space, &images[i], &images[j])?
            };
            let s = match mode {
                Mode::Plain => raw_dist(space, x, y),
                Mode::Generalized => m_value(space, x, y, &images[i], &images[j]),
            };
            let zeta = fam.eval_zeta(&t, &s).map_err(|e| {
                Error::Evaluation(format!("at x={}, y={}: {e}", space.show(x), space.show(y)))
            })?;
            if zeta < *fam.cg() {
                report.violations_total += 1;
                if report.violations.len() < cap {
                    report.violations.push(Violation {
                        x: x.clone(),
                        y: y.clone(),
                        t,
                        s,
                        zeta,
                        cg: fam.cg().clone(),
                    });
                }
            }
        }
    }
    if report.violations_total > 0 {
        report.verdict = CertVerdict::Violated;
    }
    Ok(report)
}

/// Recomputes a violation from scratch through the hyperspace and
/// contraction-kit operations and confirms `ζ(t, s) < C_G` with the same
/// `t` and `s`.
pub fn reverify(
    v: &Violation,
    map: &MultiMap,
    alpha: &AlphaFn,
    fam: &ContractionFamily,
    mode: Mode,
) -> Result<bool> {
    let space = map.space();
    let h = hausdorff(space, &map.apply(&v.x)?, &map.apply(&v.y)?)?;
    let t = alpha.eval(&v.x, &v.y) * h;
    let s = match mode {
        Mode::Plain => crate::hyperspace::dist(space, &v.x, &v.y)?,
        Mode::Generalized => compute_m(map, &v.x, &v.y)?,
    };
    let zeta = fam.eval_zeta(&t, &s)?;
    Ok(t == v.t && s == v.s && zeta == v.zeta && zeta < *fam.cg() && v.cg == *fam.cg())
}
