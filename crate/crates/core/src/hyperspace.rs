//! Metric spaces and their closed bounded subsets, with exact point-to-set,
//! set-to-set and Hausdorff distances.
//!
//! Two kinds of space are supported: a finite space given by a distance table,
//! and an interval of the real line with the metric `|x - y|`. Closed bounded
//! sets are either finite point sets or finite unions of closed intervals kept
//! in canonical form (sorted, disjoint, non-touching), so equal sets compare
//! equal structurally.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{abs_diff, midpoint, Rational};

/// A point of a [`Space`]: a real number on the line or a vertex index of a
/// finite space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Real(Rational),
    Vertex(usize),
}

impl Point {
    pub fn real(&self) -> Option<&Rational> {
        match self {
            Point::Real(r) => Some(r),
            Point::Vertex(_) => None,
        }
    }
}

impl From<Rational> for Point {
    fn from(r: Rational) -> Self {
        Point::Real(r)
    }
}

/// An interval of the real line with independently open or closed ends.
/// `None` is an infinite end, which is always open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: Option<Rational>,
    pub lo_closed: bool,
    pub hi: Option<Rational>,
    pub hi_closed: bool,
}

impl Span {
    pub fn new(
        lo: Option<Rational>,
        lo_closed: bool,
        hi: Option<Rational>,
        hi_closed: bool,
    ) -> Self {
        let lo_closed = lo_closed && lo.is_some();
        let hi_closed = hi_closed && hi.is_some();
        Span {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Span::new(Some(lo), true, Some(hi), true)
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Span::new(Some(lo), false, Some(hi), false)
    }

    pub fn point(p: Rational) -> Self {
        Span::closed(p.clone(), p)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lo {
            None => true,
            Some(lo) => x > lo || (self.lo_closed && x == lo),
        };
        let below = match &self.hi {
            None => true,
            Some(hi) => x < hi || (self.hi_closed && x == hi),
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => lo > hi || (lo == hi && !(self.lo_closed && self.hi_closed)),
            _ => false,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn is_degenerate(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(lo), Some(hi)) if lo == hi) && !self.is_empty()
    }

    /// `self ⊆ other`, decided on the end points.
    pub fn is_subset_of(&self, other: &Span) -> bool {
        if self.is_empty() {
            return true;
        }
        let lo_ok = match (&other.lo, &self.lo) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(o), Some(s)) => s > o || (s == o && (other.lo_closed || !self.lo_closed)),
        };
        let hi_ok = match (&other.hi, &self.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(o), Some(s)) => s < o || (s == o && (other.hi_closed || !self.hi_closed)),
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &Span) -> Span {
        let (lo, lo_closed) = match (&self.lo, &other.lo) {
            (None, _) => (other.lo.clone(), other.lo_closed),
            (_, None) => (self.lo.clone(), self.lo_closed),
            (Some(a), Some(b)) if a > b => (Some(a.clone()), self.lo_closed),
            (Some(a), Some(b)) if a < b => (Some(b.clone()), other.lo_closed),
            (Some(a), Some(_)) => (Some(a.clone()), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match (&self.hi, &other.hi) {
            (None, _) => (other.hi.clone(), other.hi_closed),
            (_, None) => (self.hi.clone(), self.hi_closed),
            (Some(a), Some(b)) if a < b => (Some(a.clone()), self.hi_closed),
            (Some(a), Some(b)) if a > b => (Some(b.clone()), other.hi_closed),
            (Some(a), Some(_)) => (Some(a.clone()), self.hi_closed && other.hi_closed),
        };
        Span::new(lo, lo_closed, hi, hi_closed)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() && self.lo_closed && self.hi_closed {
            if let Some(p) = &self.lo {
                return write!(f, "{{{p}}}");
            }
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        let lo = self
            .lo
            .as_ref()
            .map_or("-inf".to_string(), |v| v.to_string());
        let hi = self
            .hi
            .as_ref()
            .map_or("inf".to_string(), |v| v.to_string());
        write!(f, "{open}{lo}, {hi}{close}")
    }
}

/// A finite metric space with labelled points and an exact distance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetric {
    labels: Vec<String>,
    table: Vec<Vec<Rational>>,
}

impl FiniteMetric {
    /// Validates the metric axioms: zero exactly on the diagonal, symmetry and
    /// the triangle inequality.
    pub fn new(labels: Vec<String>, table: Vec<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidSpace(
                "finite space needs at least one point".into(),
            ));
        }
        let unique: BTreeSet<&String> = labels.iter().collect();
        if unique.len() != n {
            return Err(Error::InvalidSpace("duplicate point labels".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpace(format!(
                "distance table must be {n}x{n}"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let d = &table[i][j];
                if d.is_negative() {
                    return Err(Error::InvalidSpace(format!(
                        "negative distance between {} and {}",
                        labels[i], labels[j]
                    )));
                }
                if (i == j) != d.is_zero() {
                    return Err(Error::InvalidSpace(format!(
                        "d({}, {}) = {d} violates identity of indiscernibles",
                        labels[i], labels[j]
                    )));
                }
                if *d != table[j][i] {
                    return Err(Error::InvalidSpace(format!(
                        "distance table not symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
                for k in 0..n {
                    if *d > &table[i][k] + &table[k][j] {
                        return Err(Error::InvalidSpace(format!(
                            "triangle inequality fails for {}, {}, {}",
                            labels[i], labels[k], labels[j]
                        )));
                    }
                }
            }
        }
        Ok(FiniteMetric { labels, table })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<Rational>] {
        &self.table
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// Subinterval of the real line with `d(x, y) = |x - y|`.
    Line(Span),
    Finite(FiniteMetric),
}

impl Space {
    pub fn line(span: Span) -> Result<Self> {
        if let (Some(lo), Some(hi)) = (&span.lo, &span.hi) {
            if lo >= hi {
                return Err(Error::InvalidSpace(format!("interval {span} needs a < b")));
            }
        }
        Ok(Space::Line(span))
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Space::Line(span), Point::Real(x)) => span.contains(x),
            (Space::Finite(m), Point::Vertex(i)) => *i < m.len(),
            _ => false,
        }
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} is not a point of the space",
                self.show(p)
            )))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Space::Finite(_))
    }

    /// All points, for finite spaces.
    pub fn points(&self) -> Option<Vec<Point>> {
        match self {
            Space::Finite(m) => Some((0..m.len()).map(Point::Vertex).collect()),
            Space::Line(_) => None,
        }
    }

    pub fn show(&self, p: &Point) -> String {
        match (self, p) {
            (Space::Finite(m), Point::Vertex(i)) if *i < m.len() => m.labels[*i].clone(),
            (_, Point::Vertex(i)) => format!("#{i}"),
            (_, Point::Real(x)) => x.to_string(),
        }
    }

    pub fn show_set(&self, set: &PointSet) -> String {
        match set {
            PointSet::Points(ps) => {
                let items: Vec<String> = ps.iter().map(|p| self.show(p)).collect();
                format!("{{{}}}", items.join(", "))
            }
            PointSet::Intervals(ivs) => ivs
                .iter()
                .map(|(l, r)| format!("[{l}, {r}]"))
                .collect::<Vec<_>>()
                .join(" u "),
        }
    }
}

/// A nonempty closed bounded subset of a [`Space`] in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointSet {
    /// Sorted, deduplicated finite set.
    Points(Vec<Point>),
    /// Sorted closed intervals with `r_i < l_{i+1}`; at least one is
    /// non-degenerate (otherwise the set is stored as `Points`).
    Intervals(Vec<(Rational, Rational)>),
}

impl PointSet {
    pub fn points(space: &Space, pts: impl IntoIterator<Item = Point>) -> Result<Self> {
        let set: BTreeSet<Point> = pts.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Domain("point set must be nonempty".into()));
        }
        for p in &set {
            space.check(p)?;
        }
        Ok(PointSet::Points(set.into_iter().collect()))
    }

    pub fn reals(space: &Space, xs: impl IntoIterator<Item = Rational>) -> Result<Self> {
        PointSet::points(space, xs.into_iter().map(Point::Real))
    }

    pub fn singleton(space: &Space, p: Point) -> Result<Self> {
        PointSet::points(space, [p])
    }

    /// Builds a union of closed intervals; overlapping or touching pieces are
    /// merged. Every piece must lie in the ambient space, which for open ends
    /// means strictly inside.
    pub fn intervals(
        space: &Space,
        pieces: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self> {
        let span = match space {
            Space::Line(span) => span,
            Space::Finite(_) => {
                return Err(Error::Unsupported(
                    "interval sets need a real-line space".into(),
                ))
            }
        };
        let mut pieces: Vec<(Rational, Rational)> = pieces.into_iter().collect();
        if pieces.is_empty() {
            return Err(Error::Domain("point set must be nonempty".into()));
        }
        for (l, r) in &pieces {
            if l > r {
                return Err(Error::Domain(format!("interval [{l}, {r}] has l > r")));
            }
            if !span.contains(l) || !span.contains(r) {
                return Err(Error::Domain(format!(
                    "interval [{l}, {r}] is not inside {span}"
                )));
            }
        }
        pieces.sort();
        Ok(PointSet::canonical(pieces))
    }

    /// Canonicalises sorted pieces without membership checks.
    pub(crate) fn canonical(sorted: Vec<(Rational, Rational)>) -> Self {
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(sorted.len());
        for (l, r) in sorted {
            match merged.last_mut() {
                Some((_, last_r)) if l <= *last_r => {
                    if r > *last_r {
                        *last_r = r;
                    }
                }
                _ => merged.push((l, r)),
            }
        }
        if merged.iter().all(|(l, r)| l == r) {
            PointSet::Points(merged.into_iter().map(|(l, _)| Point::Real(l)).collect())
        } else {
            PointSet::Intervals(merged)
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PointSet::Points(_))
    }

    /// The elements, when the set is finite.
    pub fn elements(&self) -> Option<&[Point]> {
        match self {
            PointSet::Points(ps) => Some(ps),
            PointSet::Intervals(_) => None,
        }
    }

    /// The least element (leftmost point for real sets).
    pub fn first(&self) -> Point {
        match self {
            PointSet::Points(ps) => ps[0].clone(),
            PointSet::Intervals(ivs) => Point::Real(ivs[0].0.clone()),
        }
    }

    pub fn last(&self) -> Point {
        match self {
            PointSet::Points(ps) => ps[ps.len() - 1].clone(),
            PointSet::Intervals(ivs) => Point::Real(ivs[ivs.len() - 1].1.clone()),
        }
    }

    /// Real sets as closed pieces; finite real points become degenerate pieces.
    pub fn pieces(&self) -> Option<Vec<(&Rational, &Rational)>> {
        match self {
            PointSet::Intervals(ivs) => Some(ivs.iter().map(|(l, r)| (l, r)).collect()),
            PointSet::Points(ps) => ps
                .iter()
                .map(|p| p.real().map(|x| (x, x)))
                .collect::<Option<Vec<_>>>(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (PointSet::Points(ps), _) => ps.binary_search(p).is_ok(),
            (PointSet::Intervals(ivs), Point::Real(x)) => ivs.iter().any(|(l, r)| l <= x && x <= r),
            (PointSet::Intervals(_), Point::Vertex(_)) => false,
        }
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        match (self, other) {
            (PointSet::Points(a), _) => a.iter().all(|p| other.contains(p)),
            (PointSet::Intervals(_), PointSet::Points(_)) => false,
            (PointSet::Intervals(a), PointSet::Intervals(b)) => a
                .iter()
                .all(|(l, r)| b.iter().any(|(bl, br)| bl <= l && r <= br)),
        }
    }

    pub fn intersect(&self, other: &PointSet) -> Option<PointSet> {
        if let (PointSet::Points(a), _) = (self, other) {
            let kept: Vec<Point> = a.iter().filter(|p| other.contains(p)).cloned().collect();
            return (!kept.is_empty()).then_some(PointSet::Points(kept));
        }
        if let (_, PointSet::Points(_)) = (self, other) {
            return other.intersect(self);
        }
        let a = self.pieces()?;
        let b = other.pieces()?;
        let mut out = Vec::new();
        for (al, ar) in &a {
            for (bl, br) in &b {
                let l = (*al).max(*bl);
                let r = (*ar).min(*br);
                if l <= r {
                    out.push((l.clone(), r.clone()));
                }
            }
        }
        out.sort();
        (!out.is_empty()).then(|| PointSet::canonical(out))
    }

    /// Some point of `self` outside `region`, if `self ⊄ region`.
    pub fn point_outside(&self, region: &PointSet) -> Option<Point> {
        match self {
            PointSet::Points(ps) => ps.iter().find(|p| !region.contains(p)).cloned(),
            PointSet::Intervals(ivs) => {
                let reg = region.pieces().unwrap_or_default();
                for (l, r) in ivs {
                    let start = Point::Real(l.clone());
                    if !region.contains(&start) {
                        return Some(start);
                    }
                    let idx = reg.iter().position(|(a, b)| *a <= l && l <= *b)?;
                    let end = reg[idx].1;
                    if end < r {
                        let upper = match reg.get(idx + 1) {
                            Some((next, _)) if *next < r => *next,
                            _ => r,
                        };
                        return Some(Point::Real(midpoint(end, upper)));
                    }
                }
                None
            }
        }
    }
}

pub fn dist(space: &Space, x: &Point, y: &Point) -> Result<Rational> {
    space.check(x)?;
    space.check(y)?;
    Ok(raw_dist(space, x, y))
}

pub(crate) fn raw_dist(space: &Space, x: &Point, y: &Point) -> Rational {
    match (space, x, y) {
        (Space::Finite(m), Point::Vertex(i), Point::Vertex(j)) => m.table[*i][*j].clone(),
        (_, Point::Real(a), Point::Real(b)) => abs_diff(a, b),
        _ => unreachable!("point kinds checked against the space"),
    }
}

/// `d(a, B)` together with a nearest point of `B` (leftmost on ties).
pub fn point_to_set(space: &Space, a: &Point, set: &PointSet) -> Result<(Rational, Point)> {
    space.check(a)?;
    Ok(nearest(space, a, set))
}

pub(crate) fn nearest(space: &Space, a: &Point, set: &PointSet) -> (Rational, Point) {
    if let (Point::Real(x), Some(pieces)) = (a, set.pieces()) {
        let mut best: Option<(Rational, &Rational)> = None;
        for (l, r) in pieces {
            let (d, w) = if x < l {
                (l - x, l)
            } else if x > r {
                (x - r, r)
            } else {
                return (Rational::zero(), Point::Real(x.clone()));
            };
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, w));
            }
        }
        let (d, w) = best.expect("nonempty set");
        return (d, Point::Real(w.clone()));
    }
    let elems = set.elements().expect("finite set in finite space");
    let mut best: Option<(Rational, &Point)> = None;
    for b in elems {
        let d = raw_dist(space, a, b);
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, b));
        }
    }
    let (d, w) = best.expect("nonempty set");
    (d, w.clone())
}

/// `d(A, B) = inf { d(a, b) }`.
pub fn set_to_set(space: &Space, a: &PointSet, b: &PointSet) -> Result<Rational> {
    if let (Some(pa), Some(pb)) = (a.pieces(), b.pieces()) {
        let mut best: Option<Rational> = None;
        for (al, ar) in &pa {
            for (bl, br) in &pb {
                let gap = if *br < *al {
                    *al - *br
                } else if *ar < *bl {
                    *bl - *ar
                } else {
                    return Ok(Rational::zero());
                };
                if best.as_ref().is_none_or(|b| gap < *b) {
                    best = Some(gap);
                }
            }
        }
        return Ok(best.expect("nonempty sets"));
    }
    let (ea, eb) = finite_pair(a, b)?;
    Ok(ea
        .iter()
        .flat_map(|x| eb.iter().map(move |y| raw_dist(space, x, y)))
        .min()
        .expect("nonempty sets"))
}

/// `sup_{a in A} d(a, B)` with a maximising `a` (smallest on ties).
///
/// For real sets the map `a -> d(a, B)` is piecewise linear; its maximum over
/// `A` is attained at an end point of a piece of `A` or at the midpoint of a
/// gap of `B` lying in `A`, so only those candidates are evaluated.
pub fn directed_hausdorff(space: &Space, a: &PointSet, b: &PointSet) -> Result<(Rational, Point)> {
    let candidates: Vec<Point> = match (a.pieces(), b.pieces()) {
        (Some(pa), Some(pb)) => {
            let mut c: BTreeSet<Point> = BTreeSet::new();
            for (l, r) in &pa {
                c.insert(Point::Real((*l).clone()));
                c.insert(Point::Real((*r).clone()));
            }
            for w in pb.windows(2) {
                let m = midpoint(w[0].1, w[1].0);
                if pa.iter().any(|(l, r)| **l <= m && m <= **r) {
                    c.insert(Point::Real(m));
                }
            }
            c.into_iter().collect()
        }
        _ => finite_pair(a, b)?.0.to_vec(),
    };
    let mut best: Option<(Rational, Point)> = None;
    for p in candidates {
        let (d, _) = nearest(space, &p, b);
        if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
            best = Some((d, p));
        }
    }
    Ok(best.expect("nonempty set"))
}

/// `H(A, B) = max { sup_a d(a, B), sup_b d(b, A) }`.
pub fn hausdorff(space: &Space, a: &PointSet, b: &PointSet) -> Result<Rational> {
    let (ab, _) = directed_hausdorff(space, a, b)?;
    let (ba, _) = directed_hausdorff(space, b, a)?;
    Ok(ab.max(ba))
}

fn finite_pair<'a>(a: &'a PointSet, b: &'a PointSet) -> Result<(&'a [Point], &'a [Point])> {
    match (a.elements(), b.elements()) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::Unsupported("interval sets in a finite space".into())),
    }
}
