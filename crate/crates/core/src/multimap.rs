//! Set-valued maps `T: X -> CB(X)`.
//!
//! On the real line a map is a list of branches: a domain piece (an interval
//! with open or closed ends, or a finite list of points) and an image that is
//! either a finite set of affine expressions in `x` or an interval between two
//! affine expressions. Branch domains must partition the space and images must
//! stay inside it; both are checked once, at construction. On a finite space a
//! map is an explicit table.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::hyperspace::{Point, PointSet, Space, Span};
use crate::rational::{midpoint, Rational};

/// An expression affine in `x`, with its coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub expr: Expr,
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(expr: Expr) -> Result<Self> {
        let (slope, intercept) = expr
            .as_affine()
            .ok_or_else(|| Error::Input(format!("image expression `{expr}` is not affine in x")))?;
        Ok(Affine {
            expr,
            slope,
            intercept,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let expr = Expr::parse(text)
            .map_err(|e| Error::Input(format!("bad expression `{text}`: {}", e.message)))?;
        Affine::new(expr)
    }

    pub fn at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    /// Image of a span under the affine map, ends kept open or closed.
    fn image(&self, span: &Span) -> Span {
        if self.slope.is_zero() {
            return Span::point(self.intercept.clone());
        }
        let map = |v: &Option<Rational>| v.as_ref().map(|x| self.at(x));
        if self.slope.is_positive() {
            Span::new(map(&span.lo), span.lo_closed, map(&span.hi), span.hi_closed)
        } else {
            Span::new(map(&span.hi), span.hi_closed, map(&span.lo), span.lo_closed)
        }
    }
}

impl std::fmt::Display for Affine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.expr)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchDomain {
    Span(Span),
    Points(Vec<Rational>),
}

impl BranchDomain {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            BranchDomain::Span(s) => s.contains(x),
            BranchDomain::Points(ps) => ps.contains(x),
        }
    }

    fn pieces(&self) -> Vec<Span> {
        match self {
            BranchDomain::Span(s) => vec![s.clone()],
            BranchDomain::Points(ps) => ps.iter().map(|p| Span::point(p.clone())).collect(),
        }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Set(Vec<Affine>),
    Interval(Affine, Affine),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub domain: BranchDomain,
    pub image: Image,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    Piecewise(Vec<Branch>),
    Table(Vec<PointSet>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    space: Space,
    rule: Rule,
}

impl MultiMap {
    pub fn piecewise(space: Space, branches: Vec<Branch>) -> Result<Self> {
        let span = match &space {
            Space::Line(span) => span.clone(),
            Space::Finite(_) => {
                return Err(Error::Input("piecewise maps need a real-line space".into()))
            }
        };
        if branches.is_empty() {
            return Err(Error::Partition("map has no branches".into()));
        }
        check_partition(&span, &branches)?;
        for b in &branches {
            check_image(&span, b)?;
        }
        Ok(MultiMap {
            space,
            rule: Rule::Piecewise(branches),
        })
    }

    pub fn table(space: Space, images: Vec<PointSet>) -> Result<Self> {
        let n = match &space {
            Space::Finite(m) => m.len(),
            Space::Line(_) => return Err(Error::Input("table maps need a finite space".into())),
        };
        if images.len() != n {
            return Err(Error::Partition(format!(
                "table has {} images for {n} points",
                images.len()
            )));
        }
        for img in &images {
            let elems = img
                .elements()
                .ok_or_else(|| Error::Domain("image must be a finite set".into()))?;
            for p in elems {
                space.check(p)?;
            }
        }
        Ok(MultiMap {
            space,
            rule: Rule::Table(images),
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn branches(&self) -> Option<&[Branch]> {
        match &self.rule {
            Rule::Piecewise(b) => Some(b),
            Rule::Table(_) => None,
        }
    }

    pub fn table_images(&self) -> Option<&[PointSet]> {
        match &self.rule {
            Rule::Table(t) => Some(t),
            Rule::Piecewise(_) => None,
        }
    }

    pub fn branch_of(&self, x: &Rational) -> Option<usize> {
        self.branches()?.iter().position(|b| b.domain.contains(x))
    }

    /// `T x` in canonical form.
    pub fn apply(&self, x: &Point) -> Result<PointSet> {
        self.space.check(x)?;
        match (&self.rule, x) {
            (Rule::Table(images), Point::Vertex(i)) => Ok(images[*i].clone()),
            (Rule::Piecewise(branches), Point::Real(v)) => {
                let b = branches
                    .iter()
                    .find(|b| b.domain.contains(v))
                    .ok_or_else(|| Error::Partition(format!("no branch contains {v}")))?;
                match &b.image {
                    Image::Set(es) => PointSet::reals(&self.space, es.iter().map(|e| e.at(v))),
                    Image::Interval(lo, hi) => {
                        let (l, r) = (lo.at(v), hi.at(v));
                        if l == r {
                            PointSet::reals(&self.space, [l])
                        } else {
                            PointSet::intervals(&self.space, [(l, r)])
                        }
                    }
                }
            }
            _ => unreachable!("point kind checked against the space"),
        }
    }

    /// Finite branch end points that lie in the space, sorted.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .branches()
            .unwrap_or_default()
            .iter()
            .flat_map(|b| b.domain.pieces())
            .flat_map(|s| [s.lo, s.hi])
            .flatten()
            .filter(|v| self.space.contains(&Point::Real(v.clone())))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn lo_key(s: &Span) -> (bool, Option<&Rational>, bool) {
    // infinite lower ends first, then by value, closed before open
    (s.lo.is_some(), s.lo.as_ref(), !s.lo_closed)
}

fn check_partition(space: &Span, branches: &[Branch]) -> Result<()> {
    let mut pieces: Vec<Span> = Vec::new();
    for b in branches {
        for p in b.domain.pieces() {
            if p.is_empty() {
                return Err(Error::Partition(format!("branch domain {p} is empty")));
            }
            pieces.push(p);
        }
    }
    pieces.sort_by(|a, b| lo_key(a).cmp(&lo_key(b)));

    let first = &pieces[0];
    if first.lo != space.lo || first.lo_closed != space.lo_closed {
        return Err(Error::Partition(format!(
            "branches start at {first}, but the space is {space}"
        )));
    }
    for w in pieces.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (Some(a_hi), Some(b_lo)) = (&a.hi, &b.lo) else {
            return Err(Error::Partition(format!("branches {a} and {b} overlap")));
        };
        if a_hi > b_lo || (a_hi == b_lo && a.hi_closed && b.lo_closed) {
            let at = if a_hi == b_lo || b.lo_closed {
                b_lo.clone()
            } else {
                let end = match &b.hi {
                    Some(h) if h < a_hi => h,
                    _ => a_hi,
                };
                midpoint(b_lo, end)
            };
            return Err(Error::Partition(format!("branches overlap at {at}")));
        }
        if a_hi < b_lo {
            return Err(Error::Partition(format!(
                "branches leave {} uncovered",
                midpoint(a_hi, b_lo)
            )));
        }
        if !a.hi_closed && !b.lo_closed {
            return Err(Error::Partition(format!("branches leave {a_hi} uncovered")));
        }
    }
    let last = &pieces[pieces.len() - 1];
    if last.hi != space.hi || last.hi_closed != space.hi_closed {
        return Err(Error::Partition(format!(
            "branches end at {last}, but the space is {space}"
        )));
    }
    Ok(())
}

fn check_image(space: &Span, branch: &Branch) -> Result<()> {
    let inside = |e: &Affine, dom: &Span| -> Result<()> {
        let img = e.image(dom);
        if img.is_subset_of(space) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "image `{e}` over {dom} reaches {img}, outside {space}"
            )))
        }
    };
    for dom in branch.domain.pieces() {
        match &branch.image {
            Image::Set(es) => {
                if es.is_empty() {
                    return Err(Error::Domain(format!("empty image set on {dom}")));
                }
                for e in es {
                    inside(e, &dom)?;
                }
            }
            Image::Interval(lo, hi) => {
                let width = Affine {
                    expr: Expr::Lit(Rational::zero()),
                    slope: &hi.slope - &lo.slope,
                    intercept: &hi.intercept - &lo.intercept,
                };
                let range = width.image(&dom);
                let nonneg = match &range.lo {
                    Some(v) => !v.is_negative(),
                    None => false,
                };
                if !nonneg {
                    return Err(Error::Domain(format!(
                        "interval image [{lo}, {hi}] is inverted on {dom}"
                    )));
                }
                inside(lo, &dom)?;
                inside(hi, &dom)?;
            }
        }
    }
    Ok(())
}
