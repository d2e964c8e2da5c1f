use num_traits::{Signed, Zero};

use super::{default_grid_step, ParseError, Relation, Scenario, Start};
use crate::admissibility::AlphaFn;
use crate::contraction::ContractionFamily;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::graphspace::GraphSpace;
use crate::hyperspace::{FiniteMetric, Point, PointSet, Space, Span};
use crate::multimap::{Affine, Branch, BranchDomain, Image, MultiMap};
use crate::rational::{parse_rational, Rational};
use crate::solver::{default_tol, Route, DEFAULT_MAX_ITER};

type PResult<T> = std::result::Result<T, ParseError>;

const DELIMS: &[char] = &[',', '(', ')', '[', ']', '{', '}', '='];

/// A cursor over one line.
#[derive(Clone)]
struct Cur<'a> {
    no: usize,
    s: &'a str,
    pos: usize,
}

impl<'a> Cur<'a> {
    fn err_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.no,
            column: pos + 1,
            message: message.into(),
        }
    }

    /// Error at the next non-blank character.
    fn err(&self, message: impl Into<String>) -> ParseError {
        let rest = &self.s[self.pos..];
        self.err_at(self.pos + rest.len() - rest.trim_start().len(), message)
    }

    fn ws(&mut self) {
        let rest = &self.s[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`, found {}", self.found())))
        }
    }

    fn eat_str(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn found(&self) -> String {
        match self.s[self.pos..].split_whitespace().next() {
            Some(tok) => format!("`{tok}`"),
            None => "end of line".to_string(),
        }
    }

    /// A run of characters up to whitespace or a delimiter.
    fn word(&mut self, what: &str) -> PResult<(usize, &'a str)> {
        self.ws();
        let start = self.pos;
        let rest = &self.s[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || DELIMS.contains(&c))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err(format!("expected {what}, found {}", self.found())));
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn rational(&mut self) -> PResult<Rational> {
        let (at, w) = self.word("a rational")?;
        parse_rational(w).map_err(|_| self.err_at(at, format!("malformed rational `{w}`")))
    }

    fn count(&mut self, what: &str) -> PResult<u64> {
        let (at, w) = self.word(what)?;
        w.parse()
            .map_err(|_| self.err_at(at, format!("expected {what}, found `{w}`")))
    }

    fn rest(&mut self) -> (usize, &'a str) {
        self.ws();
        let start = self.pos;
        self.pos = self.s.len();
        (start, self.s[start..].trim_end())
    }

    fn done(&mut self) -> PResult<()> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.err(format!("unexpected {}", self.found())))
        }
    }

    /// Text up to the next top-level `,` or the closing `close`.
    fn item(&mut self, close: char) -> PResult<(usize, &'a str)> {
        self.ws();
        let start = self.pos;
        let mut depth = 0usize;
        for (i, c) in self.s[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                c if depth == 0 && (c == ',' || c == close) => {
                    self.pos = start + i;
                    return Ok((start, self.s[start..start + i].trim_end()));
                }
                _ => {}
            }
        }
        Err(self.err_at(
            self.s.len(),
            format!("expected `{close}`, found end of line"),
        ))
    }
}

fn message(e: Error) -> String {
    match e {
        Error::Domain(m)
        | Error::InvalidSpace(m)
        | Error::Evaluation(m)
        | Error::Input(m)
        | Error::Unsupported(m)
        | Error::Partition(m) => m,
        Error::Parse(p) => p.message,
    }
}

fn bound(c: &mut Cur<'_>, lower: bool) -> PResult<Option<Rational>> {
    let save = c.clone();
    let (at, w) = c.word("a bound")?;
    match w {
        "-inf" if lower => Ok(None),
        "inf" | "+inf" if !lower => Ok(None),
        _ => {
            *c = save;
            c.rational().map(Some).map_err(|e| ParseError {
                column: at + 1,
                ..e
            })
        }
    }
}

/// `(a, b]` and friends; infinite ends must be open.
fn span(c: &mut Cur<'_>) -> PResult<Span> {
    let open_at = {
        c.ws();
        c.pos
    };
    let lo_closed = match c.peek() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(c.err(format!("expected `[` or `(`, found {}", c.found()))),
    };
    c.pos += 1;
    let lo = bound(c, true)?;
    c.expect(',')?;
    let hi = bound(c, false)?;
    let hi_closed = match c.peek() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(c.err(format!("expected `]` or `)`, found {}", c.found()))),
    };
    c.pos += 1;
    if (lo.is_none() && lo_closed) || (hi.is_none() && hi_closed) {
        return Err(c.err_at(open_at, "infinite ends must be open"));
    }
    Ok(Span::new(lo, lo_closed, hi, hi_closed))
}

fn labelled(c: &mut Cur<'_>, space: &Space) -> PResult<Point> {
    let (at, w) = c.word("a point")?;
    parse_point(space, w).map_err(|e| c.err_at(at, message(e)))
}

/// A point of `space`: a label on a finite space, a rational otherwise.
pub fn parse_point(space: &Space, text: &str) -> Result<Point> {
    let p = match space {
        Space::Finite(m) => Point::Vertex(
            m.index_of(text.trim())
                .ok_or_else(|| Error::Input(format!("unknown label `{}`", text.trim())))?,
        ),
        Space::Line(_) => Point::Real(parse_rational(text)?),
    };
    space.check(&p)?;
    Ok(p)
}

/// `{p, q, ...}`.
fn point_list(c: &mut Cur<'_>, space: &Space) -> PResult<Vec<Point>> {
    c.expect('{')?;
    let mut out = Vec::new();
    loop {
        out.push(labelled(c, space)?);
        if c.eat('}') {
            return Ok(out);
        }
        c.expect(',')?;
    }
}

/// `{p, ...}` or closed pieces `[a, b] u [c, d]`.
fn region(c: &mut Cur<'_>, space: &Space) -> PResult<PointSet> {
    let at = {
        c.ws();
        c.pos
    };
    let set = if c.peek() == Some('{') {
        let pts = point_list(c, space)?;
        PointSet::points(space, pts)
    } else {
        let mut pieces = Vec::new();
        loop {
            let piece_at = c.pos;
            let s = span(c)?;
            match (s.lo, s.hi, s.lo_closed && s.hi_closed) {
                (Some(l), Some(h), true) => pieces.push((l, h)),
                _ => {
                    return Err(c.err_at(piece_at, "region pieces must be closed bounded intervals"))
                }
            }
            if !c.eat_str("u ") && !c.eat_str("∪") {
                break;
            }
        }
        PointSet::intervals(space, pieces)
    };
    set.map_err(|e| c.err_at(at, message(e)))
}

fn affine(c: &mut Cur<'_>, close: char) -> PResult<Affine> {
    let (at, text) = c.item(close)?;
    let expr = Expr::parse(text).map_err(|e| c.err_at(at + e.offset, e.message))?;
    Affine::new(expr).map_err(|e| c.err_at(at, message(e)))
}

fn branch(c: &mut Cur<'_>) -> PResult<Branch> {
    let domain = if c.peek() == Some('{') {
        c.pos += 1;
        let mut pts = Vec::new();
        loop {
            pts.push(c.rational()?);
            if c.eat('}') {
                break;
            }
            c.expect(',')?;
        }
        BranchDomain::Points(pts)
    } else {
        BranchDomain::Span(span(c)?)
    };
    if !c.eat_str("->") {
        return Err(c.err(format!("expected `->`, found {}", c.found())));
    }
    let (at, kind) = c.word("`set` or `interval`")?;
    let image = match kind {
        "set" => {
            c.expect('{')?;
            let mut es = Vec::new();
            loop {
                es.push(affine(c, '}')?);
                if c.eat('}') {
                    break;
                }
                c.expect(',')?;
            }
            Image::Set(es)
        }
        "interval" => {
            c.expect('[')?;
            let lo = affine(c, ']')?;
            c.expect(',')?;
            let hi = affine(c, ']')?;
            c.expect(']')?;
            Image::Interval(lo, hi)
        }
        other => return Err(c.err_at(at, format!("expected `set` or `interval`, found `{other}`"))),
    };
    c.done()?;
    Ok(Branch { domain, image })
}

fn boolean(c: &mut Cur<'_>) -> PResult<bool> {
    let (at, w) = c.word("`true` or `false`")?;
    match w {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(c.err_at(at, format!("expected `true` or `false`, found `{w}`"))),
    }
}

enum SpaceDecl {
    Interval(Span),
    Finite(usize),
}

enum AlphaDecl {
    Indicator(PointSet, bool),
    Table,
    Constant(Rational),
}

enum GraphDecl {
    Edges,
    Region(PointSet),
}

fn once<T>(slot: &mut Option<(usize, T)>, c: &Cur<'_>, key: &str, value: T) -> PResult<()> {
    if slot.is_some() {
        return Err(c.err_at(0, format!("duplicate `{key}` line")));
    }
    *slot = Some((c.no, value));
    Ok(())
}

pub fn parse_scenario(text: &str) -> std::result::Result<Scenario, ParseError> {
    let lines: Vec<Cur<'_>> = text
        .lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            (!l.trim().is_empty()).then_some(Cur {
                no: i + 1,
                s: l,
                pos: 0,
            })
        })
        .collect();
    let last_line = lines.last().map_or(1, |c| c.no);
    let at_end = |message: &str| ParseError {
        line: last_line,
        column: 1,
        message: message.to_string(),
    };

    // first pass: the space
    let mut space_decl: Option<(usize, SpaceDecl)> = None;
    let mut labels: Option<(usize, Vec<String>)> = None;
    let mut dists: Vec<(Cur<'_>, String, usize, String, usize, Rational)> = Vec::new();
    let mut rest: Vec<(Cur<'_>, &str, usize)> = Vec::new();
    for line in &lines {
        let mut c = line.clone();
        let (at, key) = c.word("a keyword")?;
        match key {
            "space" => {
                let (kat, kind) = c.word("`interval` or `finite`")?;
                let decl = match kind {
                    "interval" => SpaceDecl::Interval(span(&mut c)?),
                    "finite" => {
                        let n = c.count("a point count")? as usize;
                        if n == 0 {
                            return Err(c.err_at(kat, "a finite space needs at least one point"));
                        }
                        SpaceDecl::Finite(n)
                    }
                    _ => {
                        return Err(c.err_at(
                            kat,
                            format!("expected `interval` or `finite`, found `{kind}`"),
                        ))
                    }
                };
                c.done()?;
                once(&mut space_decl, &c, "space", decl)?;
            }
            "labels" => {
                let mut ls = Vec::new();
                while c.peek().is_some() {
                    ls.push(c.word("a label")?.1.to_string());
                }
                once(&mut labels, &c, "labels", ls)?;
            }
            "dist" => {
                let (aat, a) = c.word("a label")?;
                let (bat, b) = c.word("a label")?;
                let d = c.rational()?;
                c.done()?;
                dists.push((c.clone(), a.to_string(), aat, b.to_string(), bat, d));
            }
            _ => rest.push((c, key, at)),
        }
    }
    let (space_line, decl) = space_decl.ok_or_else(|| at_end("missing `space` line"))?;
    let space = match decl {
        SpaceDecl::Interval(span) => {
            if labels.is_some() || !dists.is_empty() {
                return Err(ParseError {
                    line: labels.map_or(dists[0].0.no, |l| l.0),
                    column: 1,
                    message: "`labels` and `dist` need a finite space".into(),
                });
            }
            Space::line(span).map_err(|e| ParseError {
                line: space_line,
                column: 1,
                message: message(e),
            })?
        }
        SpaceDecl::Finite(n) => {
            let names = match labels {
                Some((no, ls)) => {
                    if ls.len() != n {
                        return Err(ParseError {
                            line: no,
                            column: 1,
                            message: format!("expected {n} labels, found {}", ls.len()),
                        });
                    }
                    ls
                }
                None => (0..n).map(|i| format!("v{i}")).collect(),
            };
            let mut table = vec![vec![Rational::zero(); n]; n];
            let mut set = vec![vec![false; n]; n];
            for (c, a, aat, b, bat, d) in &dists {
                let find = |l: &str, at: usize| {
                    names
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| c.err_at(at, format!("unknown label `{l}`")))
                };
                let (i, j) = (find(a, *aat)?, find(b, *bat)?);
                if i == j {
                    return Err(c.err_at(*aat, "distance of a point to itself is always 0"));
                }
                table[i][j] = d.clone();
                table[j][i] = d.clone();
                set[i][j] = true;
                set[j][i] = true;
            }
            for i in 0..n {
                for j in i + 1..n {
                    if !set[i][j] {
                        return Err(ParseError {
                            line: space_line,
                            column: 1,
                            message: format!(
                                "missing distance between {} and {}",
                                names[i], names[j]
                            ),
                        });
                    }
                }
            }
            Space::Finite(FiniteMetric::new(names, table).map_err(|e| ParseError {
                line: space_line,
                column: 1,
                message: message(e),
            })?)
        }
    };

    // second pass: everything else
    let mut name: Option<(usize, String)> = None;
    let mut branches: Vec<(usize, Branch)> = Vec::new();
    let mut table_images: Vec<(Cur<'_>, Point, Vec<Point>)> = Vec::new();
    let mut alpha: Option<(usize, AlphaDecl)> = None;
    let mut rows: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut graph: Option<(usize, GraphDecl)> = None;
    let mut edges: Vec<(Point, Point)> = Vec::new();
    let mut zeta: Option<(usize, Expr)> = None;
    let mut gfun: Option<(usize, Expr)> = None;
    let mut cg: Option<(usize, Rational)> = None;
    let mut start: Option<(usize, Start)> = None;
    let mut tol: Option<(usize, Rational)> = None;
    let mut max_iter: Option<(usize, usize)> = None;
    let mut grid_step: Option<(usize, Rational)> = None;
    let mut seed: Option<(usize, u64)> = None;
    let mut complete: Option<(usize, bool)> = None;
    let mut continuous: Option<(usize, bool)> = None;
    let mut route: Option<(usize, Route)> = None;

    let expr_of = |c: &mut Cur<'_>| -> PResult<Expr> {
        let (at, text) = c.rest();
        Expr::parse(text).map_err(|e| c.err_at(at + e.offset, e.message))
    };

    for (mut c, key, key_at) in rest {
        match key {
            "name" => {
                let (_, w) = c.word("a name")?;
                c.done()?;
                once(&mut name, &c, "name", w.to_string())?;
            }
            "branch" => {
                if space.is_finite() {
                    return Err(c.err_at(key_at, "`branch` needs an interval space; use `map`"));
                }
                branches.push((c.no, branch(&mut c)?));
            }
            "map" => {
                if !space.is_finite() {
                    return Err(c.err_at(key_at, "`map` needs a finite space; use `branch`"));
                }
                let from = labelled(&mut c, &space)?;
                if !c.eat_str("->") {
                    return Err(c.err(format!("expected `->`, found {}", c.found())));
                }
                let to = point_list(&mut c, &space)?;
                c.done()?;
                table_images.push((c.clone(), from, to));
            }
            "alpha" => {
                let (kat, kind) = c.word("`indicator`, `table` or `constant`")?;
                let decl = match kind {
                    "indicator" => {
                        let r = region(&mut c, &space)?;
                        let diagonal = c.eat_str("diagonal");
                        AlphaDecl::Indicator(r, diagonal)
                    }
                    "table" => AlphaDecl::Table,
                    "constant" => {
                        let v = c.rational()?;
                        AlphaDecl::Constant(v)
                    }
                    _ => {
                        return Err(c.err_at(
                            kat,
                            format!("expected `indicator`, `table` or `constant`, found `{kind}`"),
                        ))
                    }
                };
                c.done()?;
                once(&mut alpha, &c, "alpha", decl)?;
            }
            "row" => {
                if !matches!(alpha, Some((_, AlphaDecl::Table))) {
                    return Err(c.err_at(key_at, "`row` must follow `alpha table`"));
                }
                let mut vals = Vec::new();
                while c.peek().is_some() {
                    vals.push(c.rational()?);
                }
                rows.push((c.no, vals));
            }
            "graph" => {
                let (kat, kind) = c.word("`edges` or `region`")?;
                let decl = match kind {
                    "edges" => GraphDecl::Edges,
                    "region" => GraphDecl::Region(region(&mut c, &space)?),
                    _ => {
                        return Err(
                            c.err_at(kat, format!("expected `edges` or `region`, found `{kind}`"))
                        )
                    }
                };
                c.done()?;
                once(&mut graph, &c, "graph", decl)?;
            }
            "edge" => {
                if !matches!(graph, Some((_, GraphDecl::Edges))) {
                    return Err(c.err_at(key_at, "`edge` must follow `graph edges`"));
                }
                let a = labelled(&mut c, &space)?;
                let b = labelled(&mut c, &space)?;
                c.done()?;
                edges.push((a, b));
            }
            "zeta" => {
                let e = expr_of(&mut c)?;
                once(&mut zeta, &c, "zeta", e)?;
            }
            "gfun" => {
                let e = expr_of(&mut c)?;
                once(&mut gfun, &c, "gfun", e)?;
            }
            "cg" => {
                let v = c.rational()?;
                c.done()?;
                once(&mut cg, &c, "cg", v)?;
            }
            "start" => {
                let mut x0 = None;
                let mut x1 = None;
                while c.peek().is_some() {
                    let (wat, w) = c.word("`x0=` or `x1=`")?;
                    c.expect('=')?;
                    let p = labelled(&mut c, &space)?;
                    match w {
                        "x0" if x0.is_none() => x0 = Some(p),
                        "x1" if x1.is_none() => x1 = Some(p),
                        _ => return Err(c.err_at(wat, format!("unexpected `{w}=`"))),
                    }
                }
                let x0 = x0.ok_or_else(|| c.err_at(key_at, "`start` needs x0="))?;
                once(&mut start, &c, "start", Start { x0, x1 })?;
            }
            "tol" => {
                let at = c.pos;
                let v = c.rational()?;
                c.done()?;
                if v.is_negative() {
                    return Err(c.err_at(at + 1, "tol must be non-negative"));
                }
                once(&mut tol, &c, "tol", v)?;
            }
            "max-iter" => {
                let v = c.count("an iteration count")? as usize;
                c.done()?;
                once(&mut max_iter, &c, "max-iter", v)?;
            }
            "grid-step" => {
                let at = c.pos;
                let v = c.rational()?;
                c.done()?;
                if !v.is_positive() {
                    return Err(c.err_at(at + 1, "grid-step must be positive"));
                }
                once(&mut grid_step, &c, "grid-step", v)?;
            }
            "seed" => {
                let v = c.count("a seed")?;
                c.done()?;
                once(&mut seed, &c, "seed", v)?;
            }
            "declare" => {
                let (dat, what) = c.word("an attribute")?;
                match what {
                    "alpha-complete" => {
                        let v = boolean(&mut c)?;
                        once(&mut complete, &c, "declare alpha-complete", v)?;
                    }
                    "alpha-continuous" => {
                        let v = boolean(&mut c)?;
                        once(&mut continuous, &c, "declare alpha-continuous", v)?;
                    }
                    "route" => {
                        let (rat, r) = c.word("`continuity` or `iv-prime`")?;
                        let r = match r {
                            "continuity" => Route::Continuity,
                            "iv-prime" => Route::IvPrime,
                            _ => {
                                return Err(c.err_at(
                                    rat,
                                    format!("expected `continuity` or `iv-prime`, found `{r}`"),
                                ))
                            }
                        };
                        once(&mut route, &c, "declare route", r)?;
                    }
                    _ => return Err(c.err_at(dat, format!("unknown attribute `{what}`"))),
                }
                c.done()?;
            }
            _ => return Err(c.err_at(key_at, format!("unknown key `{key}`"))),
        }
    }

    let map = if space.is_finite() {
        if table_images.is_empty() {
            return Err(at_end("empty map section: no `map` lines"));
        }
        let n = space.points().map_or(0, |p| p.len());
        let mut images: Vec<Option<PointSet>> = vec![None; n];
        for (c, from, to) in &table_images {
            let Point::Vertex(i) = from else {
                unreachable!("finite space")
            };
            if images[*i].is_some() {
                return Err(c.err_at(0, format!("duplicate `map` line for {}", space.show(from))));
            }
            images[*i] =
                Some(PointSet::points(&space, to.clone()).map_err(|e| c.err_at(0, message(e)))?);
        }
        let images: Vec<PointSet> = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| {
                    at_end(&format!(
                        "no `map` line for {}",
                        space.show(&Point::Vertex(i))
                    ))
                })
            })
            .collect::<PResult<_>>()?;
        MultiMap::table(space.clone(), images).map_err(|e| at_end(&message(e)))?
    } else {
        if branches.is_empty() {
            return Err(at_end("empty map section: no `branch` lines"));
        }
        let first = branches[0].0;
        MultiMap::piecewise(
            space.clone(),
            branches.into_iter().map(|(_, b)| b).collect(),
        )
        .map_err(|e| ParseError {
            line: first,
            column: 1,
            message: message(e),
        })?
    };

    let relation = match (alpha, graph) {
        (Some(_), Some((no, _))) => {
            return Err(ParseError {
                line: no,
                column: 1,
                message: "give either `alpha` or `graph`, not both".into(),
            })
        }
        (None, None) => return Err(at_end("missing `alpha` or `graph` line")),
        (Some((no, decl)), None) => {
            let err = |e: Error| ParseError {
                line: no,
                column: 1,
                message: message(e),
            };
            Relation::Alpha(match decl {
                AlphaDecl::Indicator(region, diagonal) => AlphaFn::Indicator { region, diagonal },
                AlphaDecl::Constant(v) => AlphaFn::constant(v).map_err(err)?,
                AlphaDecl::Table => {
                    AlphaFn::table(&space, rows.into_iter().map(|(_, r)| r).collect())
                        .map_err(err)?
                }
            })
        }
        (None, Some((no, decl))) => {
            let err = |e: Error| ParseError {
                line: no,
                column: 1,
                message: message(e),
            };
            Relation::Graph(match decl {
                GraphDecl::Edges => GraphSpace::with_edges(space.clone(), edges).map_err(err)?,
                GraphDecl::Region(r) => GraphSpace::with_region(space.clone(), r).map_err(err)?,
            })
        }
    };

    let (zeta_line, zeta) = zeta.ok_or_else(|| at_end("missing `zeta` line"))?;
    let gfun = gfun.map_or_else(|| Expr::parse("s - t").expect("valid"), |(_, e)| e);
    let cg = cg.map_or_else(Rational::zero, |(_, v)| v);
    let family = ContractionFamily::new(zeta, gfun, cg).map_err(|e| ParseError {
        line: zeta_line,
        column: 1,
        message: message(e),
    })?;

    Ok(Scenario {
        name: name.map_or_else(|| "scenario".to_string(), |(_, n)| n),
        space,
        map,
        relation,
        family,
        start: start.map(|(_, s)| s),
        tol: tol.map_or_else(default_tol, |(_, v)| v),
        max_iter: max_iter.map_or(DEFAULT_MAX_ITER, |(_, v)| v),
        grid_step: grid_step.map_or_else(default_grid_step, |(_, v)| v),
        seed: seed.map_or(0, |(_, v)| v),
        alpha_complete: complete.map(|(_, v)| v),
        alpha_continuous: continuous.map(|(_, v)| v),
        route: route.map_or(Route::Continuity, |(_, v)| v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};
    use crate::scenario::{EXAMPLE_ONE, EXAMPLE_TWO};

    fn err(text: &str) -> ParseError {
        parse_scenario(text).unwrap_err()
    }

    const HEAD: &str = "space interval [0, 5]\nalpha constant 1\nzeta 1/2*s - t\n";

    #[test]
    fn example_one_has_four_branches() {
        let sc = parse_scenario(EXAMPLE_ONE).unwrap();
        assert_eq!(sc.map.branches().unwrap().len(), 4);
        assert_eq!(sc.name, "example-1");
        assert_eq!(
            sc.start,
            Some(Start {
                x0: Point::Real(int(2)),
                x1: Some(Point::Real(q(5, 3)))
            })
        );
        assert_eq!(sc.family, ContractionFamily::linear(q(5, 6)));
        let two = parse_scenario(EXAMPLE_TWO).unwrap();
        assert_eq!(two.route, Route::IvPrime);
    }

    #[test]
    fn overlapping_branches() {
        let e = err(&format!(
            "{HEAD}branch [0, 2] -> set {{1}}\nbranch [2, 5] -> set {{1}}\n"
        ));
        assert_eq!(e.message, "branches overlap at 2");
        assert_eq!(e.line, 4);
    }

    #[test]
    fn empty_map_section() {
        let e = err(HEAD);
        assert!(e.message.contains("empty map section"), "{e}");
    }

    #[test]
    fn uncovered_and_outside() {
        let e = err(&format!(
            "{HEAD}branch [0, 2) -> set {{1}}\nbranch (2, 5] -> set {{1}}\n"
        ));
        assert!(e.message.contains("uncovered"), "{e}");
        let e = err(&format!("{HEAD}branch [0, 5] -> set {{7}}\n"));
        assert_eq!(e.line, 4);
    }

    #[test]
    fn malformed_rational_has_a_column() {
        let e = err("space interval [0, 1/0]\n");
        assert_eq!((e.line, e.column), (1, 20));
        let e = err("space interval [0, 5]\ntol 1/x\n");
        assert_eq!((e.line, e.column), (2, 5));
        assert_eq!(e.message, "malformed rational `1/x`");
    }

    #[test]
    fn unknown_key() {
        let e = err(&format!("{HEAD}branch [0, 5] -> set {{1}}\nfrobnicate 3\n"));
        assert_eq!((e.line, e.column), (5, 1));
        assert_eq!(e.message, "unknown key `frobnicate`");
    }

    #[test]
    fn expected_token_messages() {
        let e = err(&format!("{HEAD}branch [0, 5] => set {{1}}\n"));
        assert_eq!(e.message, "expected `->`, found `=>`");
        let e = err(&format!("{HEAD}branch [0, 5] -> bag {{1}}\n"));
        assert_eq!(e.column, 18);
        let e = err(&format!("{HEAD}branch [0, 5] -> set {{x*x}}\n"));
        assert!(e.message.contains("not affine"), "{e}");
    }

    #[test]
    fn finite_space_parses() {
        let text = "\
space finite 3
labels a b c
dist a b 1
dist a c 2
dist b c 1
map a -> {b}
map b -> {c}
map c -> {c}
alpha table
row 0 1 0
row 0 0 1
row 0 0 1
zeta s/2 - t
start x0=a
";
        let sc = parse_scenario(text).unwrap();
        assert_eq!(
            sc.map.apply(&Point::Vertex(0)).unwrap(),
            PointSet::Points(vec![Point::Vertex(1)])
        );
        assert_eq!(
            sc.alpha()
                .unwrap()
                .eval(&Point::Vertex(0), &Point::Vertex(1)),
            int(1)
        );
        let missing = text.replace("dist b c 1\n", "");
        assert!(err(&missing)
            .message
            .contains("missing distance between b and c"));
        let bad_metric = text.replace("dist a c 2", "dist a c 3");
        assert!(
            err(&bad_metric).message.contains("triangle"),
            "{}",
            err(&bad_metric)
        );
    }

    #[test]
    fn graph_forms() {
        let text =
            "space interval [0, 5]\nbranch [0, 5] -> set {1}\ngraph region [0, 2]\nzeta s - t\n";
        let sc = parse_scenario(text).unwrap();
        assert!(matches!(sc.relation, Relation::Graph(_)));
        let both = format!("{text}alpha constant 1\n");
        assert!(err(&both).message.contains("not both"));
    }

    #[test]
    fn family_must_not_use_x() {
        let e =
            err("space interval [0, 5]\nbranch [0, 5] -> set {1}\nalpha constant 1\nzeta x - t\n");
        assert_eq!(e.line, 4);
    }
}
