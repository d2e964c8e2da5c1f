//! Control-function families `(ζ, G, C_G)` and their class checks.
//!
//! Every class condition quantifies over all non-negative reals (or over all
//! convergent sequences), so membership is only ever falsified: a PASS means
//! "no violation on the supplied grid", never a proof.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{Env, Expr, Var};
use crate::rational::{int, q, Rational};
use crate::report::{CheckReport, Condition, Scope, Verdict, Witness};

/// A triple `(ζ, G, C_G)`: `ζ(t, s)` and `G(s, t)` as expressions in the
/// variables `t` and `s`, and the threshold `C_G ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionFamily {
    zeta: Expr,
    gfun: Expr,
    cg: Rational,
}

impl ContractionFamily {
    pub fn new(zeta: Expr, gfun: Expr, cg: Rational) -> Result<Self> {
        if cg.is_negative() {
            return Err(Error::Input(format!("C_G must be non-negative, got {cg}")));
        }
        for (name, e) in [("zeta", &zeta), ("gfun", &gfun)] {
            if e.vars().contains(&Var::X) {
                return Err(Error::Input(format!(
                    "{name} may only use the variables t and s"
                )));
            }
        }
        Ok(ContractionFamily { zeta, gfun, cg })
    }

    /// `ζ(t, s) = λ s - t`, `G(s, t) = s - t`, `C_G = 0`.
    pub fn linear(lambda: Rational) -> Self {
        let zeta = Expr::Bin(
            crate::expr::BinOp::Sub,
            Box::new(Expr::Bin(
                crate::expr::BinOp::Mul,
                Box::new(Expr::Lit(lambda)),
                Box::new(Expr::Var(Var::S)),
            )),
            Box::new(Expr::Var(Var::T)),
        );
        let gfun = Expr::Bin(
            crate::expr::BinOp::Sub,
            Box::new(Expr::Var(Var::S)),
            Box::new(Expr::Var(Var::T)),
        );
        ContractionFamily {
            zeta,
            gfun,
            cg: Rational::zero(),
        }
    }

    pub fn zeta(&self) -> &Expr {
        &self.zeta
    }

    pub fn gfun(&self) -> &Expr {
        &self.gfun
    }

    pub fn cg(&self) -> &Rational {
        &self.cg
    }

    pub fn eval_zeta(&self, t: &Rational, s: &Rational) -> Result<Rational> {
        nonneg(t, s)?;
        self.zeta.eval(&Env::ts(t, s))
    }

    pub fn eval_g(&self, s: &Rational, t: &Rational) -> Result<Rational> {
        nonneg(t, s)?;
        self.gfun.eval(&Env::ts(t, s))
    }
}

fn nonneg(t: &Rational, s: &Rational) -> Result<()> {
    if t.is_negative() || s.is_negative() {
        return Err(Error::Input(format!(
            "arguments must be non-negative, got t={t}, s={s}"
        )));
    }
    Ok(())
}

/// Argument pairs `(s, t)` at which class conditions are sampled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    points: Vec<(Rational, Rational)>,
}

impl Grid {
    pub fn new(points: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let set: BTreeSet<(Rational, Rational)> = points.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Input("grid must be nonempty".into()));
        }
        if set.iter().any(|(s, t)| s.is_negative() || t.is_negative()) {
            return Err(Error::Input("grid points must be non-negative".into()));
        }
        Ok(Grid {
            points: set.into_iter().collect(),
        })
    }

    /// All pairs from `values × values`.
    pub fn product(values: &[Rational]) -> Result<Self> {
        Grid::new(
            values
                .iter()
                .flat_map(|s| values.iter().map(move |t| (s.clone(), t.clone()))),
        )
    }

    /// `{k/8 : 0 ≤ k ≤ 64}²` plus 64 seeded random pairs in `[0, 8]²` with
    /// denominators at most 1000.
    pub fn default_grid(seed: u64) -> Self {
        let values: Vec<Rational> = (0..=64).map(|k| q(k, 8)).collect();
        let mut pts: Vec<(Rational, Rational)> = values
            .iter()
            .flat_map(|s| values.iter().map(move |t| (s.clone(), t.clone())))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            pts.push((random_rational(&mut rng), random_rational(&mut rng)));
        }
        Grid::new(pts).expect("default grid is valid")
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den: i64 = rng.gen_range(1..=1000);
    let num: i64 = rng.gen_range(0..=8 * den);
    q(num, den)
}

/// C-class conditions: (i) `G(s,t) ≤ s`; (ii) `G(s,t) = s` only when
/// `s = 0` or `t = 0`. Continuity is declared, not checked.
pub fn check_c_class(fam: &ContractionFamily, grid: &Grid) -> Result<CheckReport> {
    let mut upper = Vec::new();
    let mut equality = Vec::new();
    for (s, t) in grid.points() {
        let g = fam.eval_g(s, t)?;
        if g > *s {
            upper.push(Witness::Args {
                s: s.clone(),
                t: t.clone(),
            });
        }
        if g == *s && !s.is_zero() && !t.is_zero() {
            equality.push(Witness::Args {
                s: s.clone(),
                t: t.clone(),
            });
        }
    }
    Ok(CheckReport::new(
        "C-class",
        vec![
            Condition::from_witnesses("(i) G(s,t) <= s", Scope::Grid, grid.len(), upper),
            Condition::from_witnesses(
                "(ii) G(s,t) = s => s = 0 or t = 0",
                Scope::Grid,
                grid.len(),
                equality,
            ),
            Condition::declared("continuity of G", "declared, not checked"),
        ],
    ))
}

/// Property `C_G`: (i) `G(s,t) > C_G ⟹ s > t`; (ii) `G(t,t) ≤ C_G`, the
/// latter at every coordinate value occurring in the grid.
pub fn check_property_cg(fam: &ContractionFamily, grid: &Grid) -> Result<CheckReport> {
    let cg = fam.cg();
    let mut implication = Vec::new();
    for (s, t) in grid.points() {
        if fam.eval_g(s, t)? > *cg && s <= t {
            implication.push(Witness::Args {
                s: s.clone(),
                t: t.clone(),
            });
        }
    }
    let diag: BTreeSet<&Rational> = grid.points().iter().flat_map(|(s, t)| [s, t]).collect();
    let mut diagonal = Vec::new();
    for t in &diag {
        if fam.eval_g(t, t)? > *cg {
            diagonal.push(Witness::Args {
                s: (*t).clone(),
                t: (*t).clone(),
            });
        }
    }
    Ok(CheckReport::new(
        "property C_G",
        vec![
            Condition::from_witnesses(
                "(i) G(s,t) > C_G => s > t",
                Scope::Grid,
                grid.len(),
                implication,
            ),
            Condition::from_witnesses("(ii) G(t,t) <= C_G", Scope::Grid, diag.len(), diagonal),
        ],
    ))
}

/// Condition (a): `ζ(t,s) < G(s,t)` for `t, s > 0`. Grid points with a zero
/// coordinate are skipped.
pub fn check_zeta_condition_a(fam: &ContractionFamily, grid: &Grid) -> Result<CheckReport> {
    strict_below(fam, grid, "(a) zeta(t,s) < G(s,t) for t,s > 0", |s, t| {
        fam.eval_g(s, t)
    })
    .map(|c| CheckReport::new("C_G-simulation (a)", vec![c]))
}

/// The original simulation-function condition `ζ(t,s) < s - t` for
/// `t, s > 0`, independent of `G`.
pub fn check_simulation_condition(fam: &ContractionFamily, grid: &Grid) -> Result<CheckReport> {
    strict_below(fam, grid, "zeta(t,s) < s - t for t,s > 0", |s, t| Ok(s - t))
        .map(|c| CheckReport::new("simulation function", vec![c]))
}

fn strict_below(
    fam: &ContractionFamily,
    grid: &Grid,
    label: &str,
    bound: impl Fn(&Rational, &Rational) -> Result<Rational>,
) -> Result<Condition> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (s, t) in grid.points() {
        if !s.is_positive() || !t.is_positive() {
            continue;
        }
        checked += 1;
        if fam.eval_zeta(t, s)? >= bound(s, t)? {
            bad.push(Witness::Args {
                s: s.clone(),
                t: t.clone(),
            });
        }
    }
    let skipped = grid.len() - checked;
    let cond = Condition::from_witnesses(label, Scope::Grid, checked, bad);
    Ok(if skipped > 0 {
        cond.with_note(format!(
            "{skipped} grid points with a zero coordinate skipped"
        ))
    } else {
        cond
    })
}

/// Finite prefixes of two positive sequences `t_n < s_n` with a common
/// positive limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePair {
    t: Vec<Rational>,
    s: Vec<Rational>,
    limit: Rational,
}

impl SequencePair {
    pub fn new(t: Vec<Rational>, s: Vec<Rational>, limit: Rational) -> Result<Self> {
        if t.len() != s.len() {
            return Err(Error::Input("sequences must have equal length".into()));
        }
        if t.len() < 2 {
            return Err(Error::Input("a sequence needs at least two terms".into()));
        }
        if !limit.is_positive() {
            return Err(Error::Input(format!("limit must be positive, got {limit}")));
        }
        for (n, (tn, sn)) in t.iter().zip(&s).enumerate() {
            if !tn.is_positive() {
                return Err(Error::Input(format!("t_{n} = {tn} is not positive")));
            }
            if tn >= sn {
                return Err(Error::Input(format!(
                    "t_{n} = {tn} is not below s_{n} = {sn}"
                )));
            }
        }
        Ok(SequencePair { t, s, limit })
    }

    /// `t_n = ℓ - 1/n`, `s_n = ℓ + 1/n` for `n ≤ terms`, starting at the first
    /// `n` with `t_n > 0`.
    pub fn approaching(limit: Rational, terms: usize) -> Result<Self> {
        let start = (1..=terms as i64)
            .find(|&n| limit.clone() - q(1, n) > Rational::zero())
            .ok_or_else(|| Error::Input("no positive terms".into()))?;
        let (t, s) = (start..=terms as i64)
            .map(|n| (limit.clone() - q(1, n), limit.clone() + q(1, n)))
            .unzip();
        SequencePair::new(t, s, limit)
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn limit(&self) -> &Rational {
        &self.limit
    }
}

/// Default falsification margin for condition (b).
pub fn default_margin() -> Rational {
    q(1, 1000)
}

/// Sequences used when none are supplied: limits 1/2, 1 and 2, 1000 terms.
pub fn default_sequences() -> Vec<SequencePair> {
    [q(1, 2), int(1), int(2)]
        .into_iter()
        .map(|l| SequencePair::approaching(l, 1000).expect("valid default sequence"))
        .collect()
}

/// Condition (b): `limsup ζ(t_n, s_n) < C_G`. The limsup is estimated as the
/// supremum over the last quarter of each sequence; a sequence falsifies
/// the condition when that estimate is at least `C_G - margin`.
pub fn check_zeta_condition_b(
    fam: &ContractionFamily,
    seqs: &[SequencePair],
    margin: &Rational,
) -> Result<CheckReport> {
    if seqs.is_empty() {
        return Err(Error::Input(
            "condition (b) needs at least one sequence pair".into(),
        ));
    }
    let threshold = fam.cg() - margin;
    let mut bad = Vec::new();
    let mut estimates = Vec::new();
    for (index, seq) in seqs.iter().enumerate() {
        let tail = seq.len().div_ceil(4);
        let mut sup: Option<Rational> = None;
        for n in seq.len() - tail..seq.len() {
            let z = fam.eval_zeta(&seq.t[n], &seq.s[n])?;
            if sup.as_ref().is_none_or(|m| z > *m) {
                sup = Some(z);
            }
        }
        let sup = sup.expect("tail is nonempty");
        estimates.push(format!(
            "l={}: {}",
            seq.limit,
            crate::rational::to_f64(&sup)
        ));
        if sup >= threshold {
            bad.push(Witness::Sequence { index, limsup: sup });
        }
    }
    let mut cond = Condition::from_witnesses(
        "(b) limsup zeta(t_n,s_n) < C_G",
        Scope::Sequences,
        seqs.len(),
        bad,
    )
    .with_note(format!(
        "margin {margin}; tail sup {}",
        estimates.join(", ")
    ));
    cond.verdict = if cond.witnesses.is_empty() {
        Verdict::NotFalsified
    } else {
        Verdict::Falsified
    };
    Ok(CheckReport::new("C_G-simulation (b)", vec![cond]))
}

/// All family checks on the given grid and sequences.
pub fn check_family(
    fam: &ContractionFamily,
    grid: &Grid,
    seqs: &[SequencePair],
) -> Result<Vec<CheckReport>> {
    Ok(vec![
        check_c_class(fam, grid)?,
        check_property_cg(fam, grid)?,
        check_zeta_condition_a(fam, grid)?,
        check_zeta_condition_b(fam, seqs, &default_margin())?,
    ])
}
