//! Ruleset enumeration and sweep experiments: record holders, the 3-move
//! period classification grid, parameterized families, growth fitting,
//! seeded families, and single-move adjunction (Zhang) scans.
//!
//! Sweeps are embarrassingly parallel over rulesets. With the `parallel`
//! feature (default) they run on rayon; without it the same code runs
//! sequentially. Results are collected in input order either way, so output
//! is identical across thread counts.

use itertools::Itertools;

use crate::period::{analyze, analyze_outcome, Analysis, PeriodicityCertificate};
use crate::ruleset::{Outcome, Ruleset, Seed};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps a worker over items, in parallel when the feature allows, preserving
/// input order.
pub(crate) fn map_rulesets<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Enumeration filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Filter {
    All,
    MaxSymmetric,
}

impl Filter {
    fn keep(self, rules: &Ruleset) -> bool {
        match self {
            Filter::All => true,
            Filter::MaxSymmetric => rules.is_max_symmetric(),
        }
    }
}

/// All rulesets with `|S| = k` and `max S <= max_s_bound`, in lexicographic
/// order of the sorted move lists, filtered.
pub fn enumerate_rulesets(
    max_s_bound: u64,
    k: usize,
    filter: Filter,
) -> impl Iterator<Item = Ruleset> {
    (1..=max_s_bound)
        .combinations(k)
        .map(|moves| Ruleset::new(moves).expect("combinations are valid move sets"))
        .filter(move |r| filter.keep(r))
}

/// Rulesets with `|S| = k` and `max S` exactly `m`, lexicographic.
fn enumerate_with_max(m: u64, k: usize, filter: Filter) -> Vec<Ruleset> {
    if k == 0 || m < k as u64 {
        return Vec::new();
    }
    (1..m)
        .combinations(k - 1)
        .map(|mut moves| {
            moves.push(m);
            Ruleset::new(moves).expect("combinations are valid move sets")
        })
        .filter(|r| filter.keep(r))
        .collect()
}

/// One record line: the ruleset(s) attaining the maximal certified outcome
/// period among the enumerated class at this `max S`.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RecordRow {
    pub max_s: u64,
    pub period: u64,
    /// All holders of the record period, lexicographically sorted, with both
    /// certificates each.
    pub holders: Vec<Analysis>,
    /// Rulesets whose certification failed within the horizon cap; they are
    /// excluded from the record but never silently dropped.
    pub uncertified: u64,
}

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RecordTable {
    pub k: usize,
    pub filter: Filter,
    pub horizon_cap: u64,
    pub rows: Vec<RecordRow>,
}

/// Record holders per `max S` over an inclusive range.
pub fn record_holders(
    max_s_range: std::ops::RangeInclusive<u64>,
    k: usize,
    filter: Filter,
    horizon_cap: u64,
) -> Result<RecordTable> {
    let mut rows = Vec::new();
    for m in max_s_range {
        let sets = enumerate_with_max(m, k, filter);
        let results = map_rulesets(sets, |rules| analyze(&rules, horizon_cap));
        let mut uncertified = 0u64;
        let mut best: Option<RecordRow> = None;
        for analysis in results {
            let analysis = analysis?;
            if !analysis.outcome.certified {
                uncertified += 1;
                continue;
            }
            let p = analysis.outcome.period;
            match &mut best {
                Some(row) if p > row.period => {
                    row.period = p;
                    row.holders = vec![analysis];
                }
                Some(row) if p == row.period => row.holders.push(analysis),
                Some(_) => {}
                None => {
                    best = Some(RecordRow {
                        max_s: m,
                        period: p,
                        holders: vec![analysis],
                        uncertified: 0,
                    })
                }
            }
        }
        if let Some(mut row) = best {
            row.uncertified = uncertified;
            // Enumeration is lexicographic and the merge preserves order, so
            // ties are already sorted; keep the invariant explicit.
            row.holders.sort_by(|a, b| a.ruleset.cmp(&b.ruleset));
            rows.push(row);
        }
    }
    Ok(RecordTable {
        k,
        filter,
        horizon_cap,
        rows,
    })
}

/// Period class of a 3-move ruleset cell in the classification grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum PeriodClass {
    /// `s1 + s2 = s3` (structural label, takes precedence).
    Diagonal,
    /// Certified period divides `s1 + s2`.
    SumS1S2,
    /// Certified period divides `s1 + s3`.
    SumS1S3,
    /// Certified period divides `s2 + s3`.
    SumS2S3,
    /// Certified but divides none of the three sums.
    Other,
    /// Certification failed within the horizon cap.
    Unknown,
}

impl PeriodClass {
    /// Documented 8-bit gray level used by the image writer: the survey's
    /// figure maps light gray to `s2+s3`, gray to `s1+s3`, dark gray to
    /// `s1+s2`, black to the diagonal, white to everything else; `Unknown`
    /// gets its own distinguishable level.
    pub fn gray(self) -> u8 {
        match self {
            PeriodClass::SumS2S3 => 192,
            PeriodClass::SumS1S3 => 128,
            PeriodClass::SumS1S2 => 64,
            PeriodClass::Diagonal => 0,
            PeriodClass::Other => 255,
            PeriodClass::Unknown => 160,
        }
    }
}

/// Classification grid for fixed `s3` over a rectangular `(s1, s2)` domain.
/// Cells outside `s1 < s2 < s3` are `None`.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassGrid {
    pub s3: u64,
    pub s1_range: (u64, u64),
    pub s2_range: (u64, u64),
    cells: Vec<Option<PeriodClass>>,
}

impl ClassGrid {
    pub fn width(&self) -> u64 {
        self.s1_range.1 - self.s1_range.0 + 1
    }

    pub fn height(&self) -> u64 {
        self.s2_range.1 - self.s2_range.0 + 1
    }

    pub fn get(&self, s1: u64, s2: u64) -> Option<PeriodClass> {
        let (x, y) = (s1 - self.s1_range.0, s2 - self.s2_range.0);
        self.cells[(y * self.width() + x) as usize]
    }

    pub fn cells(&self) -> impl Iterator<Item = (u64, u64, PeriodClass)> + '_ {
        let w = self.width();
        self.cells.iter().enumerate().filter_map(move |(i, c)| {
            c.map(|c| {
                (
                    self.s1_range.0 + i as u64 % w,
                    self.s2_range.0 + i as u64 / w,
                    c,
                )
            })
        })
    }

    pub fn count(&self, class: PeriodClass) -> usize {
        self.cells.iter().flatten().filter(|&&c| c == class).count()
    }

    pub fn populated(&self) -> usize {
        self.cells.iter().flatten().count()
    }

    /// Renders the grid as a binary PGM image, one pixel per cell, `s1` on
    /// the x axis increasing rightwards, `s2` on the y axis increasing
    /// upwards (the writer flips rows). Out-of-domain cells are white.
    pub fn to_pgm(&self) -> Vec<u8> {
        let (w, h) = (self.width(), self.height());
        crate::twod::pgm_bytes(w as u32, h as u32, |x, y| {
            self.get(self.s1_range.0 + x as u64, self.s2_range.0 + y as u64)
                .map_or(255, PeriodClass::gray)
        })
    }
}

fn classify_cell(period: u64, s1: u64, s2: u64, s3: u64) -> PeriodClass {
    if s1 + s2 == s3 {
        return PeriodClass::Diagonal;
    }
    // Label with the smallest of the three sums the period divides exactly;
    // certified minimal periods may be proper divisors of the printed sums.
    for (sum, class) in [
        (s1 + s2, PeriodClass::SumS1S2),
        (s1 + s3, PeriodClass::SumS1S3),
        (s2 + s3, PeriodClass::SumS2S3),
    ] {
        if sum % period == 0 {
            return class;
        }
    }
    PeriodClass::Other
}

/// Classifies every valid `(s1, s2)` cell at fixed `s3` by its certified
/// outcome period.
pub fn classify_three_move(
    s3: u64,
    s1_range: std::ops::RangeInclusive<u64>,
    s2_range: std::ops::RangeInclusive<u64>,
    horizon_cap: u64,
) -> Result<ClassGrid> {
    if *s1_range.start() < 1 || *s2_range.end() >= s3 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= s1 < s2 < s3 = {s3}"
        )));
    }
    let (s1_lo, s1_hi) = (*s1_range.start(), *s1_range.end());
    let (s2_lo, s2_hi) = (*s2_range.start(), *s2_range.end());
    let mut coords = Vec::new();
    for s2 in s2_lo..=s2_hi {
        for s1 in s1_lo..=s1_hi {
            coords.push((s1, s2));
        }
    }
    let cells = map_rulesets(coords, |(s1, s2)| {
        if s1 >= s2 || s2 >= s3 {
            return Ok(None);
        }
        let rules = Ruleset::new(vec![s1, s2, s3])?;
        let cert = analyze_outcome(&rules, horizon_cap)?;
        Ok(Some(if cert.certified {
            classify_cell(cert.period, s1, s2, s3)
        } else {
            PeriodClass::Unknown
        }))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ClassGrid {
        s3,
        s1_range: (s1_lo, s1_hi),
        s2_range: (s2_lo, s2_hi),
        cells,
    })
}

/// An affine move expression `coef * n + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Affine {
    pub coef: i64,
    pub offset: i64,
}

impl Affine {
    pub fn eval(&self, n: u64) -> i64 {
        self.coef * n as i64 + self.offset
    }
}

/// A polynomial in `n` with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Poly(pub Vec<i64>);

impl Poly {
    pub fn eval(&self, n: u64) -> i64 {
        self.0.iter().rev().fold(0i64, |acc, &c| acc * n as i64 + c)
    }
}

/// A one-parameter ruleset family with optional predicted certificate data.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilySpec {
    pub name: String,
    pub moves: Vec<Affine>,
    pub outcome_period: Option<Poly>,
    pub nim_period: Option<Poly>,
    pub outcome_preperiod: Option<Poly>,
}

impl FamilySpec {
    /// Instantiates the family at `n`. Errors when a move is non-positive or
    /// moves collide (such `n` are inadmissible for the family).
    pub fn instantiate(&self, n: u64) -> Result<Ruleset> {
        let mut moves = Vec::with_capacity(self.moves.len());
        for a in &self.moves {
            let v = a.eval(n);
            if v <= 0 {
                return Err(Error::InvalidParameter(format!(
                    "family {} at n={n}: non-positive move {v}",
                    self.name
                )));
            }
            moves.push(v as u64);
        }
        Ruleset::new(moves)
    }

    /// Parses affine move lists like `5n-2,5n+3,10n+2` (also accepts plain
    /// constants).
    pub fn parse(name: &str, text: &str) -> Result<FamilySpec> {
        let mut moves = Vec::new();
        for part in text.split(',') {
            moves.push(parse_affine(part.trim())?);
        }
        if moves.is_empty() {
            return Err(Error::EmptyRuleset);
        }
        Ok(FamilySpec {
            name: name.to_string(),
            moves,
            outcome_period: None,
            nim_period: None,
            outcome_preperiod: None,
        })
    }

    /// `{a, 2a+1, 3a+1}`: quadratic outcome period, no preperiod.
    pub fn althofer_bultermann_3() -> FamilySpec {
        FamilySpec {
            name: "ab3".into(),
            moves: vec![af(1, 0), af(2, 1), af(3, 1)],
            outcome_period: None,
            nim_period: None,
            outcome_preperiod: Some(Poly(vec![0])),
        }
    }

    /// `{a, 4a, 12a+1, 16a+1}`: purely periodic outcomes with cubic period
    /// `56a^3 + 52a^2 + 9a + 1`.
    pub fn althofer_bultermann_4() -> FamilySpec {
        FamilySpec {
            name: "ab4".into(),
            moves: vec![af(1, 0), af(4, 0), af(12, 1), af(16, 1)],
            outcome_period: Some(Poly(vec![1, 9, 52, 56])),
            nim_period: None,
            outcome_preperiod: Some(Poly(vec![0])),
        }
    }

    /// `{5n-2, 5n+3, 10n+2}`: the long-preperiod family, `l = 45n^2 - 1`
    /// (verified for `n >= 2`; direct computation gives `l = 13` at `n = 1`).
    pub fn long_preperiod() -> FamilySpec {
        FamilySpec {
            name: "preperiod".into(),
            moves: vec![af(5, -2), af(5, 3), af(10, 2)],
            outcome_period: None,
            nim_period: None,
            outcome_preperiod: Some(Poly(vec![-1, 0, 45])),
        }
    }

    /// Flammenkamp's divergent families S1..S4 with (outcome, nim) period
    /// predictions.
    pub fn flammenkamp(which: u8) -> Option<FamilySpec> {
        let (name, moves, po, pn) = match which {
            1 => (
                "s1",
                vec![af(1, 0), af(1, 3), af(3, -1), af(3, 3)],
                Poly(vec![2, 4]),
                Poly(vec![6, 12]),
            ),
            2 => (
                "s2",
                vec![af(0, 2), af(4, -1), af(4, 1), af(4, 5), af(8, -2)],
                Poly(vec![4]),
                Poly(vec![0, 8]),
            ),
            3 => (
                "s3",
                vec![af(0, 2), af(4, 1), af(4, 3), af(4, 7), af(8, 2)],
                Poly(vec![4]),
                Poly(vec![4, 8]),
            ),
            4 => (
                "s4",
                vec![af(1, 0), af(2, 1), af(4, 2), af(5, 3), af(6, 3)],
                Poly(vec![4, 10]),
                Poly(vec![0, 4, 10]),
            ),
            _ => return None,
        };
        Some(FamilySpec {
            name: name.into(),
            moves,
            outcome_period: Some(po),
            nim_period: Some(pn),
            outcome_preperiod: None,
        })
    }

    pub fn preset(name: &str) -> Option<FamilySpec> {
        match name {
            "ab3" => Some(Self::althofer_bultermann_3()),
            "ab4" => Some(Self::althofer_bultermann_4()),
            "preperiod" => Some(Self::long_preperiod()),
            "s1" => Self::flammenkamp(1),
            "s2" => Self::flammenkamp(2),
            "s3" => Self::flammenkamp(3),
            "s4" => Self::flammenkamp(4),
            _ => None,
        }
    }
}

fn af(coef: i64, offset: i64) -> Affine {
    Affine { coef, offset }
}

fn parse_affine(text: &str) -> Result<Affine> {
    let err = |msg: &str| Error::InvalidParameter(format!("bad affine form {text:?}: {msg}"));
    match text.find('n') {
        None => Ok(Affine {
            coef: 0,
            offset: text.parse().map_err(|_| err("not an integer"))?,
        }),
        Some(i) => {
            let coef_txt = &text[..i];
            let coef = match coef_txt {
                "" => 1,
                "-" => -1,
                t => t.parse().map_err(|_| err("bad coefficient"))?,
            };
            let rest = &text[i + 1..];
            let offset = if rest.is_empty() {
                0
            } else {
                rest.parse::<i64>().map_err(|_| err("bad offset"))?
            };
            Ok(Affine { coef, offset })
        }
    }
}

/// One evaluated family member.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilyRow {
    pub n: u64,
    /// `None` when `n` is inadmissible (non-positive or colliding moves).
    pub ruleset: Option<Ruleset>,
    pub outcome: Option<PeriodicityCertificate>,
    pub nim: Option<PeriodicityCertificate>,
    pub predicted_outcome_period: Option<u64>,
    pub predicted_nim_period: Option<u64>,
    pub predicted_preperiod: Option<u64>,
    /// Set when every present prediction is a period of the certified
    /// sequence (the predicted value is a multiple of the minimal one, the
    /// usual reading of printed period tables) and predicted preperiods
    /// match exactly; `None` when uncertified or inadmissible.
    pub prediction_ok: Option<bool>,
    pub note: Option<String>,
}

/// Evaluates a family over an inclusive parameter range.
pub fn family_eval(
    spec: &FamilySpec,
    n_range: std::ops::RangeInclusive<u64>,
    horizon_cap: u64,
) -> Vec<FamilyRow> {
    let ns: Vec<u64> = n_range.collect();
    map_rulesets(ns, |n| {
        let rules = match spec.instantiate(n) {
            Ok(r) => r,
            Err(e) => {
                return FamilyRow {
                    n,
                    ruleset: None,
                    outcome: None,
                    nim: None,
                    predicted_outcome_period: None,
                    predicted_nim_period: None,
                    predicted_preperiod: None,
                    prediction_ok: None,
                    note: Some(e.to_string()),
                }
            }
        };
        let analysis = analyze(&rules, horizon_cap);
        let (outcome, nim) = match analysis {
            Ok(a) => (Some(a.outcome), Some(a.nim)),
            Err(_) => (None, None),
        };
        let pred_po = spec.outcome_period.as_ref().map(|p| p.eval(n).max(0) as u64);
        let pred_pn = spec.nim_period.as_ref().map(|p| p.eval(n).max(0) as u64);
        let pred_l = spec.outcome_preperiod.as_ref().map(|p| p.eval(n).max(0) as u64);
        let prediction_ok = match (&outcome, &nim) {
            (Some(o), Some(g)) if o.certified && g.certified => {
                let mut ok = true;
                if let Some(p) = pred_po {
                    ok &= p > 0 && p % o.period == 0;
                }
                if let Some(p) = pred_pn {
                    ok &= p > 0 && p % g.period == 0;
                }
                if let Some(l) = pred_l {
                    ok &= l == o.preperiod;
                }
                Some(ok)
            }
            _ => None,
        };
        FamilyRow {
            n,
            ruleset: Some(rules),
            outcome,
            nim,
            predicted_outcome_period: pred_po,
            predicted_nim_period: pred_pn,
            predicted_preperiod: pred_l,
            prediction_ok,
            note: None,
        }
    })
}

/// Both certificates and the nim/outcome period ratio.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DivergenceReport {
    pub ruleset: Ruleset,
    pub outcome: PeriodicityCertificate,
    pub nim: PeriodicityCertificate,
    pub ratio: f64,
}

pub fn divergent_period_check(rules: &Ruleset, horizon_cap: u64) -> Result<DivergenceReport> {
    let a = analyze(rules, horizon_cap)?;
    if !a.outcome.certified || !a.nim.certified {
        return Err(Error::InvalidParameter(format!(
            "certification failed within horizon cap {horizon_cap} for {rules}"
        )));
    }
    Ok(DivergenceReport {
        ruleset: rules.clone(),
        ratio: a.nim.period as f64 / a.outcome.period as f64,
        outcome: a.outcome,
        nim: a.nim,
    })
}

/// Least-squares growth fits: `alpha` from `log2(period) ~ alpha * max_s`
/// and `beta` from `ln(period) ~ beta * ln(max_s)`. Residuals are maximal
/// absolute deviations in log space.
#[derive(Debug, Clone, Copy)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GrowthFit {
    pub alpha: f64,
    pub alpha_intercept: f64,
    pub alpha_max_residual: f64,
    pub beta: f64,
    pub beta_intercept: f64,
    pub beta_max_residual: f64,
}

pub fn fit_growth(points: &[(u64, u64)]) -> Result<GrowthFit> {
    if points.len() < 3 || points.iter().any(|&(_, p)| p == 0) {
        return Err(Error::DegenerateFit);
    }
    let ln2 = std::f64::consts::LN_2;
    let xs: Vec<f64> = points.iter().map(|&(m, _)| m as f64).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, p)| (p as f64).ln()).collect();
    let (slope_a, icept_a, res_a) = least_squares(&xs, &ys)?;
    let lxs: Vec<f64> = points.iter().map(|&(m, _)| (m as f64).ln()).collect();
    let (slope_b, icept_b, res_b) = least_squares(&lxs, &ys)?;
    Ok(GrowthFit {
        alpha: slope_a / ln2,
        alpha_intercept: icept_a / ln2,
        alpha_max_residual: res_a / ln2,
        beta: slope_b,
        beta_intercept: icept_b,
        beta_max_residual: res_b,
    })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let res = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + icept)).abs())
        .fold(0.0, f64::max);
    Ok((slope, icept, res))
}

/// The seeded superpolynomial family `S_n = {n, 4n-1, 4n^2}` with seed
/// `N^{5n-1}` followed by `P^j N^{4n-1-j}` for `j = 1 .. n-1` (leftmost
/// symbol at position `-4n^2`; the padding length is forced by
/// `|seed| = max S`).
pub fn seeded_family(n: u64) -> Result<(Ruleset, Seed)> {
    if n < 2 {
        return Err(Error::SeedFamilyIndex(n));
    }
    let rules = Ruleset::new(vec![n, 4 * n - 1, 4 * n * n])?;
    let mut symbols = vec![Outcome::N; (5 * n - 1) as usize];
    for j in 1..n {
        symbols.extend(std::iter::repeat(Outcome::P).take(j as usize));
        symbols.extend(std::iter::repeat(Outcome::N).take((4 * n - 1 - j) as usize));
    }
    debug_assert_eq!(symbols.len() as u64, 4 * n * n);
    Ok((rules, Seed::new(symbols)))
}

/// One adjunction scan entry.
#[derive(Debug, Clone, Copy)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ZhangRow {
    pub c: u64,
    pub certificate: PeriodicityCertificate,
    /// Above the `c > 4 * p(S) * max S` operational threshold.
    pub above_threshold: bool,
}

/// Linear fit `y ~ slope * c + intercept` with the maximal absolute
/// deviation split by threshold side.
#[derive(Debug, Clone, Copy)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_dev_above: f64,
    pub max_dev_below: f64,
}

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ZhangReport {
    pub base: Ruleset,
    pub base_period: u64,
    pub modulus: u64,
    pub residue: u64,
    pub threshold: u64,
    pub rows: Vec<ZhangRow>,
    pub uncertified: Vec<u64>,
    pub preperiod_fit: Option<LinearFit>,
    pub period_fit: Option<LinearFit>,
}

/// Adjoins each `c ≡ residue (mod modulus)` in the range to `S` and fits the
/// certified `(preperiod, period)` linearly in `c`. The modulus must be a
/// multiple of the certified outcome period of `S`.
pub fn zhang_scan(
    rules: &Ruleset,
    residue: u64,
    modulus: u64,
    c_range: std::ops::RangeInclusive<u64>,
    horizon_cap: u64,
) -> Result<ZhangReport> {
    if modulus == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let base = analyze_outcome(rules, horizon_cap)?;
    if !base.certified {
        return Err(Error::InvalidParameter(format!(
            "outcome period of {rules} not certified within cap"
        )));
    }
    if modulus % base.period != 0 {
        return Err(Error::BadModulus {
            q: modulus,
            p: base.period,
        });
    }
    let threshold = 4 * base.period * rules.max_s();
    let cs: Vec<u64> = c_range
        .filter(|c| c % modulus == residue % modulus && !rules.contains(*c) && *c > 0)
        .collect();
    let results = map_rulesets(cs, |c| -> Result<(u64, PeriodicityCertificate)> {
        let adjoined = rules.with_move(c)?;
        Ok((c, analyze_outcome(&adjoined, horizon_cap)?))
    });
    let mut rows = Vec::new();
    let mut uncertified = Vec::new();
    for r in results {
        let (c, cert) = r?;
        if cert.certified {
            rows.push(ZhangRow {
                c,
                certificate: cert,
                above_threshold: c > threshold,
            });
        } else {
            uncertified.push(c);
        }
    }
    let fit = |get: &dyn Fn(&ZhangRow) -> f64| -> Option<LinearFit> {
        if rows.len() < 2 {
            return None;
        }
        let xs: Vec<f64> = rows.iter().map(|r| r.c as f64).collect();
        let ys: Vec<f64> = rows.iter().map(|r| get(r)).collect();
        let (slope, intercept, _) = least_squares(&xs, &ys).ok()?;
        let mut above = 0f64;
        let mut below = 0f64;
        for r in &rows {
            let dev = (get(r) - (slope * r.c as f64 + intercept)).abs();
            if r.above_threshold {
                above = above.max(dev);
            } else {
                below = below.max(dev);
            }
        }
        Some(LinearFit {
            slope,
            intercept,
            max_dev_above: above,
            max_dev_below: below,
        })
    };
    let preperiod_fit = fit(&|r| r.certificate.preperiod as f64);
    let period_fit = fit(&|r| r.certificate.period as f64);
    Ok(ZhangReport {
        base: rules.clone(),
        base_period: base.period,
        modulus,
        residue,
        threshold,
        rows,
        uncertified,
        preperiod_fit,
        period_fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::DEFAULT_HORIZON_CAP;

    #[test]
    fn enumeration_counts_and_order() {
        let all: Vec<Ruleset> = enumerate_rulesets(5, 2, Filter::All).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0].moves(), &[1, 2]);
        assert_eq!(all[1].moves(), &[1, 3]);
        assert_eq!(all[9].moves(), &[4, 5]);

        let ms: Vec<Ruleset> = enumerate_rulesets(5, 2, Filter::MaxSymmetric).collect();
        assert!(ms.iter().all(|r| r.is_max_symmetric()));
        let check: Vec<Ruleset> = enumerate_rulesets(5, 2, Filter::All)
            .filter(|r| r.is_max_symmetric())
            .collect();
        assert_eq!(ms, check);

        let all3: Vec<Ruleset> = enumerate_rulesets(3, 3, Filter::All).collect();
        assert_eq!(all3.len(), 1);
        assert_eq!(all3[0].moves(), &[1, 2, 3]);
    }

    #[test]
    fn record_for_small_two_move_class() {
        // max S = 5, k = 2: the two-move law gives periods 2,7,8,9; the
        // record is {4,5} with period 9.
        let t = record_holders(5..=5, 2, Filter::All, 100_000).unwrap();
        assert_eq!(t.rows.len(), 1);
        let row = &t.rows[0];
        assert_eq!(row.period, 9);
        assert_eq!(row.holders.len(), 1);
        assert_eq!(row.holders[0].ruleset.moves(), &[4, 5]);
        assert_eq!(row.uncertified, 0);
    }

    #[test]
    fn record_at_seven_is_the_berlekamp_exception() {
        let t = record_holders(7..=7, 3, Filter::All, 100_000).unwrap();
        let row = &t.rows[0];
        assert_eq!(row.period, 22);
        assert_eq!(row.holders.len(), 1);
        assert_eq!(row.holders[0].ruleset.moves(), &[2, 5, 7]);
    }

    #[test]
    fn classify_examples() {
        let grid = classify_three_move(7, 1..=6, 2..=6, 100_000).unwrap();
        // {2,5,7} (period 22, dividing no sum) lies on the diagonal
        // 2 + 5 = 7; the structural label takes precedence.
        assert_eq!(grid.get(2, 5), Some(PeriodClass::Diagonal));
        // {2,3,7} has period 5 = s1+s2.
        assert_eq!(grid.get(2, 3), Some(PeriodClass::SumS1S2));
        // Plain diagonal cell.
        assert_eq!(grid.get(3, 4), Some(PeriodClass::Diagonal));
        assert_eq!(grid.get(5, 3), None);
        // Renderable, one pixel per cell.
        let pgm = grid.to_pgm();
        assert!(pgm.starts_with(b"P5\n6 5\n255\n"));
    }

    #[test]
    fn family_presets_evaluate() {
        let fam = FamilySpec::althofer_bultermann_4();
        let rows = family_eval(&fam, 1..=1, DEFAULT_HORIZON_CAP);
        let row = &rows[0];
        assert_eq!(row.ruleset.as_ref().unwrap().moves(), &[1, 4, 13, 17]);
        let o = row.outcome.unwrap();
        assert_eq!((o.preperiod, o.period), (0, 118));
        assert_eq!(row.predicted_outcome_period, Some(118));
        assert_eq!(row.prediction_ok, Some(true));
    }

    #[test]
    fn family_inadmissible_member_is_flagged() {
        // S1 at n=2 collides (n+3 = 3n-1 = 5).
        let fam = FamilySpec::flammenkamp(1).unwrap();
        let rows = family_eval(&fam, 2..=2, 100_000);
        assert!(rows[0].ruleset.is_none());
        assert!(rows[0].note.as_ref().unwrap().contains("duplicate"));
    }

    #[test]
    fn affine_parsing() {
        let f = FamilySpec::parse("x", "5n-2,5n+3,10n+2").unwrap();
        assert_eq!(f.moves[0], Affine { coef: 5, offset: -2 });
        assert_eq!(f.moves[2], Affine { coef: 10, offset: 2 });
        let f = FamilySpec::parse("x", "n,7,2n").unwrap();
        assert_eq!(f.moves[0], Affine { coef: 1, offset: 0 });
        assert_eq!(f.moves[1], Affine { coef: 0, offset: 7 });
        assert_eq!(f.moves[2], Affine { coef: 2, offset: 0 });
        assert!(FamilySpec::parse("x", "5m-2").is_err());
    }

    #[test]
    fn divergence_examples() {
        let r = divergent_period_check(&Ruleset::new(vec![4, 6, 11, 14]).unwrap(), 100_000).unwrap();
        assert_eq!((r.outcome.period, r.nim.period), (17, 34));
        assert_eq!(r.ratio, 2.0);
        let r = divergent_period_check(&Ruleset::new(vec![2, 5]).unwrap(), 100_000).unwrap();
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn growth_fit_recovers_synthetic_exponent() {
        // period = 2^(0.3 m)
        let pts: Vec<(u64, u64)> = (20..=40)
            .step_by(10)
            .map(|m| (m, (2f64.powf(0.3 * m as f64)).round() as u64))
            .collect();
        let fit = fit_growth(&pts).unwrap();
        assert!((fit.alpha - 0.3).abs() < 0.01, "alpha = {}", fit.alpha);

        // period = m^5
        let pts: Vec<(u64, u64)> = (3u64..=10).map(|m| (m, m.pow(5))).collect();
        let fit = fit_growth(&pts).unwrap();
        assert!((fit.beta - 5.0).abs() < 1e-9, "beta = {}", fit.beta);
        assert!(fit.beta_max_residual < 1e-9);

        assert!(matches!(
            fit_growth(&[(3, 8), (3, 8), (3, 8)]),
            Err(Error::DegenerateFit)
        ));
        assert!(matches!(fit_growth(&[(3, 8)]), Err(Error::DegenerateFit)));
    }

    #[test]
    fn seeded_family_construction() {
        let (rules, seed) = seeded_family(2).unwrap();
        assert_eq!(rules.moves(), &[2, 7, 16]);
        assert_eq!(seed.to_string(), "NNNNNNNNNPNNNNNN");
        for n in 2..=10 {
            let (rules, seed) = seeded_family(n).unwrap();
            assert_eq!(seed.len(), rules.max_s());
            assert_eq!(seed.len(), 4 * n * n);
        }
        assert!(matches!(seeded_family(1), Err(Error::SeedFamilyIndex(1))));
    }

    #[test]
    fn zhang_known_linear_cases() {
        // {1,2}: period 3; adjoining c ≡ 1 (mod 3) leaves (0,3).
        let s = Ruleset::new(vec![1, 2]).unwrap();
        let rep = zhang_scan(&s, 1, 3, 7..=16, 100_000).unwrap();
        assert_eq!(rep.rows.len(), 4);
        let pf = rep.period_fit.unwrap();
        assert!(pf.slope.abs() < 1e-9 && (pf.intercept - 3.0).abs() < 1e-9);

        // {2,4} (= {a,2a}): adjoining c ≡ 1 (mod 6) gives (c-3, 3).
        let s = Ruleset::new(vec![2, 4]).unwrap();
        let rep = zhang_scan(&s, 1, 6, 7..=25, 100_000).unwrap();
        for row in &rep.rows {
            assert_eq!(
                (row.certificate.preperiod, row.certificate.period),
                (row.c - 3, 3)
            );
        }
        let lf = rep.preperiod_fit.unwrap();
        assert!((lf.slope - 1.0).abs() < 1e-9);
        assert!(lf.max_dev_above.max(lf.max_dev_below) < 1e-9);

        // Modulus must be a multiple of the period.
        assert!(matches!(
            zhang_scan(&s, 1, 5, 7..=25, 100_000),
            Err(Error::BadModulus { q: 5, p: 6 })
        ));
    }
}
