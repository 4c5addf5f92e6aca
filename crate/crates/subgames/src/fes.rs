//! All-but nim (finite excluded subtraction): from a heap of `n` a player
//! removes any amount in `{1..n} \ S` for a fixed finite excluded set `S`.
//! Nim-values grow without bound but are arithmetic periodic:
//! `G(n + p) = G(n) + s` eventually, for some period `p` and saltus `s > 0`.

use std::fmt;

use crate::{Error, Result};

/// The finite excluded set of an all-but-nim ruleset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FesRuleset {
    excluded: Vec<u64>,
}

impl FesRuleset {
    pub fn new(mut excluded: Vec<u64>) -> Result<Self> {
        if excluded.is_empty() {
            return Err(Error::EmptyRuleset);
        }
        if excluded.contains(&0) {
            return Err(Error::ZeroMove);
        }
        excluded.sort_unstable();
        for w in excluded.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMove(w[0]));
            }
        }
        Ok(FesRuleset { excluded })
    }

    pub fn excluded(&self) -> &[u64] {
        &self.excluded
    }

    pub fn len(&self) -> usize {
        self.excluded.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gcd(&self) -> u64 {
        self.excluded.iter().copied().fold(0, gcd)
    }

    /// `(g, S/g)` for `g = gcd(S)`.
    pub fn reduced(&self) -> (u64, FesRuleset) {
        let g = self.gcd();
        (
            g,
            FesRuleset {
                excluded: self.excluded.iter().map(|&a| a / g).collect(),
            },
        )
    }
}

impl fmt::Display for FesRuleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("!")?;
        for (i, m) in self.excluded.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Nim-values of one-heap all-but nim, `0 .. horizon`.
#[derive(Debug, Clone)]
pub struct FesSequence {
    rules: FesRuleset,
    values: Vec<u64>,
}

impl FesSequence {
    pub fn rules(&self) -> &FesRuleset {
        &self.rules
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, n: u64) -> u64 {
        self.values[n as usize]
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn detect(&self) -> Option<ArithmeticPeriodicity> {
        detect_arithmetic_periodicity(&self.values)
    }
}

/// Computes `G(n) = mex { G(n - m) : 1 <= m <= n, m ∉ S }` incrementally.
///
/// The options of `n` are all previous positions except the at most `|S|`
/// excluded ones, and mex sequences hit every value below their maximum, so
/// the mex is either an excluded value whose every prefix occurrence is
/// excluded, or `max + 1`. A per-value occurrence counter makes each
/// position O(|S| log |S|).
pub fn fes_grundy(rules: &FesRuleset, horizon: u64) -> Result<FesSequence> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    let horizon = horizon as usize;
    let mut values: Vec<u64> = Vec::with_capacity(horizon);
    let mut cnt: Vec<u32> = Vec::new();
    let mut ex: Vec<u64> = Vec::with_capacity(rules.len());
    for n in 0..horizon {
        ex.clear();
        for &a in rules.excluded() {
            if (a as usize) <= n {
                ex.push(values[n - a as usize]);
            }
        }
        ex.sort_unstable();
        let mut mex = cnt.len() as u64; // = max value so far + 1
        let mut i = 0;
        while i < ex.len() {
            let v = ex[i];
            let mut mult = 1;
            while i + mult < ex.len() && ex[i + mult] == v {
                mult += 1;
            }
            if cnt[v as usize] == mult as u32 {
                mex = v;
                break;
            }
            i += mult;
        }
        values.push(mex);
        if mex as usize >= cnt.len() {
            cnt.resize(mex as usize + 1, 0);
        }
        cnt[mex as usize] += 1;
    }
    Ok(FesSequence {
        rules: rules.clone(),
        values,
    })
}

/// An arithmetic-periodicity observation: `G(n + period) = G(n) + saltus`
/// for all `preperiod <= n < horizon - period`. Empirical (no certification
/// theorem is implemented); `window` is the number of verified positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ArithmeticPeriodicity {
    pub preperiod: u64,
    pub period: u64,
    pub saltus: u64,
    pub window: u64,
}

/// Finds the minimal `(preperiod, period)` with a constant positive
/// difference on the tail. A candidate is accepted only when it holds over
/// at least 3 periods and `min(1000, horizon)` terms; otherwise `None`.
pub fn detect_arithmetic_periodicity(values: &[u64]) -> Option<ArithmeticPeriodicity> {
    let h = values.len();
    if h < 4 {
        return None;
    }
    for p in 1..=h / 3 {
        let s = values[h - 1].checked_sub(values[h - 1 - p]);
        let Some(s) = s else { continue };
        if s == 0 {
            continue;
        }
        let mut n = h - 1 - p;
        loop {
            let keeps = values[n + p] >= values[n] && values[n + p] - values[n] == s;
            if !keeps {
                n += 1;
                break;
            }
            if n == 0 {
                break;
            }
            n -= 1;
        }
        let l = n;
        let window = h - l;
        if window >= 3 * p && window >= 1000.min(h) {
            return Some(ArithmeticPeriodicity {
                preperiod: l as u64,
                period: p as u64,
                saltus: s,
                window: window as u64,
            });
        }
    }
    None
}

/// A purely arithmetic-periodic closed form `(X)^reps + saltus`: the block
/// `X` repeated `reps` times, then everything shifted up by the saltus.
/// `G(n) = X[n mod |X|] + saltus * (n div (|X| * reps))`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClosedForm {
    pub block: Vec<u64>,
    pub reps: u64,
    pub saltus: u64,
}

impl ClosedForm {
    pub fn period(&self) -> u64 {
        self.block.len() as u64 * self.reps
    }

    pub fn predicted(&self, n: u64) -> u64 {
        self.block[(n % self.block.len() as u64) as usize] + self.saltus * (n / self.period())
    }
}

/// Siegel's closed forms: `S = {a}` gives `(0..a-1)^2 + a`; `S = {a, b}`
/// gives the same unless `b = 2a`, where the block repeats three times.
/// Errors for `|S| >= 3` (no closed form).
pub fn fes_closed_form(rules: &FesRuleset) -> Result<ClosedForm> {
    let ex = rules.excluded();
    let (a, reps) = match ex {
        [a] => (*a, 2),
        [a, b] => (*a, if *b == 2 * a { 3 } else { 2 }),
        _ => return Err(Error::NoClosedForm(rules.len())),
    };
    Ok(ClosedForm {
        block: (0..a).collect(),
        reps,
        saltus: a,
    })
}

/// First position where the closed-form prediction disagrees with the
/// computed sequence, if any.
pub fn verify_closed_form(rules: &FesRuleset, horizon: u64) -> Result<Option<u64>> {
    let form = fes_closed_form(rules)?;
    let seq = fes_grundy(rules, horizon)?;
    Ok((0..horizon).find(|&n| seq.get(n) != form.predicted(n)))
}

/// Result of checking the gcd scaling identity
/// `G_S(n) = G_{S/g}(floor(n/g)) * g + (n mod g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GcdScalingReport {
    pub gcd: u64,
    pub holds: bool,
    pub first_violation: Option<u64>,
    /// `gcd = 1`: the identity is trivially `S' = S`.
    pub degenerate: bool,
}

pub fn gcd_scaling_check(rules: &FesRuleset, horizon: u64) -> Result<GcdScalingReport> {
    let (g, reduced) = rules.reduced();
    if g == 1 {
        return Ok(GcdScalingReport {
            gcd: 1,
            holds: true,
            first_violation: None,
            degenerate: true,
        });
    }
    let full = fes_grundy(rules, horizon)?;
    let red = fes_grundy(&reduced, (horizon - 1) / g + 1)?;
    let violation = (0..horizon).find(|&n| full.get(n) != red.get(n / g) * g + (n % g));
    Ok(GcdScalingReport {
        gcd: g,
        holds: violation.is_none(),
        first_violation: violation,
        degenerate: false,
    })
}

/// The conjectures and the proved lemma from the all-but-nim literature that
/// the harness can evaluate empirically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Conjecture {
    /// `S = {a, b, a+b}`, `b > 3a`, `gcd(a,b) = 1`: period `3am` for the
    /// multiple `m` of `2a` with `b < m < a+b`, else `3an` for some other
    /// `n` in that range.
    SleatorSlusky,
    /// `S = {a, b, a+b, 2a+b}`, `b != 2a`, `2ma <= b <= (2m+1)a`: purely
    /// arithmetic periodic with period `(2m+3)a + b` (proved lemma).
    AbukuSuetsuguLemma,
    /// `S = {a, b, a+b, a+2b}`: purely arithmetic periodic with the
    /// `f`-formula period, the divisor keyed on three parameter cases.
    AbukuSuetsuguPeriod,
    /// `S = {a, b, a+b, 2a+b}`, `b > 2a`: purely arithmetic periodic.
    AbukuSuetsuguPure,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::SleatorSlusky => "sleator-slusky",
            Conjecture::AbukuSuetsuguLemma => "abuku-suetsugu-lemma",
            Conjecture::AbukuSuetsuguPeriod => "abuku-suetsugu-period",
            Conjecture::AbukuSuetsuguPure => "abuku-suetsugu-pure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Verdict {
    /// Observation consistent with the prediction over the whole window.
    HoldsOverWindow,
    /// A concrete mismatch; `witness` is the first position (or the observed
    /// quantity) exhibiting it.
    ViolatedAt { witness: u64, detail: String },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConjectureReport {
    pub conjecture: &'static str,
    pub set: FesRuleset,
    pub predicted_periods: Vec<u64>,
    pub predict_pure: bool,
    /// Which case of a multi-case formula matched, when applicable.
    pub matched_case: Option<String>,
    pub observed: Option<ArithmeticPeriodicity>,
    pub verdict: Verdict,
}

/// Evaluates one conjecture at `(a, b)`: validates premises, computes the
/// sequence, detects arithmetic periodicity, and compares.
pub fn conjecture_harness(which: Conjecture, a: u64, b: u64, horizon: u64) -> Result<ConjectureReport> {
    if a == 0 || a >= b {
        return Err(Error::BadMovePair { a, b });
    }
    let (set, predicted, predict_pure, matched_case) = match which {
        Conjecture::SleatorSlusky => {
            if b <= 3 * a {
                return Err(Error::Premise {
                    conjecture: which.name(),
                    premise: format!("b > 3a required, got b={b}, a={a}"),
                });
            }
            if gcd(a, b) != 1 {
                return Err(Error::Premise {
                    conjecture: which.name(),
                    premise: format!("gcd(a,b) = 1 required, got {}", gcd(a, b)),
                });
            }
            let m: Vec<u64> = (b + 1..a + b).filter(|m| m % (2 * a) == 0).collect();
            let (case, preds) = if m.is_empty() {
                (
                    "no multiple of 2a in (b, a+b); testing 3an for each candidate n".to_string(),
                    (b + 1..a + b).map(|n| 3 * a * n).collect(),
                )
            } else {
                (format!("m = {}", m[0]), vec![3 * a * m[0]])
            };
            (vec![a, b, a + b], preds, true, Some(case))
        }
        Conjecture::AbukuSuetsuguLemma => {
            if b == 2 * a {
                return Err(Error::Premise {
                    conjecture: which.name(),
                    premise: "b != 2a required".into(),
                });
            }
            let m = (1..=b).find(|&m| 2 * m * a <= b && b <= (2 * m + 1) * a);
            let Some(m) = m else {
                return Err(Error::Premise {
                    conjecture: which.name(),
                    premise: format!("no m with 2ma <= b <= (2m+1)a for a={a}, b={b}"),
                });
            };
            (
                dedup(vec![a, b, a + b, 2 * a + b]),
                vec![(2 * m + 3) * a + b],
                true,
                Some(format!("m = {m}")),
            )
        }
        Conjecture::AbukuSuetsuguPeriod => {
            let i = (b - a) / (2 * a);
            let j = (b - (2 * i + 1) * a) / a;
            let k = b - (2 * i + j + 1) * a;
            let f = 4 * (i + j) * (i + 1) * a * a + (4 * i + 3) * k * a + k * k;
            let (div, case) = if b < 2 * a {
                (b - a, "a < b < 2a")
            } else if gcd(a, b) == a {
                (((a + b - 1) / (2 * a)) * a, "b >= 2a, gcd(a,b) = a")
            } else {
                (gcd(a, b), "b >= 2a, gcd(a,b) != a")
            };
            if f % div != 0 {
                return Err(Error::Premise {
                    conjecture: which.name(),
                    premise: format!("formula f={f} is not divisible by {div}"),
                });
            }
            (
                dedup(vec![a, b, a + b, a + 2 * b]),
                vec![f / div],
                true,
                Some(format!("{case}; i={i} j={j} k={k} f={f}")),
            )
        }
        Conjecture::AbukuSuetsuguPure => {
            if b <= 2 * a {
                return Err(Error::Premise {
                    conjecture: which.name(),
                    premise: format!("b > 2a required, got b={b}, a={a}"),
                });
            }
            (dedup(vec![a, b, a + b, 2 * a + b]), vec![], true, None)
        }
    };
    let rules = FesRuleset::new(set)?;
    let seq = fes_grundy(&rules, horizon)?;
    let observed = seq.detect();
    let verdict = match &observed {
        None => Verdict::Inconclusive {
            reason: "no arithmetic periodicity found within horizon".into(),
        },
        Some(ap) => {
            if predict_pure && ap.preperiod != 0 {
                Verdict::ViolatedAt {
                    witness: ap.preperiod,
                    detail: format!("predicted pure, observed preperiod {}", ap.preperiod),
                }
            } else if !predicted.is_empty() && !predicted.contains(&ap.period) {
                Verdict::ViolatedAt {
                    witness: ap.period,
                    detail: format!("predicted period in {predicted:?}, observed {}", ap.period),
                }
            } else {
                Verdict::HoldsOverWindow
            }
        }
    };
    Ok(ConjectureReport {
        conjecture: which.name(),
        set: rules,
        predicted_periods: predicted,
        predict_pure,
        matched_case,
        observed,
        verdict,
    })
}

fn dedup(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}
