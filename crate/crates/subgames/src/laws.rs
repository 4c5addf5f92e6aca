//! Closed-form laws and structural checks: the two-move outcome law, Austin's
//! two-move nim forms, the Fibonacci period bound, and bipartiteness.

use crate::grundy::GrundySequence;
use crate::outcome::OutcomeSequence;
use crate::period::PeriodicityCertificate;
use crate::ruleset::Ruleset;
use crate::{Error, Result};

/// Outcome period of `S = {a, b}`: `a + b`, or `2a` when `2a | a + b`, with
/// no preperiod. The law is cross-checked against the computed certificate;
/// a mismatch is an error (it never fires for valid input).
pub fn two_move_law(a: u64, b: u64) -> Result<PeriodicityCertificate> {
    if a == 0 || a >= b {
        return Err(Error::BadMovePair { a, b });
    }
    let predicted = if (a + b) % (2 * a) == 0 { 2 * a } else { a + b };
    let rules = Ruleset::new(vec![a, b])?;
    let seq = OutcomeSequence::compute(&rules, None, 4 * (a + b) + 4 * b)?;
    let cert = seq.certify();
    if !cert.certified || cert.preperiod != 0 || cert.period != predicted {
        return Err(Error::LawMismatch {
            a,
            b,
            predicted,
            l: cert.preperiod,
            p: cert.period,
        });
    }
    Ok(cert)
}

/// Which of Austin's two-move nim-sequence forms applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum AustinForm {
    /// `b = (2n-1)a + r`, word `(0^a 1^a)^n 2^r`.
    OddMultiple { n: u64, r: u64 },
    /// `b = 2na + r`, word `(0^a 1^a)^n 0^r 2^{a-r} 1^r`.
    EvenMultiple { n: u64, r: u64 },
    /// `a | b`: Austin's forms require `0 < r < a`; the reported word is the
    /// empirically certified one.
    NotCovered,
}

/// Predicted (or, for the uncovered boundary, observed) two-move nim period
/// word together with its verification against the computed sequence.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NimPrediction {
    pub a: u64,
    pub b: u64,
    pub form: AustinForm,
    /// The period word: predicted for the covered cases, certified-empirical
    /// for the `r = 0` boundary.
    pub word: Vec<u16>,
    pub certificate: PeriodicityCertificate,
    /// For covered forms: whether the certified sequence matches the
    /// prediction exactly (pure, same period, same word).
    pub matches: bool,
    pub mismatch: Option<String>,
}

fn austin_word(a: u64, b: u64) -> Option<(AustinForm, Vec<u16>)> {
    let (q, r) = (b / a, b % a);
    if r == 0 {
        return None;
    }
    let mut word = Vec::new();
    let n = q.div_ceil(2);
    for _ in 0..n {
        word.extend(std::iter::repeat(0).take(a as usize));
        word.extend(std::iter::repeat(1).take(a as usize));
    }
    if q % 2 == 1 {
        word.extend(std::iter::repeat(2).take(r as usize));
        Some((AustinForm::OddMultiple { n, r }, word))
    } else {
        word.extend(std::iter::repeat(0).take(r as usize));
        word.extend(std::iter::repeat(2).take((a - r) as usize));
        word.extend(std::iter::repeat(1).take(r as usize));
        Some((AustinForm::EvenMultiple { n: q / 2, r }, word))
    }
}

/// Emits Austin's predicted nim period word for `S = {a, b}` and verifies it
/// against the computed, certified Grundy sequence.
pub fn predict_two_move_nim(a: u64, b: u64) -> Result<NimPrediction> {
    if a == 0 || a >= b {
        return Err(Error::BadMovePair { a, b });
    }
    let rules = Ruleset::new(vec![a, b])?;
    let g = GrundySequence::compute(&rules, 6 * (a + b) + 4 * b)?;
    let cert = g.certify();
    match austin_word(a, b) {
        Some((form, word)) => {
            let mut mismatch = None;
            if !cert.certified {
                mismatch = Some("sequence not certified within horizon".into());
            } else if cert.preperiod != 0 {
                mismatch = Some(format!("preperiod {} instead of 0", cert.preperiod));
            } else if cert.period as usize != word.len() {
                mismatch = Some(format!(
                    "certified period {} differs from predicted {}",
                    cert.period,
                    word.len()
                ));
            } else if g.period_word(&cert) != word {
                mismatch = Some("period word differs from Austin's form".into());
            }
            Ok(NimPrediction {
                a,
                b,
                form,
                word,
                certificate: cert,
                matches: mismatch.is_none(),
                mismatch,
            })
        }
        None => Ok(NimPrediction {
            a,
            b,
            form: AustinForm::NotCovered,
            word: if cert.certified { g.period_word(&cert) } else { Vec::new() },
            certificate: cert,
            matches: cert.certified,
            mismatch: (!cert.certified).then(|| "sequence not certified within horizon".into()),
        }),
    }
}

/// Exact `ceil(2 * phi^n)` where `phi` is the golden ratio, via the identity
/// `2 phi^n = L(n) + sqrt(5) F(n)` and `5 F(n)^2 = L(n)^2 - 4 (-1)^n`, so no
/// floating point enters the inequality.
pub fn ceil_two_phi_pow(n: u64) -> u128 {
    if n == 0 {
        return 2;
    }
    if n > 90 {
        // L(n)^2 would overflow u128; any certifiable period is far below.
        return u128::MAX;
    }
    // Fibonacci/Lucas pair up the index.
    let (mut f, mut f1) = (1u128, 1u128); // F(1), F(2)
    let (mut l, mut l1) = (1u128, 3u128); // L(1), L(2)
    for _ in 1..n {
        (f, f1) = (f1, f + f1);
        (l, l1) = (l1, l + l1);
    }
    let under_root = if n % 2 == 0 { l * l - 4 } else { l * l + 4 };
    debug_assert_eq!(under_root, 5 * f * f);
    l + isqrt(under_root) + 1
}

fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// When some `s_i + s_j <= max S` (indices may coincide), the outcome period
/// is bounded by `2 phi^{max S}`; returns the exact integer ceiling of that
/// bound, or `None` when the premise fails.
pub fn fibonacci_bound(rules: &Ruleset) -> Option<u128> {
    fibonacci_premise(rules).then(|| ceil_two_phi_pow(rules.max_s()))
}

/// The premise of the Fibonacci bound: two (not necessarily distinct) moves
/// summing to at most `max S`. Since moves are sorted this reduces to
/// `2 s_1 <= max S` or `s_1 + s_2 <= max S`.
pub fn fibonacci_premise(rules: &Ruleset) -> bool {
    let m = rules.moves();
    2 * m[0] <= rules.max_s() || (m.len() > 1 && m[0] + m[1] <= rules.max_s())
}

/// Bipartiteness report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BipartiteReport {
    /// Closed criterion (`1 ∈ S` and all moves odd); `None` when
    /// `gcd(S) != 1`, where the characterization does not apply.
    pub bipartite: Option<bool>,
    /// Certified nim period 2 with alternating `{0,1}` values; `None` when
    /// the periodicity is uncertified within the horizon.
    pub ultimately_bipartite: Option<bool>,
    /// Onset of the alternation when ultimately bipartite.
    pub onset: Option<u64>,
}

/// Decides bipartiteness by the closed criterion and ultimate bipartiteness
/// from the certified Grundy periodicity.
pub fn bipartite_check(rules: &Ruleset, horizon: u64) -> Result<BipartiteReport> {
    let bipartite = (rules.gcd() == 1)
        .then(|| rules.contains(1) && rules.moves().iter().all(|&s| s % 2 == 1));
    let g = GrundySequence::compute(rules, horizon)?;
    let cert = g.certify();
    let (ultimately_bipartite, onset) = if !cert.certified {
        (None, None)
    } else {
        let l = cert.preperiod;
        let ult = cert.period == 2 && {
            let (x, y) = (g.get(l), g.get(l + 1));
            (x == 0 && y == 1) || (x == 1 && y == 0)
        };
        (Some(ult), ult.then_some(l))
    };
    Ok(BipartiteReport {
        bipartite,
        ultimately_bipartite,
        onset,
    })
}
