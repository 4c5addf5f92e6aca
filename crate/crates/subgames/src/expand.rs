//! Expansion sets: moves that can be adjoined without changing the
//! nim-sequence.
//!
//! A candidate `c` is accepted when the Grundy sequences of `S` and
//! `S ∪ {c}` agree over the whole computed range AND the shared certificate
//! window also covers a dependence window of length `max(max S, c)` — the
//! window size of the *adjoined* game. Under those two conditions the
//! adjoined sequence inherits the base certificate, so the infinite
//! sequences coincide; disagreement at any computed position is conclusive
//! on its own.

use crate::grundy::GrundySequence;
use crate::period::PeriodicityCertificate;
use crate::ruleset::Ruleset;
use crate::{Error, Result};

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExpansionReport {
    pub base: Ruleset,
    pub horizon: u64,
    pub candidate_bound: u64,
    /// Adjoinable moves found (candidates outside `S` only).
    pub adjoinable: Vec<u64>,
    /// Candidates that matched over the horizon but whose verification
    /// window was too small to certify; they are not listed as adjoinable.
    pub unverified: Vec<u64>,
    pub base_certificate: PeriodicityCertificate,
    /// Set when the base is certified and every matching candidate passed
    /// the window condition.
    pub certified: bool,
}

/// Finds all `c <= candidate_bound`, `c ∉ S`, whose adjunction leaves the
/// nim-sequence unchanged.
pub fn expansion_set(rules: &Ruleset, candidate_bound: u64, horizon: u64) -> Result<ExpansionReport> {
    let base = GrundySequence::compute(rules, horizon)?;
    let base_cert = base.certify();
    let mut adjoinable = Vec::new();
    let mut unverified = Vec::new();
    for c in 1..=candidate_bound {
        if rules.contains(c) {
            continue;
        }
        match candidate_matches(rules, &base, &base_cert, c, horizon)? {
            Match::Adjoinable => adjoinable.push(c),
            Match::WindowTooSmall => unverified.push(c),
            Match::Differs => {}
        }
    }
    let certified = base_cert.certified && unverified.is_empty();
    Ok(ExpansionReport {
        base: rules.clone(),
        horizon,
        candidate_bound,
        adjoinable,
        unverified,
        base_certificate: base_cert,
        certified,
    })
}

enum Match {
    Adjoinable,
    WindowTooSmall,
    Differs,
}

fn candidate_matches(
    rules: &Ruleset,
    base: &GrundySequence,
    base_cert: &PeriodicityCertificate,
    c: u64,
    horizon: u64,
) -> Result<Match> {
    let adjoined = rules.with_move(c)?;
    let g = GrundySequence::compute(&adjoined, horizon)?;
    if g.values() != base.values() {
        return Ok(Match::Differs);
    }
    // Equal data implies equal certificates; the adjoined game is certified
    // iff the shared match region covers its own (larger) window.
    let window = rules.max_s().max(c);
    let ok = base_cert.certified && base_cert.preperiod + base_cert.period + window <= horizon;
    Ok(if ok { Match::Adjoinable } else { Match::WindowTooSmall })
}

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AdjoinReport {
    pub base: Ruleset,
    pub period: u64,
    /// The moves `p - s` (for `s ∈ S` with `p - s > 0`), each verified
    /// adjoinable by sequence comparison.
    pub verified: Vec<u64>,
}

/// Austin's adjoining theorem, checked: for purely periodic `S` with period
/// `p`, every `p - s > 0` is adjoinable. Errors when the nim-sequence of `S`
/// is not certified purely periodic.
pub fn austin_adjoin_check(rules: &Ruleset, horizon: u64) -> Result<AdjoinReport> {
    let base = GrundySequence::compute(rules, horizon)?;
    let cert = base.certify();
    if !cert.certified || cert.preperiod != 0 {
        return Err(Error::NotPurelyPeriodic(rules.to_string()));
    }
    let p = cert.period;
    let mut verified = Vec::new();
    for &s in rules.moves() {
        if p <= s {
            continue;
        }
        let c = p - s;
        if rules.contains(c) {
            // Already a move: adjoining is the identity.
            verified.push(c);
            continue;
        }
        if matches!(
            candidate_matches(rules, &base, &cert, c, horizon)?,
            Match::Adjoinable
        ) {
            verified.push(c);
        }
    }
    verified.sort_unstable();
    verified.dedup();
    Ok(AdjoinReport {
        base: rules.clone(),
        period: p,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_of_3_5() {
        // Ho's pattern {4} + 8n plus the always-adjoinable shifts S + 8n.
        let s = Ruleset::new(vec![3, 5]).unwrap();
        let r = expansion_set(&s, 25, 800).unwrap();
        assert!(r.certified);
        assert_eq!(r.adjoinable, vec![4, 11, 12, 13, 19, 20, 21]);
    }

    #[test]
    fn expansion_of_1_2() {
        let s = Ruleset::new(vec![1, 2]).unwrap();
        let r = expansion_set(&s, 10, 400).unwrap();
        assert!(r.certified);
        assert_eq!(r.adjoinable, vec![4, 5, 7, 8, 10]);
    }

    #[test]
    fn expansion_of_1_3_4() {
        let s = Ruleset::new(vec![1, 3, 4]).unwrap();
        let r = expansion_set(&s, 12, 400).unwrap();
        assert_eq!(r.adjoinable, vec![6, 8, 10, 11]);
    }

    #[test]
    fn tiny_horizon_leaves_candidates_unverified() {
        // Horizon 12 cannot certify {3,5} (needs preperiod + period + window
        // = 13), so matching candidates cannot be verified.
        let s = Ruleset::new(vec![3, 5]).unwrap();
        let r = expansion_set(&s, 25, 12).unwrap();
        assert!(!r.certified);
        assert!(r.adjoinable.is_empty());
        assert!(!r.unverified.is_empty());
    }

    #[test]
    fn austin_adjoin_examples() {
        let s = Ruleset::new(vec![3, 5]).unwrap();
        let r = austin_adjoin_check(&s, 800).unwrap();
        assert_eq!(r.period, 8);
        assert_eq!(r.verified, vec![3, 5]);

        let s = Ruleset::new(vec![2, 5, 7]).unwrap();
        let r = austin_adjoin_check(&s, 800).unwrap();
        assert_eq!(r.period, 22);
        assert_eq!(r.verified, vec![15, 17, 20]);

        let s = Ruleset::new(vec![4, 9, 14]).unwrap();
        let r = austin_adjoin_check(&s, 800).unwrap();
        assert_eq!(r.period, 18);
        assert_eq!(r.verified, vec![4, 9, 14]);
    }

    #[test]
    fn austin_requires_pure_periodicity() {
        // {2,4,7} has outcome preperiod 4; its nim-sequence also starts with
        // a preperiod, so the theorem's premise fails.
        let s = Ruleset::new(vec![2, 4, 7]).unwrap();
        assert!(matches!(
            austin_adjoin_check(&s, 800),
            Err(Error::NotPurelyPeriodic(_))
        ));
    }
}
