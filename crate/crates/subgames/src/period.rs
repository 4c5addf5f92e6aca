//! Eventual-periodicity certificates via the window argument.
//!
//! Every value of an outcome or Grundy sequence is a function of the
//! preceding `max S` values (with the seed supplying the values of negative
//! positions). If the windows of length `max S` starting at `l` and at
//! `l + p` coincide, induction extends the match forever, so `(l, p)` is a
//! proof of eventual periodicity, not merely an observation over the
//! computed range.

use crate::ruleset::Ruleset;
use crate::{GrundySequence, OutcomeSequence, Result};

/// Horizon cap used by the auto-growing analysis helpers.
pub const DEFAULT_HORIZON_CAP: u64 = 10_000_000;

/// Default computation horizon for a ruleset: `4 * 2^min(max S, 20)`,
/// clamped to `cap` and floored at a small working minimum.
pub fn default_horizon(max_s: u64, cap: u64) -> u64 {
    let h = 4u64 << max_s.min(20);
    h.clamp(4 * max_s + 64, cap.max(4 * max_s + 64))
}

/// An eventual-periodicity certificate for a single sequence.
///
/// When `certified` is set, the sequence provably satisfies
/// `seq[x + period] = seq[x]` for every `x >= preperiod`, and both values are
/// minimal: no smaller period admits a window proof in the computed range,
/// and no smaller preperiod works for this period. When certification fails
/// within the horizon the best empirical `(preperiod, period)` is reported
/// with `certified = false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PeriodicityCertificate {
    pub preperiod: u64,
    pub period: u64,
    pub certified: bool,
    pub horizon: u64,
}

impl PeriodicityCertificate {
    pub fn is_pure(&self) -> bool {
        self.certified && self.preperiod == 0
    }
}

/// Z-array over an abstract sequence: `z[i]` = length of the longest common
/// prefix of the sequence and its suffix starting at `i`.
fn z_array(len: usize, eq: impl Fn(usize, usize) -> bool) -> Vec<u32> {
    let mut z = vec![0u32; len];
    if len == 0 {
        return z;
    }
    z[0] = len as u32;
    let (mut l, mut r) = (0usize, 0usize);
    for i in 1..len {
        let mut k = if i < r { (z[i - l] as usize).min(r - i) } else { 0 };
        while i + k < len && eq(k, i + k) {
            k += 1;
        }
        z[i] = k as u32;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

/// Certifies the sequence presented by `value(x)` for `x < horizon`, with
/// dependence window `window` (= `max S`).
///
/// The scan runs on the reversed sequence: `z[p] >= window` means the last
/// `z[p] + p` positions are `p`-periodic with at least one full window of
/// overlap, which is exactly the window proof. Scanning `p` in increasing
/// order yields the minimal certified period, and the preperiod
/// `horizon - p - z[p]` is minimal for it because `z` is maximal.
pub(crate) fn certify_fn(
    horizon: usize,
    window: u64,
    value: impl Fn(usize) -> u64,
) -> PeriodicityCertificate {
    let h = horizon;
    if h < 2 {
        return PeriodicityCertificate {
            preperiod: h as u64,
            period: 1,
            certified: false,
            horizon: h as u64,
        };
    }
    let rev = |i: usize| value(h - 1 - i);
    let z = z_array(h, |i, j| rev(i) == rev(j));
    let mut best = (1usize, 0u32);
    for p in 1..h {
        let zp = z[p];
        if zp as u64 >= window {
            return PeriodicityCertificate {
                preperiod: (h - p - zp as usize) as u64,
                period: p as u64,
                certified: true,
                horizon: h as u64,
            };
        }
        if zp > best.1 {
            best = (p, zp);
        }
    }
    PeriodicityCertificate {
        preperiod: (h - best.0 - best.1 as usize) as u64,
        period: best.0 as u64,
        certified: false,
        horizon: h as u64,
    }
}

/// Outcome and nim certificates computed together at a shared horizon.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Analysis {
    pub ruleset: Ruleset,
    pub outcome: PeriodicityCertificate,
    pub nim: PeriodicityCertificate,
}

/// Computes certified outcome and nim certificates, growing the horizon
/// (doubling from a small start) until both certify or `cap` is reached.
/// Certification failure at the cap is reported in the flags, never guessed.
pub fn analyze(rules: &Ruleset, cap: u64) -> Result<Analysis> {
    let outcome = analyze_outcome(rules, cap)?;
    let nim = analyze_nim(rules, cap)?;
    Ok(Analysis {
        ruleset: rules.clone(),
        outcome,
        nim,
    })
}

fn horizon_schedule(rules: &Ruleset, cap: u64) -> impl Iterator<Item = u64> {
    let start = (16 * rules.max_s() + 64).min(cap.max(1));
    let cap = cap.max(start);
    let mut h = start;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = h;
        if cur >= cap {
            done = true;
        }
        h = (h * 2).min(cap);
        Some(cur)
    })
}

/// Certified outcome certificate with horizon doubling up to `cap`.
pub fn analyze_outcome(rules: &Ruleset, cap: u64) -> Result<PeriodicityCertificate> {
    let mut last = None;
    for h in horizon_schedule(rules, cap) {
        let cert = OutcomeSequence::compute(rules, None, h)?.certify();
        if cert.certified {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.unwrap())
}

/// Certified nim certificate with horizon doubling up to `cap`.
pub fn analyze_nim(rules: &Ruleset, cap: u64) -> Result<PeriodicityCertificate> {
    let mut last = None;
    for h in horizon_schedule(rules, cap) {
        let cert = GrundySequence::compute(rules, h)?.certify();
        if cert.certified {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.unwrap())
}

/// Empirical best-fit `(preperiod, period)` for a finite line with no window
/// proof available. Requires at least `max(p, 16)` matched positions; returns
/// `None` when no period has that much support.
pub(crate) fn empirical_fit(
    len: usize,
    value: impl Fn(usize) -> u64,
) -> Option<PeriodicityCertificate> {
    if len < 2 {
        return None;
    }
    let rev = |i: usize| value(len - 1 - i);
    let z = z_array(len, |i, j| rev(i) == rev(j));
    for p in 1..len {
        let need = (p as u32).max(16);
        if z[p] >= need {
            return Some(PeriodicityCertificate {
                preperiod: (len - p - z[p] as usize) as u64,
                period: p as u64,
                certified: false,
                horizon: len as u64,
            });
        }
    }
    None
}
