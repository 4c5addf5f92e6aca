//! Nim-value (Grundy) sequences via the mex recurrence.

use crate::period::{certify_fn, PeriodicityCertificate};
use crate::ruleset::Ruleset;
use crate::{Error, Result};

/// Nim-values of heap sizes `0 .. horizon`. Values are bounded by `|S|`
/// (each position has at most `|S|` options).
#[derive(Debug, Clone)]
pub struct GrundySequence {
    ruleset: Ruleset,
    values: Vec<u16>,
}

impl GrundySequence {
    pub fn compute(rules: &Ruleset, horizon: u64) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::ZeroHorizon);
        }
        let horizon = horizon as usize;
        let moves: Vec<usize> = rules.moves().iter().map(|&s| s as usize).collect();
        let k = moves.len();
        let mut values = vec![0u16; horizon];
        // mex over at most k option values: a stamped scratch table of size
        // k + 1 gives constant-time marking without clearing.
        let mut stamp = vec![u32::MAX; k + 1];
        for x in 0..horizon {
            for &s in &moves {
                if s > x {
                    break;
                }
                let v = values[x - s] as usize;
                if v <= k {
                    stamp[v] = x as u32;
                }
            }
            let mex = (0..=k as u16).find(|&v| stamp[v as usize] != x as u32).unwrap();
            values[x] = mex;
        }
        Ok(GrundySequence {
            ruleset: rules.clone(),
            values,
        })
    }

    pub fn ruleset(&self) -> &Ruleset {
        &self.ruleset
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    pub fn get(&self, x: u64) -> u16 {
        self.values[x as usize]
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Minimal certified `(preperiod, period)` via the window proof, or the
    /// best empirical pair with `certified = false`.
    pub fn certify(&self) -> PeriodicityCertificate {
        certify_fn(self.values.len(), self.ruleset.max_s(), |x| {
            self.values[x] as u64
        })
    }

    /// First violation of Ferguson's pairing `G(x) = 1  <=>  G(x - min S) = 0`
    /// for `x >= min S`, if any. Always `None` for correct sequences; exposed
    /// as a cross-check hook.
    pub fn ferguson_violation(&self) -> Option<u64> {
        let a = self.ruleset.min_s() as usize;
        (a..self.values.len())
            .find(|&x| (self.values[x] == 1) != (self.values[x - a] == 0))
            .map(|x| x as u64)
    }

    /// The period word `values[l .. l + p]` for a certificate.
    pub fn period_word(&self, cert: &PeriodicityCertificate) -> Vec<u16> {
        let l = cert.preperiod as usize;
        let p = cert.period as usize;
        self.values[l..l + p].to_vec()
    }
}
