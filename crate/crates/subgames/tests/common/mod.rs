//! Naive reference implementations used as independent oracles by the
//! integration suites. These deliberately mirror the definitions, not the
//! production kernels.

use subgames::{Ruleset, Seed};

/// Direct outcome recursion with seed lookup (true = P).
pub fn naive_outcomes(rules: &Ruleset, seed: Option<&Seed>, horizon: usize) -> Vec<bool> {
    let max_s = rules.max_s() as i64;
    let mut out: Vec<bool> = Vec::with_capacity(horizon);
    for x in 0..horizon as i64 {
        let n = rules.moves().iter().any(|&s| {
            let y = x - s as i64;
            if y >= 0 {
                out[y as usize]
            } else if y >= -max_s {
                seed.map_or(false, |sd| sd.lookup(y).is_p())
            } else {
                false
            }
        });
        out.push(!n);
    }
    out
}

/// Direct mex recursion.
pub fn naive_grundy(rules: &Ruleset, horizon: usize) -> Vec<u64> {
    let mut vals: Vec<u64> = Vec::with_capacity(horizon);
    for x in 0..horizon {
        let opts: Vec<u64> = rules
            .moves()
            .iter()
            .filter(|&&s| s as usize <= x)
            .map(|&s| vals[x - s as usize])
            .collect();
        let mut v = 0;
        while opts.contains(&v) {
            v += 1;
        }
        vals.push(v);
    }
    vals
}

/// Smallest eventual period and onset of `seq` checked by direct scanning
/// (quadratic; only for small inputs). Returns `(preperiod, period)` of the
/// smallest `p` whose match region reaches back at least `window` positions
/// before the end.
pub fn naive_period<T: PartialEq>(seq: &[T], window: usize) -> Option<(usize, usize)> {
    let h = seq.len();
    for p in 1..h {
        let mut l = h - p;
        while l > 0 && seq[l - 1] == seq[l - 1 + p] {
            l -= 1;
        }
        if h - p >= l + window {
            return Some((l, p));
        }
    }
    None
}
