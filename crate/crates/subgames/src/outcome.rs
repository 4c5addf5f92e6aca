//! Bit-packed outcome sequences.
//!
//! P-positions are stored as set bits. The recurrence
//! `N(x) = OR over s of P(x - s)` is evaluated 64 positions at a time: each
//! move contributes a shifted window of already-computed words, and moves
//! smaller than the word size are resolved by refinement rounds that
//! finalize at least `min S` fresh bits each (bit `j` only depends on bits
//! `<= j - min S`).

use crate::period::{certify_fn, PeriodicityCertificate};
use crate::ruleset::{Outcome, Ruleset, Seed};
use crate::{Error, Result};

/// Outcomes of heap sizes `0 .. horizon`, with the seed (default all-`N`)
/// resolving positions `-max S .. -1`.
#[derive(Debug, Clone)]
pub struct OutcomeSequence {
    ruleset: Ruleset,
    seed: Option<Seed>,
    misere: bool,
    horizon: usize,
    pad_words: usize,
    words: Vec<u64>,
}

impl OutcomeSequence {
    /// Computes the outcome sequence under normal play. `seed = None` uses
    /// the default all-`N` seed (a heap below `min S` has only negative
    /// options, hence is a P-position).
    pub fn compute(rules: &Ruleset, seed: Option<&Seed>, horizon: u64) -> Result<Self> {
        if let Some(seed) = seed {
            seed.check_len(rules)?;
        }
        Self::compute_inner(rules, seed, horizon, 0)
    }

    /// Outcomes under the misère convention: a player unable to move wins,
    /// so every `x < min S` is an N-position and the normal recurrence
    /// applies beyond. Implemented by forcing the first `min S` positions.
    pub fn misere(rules: &Ruleset, horizon: u64) -> Result<Self> {
        let mut seq = Self::compute_inner(rules, None, horizon, rules.min_s())?;
        seq.misere = true;
        Ok(seq)
    }

    fn compute_inner(
        rules: &Ruleset,
        seed: Option<&Seed>,
        horizon: u64,
        forced_n: u64,
    ) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::ZeroHorizon);
        }
        let horizon = horizon as usize;
        let max_s = rules.max_s() as usize;
        let pad_words = max_s.div_ceil(64);
        let total_words = pad_words + horizon.div_ceil(64);
        let mut words = vec![0u64; total_words];

        // Paint the seed into the pad region: position -max_s + i at global
        // bit pad - max_s + i. Bits below stay 0 (N), and are never read.
        if let Some(seed) = seed {
            let base = pad_words * 64 - max_s;
            for (i, sym) in seed.symbols().iter().enumerate() {
                if sym.is_p() {
                    words[(base + i) >> 6] |= 1 << ((base + i) & 63);
                }
            }
        }

        let moves: Vec<usize> = rules.moves().iter().map(|&s| s as usize).collect();
        let intra: Vec<usize> = moves.iter().copied().filter(|&s| s < 64).collect();
        let step = rules.min_s().min(64) as usize;

        for wi in pad_words..total_words {
            // External contributions: windows fully determined by words < wi.
            let mut n_ext = 0u64;
            for &s in &moves {
                let (q, r) = (s >> 6, s & 63);
                if q == 0 {
                    // r >= 1 here; the (word << r) part is intra-word.
                    n_ext |= at(&words, wi as isize - 1) >> (64 - r);
                } else if r == 0 {
                    n_ext |= at(&words, wi as isize - q as isize);
                } else {
                    n_ext |= (at(&words, wi as isize - q as isize) << r)
                        | (at(&words, wi as isize - q as isize - 1) >> (64 - r));
                }
            }
            let force = forced_mask(wi, pad_words, forced_n as usize);
            // Refinement: each round finalizes `step` more bits, whose
            // intra-word sources are already final.
            let mut p_word = 0u64;
            let mut known: u64 = 0;
            loop {
                let new_known = if step >= 64 {
                    !0
                } else {
                    (known << step) | ((1u64 << step) - 1)
                };
                let mut n = n_ext;
                for &s in &intra {
                    n |= p_word << s;
                }
                p_word = !n & new_known & !force;
                if new_known == !0 {
                    break;
                }
                known = new_known;
            }
            words[wi] = p_word;
        }

        Ok(OutcomeSequence {
            ruleset: rules.clone(),
            seed: seed.cloned(),
            misere: forced_n > 0,
            horizon,
            pad_words,
            words,
        })
    }

    pub fn ruleset(&self) -> &Ruleset {
        &self.ruleset
    }

    pub fn seed(&self) -> Option<&Seed> {
        self.seed.as_ref()
    }

    pub fn is_misere(&self) -> bool {
        self.misere
    }

    pub fn len(&self) -> u64 {
        self.horizon as u64
    }

    pub fn is_empty(&self) -> bool {
        self.horizon == 0
    }

    /// Whether heap size `x` is a P-position.
    pub fn is_p(&self, x: u64) -> bool {
        debug_assert!((x as usize) < self.horizon);
        let g = self.pad_words * 64 + x as usize;
        (self.words[g >> 6] >> (g & 63)) & 1 == 1
    }

    pub fn get(&self, x: u64) -> Outcome {
        if self.is_p(x) {
            Outcome::P
        } else {
            Outcome::N
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Outcome> + '_ {
        (0..self.horizon as u64).map(|x| self.get(x))
    }

    /// The sequence as a `P`/`N` string (one byte per position).
    pub fn to_symbol_string(&self) -> String {
        self.iter().map(|o| if o.is_p() { 'P' } else { 'N' }).collect()
    }

    /// Minimal certified `(preperiod, period)`, or the best empirical pair
    /// flagged `certified = false` when the horizon has no window proof.
    pub fn certify(&self) -> PeriodicityCertificate {
        certify_fn(self.horizon, self.ruleset.max_s(), |x| {
            self.is_p(x as u64) as u64
        })
    }
}

#[inline]
fn at(words: &[u64], i: isize) -> u64 {
    if i < 0 {
        0
    } else {
        words[i as usize]
    }
}

fn forced_mask(wi: usize, pad_words: usize, forced_n: usize) -> u64 {
    if forced_n == 0 {
        return 0;
    }
    // Forced-N region covers global bits pad .. pad + forced_n.
    let lo = pad_words * 64;
    let hi = lo + forced_n;
    let (wlo, whi) = (wi * 64, wi * 64 + 64);
    if whi <= lo || wlo >= hi {
        return 0;
    }
    let from = lo.max(wlo) - wlo;
    let to = hi.min(whi) - wlo;
    let upper = if to == 64 { !0 } else { (1u64 << to) - 1 };
    upper & !((1u64 << from) - 1)
}

/// First position where the misère recursion and the seeded recursion with
/// seed `N^{min S} P^{max S - min S}` disagree, if any within the horizon.
/// The literature identifies the two; direct computation does not (the
/// correspondence is sensitive to seed orientation), so both are exposed.
pub fn misere_seed_divergence(rules: &Ruleset, horizon: u64) -> Result<Option<u64>> {
    let direct = OutcomeSequence::misere(rules, horizon)?;
    let seed = Seed::misere_claimed(rules);
    let seeded = OutcomeSequence::compute(rules, Some(&seed), horizon)?;
    Ok((0..horizon).find(|&x| direct.is_p(x) != seeded.is_p(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(rules: &Ruleset, seed: Option<&Seed>, horizon: usize) -> Vec<bool> {
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

    fn naive_misere(rules: &Ruleset, horizon: usize) -> Vec<bool> {
        let min_s = rules.min_s() as usize;
        let mut out: Vec<bool> = Vec::with_capacity(horizon);
        for x in 0..horizon {
            if x < min_s {
                out.push(false);
                continue;
            }
            let n = rules
                .moves()
                .iter()
                .any(|&s| x >= s as usize && out[x - s as usize]);
            out.push(!n);
        }
        out
    }

    #[test]
    fn paper_tables() {
        let table = [
            (vec![2, 5], "PPNNPNNPPNNPNNPPN"),
            (vec![2, 3, 5], "PPNNNNNPPNNNNNPPN"),
            (vec![2, 4, 7], "PPNNNNPNNPNNPNNPN"),
        ];
        for (moves, expect) in table {
            let s = Ruleset::new(moves).unwrap();
            let seq = OutcomeSequence::compute(&s, None, 17).unwrap();
            assert_eq!(seq.to_symbol_string(), expect, "{s}");
        }
        let s = Ruleset::new(vec![2, 5, 7]).unwrap();
        let seq = OutcomeSequence::compute(&s, None, 30).unwrap();
        assert_eq!(seq.to_symbol_string(), "PPNNPNNNNNPNNPPNNNNNNNPPNNPNNN");
    }

    #[test]
    fn single_move_alternates() {
        let s = Ruleset::new(vec![1]).unwrap();
        let seq = OutcomeSequence::compute(&s, None, 8).unwrap();
        assert_eq!(seq.to_symbol_string(), "PNPNPNPN");
    }

    #[test]
    fn matches_naive_across_move_shapes() {
        // Exercise sub-word, word-boundary, and multi-word move sizes.
        let cases = [
            vec![1],
            vec![1, 2],
            vec![2, 5, 7],
            vec![3, 8, 12],
            vec![63, 64],
            vec![64],
            vec![65, 130],
            vec![1, 64, 100],
            vec![5, 190],
        ];
        for moves in cases {
            let s = Ruleset::new(moves).unwrap();
            let seq = OutcomeSequence::compute(&s, None, 700).unwrap();
            let expect = naive(&s, None, 700);
            for x in 0..700u64 {
                assert_eq!(seq.is_p(x), expect[x as usize], "{s} at {x}");
            }
        }
    }

    #[test]
    fn seeded_matches_naive() {
        let s = Ruleset::new(vec![2, 7, 16]).unwrap();
        let seed = Seed::parse("NNNNNNNNNPNNNNNN").unwrap();
        let seq = OutcomeSequence::compute(&s, Some(&seed), 300).unwrap();
        let expect = naive(&s, Some(&seed), 300);
        for x in 0..300u64 {
            assert_eq!(seq.is_p(x), expect[x as usize], "at {x}");
        }
    }

    #[test]
    fn seed_length_checked() {
        let s = Ruleset::new(vec![2, 5]).unwrap();
        let seed = Seed::parse("NNP").unwrap();
        assert_eq!(
            OutcomeSequence::compute(&s, Some(&seed), 10).unwrap_err(),
            Error::SeedLength {
                expected: 5,
                actual: 3
            }
        );
    }

    #[test]
    fn zero_horizon_rejected() {
        let s = Ruleset::new(vec![2, 5]).unwrap();
        assert_eq!(
            OutcomeSequence::compute(&s, None, 0).unwrap_err(),
            Error::ZeroHorizon
        );
    }

    #[test]
    fn misere_examples() {
        let s = Ruleset::new(vec![2, 3]).unwrap();
        let seq = OutcomeSequence::misere(&s, 6).unwrap();
        assert_eq!(seq.to_symbol_string(), "NNPPNN");
        let s = Ruleset::new(vec![1]).unwrap();
        assert_eq!(
            OutcomeSequence::misere(&s, 6).unwrap().to_symbol_string(),
            "NPNPNP"
        );
        let s = Ruleset::new(vec![2, 5]).unwrap();
        assert_eq!(
            OutcomeSequence::misere(&s, 2).unwrap().to_symbol_string(),
            "NN"
        );
    }

    #[test]
    fn misere_matches_naive() {
        for moves in [vec![2, 3], vec![4, 9, 14], vec![1], vec![70, 100]] {
            let s = Ruleset::new(moves).unwrap();
            let seq = OutcomeSequence::misere(&s, 400).unwrap();
            let expect = naive_misere(&s, 400);
            for x in 0..400u64 {
                assert_eq!(seq.is_p(x), expect[x as usize], "{s} at {x}");
            }
        }
    }

    #[test]
    fn misere_diverges_from_claimed_seed() {
        let s = Ruleset::new(vec![2, 3]).unwrap();
        assert_eq!(misere_seed_divergence(&s, 100).unwrap(), Some(0));
    }

    #[test]
    fn certificates_for_paper_rulesets() {
        let cases = [
            (vec![2, 5], (0, 7)),
            (vec![2, 3, 5], (0, 7)),
            (vec![2, 5, 7], (0, 22)),
            (vec![2, 4, 7], (4, 3)),
        ];
        for (moves, (l, p)) in cases {
            let s = Ruleset::new(moves).unwrap();
            let seq = OutcomeSequence::compute(&s, None, 256).unwrap();
            let cert = seq.certify();
            assert!(cert.certified, "{s}");
            assert_eq!((cert.preperiod, cert.period), (l, p), "{s}");
        }
    }
}
