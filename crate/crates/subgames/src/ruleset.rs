//! Rulesets, outcome symbols, and terminal seeds.

use std::fmt;

use crate::{Error, Result};

/// Outcome of a position: `P` if the previous player wins (the player to move
/// loses with perfect play), `N` if the current player wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Outcome {
    P,
    N,
}

impl Outcome {
    pub fn is_p(self) -> bool {
        self == Outcome::P
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

/// A finite subtraction ruleset: a strictly sorted set of positive move sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Ruleset {
    moves: Vec<u64>,
}

impl Ruleset {
    /// Builds a ruleset from move sizes. Moves are sorted; empty sets, zero
    /// moves, and duplicates are rejected.
    pub fn new(mut moves: Vec<u64>) -> Result<Self> {
        if moves.is_empty() {
            return Err(Error::EmptyRuleset);
        }
        if moves.contains(&0) {
            return Err(Error::ZeroMove);
        }
        moves.sort_unstable();
        for w in moves.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMove(w[0]));
            }
        }
        Ok(Ruleset { moves })
    }

    pub fn moves(&self) -> &[u64] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest move `s_k`.
    pub fn max_s(&self) -> u64 {
        *self.moves.last().unwrap()
    }

    /// Smallest move `s_1`.
    pub fn min_s(&self) -> u64 {
        self.moves[0]
    }

    pub fn contains(&self, m: u64) -> bool {
        self.moves.binary_search(&m).is_ok()
    }

    pub fn gcd(&self) -> u64 {
        self.moves.iter().copied().fold(0, gcd)
    }

    /// The ruleset with one extra move adjoined (no-op if already present).
    pub fn with_move(&self, c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::ZeroMove);
        }
        let mut moves = self.moves.clone();
        if let Err(pos) = moves.binary_search(&c) {
            moves.insert(pos, c);
        }
        Ok(Ruleset { moves })
    }

    /// Austin symmetry: the smallest `p` with `p - s ∈ S` for every `s ∈ S`,
    /// if one exists. Applying the condition to `max S` forces
    /// `p >= min S + max S`, and to `min S` forces `p <= min S + max S`,
    /// so only `p = min S + max S` can work.
    pub fn symmetry_period(&self) -> Option<u64> {
        let p = self.min_s() + self.max_s();
        self.moves
            .iter()
            .all(|&s| self.contains(p - s))
            .then_some(p)
    }

    /// Flammenkamp max-symmetry: for all `1 <= s <= max S`, if
    /// `max S - s ∈ S` then `s ∈ S`. Equivalently `S \ {max S}` is closed
    /// under `s -> max S - s`.
    pub fn is_max_symmetric(&self) -> bool {
        let m = self.max_s();
        self.moves
            .iter()
            .filter(|&&s| s < m)
            .all(|&s| self.contains(m - s))
    }

    /// Whether every consecutive gap is at most `s_1` (the short-period law
    /// premise: outcomes are then `(P^{s_1} N^{max S})^∞`).
    pub fn has_small_gaps(&self) -> bool {
        self.moves
            .windows(2)
            .all(|w| w[1] - w[0] <= self.moves[0])
    }
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
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

/// A terminal seed: prescribed outcomes for the positions `-max S .. -1`.
/// `symbols[i]` is the outcome of position `-max S + i`, so the leftmost
/// symbol belongs to the most negative position.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Seed {
    symbols: Vec<Outcome>,
}

impl Seed {
    pub fn new(symbols: Vec<Outcome>) -> Self {
        Seed { symbols }
    }

    /// The default seed of all `N`, which reproduces standard normal play.
    pub fn all_n(len: u64) -> Self {
        Seed {
            symbols: vec![Outcome::N; len as usize],
        }
    }

    /// The seed `N^{min S} P^{max S - min S}` that the literature associates
    /// with misère play (see [`crate::outcome::misere_outcomes`] for the
    /// direct recursion; the two disagree in general).
    pub fn misere_claimed(rules: &Ruleset) -> Self {
        let mut symbols = vec![Outcome::N; rules.min_s() as usize];
        symbols.resize(rules.max_s() as usize, Outcome::P);
        Seed { symbols }
    }

    /// Parses a string of `P`/`N` characters, leftmost = position `-max S`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                'P' | 'p' => symbols.push(Outcome::P),
                'N' | 'n' => symbols.push(Outcome::N),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "seed symbol must be P or N, got {other:?}"
                    )))
                }
            }
        }
        Ok(Seed { symbols })
    }

    pub fn len(&self) -> u64 {
        self.symbols.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Outcome] {
        &self.symbols
    }

    /// Outcome of negative position `pos` (`pos < 0`, `pos >= -max S`).
    pub fn lookup(&self, pos: i64) -> Outcome {
        self.symbols[(pos + self.symbols.len() as i64) as usize]
    }

    pub fn check_len(&self, rules: &Ruleset) -> Result<()> {
        if self.len() != rules.max_s() {
            return Err(Error::SeedLength {
                expected: rules.max_s(),
                actual: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
