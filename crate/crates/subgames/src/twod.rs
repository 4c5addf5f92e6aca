//! Two-dimensional subtraction games: bit-packed outcome grids, empirical
//! row/column periodicity, and PGM rendering.

use std::fmt;

use crate::period::{empirical_fit, PeriodicityCertificate};
use crate::{Error, Result};

/// Memory guard for grids, in cells.
pub const CELL_CAP: u128 = 1 << 31;

/// A finite set of 2-d move vectors `(a, b)` with `a, b >= 0`, `(a, b) != (0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Ruleset2D {
    moves: Vec<(u32, u32)>,
}

impl Ruleset2D {
    pub fn new(mut moves: Vec<(u32, u32)>) -> Result<Self> {
        if moves.is_empty() {
            return Err(Error::EmptyRuleset);
        }
        if moves.contains(&(0, 0)) {
            return Err(Error::ZeroMove);
        }
        moves.sort_unstable();
        for w in moves.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidParameter(format!(
                    "duplicate move vector ({},{})",
                    w[0].0, w[0].1
                )));
            }
        }
        Ok(Ruleset2D { moves })
    }

    pub fn moves(&self) -> &[(u32, u32)] {
        &self.moves
    }

    /// Embeds a 1-d ruleset as horizontal moves `(s, 0)`.
    pub fn from_one_dimensional(rules: &crate::Ruleset) -> Self {
        Ruleset2D {
            moves: rules.moves().iter().map(|&s| (s as u32, 0)).collect(),
        }
    }
}

impl fmt::Display for Ruleset2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Bit matrix of outcomes over `[0, width) x [0, height)`, bit set = P.
#[derive(Debug, Clone)]
pub struct OutcomeGrid {
    ruleset: Ruleset2D,
    width: u32,
    height: u32,
    words_per_row: usize,
    rows: Vec<u64>,
}

/// Computes the outcome grid row-major: `(x, y)` is N iff some move leads to
/// a P cell. Moves with `b >= 1` read earlier rows word-parallel; moves with
/// `b = 0` are resolved by the same intra-row refinement as the 1-d kernel.
pub fn outcomes2d(rules: &Ruleset2D, width: u32, height: u32) -> Result<OutcomeGrid> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroHorizon);
    }
    let cells = width as u128 * height as u128;
    if cells > CELL_CAP {
        return Err(Error::GridTooLarge {
            cells,
            cap: CELL_CAP,
        });
    }
    let wpr = (width as usize).div_ceil(64);
    let mut rows = vec![0u64; wpr * height as usize];
    let flat: Vec<(usize, usize)> = rules
        .moves()
        .iter()
        .map(|&(a, b)| (a as usize, b as usize))
        .collect();
    let intra: Vec<usize> = flat
        .iter()
        .filter(|&&(_, b)| b == 0)
        .map(|&(a, _)| a)
        .collect();
    let step = intra.iter().copied().min().unwrap_or(64).min(64);
    let mut n_row = vec![0u64; wpr];
    for y in 0..height as usize {
        n_row.fill(0);
        for &(a, b) in &flat {
            if b == 0 || b > y {
                continue;
            }
            let src = &rows[(y - b) * wpr..(y - b + 1) * wpr];
            or_shifted(&mut n_row, src, a);
        }
        let dst_start = y * wpr;
        if intra.is_empty() {
            for (wi, &n) in n_row.iter().enumerate() {
                rows[dst_start + wi] = !n;
            }
        } else {
            // Intra-row dependence: finalize `step` bits per round within
            // each word, exactly as in the 1-d kernel.
            for wi in 0..wpr {
                let mut n_ext = n_row[wi];
                for &a in &intra {
                    let (q, r) = (a / 64, a % 64);
                    let prev = |i: usize| -> u64 {
                        if wi < i { 0 } else { rows[dst_start + wi - i] }
                    };
                    if q == 0 {
                        n_ext |= prev(1) >> (64 - r);
                    } else if r == 0 {
                        n_ext |= prev(q);
                    } else {
                        n_ext |= (prev(q) << r) | (prev(q + 1) >> (64 - r));
                    }
                }
                let mut p_word = 0u64;
                let mut known: u64 = 0;
                loop {
                    let new_known = if step >= 64 {
                        !0
                    } else {
                        (known << step) | ((1u64 << step) - 1)
                    };
                    let mut n = n_ext;
                    for &a in &intra {
                        if a < 64 {
                            n |= p_word << a;
                        }
                    }
                    p_word = !n & new_known;
                    if new_known == !0 {
                        break;
                    }
                    known = new_known;
                }
                rows[dst_start + wi] = p_word;
            }
        }
        mask_row_tail(&mut rows[dst_start..dst_start + wpr], width as usize);
    }
    Ok(OutcomeGrid {
        ruleset: rules.clone(),
        width,
        height,
        words_per_row: wpr,
        rows,
    })
}

/// `dst |= src >> a` in cell order (bit `x` of dst gets bit `x - a` of src).
fn or_shifted(dst: &mut [u64], src: &[u64], a: usize) {
    let (q, r) = (a / 64, a % 64);
    for wi in (0..dst.len()).rev() {
        if wi < q {
            break;
        }
        let lo = src[wi - q];
        let v = if r == 0 {
            lo
        } else {
            let carry = if wi > q { src[wi - q - 1] >> (64 - r) } else { 0 };
            (lo << r) | carry
        };
        dst[wi] |= v;
    }
}

fn mask_row_tail(row: &mut [u64], width: usize) {
    let tail = width % 64;
    if tail != 0 {
        *row.last_mut().unwrap() &= (1u64 << tail) - 1;
    }
}

impl OutcomeGrid {
    pub fn ruleset(&self) -> &Ruleset2D {
        &self.ruleset
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn is_p(&self, x: u32, y: u32) -> bool {
        debug_assert!(x < self.width && y < self.height);
        let w = self.rows[y as usize * self.words_per_row + (x as usize >> 6)];
        (w >> (x & 63)) & 1 == 1
    }

    /// Number of P-cells.
    pub fn p_count(&self) -> u64 {
        self.rows.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Renders as a binary PGM: P = black (0), N = white (255), origin at the
    /// lower left with y increasing upward (rows are flipped at write time).
    pub fn to_pgm(&self) -> Vec<u8> {
        pgm_bytes(self.width, self.height, |x, y| {
            if self.is_p(x, y) {
                0
            } else {
                255
            }
        })
    }
}

/// Which line of the grid to examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Line {
    Row(u32),
    Col(u32),
}

/// Best empirical `(preperiod, period)` for one grid line. Always flagged
/// `certified = false`: the 2-d row/column periodicity theorem needs an
/// inductive window spanning neighboring rows that a finite grid cannot
/// carry, so no window proof is possible here. `None` when the line is too
/// short to support any period.
pub fn line_periodicity(grid: &OutcomeGrid, line: Line) -> Option<PeriodicityCertificate> {
    let (len, get): (usize, Box<dyn Fn(usize) -> u64>) = match line {
        Line::Row(y) => (
            grid.width as usize,
            Box::new(move |x| grid.is_p(x as u32, y) as u64),
        ),
        Line::Col(x) => (
            grid.height as usize,
            Box::new(move |y| grid.is_p(x, y as u32) as u64),
        ),
    };
    empirical_fit(len, get)
}

/// Builds a binary PGM (magic `P5`, maxval 255, one byte per pixel) from a
/// pixel function over grid coordinates. The grid origin is the lower-left
/// cell and y grows upward, so row `height - 1` is written first.
pub fn pgm_bytes(width: u32, height: u32, pixel: impl Fn(u32, u32) -> u8) -> Vec<u8> {
    let header = format!("P5\n{width} {height}\n255\n");
    let mut out = Vec::with_capacity(header.len() + width as usize * height as usize);
    out.extend_from_slice(header.as_bytes());
    for y in (0..height).rev() {
        for x in 0..width {
            out.push(pixel(x, y));
        }
    }
    out
}
