//! Ruleset text parsing: `2,5,7` (one-dimensional), `(2,6),(3,3)`
//! (two-dimensional move vectors), `!2,4` (FES excluded set).

use std::fmt;

use subgames::{FesRuleset, Ruleset, Ruleset2D};

#[derive(Debug)]
pub struct ParseError {
    /// Byte position in the input text.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub enum Parsed {
    OneD(Ruleset),
    TwoD(Ruleset2D),
    Fes(FesRuleset),
}

#[cfg(test)]
impl Parsed {
    fn one_d(&self) -> Option<&Ruleset> {
        match self {
            Parsed::OneD(r) => Some(r),
            _ => None,
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        pos,
        msg: msg.into(),
    }
}

/// Parses one of the three ruleset syntaxes, returning canonical (sorted,
/// deduplicate-rejected) rulesets.
pub fn parse_ruleset(text: &str) -> Result<Parsed, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(err(0, "empty ruleset text"));
    }
    if let Some(rest) = trimmed.strip_prefix('!') {
        let moves = parse_move_list(rest, 1)?;
        return FesRuleset::new(moves)
            .map(Parsed::Fes)
            .map_err(|e| err(0, e.to_string()));
    }
    if trimmed.starts_with('(') {
        return parse_vectors(trimmed).map(Parsed::TwoD);
    }
    let moves = parse_move_list(trimmed, 0)?;
    Ruleset::new(moves)
        .map(Parsed::OneD)
        .map_err(|e| err(0, e.to_string()))
}

fn parse_move_list(text: &str, base: usize) -> Result<Vec<u64>, ParseError> {
    let mut moves = Vec::new();
    let mut pos = base;
    for tok in text.split(',') {
        let t = tok.trim();
        if t.is_empty() {
            return Err(err(pos, "empty move token"));
        }
        let v: u64 = t
            .parse()
            .map_err(|_| err(pos, format!("bad move token {t:?}")))?;
        if v == 0 {
            return Err(err(pos, "moves must be positive"));
        }
        if moves.contains(&v) {
            return Err(err(pos, format!("duplicate move {v}")));
        }
        moves.push(v);
        pos += tok.len() + 1;
    }
    Ok(moves)
}

fn parse_vectors(text: &str) -> Result<Ruleset2D, ParseError> {
    let bytes = text.as_bytes();
    let mut moves = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(err(i, "expected '('"));
        }
        let close = text[i..]
            .find(')')
            .map(|j| i + j)
            .ok_or_else(|| err(i, "unclosed '('"))?;
        let inner = &text[i + 1..close];
        let (a_txt, b_txt) = inner
            .split_once(',')
            .ok_or_else(|| err(i + 1, "expected 'a,b' inside parentheses"))?;
        let a: u32 = a_txt
            .trim()
            .parse()
            .map_err(|_| err(i + 1, format!("bad coordinate {a_txt:?}")))?;
        let b: u32 = b_txt
            .trim()
            .parse()
            .map_err(|_| err(i + 1, format!("bad coordinate {b_txt:?}")))?;
        if (a, b) == (0, 0) {
            return Err(err(i, "move vector (0,0) is not allowed"));
        }
        if moves.contains(&(a, b)) {
            return Err(err(i, format!("duplicate move vector ({a},{b})")));
        }
        moves.push((a, b));
        i = close + 1;
        if i < bytes.len() {
            if bytes[i] != b',' {
                return Err(err(i, "expected ',' between vectors"));
            }
            i += 1;
        }
    }
    Ruleset2D::new(moves).map_err(|e| err(0, e.to_string()))
}

/// Inclusive `A..B` ranges for `--range`.
pub fn parse_range(text: &str) -> Result<(u64, u64), ParseError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| err(0, "expected A..B"))?;
    let lo: u64 = a.trim().parse().map_err(|_| err(0, "bad range start"))?;
    let hi: u64 = b
        .trim()
        .parse()
        .map_err(|_| err(a.len() + 2, "bad range end"))?;
    if lo > hi {
        return Err(err(0, "range start exceeds end"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_syntaxes() {
        assert!(matches!(parse_ruleset("2,5,7").unwrap(), Parsed::OneD(_)));
        assert!(matches!(parse_ruleset("!2,4").unwrap(), Parsed::Fes(_)));
        assert!(matches!(
            parse_ruleset("(2,6),(3,3)").unwrap(),
            Parsed::TwoD(_)
        ));
    }

    #[test]
    fn duplicate_rejected_with_position() {
        let e = parse_ruleset("2,2,3").unwrap_err();
        assert!(e.msg.contains("duplicate"));
        assert_eq!(e.pos, 2);
        let e = parse_ruleset("1,x,3").unwrap_err();
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn canonical_sorting_roundtrip() {
        let Parsed::OneD(r) = parse_ruleset("7,2,5").unwrap() else {
            panic!()
        };
        assert_eq!(r.to_string(), "2,5,7");
        let again = parse_ruleset(&r.to_string()).unwrap();
        assert_eq!(again.one_d().unwrap(), &r);
    }

    #[test]
    fn vector_errors() {
        assert!(parse_ruleset("(0,0)").is_err());
        assert!(parse_ruleset("(1,2),(1,2)").is_err());
        assert!(parse_ruleset("(1,2)(3,4)").is_err());
        assert!(parse_ruleset("(1,2").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..7").unwrap(), (3, 7));
        assert!(parse_range("7..3").is_err());
        assert!(parse_range("3-7").is_err());
    }
}
