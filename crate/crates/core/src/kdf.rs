//! The KDF v1 text format.
//!
//! ```text
//! kdf 1
//! # comment
//! x <id> <a> <b> <c> <d>        crossing, arcs counterclockwise from the incoming under-strand
//! loop <first_arc> <last_arc>   closed component
//! star tail | star head | star <arc> <L|R>
//! weights <+|-> m0 m1 m2 m3     optional corner weights
//! ```

use crate::diagram::{LinkoidDiagram, Side, StarPlacement};
use crate::error::{Error, Result};
use crate::weights::{parse_weight_line, Monomial, WeightTable};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn number<T: std::str::FromStr>(tok: &Token<'_>, line: usize, what: &str) -> Result<T> {
    tok.text
        .parse()
        .map_err(|_| syntax(line, tok.column, format!("expected {what}, found {:?}", tok.text)))
}

/// Parses a KDF document into a validated diagram.
pub fn parse_kdf(text: &str) -> Result<LinkoidDiagram> {
    let mut header = false;
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    let mut star = None;
    let mut rows: [Option<[Monomial; 4]>; 2] = [None, None];
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        let Some(head) = toks.first() else { continue };
        if !header {
            if toks.len() == 2 && head.text == "kdf" && toks[1].text == "1" {
                header = true;
                continue;
            }
            return Err(syntax(ln, head.column, "document must start with \"kdf 1\""));
        }
        let arity = |n: usize| -> Result<()> {
            if toks.len() == n + 1 {
                Ok(())
            } else {
                let col = toks.get(n + 1).map_or(content.trim_end().chars().count() + 1, |t| t.column);
                Err(syntax(ln, col, format!("{:?} takes {n} argument(s), found {}", head.text, toks.len() - 1)))
            }
        };
        match head.text {
            "x" => {
                arity(5)?;
                let id: i64 = number(&toks[1], ln, "a crossing id")?;
                let mut slots = [0usize; 4];
                for k in 0..4 {
                    slots[k] = number(&toks[k + 2], ln, "an arc number")?;
                }
                crossings.push((id, slots));
            }
            "loop" => {
                arity(2)?;
                let first: usize = number(&toks[1], ln, "an arc number")?;
                let last: usize = number(&toks[2], ln, "an arc number")?;
                loops.push((first, last));
            }
            "star" => {
                if star.is_some() {
                    return Err(syntax(ln, head.column, "star given twice"));
                }
                star = Some(match toks.len() {
                    2 if toks[1].text == "tail" => StarPlacement::Tail,
                    2 if toks[1].text == "head" => StarPlacement::Head,
                    3 => {
                        let arc = number(&toks[1], ln, "an arc number")?;
                        let side = match toks[2].text {
                            "L" => Side::Left,
                            "R" => Side::Right,
                            other => {
                                return Err(syntax(ln, toks[2].column, format!("expected L or R, found {other:?}")))
                            }
                        };
                        StarPlacement::Arc { arc, side }
                    }
                    _ => {
                        let col = toks.get(1).map_or(head.column, |t| t.column);
                        return Err(syntax(ln, col, "expected \"tail\", \"head\" or \"<arc> <L|R>\""));
                    }
                });
            }
            "weights" => {
                let args: Vec<&str> = toks[1..].iter().map(|t| t.text).collect();
                let (sign, row) = parse_weight_line(&args)
                    .map_err(|m| syntax(ln, toks.get(1).map_or(head.column, |t| t.column), m))?;
                let slot = &mut rows[sign as usize];
                if slot.is_some() {
                    return Err(syntax(ln, head.column, format!("weights {sign} given twice")));
                }
                *slot = Some(row);
            }
            other => return Err(syntax(ln, head.column, format!("unknown directive {other:?}"))),
        }
    }
    if !header {
        return Err(syntax(last_line.max(1), 1, "missing \"kdf 1\" header"));
    }
    let weights = match rows {
        [None, None] => None,
        [Some(p), Some(n)] => Some(WeightTable::new(p, n)),
        [Some(_), None] | [None, Some(_)] => {
            return Err(Error::Weights("a weight table needs both '+' and '-' rows".into()))
        }
    };
    Ok(LinkoidDiagram::new(crossings, loops, star.unwrap_or(StarPlacement::Tail))?.with_weights(weights))
}

/// Writes a diagram back to KDF; `parse_kdf(&to_kdf(d))` reproduces `d`.
pub fn to_kdf(d: &LinkoidDiagram) -> String {
    let mut out = String::from("kdf 1\n");
    for c in d.crossings() {
        let [a, b, e, f] = c.slots;
        out += &format!("x {} {a} {b} {e} {f}\n", c.label);
    }
    for (f, l) in d.loops() {
        out += &format!("loop {f} {l}\n");
    }
    out += &match d.star_placement() {
        StarPlacement::Tail => "star tail\n".to_string(),
        StarPlacement::Head => "star head\n".to_string(),
        StarPlacement::Arc { arc, side } => {
            format!("star {arc} {}\n", if side == Side::Left { "L" } else { "R" })
        }
    };
    if let Some(w) = d.weights() {
        out += &w.to_kdf_lines();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Sign;

    #[test]
    fn curl() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\nstar tail").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.arc_count(), 3);
        assert_eq!(d.universe().region_count(), 2);
        assert_eq!(d.crossings()[0].slots, [0, 1, 1, 2]);
    }

    #[test]
    fn trivial() {
        let d = parse_kdf("kdf 1\nstar tail").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.universe().region_count(), 1);
        let d = parse_kdf("# just a comment\nkdf 1\n").unwrap();
        assert_eq!(d.star_placement(), StarPlacement::Tail);
    }

    #[test]
    fn triple_arc() {
        let err = parse_kdf("kdf 1\nx 1 0 1 1 1\n").unwrap_err();
        assert!(matches!(err, Error::ArcMultiplicity { arc: 1, found: 3, .. }), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("kdf 2\n", 1, 1),
            ("kdf 1\nx 1 0 1 1\n", 2, 10),
            ("kdf 1\nx 1 0 a 1 2\n", 2, 7),
            ("kdf 1\n  bogus 3\n", 2, 3),
            ("kdf 1\nstar 0 Q\n", 2, 8),
            ("kdf 1\nstar tail\nstar head\n", 3, 1),
        ];
        for (text, line, column) in cases {
            match parse_kdf(text) {
                Err(Error::Syntax { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn weights_lines() {
        let d = parse_kdf("kdf 1\nx 1 0 1 1 2\nweights + W 1 -1 W^-1\nweights - 1 1 1 1\n").unwrap();
        let w = d.weights().unwrap();
        assert_eq!(w.get(Sign::Positive, 0), Monomial::new(1, 1));
        assert_eq!(w.get(Sign::Positive, 3), Monomial::new(1, -1));
        assert!(parse_kdf("kdf 1\nweights + 1 1 1 1\n").is_err());
        assert!(parse_kdf("kdf 1\nweights + 1 1 1\nweights - 1 1 1 1\n").is_err());
    }

    #[test]
    fn round_trip() {
        let src = "kdf 1\nx 1 0 3 1 4\nx 2 4 1 3 2\nloop 3 4\nstar 1 R\nweights + 1 -W^-1 1 W\nweights - W^-1 1 -W 1\n";
        let d = parse_kdf(src).unwrap();
        assert_eq!(to_kdf(&d), src);
    }
}
