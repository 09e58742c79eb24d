//! Corner weight tables.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::diagram::Sign;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// `coef * W^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coef: i64,
    pub exp: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { coef: 1, exp: 0 };

    /// A zero coefficient is stored as `0 * W^0`.
    pub const fn new(coef: i64, exp: i64) -> Self {
        if coef == 0 {
            Self { coef: 0, exp: 0 }
        } else {
            Self { coef, exp }
        }
    }

    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(self.coef, self.exp)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef == 0 {
            return write!(f, "0");
        }
        write!(f, "{}", self.to_poly())
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let p: LaurentPoly = s.parse()?;
        match p.len() {
            0 => Ok(Monomial::new(0, 0)),
            1 => {
                let (exp, coef) = p.terms().next().unwrap();
                let coef = i64::try_from(coef.clone())
                    .map_err(|_| Error::Weights(format!("coefficient too large in {s:?}")))?;
                Ok(Monomial::new(coef, exp))
            }
            _ => Err(Error::Weights(format!("{s:?} is not a monomial"))),
        }
    }
}

/// A monomial for every (crossing sign, corner index).
///
/// Corner `k` is the sector between slots `k` and `k + 1`, where slot 0 is
/// the incoming under-strand and slots run counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightTable {
    positive: [Monomial; 4],
    negative: [Monomial; 4],
}

impl Default for WeightTable {
    fn default() -> Self {
        Self::mock_alexander()
    }
}

impl WeightTable {
    pub fn new(positive: [Monomial; 4], negative: [Monomial; 4]) -> Self {
        Self { positive, negative }
    }

    /// The shipped table.
    ///
    /// Turning a crossing so both strands point up, a positive crossing has
    /// corners (0, 1, 2, 3) = (right, top, left, bottom) and a negative one
    /// (bottom, right, top, left). Left and right carry 1. A positive
    /// crossing carries `W` on top and `-W^-1` below, a negative one `W^-1`
    /// on top and `-W` below.
    pub fn mock_alexander() -> Self {
        let one = Monomial::ONE;
        Self {
            positive: [one, Monomial::new(1, 1), one, Monomial::new(-1, -1)],
            negative: [Monomial::new(-1, 1), one, Monomial::new(1, -1), one],
        }
    }

    /// Every entry 1; the polynomial collapses to the state count.
    pub fn all_ones() -> Self {
        Self {
            positive: [Monomial::ONE; 4],
            negative: [Monomial::ONE; 4],
        }
    }

    /// Entries with coefficient in {-1, 0, 1} and exponent in `-2..=2`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut draw = || Monomial::new(rng.gen_range(-1..=1), rng.gen_range(-2..=2));
        Self {
            positive: [draw(), draw(), draw(), draw()],
            negative: [draw(), draw(), draw(), draw()],
        }
    }

    pub fn row(&self, sign: Sign) -> &[Monomial; 4] {
        match sign {
            Sign::Positive => &self.positive,
            Sign::Negative => &self.negative,
        }
    }

    pub fn get(&self, sign: Sign, corner: usize) -> Monomial {
        self.row(sign)[corner % 4]
    }

    pub fn set_row(&mut self, sign: Sign, row: [Monomial; 4]) {
        match sign {
            Sign::Positive => self.positive = row,
            Sign::Negative => self.negative = row,
        }
    }

    /// The two `weights` lines of the KDF format.
    pub fn to_kdf_lines(&self) -> String {
        let line = |tag: &str, row: &[Monomial; 4]| {
            let cells: Vec<String> = row.iter().map(|m| m.to_string()).collect();
            format!("weights {tag} {}\n", cells.join(" "))
        };
        line("+", &self.positive) + &line("-", &self.negative)
    }

    /// Parses a table made only of `weights` lines (comments allowed).
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = Self::default();
        let mut seen = [false; 2];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() || line == "kdf 1" {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] != "weights" {
                return Err(Error::Weights(format!("line {}: expected a weights line", i + 1)));
            }
            let (sign, row) = parse_weight_line(&tokens[1..])
                .map_err(|e| Error::Weights(format!("line {}: {e}", i + 1)))?;
            seen[sign as usize] = true;
            table.set_row(sign, row);
        }
        if seen != [true, true] {
            return Err(Error::Weights("both '+' and '-' rows are required".into()));
        }
        Ok(table)
    }
}

/// Parses the arguments of a `weights` line: `<+|-> m0 m1 m2 m3`.
pub(crate) fn parse_weight_line(args: &[&str]) -> Result<(Sign, [Monomial; 4]), String> {
    if args.len() != 5 {
        return Err(format!("expected a sign and 4 monomials, found {} fields", args.len()));
    }
    let sign = match args[0] {
        "+" => Sign::Positive,
        "-" => Sign::Negative,
        other => return Err(format!("unknown crossing sign {other:?}")),
    };
    let mut row = [Monomial::ONE; 4];
    for (k, tok) in args[1..].iter().enumerate() {
        row[k] = tok.parse().map_err(|e: Error| e.to_string())?;
    }
    Ok((sign, row))
}
