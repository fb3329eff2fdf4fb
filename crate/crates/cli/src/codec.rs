//! Text encoding of scalars: rationals as `"p/q"` strings, complex numbers as
//! `[re, im]` pairs of decimal strings.

use std::str::FromStr;

use gaugeform::{Complex, Rational, Scalar};
use serde::{Deserialize, Serialize};

/// Scalar field tag of a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rational,
    Complex,
}

/// One serialized scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Pair([String; 2]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactTag {
    #[serde(rename = "exact")]
    Exact,
}

/// `"exact"` for rational output, otherwise the working precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Precision {
    Bits(u32),
    Exact(ExactTag),
}

impl Precision {
    pub const EXACT: Precision = Precision::Exact(ExactTag::Exact);
}

/// Scalars that can be written to and read from documents.
pub trait Codec: Scalar {
    const FIELD: Field;

    fn encode(&self) -> Entry;

    fn decode(entry: &Entry, ctx: Self::Context) -> Result<Self, String>;

    fn precision(ctx: Self::Context) -> Precision;
}

impl Codec for Rational {
    const FIELD: Field = Field::Rational;

    fn encode(&self) -> Entry {
        Entry::Text(self.to_string())
    }

    fn decode(entry: &Entry, _ctx: ()) -> Result<Self, String> {
        match entry {
            Entry::Text(s) => parse_rational(s),
            Entry::Pair(_) => Err("expected a rational string, found a complex pair".into()),
        }
    }

    fn precision(_ctx: ()) -> Precision {
        Precision::EXACT
    }
}

impl Codec for Complex {
    const FIELD: Field = Field::Complex;

    fn encode(&self) -> Entry {
        let (re, im) = self.to_decimal_strings();
        Entry::Pair([unsign_zero(re), unsign_zero(im)])
    }

    /// Accepts `[re, im]` or a bare real decimal.
    fn decode(entry: &Entry, prec: u32) -> Result<Self, String> {
        let (re, im) = match entry {
            Entry::Text(s) => (s.as_str(), "0"),
            Entry::Pair([re, im]) => (re.as_str(), im.as_str()),
        };
        Complex::parse(re, im, prec).map_err(|e| e.to_string())
    }

    fn precision(prec: u32) -> Precision {
        Precision::Bits(prec)
    }
}

fn unsign_zero(s: String) -> String {
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// `"p/q"` or `"p"` with a nonzero denominator; the result is in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        if den.trim_start_matches('+').chars().all(|c| c == '0') {
            return Err(format!("zero denominator in {s:?}"));
        }
    }
    Rational::from_str(t).map_err(|e| format!("bad rational {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_written_in_lowest_terms() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(q.encode(), Entry::Text("-3/2".into()));
        assert_eq!(parse_rational("7").unwrap().encode(), Entry::Text("7".into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/-2").is_err());
    }

    #[test]
    fn precision_tags_serialize_plainly() {
        assert_eq!(serde_json::to_string(&Precision::EXACT).unwrap(), "\"exact\"");
        assert_eq!(serde_json::to_string(&Precision::Bits(256)).unwrap(), "256");
        assert_eq!(serde_json::from_str::<Precision>("\"exact\"").unwrap(), Precision::EXACT);
        assert!(serde_json::from_str::<Precision>("\"approx\"").is_err());
    }

    #[test]
    fn complex_accepts_bare_reals() {
        let z = Complex::decode(&Entry::Text("0.5".into()), 64).unwrap();
        assert_eq!(z, Complex::from_f64(64, 0.5, 0.0));
        assert!(Complex::decode(&Entry::Text("nan".into()), 64).is_err());
    }
}
