//! Exact rationals on the wire: integers or "p/q" strings, plus an advisory
//! six-significant-digit decimal rendering.

use std::fmt;
use std::str::FromStr;

use asymcoh::{Int, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Parses "p", "-p" or "p/q".
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let bad = || format!("not a rational: {s:?} (expected an integer or p/q)");
    match s.split_once('/') {
        None => Int::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
        Some((numer, denom)) => {
            let numer = Int::from_str(numer.trim()).map_err(|_| bad())?;
            let denom = Int::from_str(denom.trim()).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Comma-separated rationals, no spaces required.
pub fn parse_class(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',').map(parse_rat).collect()
}

/// Canonical exact rendering: "p" or "p/q" in lowest terms.
pub fn exact_string(r: &Rat) -> String {
    r.to_string()
}

/// Advisory decimal rendering with six significant digits.
pub fn decimal_string(r: &Rat) -> String {
    match r.to_f64() {
        Some(v) => format!("{v:.5e}"),
        None => {
            if r.is_negative() {
                "-inf".into()
            } else {
                "inf".into()
            }
        }
    }
}

/// An exact value paired with its advisory decimal rendering.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RatPair {
    pub exact: String,
    pub decimal: String,
}

impl RatPair {
    pub fn of(r: &Rat) -> Self {
        RatPair {
            exact: exact_string(r),
            decimal: decimal_string(r),
        }
    }
}

pub fn exact_vec(coords: &[Rat]) -> Vec<String> {
    coords.iter().map(exact_string).collect()
}

pub fn pair_vec(values: &[Rat]) -> Vec<RatPair> {
    values.iter().map(RatPair::of).collect()
}

/// A rational in a model document: a JSON integer or a "p/q" string.
#[derive(Clone, Debug)]
pub struct RatJson(pub Rat);

impl<'de> Deserialize<'de> for RatJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RatJson;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RatJson, E> {
                Ok(RatJson(Rat::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RatJson, E> {
                Ok(RatJson(Rat::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RatJson, E> {
                parse_rat(v).map(RatJson).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_any(V)
    }
}

impl Serialize for RatJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&exact_string(&self.0))
    }
}

pub fn unwrap_vec(v: &[RatJson]) -> Vec<Rat> {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn unwrap_matrix(m: &[Vec<RatJson>]) -> Vec<Vec<Rat>> {
    m.iter().map(|row| unwrap_vec(row)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("3").unwrap(), Rat::from_integer(3.into()));
        assert_eq!(parse_rat("-7/3").unwrap(), Rat::new((-7).into(), 3.into()));
        assert_eq!(parse_rat("4/6").unwrap(), Rat::new(2.into(), 3.into()));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(exact_string(&parse_rat("-4/6").unwrap()), "-2/3");
    }

    #[test]
    fn class_parsing() {
        let c = parse_class("1,-1/2,3").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(exact_string(&c[1]), "-1/2");
        assert!(parse_class("1,,2").is_err());
    }

    #[test]
    fn decimal_rendering_is_stable() {
        assert_eq!(decimal_string(&parse_rat("6").unwrap()), "6.00000e0");
        assert_eq!(decimal_string(&parse_rat("-1/3").unwrap()), "-3.33333e-1");
    }
}
