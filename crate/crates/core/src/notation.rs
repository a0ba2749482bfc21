//! Text forms for rules, cylinders, configurations, measures and rationals.
//!
//! * rule, inline: `m=4;l=1;coeffs=2,2,1`; structured (JSON): `{"m":4,"l":1,"coeffs":[2,2,1]}`
//! * cylinder: `a=0;word=0,0,0,0`
//! * configuration: `1,0,0,0`
//! * measure: `uniform` or `1/2,1/4,1/8,1/8`

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::{CyclicConfig, Word};
use crate::error::{Error, Result};
use crate::measure::{BernoulliVector, Cylinder, ExactRational};
use crate::modular::Modulus;
use crate::rule::LocalRule;

/// Serialized form of a [`LocalRule`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub m: u64,
    pub l: i64,
    pub coeffs: Vec<u64>,
}

impl RuleSpec {
    pub fn to_rule(&self) -> Result<LocalRule> {
        LocalRule::new(Modulus::new(self.m)?, self.l, self.coeffs.clone())
    }

    pub fn from_rule(rule: &LocalRule) -> Self {
        RuleSpec {
            m: rule.modulus().value(),
            l: rule.l(),
            coeffs: rule.coeffs().to_vec(),
        }
    }
}

impl From<&LocalRule> for RuleSpec {
    fn from(rule: &LocalRule) -> Self {
        RuleSpec::from_rule(rule)
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={};l={};coeffs={}", self.m, self.l, join(&self.coeffs))
    }
}

impl FromStr for RuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = key_values(s)?;
        let get = |key: &str| {
            fields
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Parse(format!("rule spec is missing `{key}`")))
        };
        Ok(RuleSpec {
            m: parse_num(get("m")?)?,
            l: parse_num(get("l")?)?,
            coeffs: parse_list(get("coeffs")?)?,
        })
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn key_values(s: &str) -> Result<Vec<(&str, &str)>> {
    s.split(';')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))
        })
        .collect()
}

fn parse_num<T: FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a valid integer")))
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',').map(parse_num).collect()
}

/// Reads a rule given inline (`m=...;l=...;coeffs=...`) or as a path to a JSON file.
pub fn parse_rule_arg(arg: &str) -> Result<LocalRule> {
    let spec: RuleSpec = if arg.contains('=') {
        arg.parse()?
    } else {
        let text = std::fs::read_to_string(Path::new(arg))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    spec.to_rule()
}

/// `a=0;word=0,0,0,0`, checked against the alphabet of `modulus`.
pub fn parse_cylinder(s: &str, modulus: &Modulus) -> Result<Cylinder> {
    let fields = key_values(s)?;
    let mut start = None;
    let mut symbols = None;
    for (k, v) in fields {
        match k {
            "a" => start = Some(parse_num(v)?),
            "word" => symbols = Some(parse_list(v)?),
            other => return Err(Error::Parse(format!("unknown cylinder field `{other}`"))),
        }
    }
    let word = Word::new(
        start.ok_or_else(|| Error::Parse("cylinder spec is missing `a`".into()))?,
        symbols.ok_or_else(|| Error::Parse("cylinder spec is missing `word`".into()))?,
    )?;
    word.check_alphabet(modulus)?;
    Ok(word)
}

pub fn format_cylinder(c: &Cylinder) -> String {
    format!("a={};word={}", c.start(), join(c.symbols()))
}

pub fn parse_config(s: &str, modulus: &Modulus) -> Result<CyclicConfig> {
    CyclicConfig::new(modulus.clone(), parse_list(s)?)
}

pub fn format_config(x: &CyclicConfig) -> String {
    join(x.cells())
}

pub fn parse_measure(s: &str, modulus: &Modulus) -> Result<BernoulliVector> {
    if s.trim() == "uniform" {
        return Ok(BernoulliVector::uniform(modulus));
    }
    let probs = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<ExactRational>()
                .map_err(|_| Error::Parse(format!("`{p}` is not a rational")))
        })
        .collect::<Result<Vec<_>>>()?;
    if probs.len() as u64 != modulus.value() {
        return Err(Error::InvalidMeasure(format!(
            "{} probabilities given for modulus {}",
            probs.len(),
            modulus.value()
        )));
    }
    BernoulliVector::new(probs)
}

/// Always `num/den`, including integers (`0/1`, `1/1`).
pub fn format_rational(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_spec_forms() {
        let spec: RuleSpec = "m=4;l=1;coeffs=2,2,1".parse().unwrap();
        assert_eq!(
            spec,
            RuleSpec {
                m: 4,
                l: 1,
                coeffs: vec![2, 2, 1]
            }
        );
        assert_eq!(spec.to_string(), "m=4;l=1;coeffs=2,2,1");
        let json: RuleSpec =
            serde_json::from_str(r#"{"m": 4, "l": 1, "coeffs": [2, 2, 1]}"#).unwrap();
        assert_eq!(json, spec);
        assert_eq!(
            " m = 12 ; l=-2; coeffs=6,1 ".parse::<RuleSpec>().unwrap().l,
            -2
        );
        assert!("m=4;coeffs=1".parse::<RuleSpec>().is_err());
        assert!("m=4;l=x;coeffs=1".parse::<RuleSpec>().is_err());
        assert!(parse_rule_arg("m=4;l=0;coeffs=0,0").is_err());
        assert!(parse_rule_arg("m=1;l=0;coeffs=0").is_err());
    }

    #[test]
    fn rule_from_file() {
        let dir = std::env::temp_dir().join(format!("lca-notation-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rule.json");
        std::fs::write(&path, r#"{"m":12,"l":0,"coeffs":[6,1]}"#).unwrap();
        let rule = parse_rule_arg(path.to_str().unwrap()).unwrap();
        assert_eq!(rule.coeffs(), &[6, 1]);
        assert!(matches!(
            parse_rule_arg(dir.join("missing").to_str().unwrap()),
            Err(Error::Io(_))
        ));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn cylinders_and_configs() {
        let md = Modulus::new(4).unwrap();
        let c = parse_cylinder("a=-2;word=0,3", &md).unwrap();
        assert_eq!((c.start(), c.symbols()), (-2, &[0u64, 3][..]));
        assert_eq!(format_cylinder(&c), "a=-2;word=0,3");
        assert!(parse_cylinder("a=0;word=4", &md).is_err());
        assert!(parse_cylinder("word=1", &md).is_err());
        let x = parse_config("1,0,0,0", &md).unwrap();
        assert_eq!(format_config(&x), "1,0,0,0");
        assert!(parse_config("1,5", &md).is_err());
    }

    #[test]
    fn measures_and_rationals() {
        let md = Modulus::new(4).unwrap();
        assert!(parse_measure("uniform", &md).unwrap().is_uniform());
        let v = parse_measure("1/2,1/4,1/8,1/8", &md).unwrap();
        assert_eq!(format_rational(v.prob(0)), "1/2");
        assert!(parse_measure("1/2,1/2", &md).is_err());
        assert!(parse_measure("1/2,1/4,1/8,1/4", &md).is_err());
        assert_eq!(
            format_rational(&ExactRational::from_integer(0.into())),
            "0/1"
        );
        assert_eq!(
            format_rational(&ExactRational::new(6.into(), 4.into())),
            "3/2"
        );
    }
}
