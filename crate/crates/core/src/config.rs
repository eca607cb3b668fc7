//! JSON formats: inner product family files and decompositions.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::germs::{parse, Denominator, Germ, GermTerm, LinearForm, Poly};
use crate::qlinalg::{InnerProductFamily, MatQ};
use crate::rat::parse_rat;
use crate::splitq::Decomposition;
use crate::{Error, Rat, Result};

/// `{"block": [["2", "1"], ["1", "2"]], "beyond": "identity"}`. Entries may be rational
/// strings or JSON integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QConfig {
    pub block: Vec<Vec<Value>>,
    #[serde(default = "identity_rule")]
    pub beyond: String,
}

fn identity_rule() -> String {
    "identity".into()
}

fn entry(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(BigInt::from(n.as_i64().expect("checked")))),
        other => Err(Error::Config(format!("block entries must be rational strings or integers, got {other}"))),
    }
}

impl QConfig {
    pub fn to_family(&self) -> Result<InnerProductFamily> {
        if self.beyond != "identity" {
            return Err(Error::Config(format!("unsupported extension rule {:?}", self.beyond)));
        }
        let rows = self
            .block
            .iter()
            .map(|row| row.iter().map(entry).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(InnerProductFamily::identity());
        }
        InnerProductFamily::from_block(MatQ::from_rows(rows)?)
    }

    pub fn from_family(q: &InnerProductFamily) -> Self {
        let block = q
            .block()
            .to_rows()
            .into_iter()
            .map(|row| row.iter().map(|c| Value::String(c.to_string())).collect())
            .collect();
        QConfig { block, beyond: identity_rule() }
    }
}

/// Parses a Q configuration file's contents.
pub fn load_q(json: &str) -> Result<InnerProductFamily> {
    let cfg: QConfig = serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))?;
    cfg.to_family()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub form: Vec<Value>,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarJson {
    pub num: String,
    pub den: Vec<FactorJson>,
}

/// `{"holomorphic": <poly>, "polar": [{"num": <poly>, "den": [{"form": [ints], "power": n}]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub holomorphic: String,
    pub polar: Vec<PolarJson>,
}

fn int_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(c.to_string()),
    }
}

fn int_entry(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(BigInt::from(n.as_i64().expect("checked")))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| Error::Config(format!("not an integer: {s:?}"))),
        other => Err(Error::Config(format!("form coefficients must be integers, got {other}"))),
    }
}

pub fn denominator_json(den: &Denominator) -> Vec<FactorJson> {
    den.iter()
        .map(|(l, m)| FactorJson { form: l.coeffs().iter().map(int_value).collect(), power: *m })
        .collect()
}

impl DecompositionJson {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        DecompositionJson {
            holomorphic: d.holomorphic().to_string(),
            polar: d
                .polar()
                .iter()
                .map(|p| PolarJson { num: p.numerator().to_string(), den: denominator_json(p.denominator()) })
                .collect(),
        }
    }

    /// Reassembles the germ `holomorphic + Σ polar` on `C^k`.
    pub fn to_germ(&self, k: usize) -> Result<Germ> {
        let mut terms = vec![GermTerm::holomorphic(parse_poly(&self.holomorphic, k)?)];
        for p in &self.polar {
            let num = parse_poly(&p.num, k)?;
            let mut den = Vec::with_capacity(p.den.len());
            for f in &p.den {
                let coeffs = f.form.iter().map(int_entry).collect::<Result<Vec<_>>>()?;
                if coeffs.len() != k {
                    return Err(Error::DimensionMismatch { expected: k, found: coeffs.len() });
                }
                let (scale, form) = LinearForm::canonicalize(&coeffs)?;
                if scale != Rat::from_integer(1.into()) {
                    return Err(Error::Config(format!("form {:?} is not in canonical primitive form", f.form)));
                }
                den.push((form, f.power));
            }
            terms.push(GermTerm::new(num, den)?);
        }
        Germ::from_terms(k, terms)
    }
}

fn parse_poly(text: &str, k: usize) -> Result<Poly> {
    let g = parse(text, k)?;
    if !g.is_polynomial() {
        return Err(Error::Config(format!("{text:?} is not a polynomial")));
    }
    Ok(g.polynomial_part())
}
