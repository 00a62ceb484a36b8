//! Exact closed-form upper bounds on (strong) nonrepetitive chromatic numbers.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A bound with the formula and inputs that produced it. `value` serializes
/// as a decimal string so that no precision is lost in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub formula: &'static str,
    pub parameters: BTreeMap<&'static str, i64>,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn at_least(name: &str, v: i64, min: i64) -> Result<u64> {
    if v < min {
        return Err(Error::InvalidArgument(format!("{name} must be at least {min}, got {v}")));
    }
    Ok(v as u64)
}

fn pow4(e: u64) -> BigUint {
    BigUint::from(1u8) << (2 * e)
}

pub fn bound_planar() -> BigUint {
    BigUint::from(768u32)
}

/// `256 * max(2g, 3)`.
pub fn bound_genus(g: i64) -> Result<BigUint> {
    let g = at_least("g", g, 0)?;
    Ok(BigUint::from(256u32) * BigUint::from((2 * g).max(3)))
}

/// `4^k`.
pub fn bound_treewidth(k: i64) -> Result<BigUint> {
    Ok(pow4(at_least("k", k, 0)?))
}

/// `k + 6k * 4^(11(k+1))`.
pub fn bound_almost_embeddable(k: i64) -> Result<BigUint> {
    let k = at_least("k", k, 1)?;
    Ok(BigUint::from(k) + BigUint::from(6 * k) * pow4(11 * (k + 1)))
}

/// `bound_almost_embeddable(k) * 4^r`.
pub fn bound_minor(k: i64, r: i64) -> Result<BigUint> {
    let c = bound_almost_embeddable(k)?;
    Ok(c * pow4(at_least("r", r, 1)?))
}

/// `max(bound_almost_embeddable(k), c') * 4^r`; `c'` is supplied because the
/// bounded-degree colouring it comes from has no explicit constant.
pub fn bound_topological_minor(k: i64, r: i64, c_prime: i64) -> Result<BigUint> {
    let c = bound_almost_embeddable(k)?.max(BigUint::from(at_least("c_prime", c_prime, 1)?));
    Ok(c * pow4(at_least("r", r, 1)?))
}

/// `c * 4^r`.
pub fn bound_rich(c: i64, r: i64) -> Result<BigUint> {
    bound_rich_exact(&BigUint::from(at_least("c", c, 1)?), r)
}

/// [`bound_rich`] for a per-bag colour count too large for `i64`.
pub fn bound_rich_exact(c: &BigUint, r: i64) -> Result<BigUint> {
    if *c == BigUint::ZERO {
        return Err(Error::InvalidArgument("c must be at least 1, got 0".into()));
    }
    Ok(c * pow4(at_least("r", r, 1)?))
}

pub const FORMULAS: [&str; 7] = [
    "planar",
    "genus",
    "treewidth",
    "almost_embeddable",
    "minor",
    "topological_minor",
    "rich",
];

/// Evaluates a formula by name; `params` must hold exactly the formula's inputs.
pub fn evaluate(formula: &str, params: &BTreeMap<&str, i64>) -> Result<BoundReport> {
    let (name, keys): (&'static str, &[&'static str]) = match formula {
        "planar" => ("planar", &[]),
        "genus" => ("genus", &["g"]),
        "treewidth" => ("treewidth", &["k"]),
        "almost_embeddable" => ("almost_embeddable", &["k"]),
        "minor" => ("minor", &["k", "r"]),
        "topological_minor" => ("topological_minor", &["k", "r", "c_prime"]),
        "rich" => ("rich", &["c", "r"]),
        other => return Err(Error::InvalidArgument(format!("unknown formula {other:?}"))),
    };
    if let Some(extra) = params.keys().find(|k| !keys.contains(k)) {
        return Err(Error::InvalidArgument(format!("{name} takes no parameter {extra:?}")));
    }
    let mut parameters = BTreeMap::new();
    for &key in keys {
        let v = *params
            .get(key)
            .ok_or_else(|| Error::InvalidArgument(format!("{name} needs parameter {key:?}")))?;
        parameters.insert(key, v);
    }
    let p = |k: &str| parameters[k];
    let value = match name {
        "planar" => bound_planar(),
        "genus" => bound_genus(p("g"))?,
        "treewidth" => bound_treewidth(p("k"))?,
        "almost_embeddable" => bound_almost_embeddable(p("k"))?,
        "minor" => bound_minor(p("k"), p("r"))?,
        "topological_minor" => bound_topological_minor(p("k"), p("r"), p("c_prime"))?,
        _ => bound_rich(p("c"), p("r"))?,
    };
    Ok(BoundReport {
        formula: name,
        parameters,
        value,
    })
}
