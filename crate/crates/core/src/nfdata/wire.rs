use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{Map, Value};

use super::{FieldRecord, Regulator, FALLBACK_FACTOR_LIMIT};
use crate::arith;

const KEYS: [&str; 12] = [
    "label",
    "degree",
    "coeffs",
    "disc",
    "disc_factors",
    "galois",
    "r1",
    "r2",
    "h",
    "reg",
    "w",
    "parent_label",
];

fn int(v: &Value, what: &str) -> Result<BigInt, String> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| format!("{what}: {s:?} is not a decimal integer")),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("{what}: {n} is not an integer")),
        other => Err(format!("{what}: expected an integer, got {other}")),
    }
}

fn small<T: TryFrom<u64>>(v: &Value, what: &str) -> Result<T, String> {
    let b = int(v, what)?;
    b.to_u64()
        .and_then(|x| T::try_from(x).ok())
        .ok_or_else(|| format!("{what}: {b} out of range"))
}

fn text(v: &Value, what: &str) -> Result<String, String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| format!("{what}: expected a string"))
}

fn optional<'a>(obj: &'a Map<String, Value>, key: &str) -> Option<&'a Value> {
    obj.get(key).filter(|v| !v.is_null())
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, String> {
    optional(obj, key).ok_or_else(|| format!("missing {key}"))
}

fn factors(v: &Value) -> Result<Vec<(BigUint, u32)>, String> {
    let list = v.as_array().ok_or("disc_factors: expected an array")?;
    list.iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([p, e]) => {
                let p = int(p, "disc_factors prime")?;
                let p = p
                    .to_biguint()
                    .ok_or_else(|| format!("disc_factors: negative prime {p}"))?;
                Ok((p, small(e, "disc_factors exponent")?))
            }
            _ => Err("disc_factors: entries must be [prime, exponent]".to_string()),
        })
        .collect()
}

/// Parses one line. The flag is set when `disc_factors` was absent and
/// had to be computed here.
pub fn parse_record(line: &str) -> Result<(FieldRecord, bool), String> {
    let value: Value = serde_json::from_str(line).map_err(|e| format!("bad JSON: {e}"))?;
    let obj = value.as_object().ok_or("expected a JSON object")?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(format!("unknown key {k:?}"));
    }
    let label = text(required(obj, "label")?, "label")?;
    let coeffs = required(obj, "coeffs")?
        .as_array()
        .ok_or("coeffs: expected an array")?
        .iter()
        .map(|c| int(c, "coeffs"))
        .collect::<Result<Vec<_>, _>>()?;
    let disc = int(required(obj, "disc")?, "disc")?;
    let (disc_factors, derived) = match optional(obj, "disc_factors") {
        Some(v) => (factors(v)?, false),
        None => {
            let small_enough = disc
                .magnitude()
                .to_u64()
                .is_some_and(|m| m <= FALLBACK_FACTOR_LIMIT);
            if !small_enough {
                return Err(format!(
                    "missing disc_factors and |disc| exceeds {FALLBACK_FACTOR_LIMIT}"
                ));
            }
            let f = arith::factor_bigint(&disc).ok_or("disc is zero")?;
            (f, true)
        }
    };
    let reg = match optional(obj, "reg") {
        None => None,
        Some(Value::String(s)) => Some(Regulator::parse(s)?),
        Some(Value::Number(n)) => Some(Regulator::parse(&n.to_string())?),
        Some(other) => return Err(format!("reg: expected a decimal, got {other}")),
    };
    let record = FieldRecord {
        label,
        degree: small(required(obj, "degree")?, "degree")?,
        coeffs,
        disc,
        disc_factors,
        galois: text(required(obj, "galois")?, "galois")?,
        r1: small(required(obj, "r1")?, "r1")?,
        r2: small(required(obj, "r2")?, "r2")?,
        h: optional(obj, "h").map(|v| small(v, "h")).transpose()?,
        reg,
        w: optional(obj, "w").map(|v| small(v, "w")).transpose()?,
        parent_label: optional(obj, "parent_label")
            .map(|v| text(v, "parent_label"))
            .transpose()?,
    };
    Ok((record, derived))
}

#[derive(Serialize)]
struct Line<'a> {
    label: &'a str,
    degree: String,
    coeffs: Vec<String>,
    disc: String,
    disc_factors: Vec<[String; 2]>,
    galois: &'a str,
    r1: String,
    r2: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reg: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parent_label: Option<&'a str>,
}

/// Canonical single-line form; [`parse_record`] inverts it.
pub fn record_to_line(r: &FieldRecord) -> String {
    let line = Line {
        label: &r.label,
        degree: r.degree.to_string(),
        coeffs: r.coeffs.iter().map(ToString::to_string).collect(),
        disc: r.disc.to_string(),
        disc_factors: r
            .disc_factors
            .iter()
            .map(|(p, e)| [p.to_string(), e.to_string()])
            .collect(),
        galois: &r.galois,
        r1: r.r1.to_string(),
        r2: r.r2.to_string(),
        h: r.h.map(|h| h.to_string()),
        reg: r.reg.as_ref().map(Regulator::text),
        w: r.w.map(|w| w.to_string()),
        parent_label: r.parent_label.as_deref(),
    };
    serde_json::to_string(&line).expect("record serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_or_strings() {
        let line = r#"{"label":"q","degree":4,"coeffs":[-1,-1,0,0,1],"disc":-283,"disc_factors":[[283,1]],"galois":"4T5","r1":2,"r2":1,"h":null}"#;
        let (r, derived) = parse_record(line).unwrap();
        assert!(!derived);
        assert_eq!(r.coeffs[0], BigInt::from(-1));
        assert_eq!(r.h, None);
    }

    #[test]
    fn unknown_key() {
        let line = r#"{"label":"q","degree":"4","extra":1}"#;
        assert!(parse_record(line).unwrap_err().contains("unknown key"));
    }

    #[test]
    fn round_trip() {
        let line = r#"{"label":"4.2.283.1","degree":"4","coeffs":["-1","-1","0","0","1"],"disc":"-283","disc_factors":[["283","1"]],"galois":"4T5","r1":"2","r2":"1","h":"1","reg":"0.378199332460","w":"2"}"#;
        let (r, _) = parse_record(line).unwrap();
        assert_eq!(record_to_line(&r), line);
    }

    #[test]
    fn big_integers_as_strings() {
        let line = r#"{"label":"b","degree":"4","coeffs":["123456789012345678901234567890","0","0","0","1"],"disc":"-3","disc_factors":[["3","1"]],"galois":"4T5","r1":"0","r2":"2"}"#;
        let (r, _) = parse_record(line).unwrap();
        assert_eq!(r.coeffs[0].to_string(), "123456789012345678901234567890");
    }
}
