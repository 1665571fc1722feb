//! Form files: one TOML document per form.
//!
//! ```toml
//! type = "maass"                # or "holomorphic"
//! level = 1
//! spectral_parameter_t = 9.5337 # maass only, with parity
//! parity = 0
//! # weight = 12                 # holomorphic only
//! provenance = "where the numbers came from"
//!
//! [ap]
//! "2" = 1.5493
//! ```
//!
//! Holomorphic `ap` values are integers; values beyond 64 bits may be given
//! as decimal strings. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use toml::{Table, Value};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// A validated Maass form record, `a_p` unitary-normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct MaassFormData {
    pub level: u64,
    pub t: f64,
    pub parity: u8,
    pub ap: BTreeMap<u64, f64>,
    pub provenance: String,
}

/// A validated holomorphic record, `a_p` in the arithmetic normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphicFormData {
    pub level: u64,
    pub weight: u32,
    pub ap: BTreeMap<u64, BigInt>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FormRecord {
    Maass(MaassFormData),
    Holomorphic(HolomorphicFormData),
}

fn schema(path: &str) -> Error {
    Error::SchemaError(path.to_string())
}

fn take<'a>(t: &'a Table, key: &str) -> Result<&'a Value> {
    t.get(key).ok_or_else(|| schema(key))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_integer()
        .and_then(|i| u64::try_from(i).ok())
        .ok_or_else(|| schema(path))
}

fn as_f64(v: &Value, path: &str) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(schema(path)),
    }
}

fn as_bigint(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Integer(i) => Ok(BigInt::from(*i)),
        Value::String(s) => s.trim().parse().map_err(|_| schema(path)),
        _ => Err(schema(path)),
    }
}

fn check_keys(t: &Table, allowed: &[&str]) -> Result<()> {
    match t.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(k)),
        None => Ok(()),
    }
}

fn ap_table<T>(t: &Table, conv: impl Fn(&Value, &str) -> Result<T>) -> Result<BTreeMap<u64, T>> {
    let table = take(t, "ap")?.as_table().ok_or_else(|| schema("ap"))?;
    let mut out = BTreeMap::new();
    for (k, v) in table {
        let path = format!("ap.{k}");
        let p: u64 = k.trim().parse().map_err(|_| schema(&path))?;
        if !is_prime(p) {
            return Err(Error::InvariantError(format!("{path}: {p} is not prime")));
        }
        if out.insert(p, conv(v, &path)?).is_some() {
            return Err(Error::InvariantError(format!("{path}: prime listed twice")));
        }
    }
    Ok(out)
}

/// Parses and validates a form document.
pub fn parse_form_document(text: &str) -> Result<FormRecord> {
    let t: Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::SchemaError(format!("<document>: {}", e.message())))?;
    let kind = take(&t, "type")?.as_str().ok_or_else(|| schema("type"))?;
    let level = as_u64(take(&t, "level")?, "level")?;
    if level == 0 {
        return Err(Error::InvariantError("level must be positive".into()));
    }
    let provenance = take(&t, "provenance")?
        .as_str()
        .ok_or_else(|| schema("provenance"))?
        .to_string();
    match kind {
        "maass" => {
            check_keys(
                &t,
                &["type", "level", "spectral_parameter_t", "parity", "ap", "provenance"],
            )?;
            let tval = as_f64(take(&t, "spectral_parameter_t")?, "spectral_parameter_t")?;
            let parity = as_u64(take(&t, "parity")?, "parity")?;
            if parity > 1 {
                return Err(schema("parity"));
            }
            if !(tval > 0.0) || !tval.is_finite() {
                return Err(Error::InvariantError(format!(
                    "spectral_parameter_t must be positive, got {tval}"
                )));
            }
            Ok(FormRecord::Maass(MaassFormData {
                level,
                t: tval,
                parity: parity as u8,
                ap: ap_table(&t, as_f64)?,
                provenance,
            }))
        }
        "holomorphic" => {
            check_keys(&t, &["type", "level", "weight", "ap", "provenance"])?;
            let weight = as_u64(take(&t, "weight")?, "weight")?;
            if weight == 0 || weight > 1000 {
                return Err(Error::InvariantError(format!("weight {weight} out of range")));
            }
            Ok(FormRecord::Holomorphic(HolomorphicFormData {
                level,
                weight: weight as u32,
                ap: ap_table(&t, as_bigint)?,
                provenance,
            }))
        }
        _ => Err(schema("type")),
    }
}

pub fn load_form_file(path: &Path) -> Result<FormRecord> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_form_document(&text)
}

/// Serializes a record back to the document format.
pub fn to_document(rec: &FormRecord) -> String {
    let mut t = Table::new();
    let mut ap = Table::new();
    match rec {
        FormRecord::Maass(m) => {
            t.insert("type".into(), Value::String("maass".into()));
            t.insert("level".into(), Value::Integer(m.level as i64));
            t.insert("spectral_parameter_t".into(), Value::Float(m.t));
            t.insert("parity".into(), Value::Integer(m.parity as i64));
            t.insert("provenance".into(), Value::String(m.provenance.clone()));
            for (p, a) in &m.ap {
                ap.insert(p.to_string(), Value::Float(*a));
            }
        }
        FormRecord::Holomorphic(h) => {
            t.insert("type".into(), Value::String("holomorphic".into()));
            t.insert("level".into(), Value::Integer(h.level as i64));
            t.insert("weight".into(), Value::Integer(h.weight as i64));
            t.insert("provenance".into(), Value::String(h.provenance.clone()));
            for (p, a) in &h.ap {
                let v = i64::try_from(a.clone())
                    .map(Value::Integer)
                    .unwrap_or_else(|_| Value::String(a.to_string()));
                ap.insert(p.to_string(), v);
            }
        }
    }
    t.insert("ap".into(), Value::Table(ap));
    toml::to_string(&t).expect("tables always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAASS: &str = r#"
type = "maass"
level = 1
spectral_parameter_t = 9.5337
parity = 0
provenance = "user table"

[ap]
"2" = 1.5493
"3" = 0.2465
"#;

    #[test]
    fn maass_loads() {
        match parse_form_document(MAASS).unwrap() {
            FormRecord::Maass(m) => {
                assert_eq!(m.parity, 0);
                assert_eq!(m.ap.len(), 2);
                assert_eq!(m.provenance, "user table");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_parity() {
        let doc = MAASS.replace("parity = 0\n", "");
        assert_eq!(parse_form_document(&doc), Err(Error::SchemaError("parity".into())));
    }

    #[test]
    fn unknown_key_and_bad_t() {
        let doc = MAASS.replace("level = 1", "level = 1\ncolour = \"red\"");
        assert_eq!(parse_form_document(&doc), Err(Error::SchemaError("colour".into())));
        let doc = MAASS.replace("9.5337", "-1.0");
        assert!(matches!(parse_form_document(&doc), Err(Error::InvariantError(_))));
    }

    #[test]
    fn big_integers_as_strings() {
        let doc = r#"
type = "holomorphic"
level = 1
weight = 12
provenance = "x"
[ap]
"2" = -24
"3" = "252"
"#;
        let rec = parse_form_document(doc).unwrap();
        let again = parse_form_document(&to_document(&rec)).unwrap();
        assert_eq!(rec, again);
    }
}
