//! Deterministic JSON and CSV encodings of the library types, plus the
//! parser for user-supplied motive-table files.
//!
//! Determinism contract: all maps are emitted in sorted key order, class
//! monomials in ascending `(e2, tag)` order, and big integers as decimal
//! strings, so identical inputs produce byte-identical output across runs
//! and platforms. Ratios are fully reduced before rendering.

use dtmotive::dt::{MotiveTable, TableKind};
use dtmotive::motive::{EquivTag, MotiveClass};
use dtmotive::ratio::{display_ratio, MotiveRatio};
use dtmotive::series::Series;
use dtmotive::strata::StratumSpec;
use dtmotive::verify::CheckReport;
use dtmotive::Error;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize)]
struct Monomial {
    e2: i64,
    tag: &'static str,
    c: String,
}

pub fn class_value(m: &MotiveClass) -> Value {
    let monos: Vec<Monomial> = m
        .iter()
        .map(|(e2, tag, c)| Monomial { e2, tag: tag.name(), c: c.to_string() })
        .collect();
    serde_json::to_value(monos).expect("encoding cannot fail")
}

pub fn ratio_value(r: &MotiveRatio) -> Value {
    let r = r.reduced();
    json!({
        "num": class_value(r.num()),
        "den": class_value(r.den()),
    })
}

pub fn series_value(s: &Series) -> Value {
    json!({
        "twist": s.twist(),
        "order": s.order(),
        "coeffs": s.coeffs().iter().map(ratio_value).collect::<Vec<_>>(),
    })
}

pub fn spec_value(spec: &StratumSpec) -> Value {
    json!({
        "name": spec.name,
        "dim": spec.dim,
        "fixed": spec.fixed,
        "weights": spec.weights,
        "rhs_class": spec.rhs_class,
        "char2_sensitive": spec.char2_sensitive,
        "equation": spec
            .equation
            .term_strings()
            .into_iter()
            .map(|(mono, coef)| json!([mono, coef]))
            .collect::<Vec<_>>(),
    })
}

/// Encode a whole motive table in the file form accepted by
/// [`table_from_json`].
pub fn table_value(table: &MotiveTable) -> Value {
    let entries: Vec<Value> = table
        .kinds()
        .map(|(&(n, lambda, kind), class)| {
            json!({
                "n": n,
                "lambda": lambda,
                "kind": match kind {
                    TableKind::Fiber => "fiber",
                    TableKind::Bs => "bs",
                },
                "class": class_value(class),
            })
        })
        .collect();
    json!({ "m": table.letters(), "entries": entries })
}

pub fn report_value(r: &CheckReport) -> Value {
    json!({
        "check": r.name,
        "status": r.status.label(),
        "lhs": r.lhs,
        "rhs": r.rhs,
        "location": r.location,
    })
}

/// Render a class for CSV/plain output.
pub fn class_text(m: &MotiveClass) -> String {
    format!("{m}")
}

/// Render a ratio for CSV/plain output.
pub fn ratio_text(r: &MotiveRatio) -> String {
    display_ratio(&r.reduced())
}

fn table_err(message: String) -> Error {
    Error::ParseError { position: 0, message }
}

/// Decode a class from the same monomial-list shape that [`class_value`]
/// emits: `[{"e2": 4, "tag": "Mt", "c": "5"}, ...]`.
pub fn class_from_value(v: &Value) -> Result<MotiveClass, Error> {
    let arr = v.as_array().ok_or_else(|| table_err("class must be a monomial list".into()))?;
    let mut out = MotiveClass::zero();
    for mono in arr {
        let e2 = mono["e2"]
            .as_i64()
            .ok_or_else(|| table_err("monomial field \"e2\" must be an integer".into()))?;
        let tag = match mono["tag"].as_str() {
            Some("1") => EquivTag::Unit,
            Some("Mt") => EquivTag::Mtilde,
            Some("Mt2") => EquivTag::Mtilde2,
            other => {
                return Err(table_err(format!(
                    "monomial field \"tag\" must be \"1\", \"Mt\" or \"Mt2\", got {other:?}"
                )))
            }
        };
        let c: BigInt = mono["c"]
            .as_str()
            .ok_or_else(|| table_err("monomial field \"c\" must be a decimal string".into()))?
            .parse()
            .map_err(|e| table_err(format!("monomial coefficient: {e}")))?;
        out = out + MotiveClass::monomial(e2, tag, c);
    }
    Ok(out)
}

/// Parse a motive table from its JSON file form:
///
/// ```json
/// {
///   "m": 3,
///   "entries": [
///     {"n": 1, "lambda": 0, "kind": "fiber",
///      "class": [{"e2": 4, "tag": "1", "c": "1"}]},
///     ...
///   ]
/// }
/// ```
pub fn table_from_json(text: &str) -> Result<MotiveTable, Error> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| table_err(format!("table JSON: {e}")))?;
    let m = v["m"]
        .as_u64()
        .ok_or_else(|| table_err("table JSON: field \"m\" must be an integer".into()))?;
    let mut table = MotiveTable::new(m as u32);
    let entries = v["entries"]
        .as_array()
        .ok_or_else(|| table_err("table JSON: field \"entries\" must be a list".into()))?;
    for entry in entries {
        let n = entry["n"]
            .as_u64()
            .ok_or_else(|| table_err("table entry: field \"n\" must be an integer".into()))?;
        let lambda = entry["lambda"]
            .as_u64()
            .filter(|&l| l <= 2)
            .ok_or_else(|| table_err("table entry: field \"lambda\" must be 0, 1 or 2".into()))?;
        let kind = match entry["kind"].as_str() {
            Some("fiber") => TableKind::Fiber,
            Some("bs") => TableKind::Bs,
            other => {
                return Err(table_err(format!(
                    "table entry: field \"kind\" must be \"fiber\" or \"bs\", got {other:?}"
                )))
            }
        };
        table.insert(n as u32, lambda as u8, kind, class_from_value(&entry["class"])?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dtmotive::motive::EquivTag;
    use num_bigint::BigInt;

    #[test]
    fn classes_serialize_in_sorted_monomial_order() {
        let m = MotiveClass::from_l_poly(&[(3, 1), (0, -2)])
            + MotiveClass::monomial(4, EquivTag::Mtilde, BigInt::from(5));
        let v = class_value(&m);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"[{"c":"-2","e2":0,"tag":"1"},{"c":"5","e2":4,"tag":"Mt"},{"c":"1","e2":6,"tag":"1"}]"#
        );
    }

    #[test]
    fn ratio_rendering_round_trips_the_display_form() {
        let r = MotiveRatio::new(
            MotiveClass::from_l_poly(&[(2, 1)]),
            MotiveClass::from_l_poly(&[(1, 1), (0, -1)]),
        )
        .unwrap();
        let v = ratio_value(&r);
        assert_eq!(v["num"][0]["e2"], 4);
        assert_eq!(v["den"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn ratios_render_reduced() {
        // (L^2 - 1)/(L - 1) prints as its reduced form L + 1
        let r = MotiveRatio::new(
            MotiveClass::from_l_poly(&[(2, 1), (0, -1)]),
            MotiveClass::from_l_poly(&[(1, 1), (0, -1)]),
        )
        .unwrap();
        assert_eq!(ratio_text(&r), "L + 1");
        assert_eq!(ratio_value(&r)["den"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn table_files_round_trip() {
        let table = dtmotive::catalog::quantum_table();
        let text = serde_json::to_string(&table_value(&table)).unwrap();
        let parsed = table_from_json(&text).unwrap();
        for (&(n, lambda, kind), class) in table.kinds() {
            assert_eq!(parsed.get(n, lambda, kind).unwrap(), class);
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(table_from_json("{\"m\": 3}").is_err());
        assert!(table_from_json("{\"m\": 3, \"entries\": [{\"n\": 1}]}").is_err());
        let bad_tag = r#"{"m": 3, "entries": [{"n": 1, "lambda": 0, "kind": "fiber",
                           "class": [{"e2": 0, "tag": "Mt3", "c": "1"}]}]}"#;
        assert!(table_from_json(bad_tag).is_err());
    }
}
