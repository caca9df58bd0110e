use diffcalc_core::report::Report;
use diffcalc_core::{Field, Mat};
use serde_json::{json, Map, Value};

pub fn matrix<F: Field>(m: &Mat<F>) -> Value {
    let f = m.field();
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|e| Value::String(f.format(e))).collect()))
            .collect(),
    )
}

/// Columns of `m` as a list of coordinate vectors.
pub fn columns<F: Field>(m: &Mat<F>) -> Value {
    let f = m.field();
    Value::Array(
        m.columns()
            .iter()
            .map(|c| Value::Array(c.iter().map(|e| Value::String(f.format(e))).collect()))
            .collect(),
    )
}

pub fn report(r: &Report) -> Value {
    Value::Array(
        r.violations
            .iter()
            .map(|v| json!({ "axiom": v.axiom, "witness": v.witness }))
            .collect(),
    )
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

/// Sorted keys, compact values, one line per top-level key.
pub fn text(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

pub fn violations_text(r: &Report) -> String {
    if r.is_ok() {
        "valid".to_string()
    } else {
        r.violations
            .iter()
            .map(|v| format!("violated: {} at {:?}", v.axiom, v.witness))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use diffcalc_core::Rationals;

    #[test]
    fn matrices_use_canonical_strings() {
        let m = Mat::from_i64(&Rationals, 1, 2, &[3, -1]).scale(&Rationals.parse("1/2").unwrap());
        assert_eq!(matrix(&m).to_string(), r#"[["3/2","-1/2"]]"#);
        assert_eq!(columns(&m).to_string(), r#"[["3/2"],["-1/2"]]"#);
    }

    #[test]
    fn objects_have_sorted_keys() {
        let v = object(vec![("b", json!(1)), ("a", json!("x"))]);
        assert_eq!(v.to_string(), r#"{"a":"x","b":1}"#);
        assert_eq!(text(&v), "a: x\nb: 1");
    }
}
