//! Exact JSON encodings of library values.
//!
//! Computed numbers (dimensions, coefficients, determinants) are decimal
//! strings so that nothing is lost in transport; structural fields such as
//! exponents, the discriminant and timings stay JSON numbers.

use serde_json::{json, Map, Value};

use quasinv::{MatrixQ, Polynomial, QuadraticNumber, Rational, SeriesTable};

pub fn int(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn quadratic(x: &QuadraticNumber) -> Value {
    json!({
        "a": rational(x.rational_part()),
        "b": rational(x.irrational_part()),
        "d": x.discriminant(),
    })
}

pub fn polynomial(p: &Polynomial) -> Value {
    Value::Array(p.terms().rev().map(|(e, c)| json!({ "exponents": e, "coefficient": quadratic(c) })).collect())
}

/// The nonzero entries as a degree → value object.
pub fn sparse_series(s: &SeriesTable) -> Value {
    Value::Object(s.nonzero().map(|(k, c)| (k.to_string(), int(c))).collect())
}

pub fn dense_series(s: &SeriesTable) -> Value {
    Value::Array(s.coeffs().iter().map(int).collect())
}

pub fn matrix(m: &MatrixQ) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(quadratic).collect())).collect())
}

fn scalar_text(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() != 3 {
        return None;
    }
    let (a, b, d) = (o.get("a")?.as_str()?, o.get("b")?.as_str()?, o.get("d")?.as_u64()?);
    let trim = |s: &str| s.strip_suffix("/1").unwrap_or(s).to_string();
    Some(if b.starts_with("0/") { trim(a) } else { format!("{} + {}·√{d}", trim(a), trim(b)) })
}

/// Flattened `path = value` lines carrying the same numbers as the JSON.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, "", v);
    out
}

fn walk(out: &mut String, path: &str, v: &Value) {
    if let Some(s) = scalar_text(v) {
        out.push_str(&format!("{path} = {s}\n"));
        return;
    }
    let child = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str(&format!("{path} = {{}}\n"));
            }
            for (k, x) in map {
                walk(out, &child(k), x);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{path} = []\n"));
            }
            for (i, x) in items.iter().enumerate() {
                walk(out, &child(&i.to_string()), x);
            }
        }
        Value::String(s) => out.push_str(&format!("{path} = {s}\n")),
        other => out.push_str(&format!("{path} = {other}\n")),
    }
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_numbers_are_exact() {
        let x = &QuadraticNumber::from_frac(1, 2) + &QuadraticNumber::sqrt(5);
        assert_eq!(quadratic(&x), json!({"a": "1/2", "b": "1/1", "d": 5}));
        assert_eq!(to_text(&json!({"x": quadratic(&x)})), "x = 1/2 + 1·√5\n");
    }

    #[test]
    fn text_flattens_paths() {
        let v = json!({"n": {"0": "1", "4": "2"}, "ok": true});
        assert_eq!(to_text(&v), "n.0 = 1\nn.4 = 2\nok = true\n");
    }
}
