use orbitstrata::poly::format_rational;
use orbitstrata::Coefficient;
use serde::Serialize;
use serde_json::{Map, Number, Value};

/// Significant digits kept for floating-point output.
const DIGITS: usize = 12;

fn round(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every float in the document to 12 significant digits.
pub fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round(n.as_f64().unwrap_or(f64::NAN));
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

/// `"p/q"` for rationals, `{"a": "p/q", "b": "r/s"}` for `a + b√5`.
pub fn exact(c: &Coefficient) -> Value {
    if c.is_rational() {
        Value::String(format_rational(c.rational_part()))
    } else {
        let mut m = Map::new();
        m.insert("a".into(), Value::String(format_rational(c.rational_part())));
        m.insert("b".into(), Value::String(format_rational(c.sqrt5_part())));
        Value::Object(m)
    }
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).unwrap_or(Value::Null)
}

/// Decimal text with the same 12 significant digits as the JSON output.
pub fn num(x: f64) -> String {
    let r = round(x);
    if !r.is_finite() {
        format!("{x}")
    } else if r != 0.0 && !(1e-4..1e12).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn nums(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| num(x)).collect();
    format!("({})", parts.join(", "))
}
