use serde_json::{json, Value};

/// Rounds to `digits` significant digits; zero stays a positive zero.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// JSON number with 12 significant digits.
pub fn num(x: f64) -> Value {
    json!(round_sig(x, 12))
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn matrix(rows: &nalgebra::DMatrix<f64>) -> Value {
    Value::Array(
        rows.row_iter()
            .map(|r| Value::Array(r.iter().map(|&x| num(x)).collect()))
            .collect(),
    )
}

/// Human-readable number with 6 significant digits and no exponent noise.
pub fn human(x: f64) -> String {
    let r = round_sig(x, 6);
    if r.abs() < 1e-12 {
        return "0".into();
    }
    if r.abs() >= 1e-4 && r.abs() < 1e9 {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn tuple(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| human(x)).collect();
    format!("({})", parts.join(", "))
}
