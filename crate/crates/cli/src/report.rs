//! Report serialization helpers: exact rationals as "num/den" strings and
//! a flat CSV rendering of the JSON envelope.

use serde_json::{json, Value};

use pqlab::bounds::PQParams;
use pqlab::geometry::{rat_to_string, Point2, Rat};

pub fn rat_json(r: &Rat) -> Value {
    json!(rat_to_string(r))
}

pub fn pq_params_json(p: &PQParams) -> Value {
    json!({ "p": p.p, "q": p.q, "d": p.d })
}

pub fn points_json(points: &[Point2]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| json!([rat_to_string(&p.x), rat_to_string(&p.y)]))
            .collect(),
    )
}

/// key,value lines with dotted paths; arrays index by position. Values
/// containing commas or quotes are quoted CSV-style.
pub fn flatten_csv(value: &Value) -> String {
    let mut out = String::from("key,value\n");
    walk(value, String::new(), &mut out);
    out
}

fn walk(value: &Value, path: String, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let next = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                walk(v, next, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(v, format!("{path}.{i}"), out);
            }
        }
        leaf => {
            let text = match leaf {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let escaped = if text.contains(',') || text.contains('"') || text.contains('\n') {
                format!("\"{}\"", text.replace('"', "\"\""))
            } else {
                text
            };
            out.push_str(&path);
            out.push(',');
            out.push_str(&escaped);
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_flattening() {
        let v = json!({
            "a": 1,
            "b": { "c": "x,y", "d": [true, null] },
        });
        let csv = flatten_csv(&v);
        assert!(csv.contains("a,1\n"));
        assert!(csv.contains("b.c,\"x,y\"\n"));
        assert!(csv.contains("b.d.0,true\n"));
        assert!(csv.contains("b.d.1,null\n"));
    }
}
