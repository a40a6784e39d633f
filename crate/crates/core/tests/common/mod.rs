//! Single-leaf tampering of certificate JSON.

use serde_json::Value;
use superk::certificate::{verify, Certificate};

fn bump(s: &str) -> String {
    if let Some((p, q)) = s.split_once('/') {
        if let (Ok(p), Ok(_)) = (p.parse::<i64>(), q.parse::<u64>()) {
            return format!("{}/{q}", p + 1);
        }
    }
    format!("{s}x")
}

/// Paths to every scalar leaf of `v`.
pub fn leaves(v: &Value, path: &mut Vec<Value>, out: &mut Vec<Vec<Value>>) {
    match v {
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                path.push(Value::from(i));
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                path.push(Value::from(k.clone()));
                leaves(x, path, out);
                path.pop();
            }
        }
        _ => out.push(path.clone()),
    }
}

pub fn at<'a>(v: &'a mut Value, path: &[Value]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match k {
        Value::Number(i) => &mut v[i.as_u64().unwrap() as usize],
        Value::String(s) => &mut v[s.as_str()],
        _ => unreachable!(),
    })
}

pub fn mutate(leaf: &mut Value) {
    *leaf = match leaf.take() {
        Value::Null => Value::from("x"),
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => Value::from(n.as_u64().unwrap() + 1),
        Value::String(s) => Value::from(bump(&s)),
        _ => unreachable!(),
    };
}

/// Paths whose single-leaf mutation still verifies.
pub fn undetected_tampers(c: &Certificate) -> Vec<Vec<Value>> {
    let original = serde_json::to_value(c).unwrap();
    let mut paths = Vec::new();
    leaves(&original, &mut Vec::new(), &mut paths);
    paths
        .into_iter()
        .filter(|p| {
            let mut v = original.clone();
            mutate(at(&mut v, p));
            serde_json::from_value::<Certificate>(v).is_ok_and(|t| verify(&t).is_ok())
        })
        .collect()
}
