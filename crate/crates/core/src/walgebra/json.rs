//! Action tables as JSON documents:
//! `{"tag": "regular", "left": {"e22": {"e11": ["0/1", "0/1", "0/1"], …}, …}, "right": {…}}`.
//! Each triple holds the `(e11, e12, e22)` coordinates of the product.

use serde_json::{json, Map, Value};

use super::action::{ActionTag, WAlgebraAction};
use super::element::{Slot, UTElement, Unit};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionJsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("missing or malformed field `{0}`")]
    Field(String),
    #[error("bad rational at `{path}`: {msg}")]
    Rational { path: String, msg: String },
}

fn table_to_json(t: &[[UTElement<Rational>; 3]; 3]) -> Value {
    let mut out = Map::new();
    for w in Slot::ALL {
        let mut row = Map::new();
        for u in Unit::ALL {
            let e = &t[w.index()][u.index()];
            let coords: Vec<Value> = e.coords().iter().map(|c| Value::String(format_rational(c))).collect();
            row.insert(u.key().to_string(), Value::Array(coords));
        }
        out.insert(w.key().to_string(), Value::Object(row));
    }
    Value::Object(out)
}

pub fn action_to_json(act: &WAlgebraAction<Rational>) -> Value {
    json!({
        "tag": act.tag.name(),
        "left": table_to_json(&act.left),
        "right": table_to_json(&act.right),
    })
}

fn table_from_json(v: &Value, side: &str) -> Result<[[UTElement<Rational>; 3]; 3], ActionJsonError> {
    let obj = v.get(side).and_then(Value::as_object).ok_or_else(|| ActionJsonError::Field(side.into()))?;
    let mut table: [[UTElement<Rational>; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| UTElement::zero()));
    for w in Slot::ALL {
        let path = format!("{side}.{}", w.key());
        let row = obj.get(w.key()).and_then(Value::as_object).ok_or_else(|| ActionJsonError::Field(path.clone()))?;
        for u in Unit::ALL {
            let path = format!("{path}.{}", u.key());
            let coords = row
                .get(u.key())
                .and_then(Value::as_array)
                .filter(|a| a.len() == 3)
                .ok_or_else(|| ActionJsonError::Field(path.clone()))?;
            let mut parsed = Vec::with_capacity(3);
            for c in coords {
                let s = c.as_str().ok_or_else(|| ActionJsonError::Field(path.clone()))?;
                let r = parse_rational(s)
                    .map_err(|e| ActionJsonError::Rational { path: path.clone(), msg: e.to_string() })?;
                parsed.push(r);
            }
            let [a, b, c]: [Rational; 3] = parsed.try_into().expect("three coordinates");
            table[w.index()][u.index()] = UTElement::new(a, b, c);
        }
    }
    Ok(table)
}

/// Parses an action table. The `tag` field is optional and defaults to `custom`.
pub fn action_from_json(v: &Value) -> Result<WAlgebraAction<Rational>, ActionJsonError> {
    let tag = match v.get("tag") {
        None => ActionTag::Custom,
        Some(t) => t.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| ActionJsonError::Field("tag".into()))?,
    };
    Ok(WAlgebraAction { tag, left: table_from_json(v, "left")?, right: table_from_json(v, "right")? })
}

pub fn action_from_str(s: &str) -> Result<WAlgebraAction<Rational>, ActionJsonError> {
    let v: Value = serde_json::from_str(s).map_err(|e| ActionJsonError::Syntax(e.to_string()))?;
    action_from_json(&v)
}
