//! JSON encodings of the domain types.
//!
//! Decoding checks every invariant and reports failures as
//! [`Error::SchemaViolation`] carrying a JSONPath-style location such as
//! `$.letters[2]`.

use serde_json::{json, Map, Value};

use crate::action::Point;
use crate::affine::AffinePermutation;
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::tuple::{FilterTuple, QtTable};
use crate::word::Word;

/// Round-trippable JSON form.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json_at(value: &Value, path: &str) -> Result<Self>;

    fn from_json(value: &Value) -> Result<Self> {
        Self::from_json_at(value, "$")
    }

    fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| violation("$", format!("malformed JSON: {e}")))?;
        Self::from_json(&value)
    }
}

fn violation(path: &str, message: impl Into<String>) -> Error {
    Error::SchemaViolation { path: path.to_string(), message: message.into() }
}

fn object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    value.as_object().ok_or_else(|| violation(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str, path: &str) -> Result<(&'a Value, String)> {
    let here = format!("{path}.{name}");
    obj.get(name).map(|v| (v, here.clone())).ok_or_else(|| violation(&here, "missing field"))
}

fn positive(obj: &Map<String, Value>, name: &str, path: &str) -> Result<usize> {
    let (v, here) = field(obj, name, path)?;
    v.as_u64()
        .filter(|&x| x > 0)
        .map(|x| x as usize)
        .ok_or_else(|| violation(&here, "expected a positive integer"))
}

fn integers(obj: &Map<String, Value>, name: &str, path: &str) -> Result<(Vec<i64>, String)> {
    let (v, here) = field(obj, name, path)?;
    let items = v.as_array().ok_or_else(|| violation(&here, "expected an array"))?;
    let values = items
        .iter()
        .enumerate()
        .map(|(i, x)| x.as_i64().ok_or_else(|| violation(&format!("{here}[{i}]"), "expected an integer")))
        .collect::<Result<Vec<_>>>()?;
    Ok((values, here))
}

fn expect_len(values: &[i64], len: usize, here: &str) -> Result<()> {
    if values.len() == len {
        Ok(())
    } else {
        Err(violation(here, format!("expected {len} entries, found {}", values.len())))
    }
}

/// Remaps a domain error raised while building a value to a schema violation.
fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::SchemaViolation { .. } => e,
        other => violation(path, other.to_string()),
    }
}

impl Json for Word {
    fn to_json(&self) -> Value {
        json!({ "m": self.m(), "n": self.n(), "letters": self.letters() })
    }

    fn from_json_at(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        let m = positive(obj, "m", path)?;
        let n = positive(obj, "n", path)?;
        let (letters, here) = integers(obj, "letters", path)?;
        expect_len(&letters, n, &here)?;
        if let Some(i) = letters.iter().position(|&l| l < 0 || l >= m as i64) {
            return Err(violation(&format!("{here}[{i}]"), format!("letter {} is outside 0..{m}", letters[i])));
        }
        Word::new(m, letters.into_iter().map(|l| l as usize).collect()).map_err(at(path))
    }
}

impl Json for Point {
    fn to_json(&self) -> Value {
        let mut v = json!({ "m": self.m(), "coords": self.coords() });
        if !self.is_integral() {
            v["denominator"] = json!(self.denominator());
        }
        v
    }

    fn from_json_at(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        let m = positive(obj, "m", path)?;
        let (coords, here) = integers(obj, "coords", path)?;
        expect_len(&coords, m, &here)?;
        if let Some(i) = coords.windows(2).position(|p| p[0] > p[1]) {
            return Err(violation(&format!("{here}[{}]", i + 1), "coordinates must be weakly increasing"));
        }
        let denom = match obj.get("denominator") {
            None => 1,
            Some(d) => d
                .as_i64()
                .filter(|&d| d > 0)
                .ok_or_else(|| violation(&format!("{path}.denominator"), "expected a positive integer"))?,
        };
        Point::with_denominator(coords, denom).map_err(at(path))
    }
}

impl Json for Filter {
    fn to_json(&self) -> Value {
        json!({ "m": self.m(), "n": self.n(), "row_minima": self.row_minima() })
    }

    fn from_json_at(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        let m = positive(obj, "m", path)?;
        let n = positive(obj, "n", path)?;
        let (minima, here) = integers(obj, "row_minima", path)?;
        expect_len(&minima, m, &here)?;
        Filter::new(m, n, &minima).map_err(at(&here))
    }
}

impl Json for FilterTuple {
    fn to_json(&self) -> Value {
        json!({ "initial": self.initial().to_json(), "removals": self.removals() })
    }

    fn from_json_at(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        let (initial, initial_path) = field(obj, "initial", path)?;
        let initial = Filter::from_json_at(initial, &initial_path)?;
        let (removals, here) = integers(obj, "removals", path)?;
        expect_len(&removals, initial.n(), &here)?;
        FilterTuple::new(initial, removals).map_err(at(&here))
    }
}

impl Json for AffinePermutation {
    fn to_json(&self) -> Value {
        json!({ "n": self.n(), "window": self.window() })
    }

    fn from_json_at(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        let n = positive(obj, "n", path)?;
        let (window, here) = integers(obj, "window", path)?;
        expect_len(&window, n, &here)?;
        let mut first_with: std::collections::HashMap<i64, usize> = Default::default();
        for (i, v) in window.iter().enumerate() {
            if let Some(j) = first_with.insert(v.rem_euclid(n as i64), i) {
                return Err(violation(
                    &format!("{here}[{i}]"),
                    format!("same residue mod {n} as entry {j}"),
                ));
            }
        }
        AffinePermutation::new(window).map_err(at(&here))
    }
}

impl Json for QtTable {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    fn from_json_at(value: &Value, path: &str) -> Result<Self> {
        let table: QtTable =
            serde_json::from_value(value.clone()).map_err(|e| violation(path, e.to_string()))?;
        let size = table.counts.len();
        if let Some(i) = table.counts.iter().position(|row| row.len() != size) {
            return Err(violation(&format!("{path}.counts[{i}]"), format!("expected {size} entries")));
        }
        Ok(table)
    }
}
