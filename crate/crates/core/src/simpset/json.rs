//! Documents for finite simplicial sets and coherent 2-groups: the struct
//! fields plus `"schema": 1` and a `"kind"` tag (`"simplicial-set"` or
//! `"two-group"`). Loading validates every table.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use super::{CoherentTwoGroup, FinSimplicialSet, SimpError};

pub const SCHEMA: u64 = 1;

fn tagged<T: Serialize>(x: &T, kind: &str) -> Value {
    let mut v = serde_json::to_value(x).expect("tables serialize");
    let obj = v.as_object_mut().expect("struct serializes to an object");
    obj.insert("schema".into(), SCHEMA.into());
    obj.insert("kind".into(), kind.into());
    v
}

fn untagged<T: DeserializeOwned>(v: &Value, kind: &str) -> Result<T, SimpError> {
    let parse = |s: String| SimpError::Table(s);
    let mut obj = v.as_object().ok_or_else(|| parse("document must be an object".into()))?.clone();
    match obj.remove("schema").and_then(|s| s.as_u64()) {
        Some(SCHEMA) => {}
        other => return Err(parse(format!("unsupported schema {other:?}"))),
    }
    match obj.remove("kind") {
        Some(Value::String(k)) if k == kind => {}
        other => return Err(parse(format!("expected kind {kind:?}, found {other:?}"))),
    }
    serde_json::from_value(Value::Object(obj)).map_err(|e| parse(e.to_string()))
}

impl FinSimplicialSet {
    pub fn to_json(&self) -> Value {
        tagged(self, "simplicial-set")
    }

    pub fn from_json(v: &Value) -> Result<Self, SimpError> {
        let x: Self = untagged(v, "simplicial-set")?;
        x.validate()?;
        Ok(x)
    }
}

impl CoherentTwoGroup {
    pub fn to_json(&self) -> Value {
        tagged(self, "two-group")
    }

    pub fn from_json(v: &Value) -> Result<Self, SimpError> {
        let t: Self = untagged(v, "two-group")?;
        t.validate()?;
        Ok(t)
    }
}
