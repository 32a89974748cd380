//! JSON rendering shared by the reports.
//!
//! Payloads go through [`serde_json::Value`], whose object map is ordered by
//! key, so identical inputs always render to identical bytes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

/// Big integers render as JSON numbers when they fit in `i64`, otherwise as decimal strings.
pub fn big<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(v) => serializer.serialize_i64(v),
        None => serializer.serialize_str(&value.to_string()),
    }
}

pub fn big_json(value: &BigInt) -> serde_json::Value {
    match value.to_i64() {
        Some(v) => v.into(),
        None => value.to_string().into(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
