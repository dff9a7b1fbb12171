//! Decimal-string rendering of exact integers for JSON and CSV output.

use num_bigint::BigInt;
use serde::Serializer;

pub(crate) fn opt_decimal<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
