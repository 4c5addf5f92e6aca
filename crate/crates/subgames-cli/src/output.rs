//! Output envelopes: text / JSON / CSV emitters and the sequence digest.

use std::io::Write;

use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 64-bit FNV-1a over a byte stream; the digest of a sequence is stable for
/// identical inputs and horizons, across runs and thread counts.
pub fn fnv1a64(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Digest of a nim-value style sequence: each value as 8 little-endian bytes.
pub fn digest_values(values: impl IntoIterator<Item = u64>) -> u64 {
    fnv1a64(values.into_iter().flat_map(|v| v.to_le_bytes()))
}

/// One result record: the common envelope plus command-specific fields.
pub struct Record {
    fields: Map<String, Value>,
}

impl Record {
    pub fn new(command: &str, input: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        fields.insert("version".into(), json!(VERSION));
        fields.insert("input".into(), json!(input));
        Record { fields }
    }

    pub fn set(&mut self, key: &str, value: impl serde::Serialize) -> &mut Self {
        self.fields.insert(
            key.into(),
            serde_json::to_value(value).expect("serializable value"),
        );
        self
    }

    pub fn finish(&mut self, wall_ms: f64) -> &mut Self {
        self.fields.insert("wall_ms".into(), json!(wall_ms));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Value::Object(self.fields.clone())).unwrap()
    }

    #[cfg(test)]
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }
}

/// Writes rows as CSV with an explicit header (the column order is part of
/// the versioned interface).
pub fn write_csv<W: Write>(
    out: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
