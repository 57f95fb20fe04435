//! Deterministic JSON and CSV emission.
//!
//! Output records must be byte-identical across runs for identical inputs,
//! with fixed key order and reals at 17 significant digits. A small writer
//! gives full control over both; keys appear in insertion order.

/// Formats a real to 17 significant digits, round-trip exact for f64.
pub fn real(v: f64) -> String {
    debug_assert!(v.is_finite(), "records never carry non-finite reals");
    format!("{v:.16e}")
}

fn escape_into(buf: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '"' => buf.push_str("\\\""),
            '\\' => buf.push_str("\\\\"),
            '\n' => buf.push_str("\\n"),
            '\t' => buf.push_str("\\t"),
            '\r' => buf.push_str("\\r"),
            c if (c as u32) < 0x20 => buf.push_str(&format!("\\u{:04x}", c as u32)),
            c => buf.push(c),
        }
    }
}

/// A JSON value rendered to text. Build nested structure bottom-up.
pub enum Json {
    Str(String),
    Real(f64),
    Int(i128),
    Bool(bool),
    Null,
    Array(Vec<Json>),
    Object(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn str(s: impl Into<String>) -> Json {
        Json::Str(s.into())
    }

    /// A `[u, v]` coordinate pair.
    pub fn pair(u: f64, v: f64) -> Json {
        Json::Array(vec![Json::Real(u), Json::Real(v)])
    }

    pub fn render(&self) -> String {
        let mut buf = String::new();
        self.write(&mut buf);
        buf
    }

    fn write(&self, buf: &mut String) {
        match self {
            Json::Str(s) => {
                buf.push('"');
                escape_into(buf, s);
                buf.push('"');
            }
            Json::Real(v) => buf.push_str(&real(*v)),
            Json::Int(v) => buf.push_str(&v.to_string()),
            Json::Bool(b) => buf.push_str(if *b { "true" } else { "false" }),
            Json::Null => buf.push_str("null"),
            Json::Array(items) => {
                buf.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        buf.push(',');
                    }
                    item.write(buf);
                }
                buf.push(']');
            }
            Json::Object(fields) => {
                buf.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        buf.push(',');
                    }
                    buf.push('"');
                    escape_into(buf, key);
                    buf.push_str("\":");
                    value.write(buf);
                }
                buf.push('}');
            }
        }
    }
}

/// A CSV table with a fixed header, reals at 17 significant digits.
pub fn csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
