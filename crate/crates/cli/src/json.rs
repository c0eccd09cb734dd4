//! Hand-rolled JSON emitter with deterministic output: keys keep insertion
//! order, floats print with 17 significant digits, non-finite floats become
//! null. Repeated runs with identical inputs produce identical bytes.

pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::UInt(u) => out.push_str(&u.to_string()),
            Json::Float(f) => write_float(*f, out),
            Json::Str(s) => write_string(s, out),
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Json::Object(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_string(key, out);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

pub fn write_float(f: f64, out: &mut String) {
    if f.is_finite() {
        out.push_str(&format_float(f));
    } else {
        out.push_str("null");
    }
}

/// 17 significant digits in scientific notation, enough to round-trip any
/// f64 and stable across platforms.
pub fn format_float(f: f64) -> String {
    format!("{f:.16e}")
}

fn write_string(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

pub fn float_pair(pair: Option<(f64, f64)>) -> Json {
    match pair {
        Some((a, b)) => Json::Array(vec![Json::Float(a), Json::Float(b)]),
        None => Json::Null,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_are_deterministic_and_finite_only() {
        assert_eq!(Json::Float(0.5).render(), "5.0000000000000000e-1");
        assert_eq!(Json::Float(f64::NAN).render(), "null");
        assert_eq!(Json::Float(f64::INFINITY).render(), "null");
    }

    #[test]
    fn escaping_and_structure() {
        let v = Json::Object(vec![
            ("a", Json::Str("x\"y\\z\n".into())),
            ("b", Json::Array(vec![Json::Int(-1), Json::UInt(2), Json::Null, Json::Bool(true)])),
        ]);
        assert_eq!(v.render(), r#"{"a":"x\"y\\z\n","b":[-1,2,null,true]}"#);
    }
}
