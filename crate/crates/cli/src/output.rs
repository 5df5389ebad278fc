//! Number formatting: every float goes out with 17 significant digits so
//! that written values round-trip exactly.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// `1.2345678901234567e-3`, or `nan`/`inf`/`-inf`.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

struct SigFigs;

impl Formatter for SigFigs {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with floats at 17 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigs);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
            let back: f64 = serde_json::from_str(&to_json(&x)).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn json_is_valid() {
        let text = to_json(&json!({"a": [1.0, 2], "b": "x", "c": null}));
        assert_eq!(text, r#"{"a":[1.0000000000000000e0,2],"b":"x","c":null}"#);
        let _: serde_json::Value = serde_json::from_str(&text).unwrap();
    }

    #[test]
    fn non_finite() {
        assert_eq!(num(f64::NAN), "nan");
        assert_eq!(num(f64::NEG_INFINITY), "-inf");
        assert_eq!(to_json(&f64::INFINITY), "null");
    }
}
