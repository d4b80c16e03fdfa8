use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// 17 significant digits.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::Num(x) => number(*x),
                    Value::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// An array of row objects keyed by column name. Non-finite numbers
    /// become null.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (k, row) in self.rows.iter().enumerate() {
            out.push_str(if k == 0 { "\n  {" } else { ",\n  {" });
            for (j, (name, v)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let cell = match v {
                    Value::Num(x) if x.is_finite() => number(*x),
                    Value::Num(_) => "null".to_string(),
                    Value::Text(s) => json_string(s),
                };
                let _ = write!(out, "{}: {}", json_string(name), cell);
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_carry_the_same_cells() {
        let mut t = Table::new(&["t", "method"]);
        t.rows.push(vec![0.1.into(), "schehr".into()]);
        t.rows.push(vec![f64::NAN.into(), "a\"b".into()]);
        assert_eq!(
            t.to_csv(),
            "t,method\n1.0000000000000001e-1,schehr\nNaN,a\"b\n"
        );
        assert_eq!(
            t.to_json(),
            "[\n  {\"t\": 1.0000000000000001e-1, \"method\": \"schehr\"},\n  {\"t\": null, \"method\": \"a\\\"b\"}\n]\n"
        );
        assert_eq!(Table::new(&["x"]).to_json(), "[]\n");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::PI, -1e-300, 0.1 + 0.2] {
            assert_eq!(number(x).parse::<f64>().unwrap(), x);
        }
    }
}
