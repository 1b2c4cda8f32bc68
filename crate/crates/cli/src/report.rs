//! Reports: a JSON document rendered either as sorted-key JSON or as
//! indented text.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

pub struct Report {
    /// `None` for commands that only print data.
    pub verdict: Option<bool>,
    pub title: String,
    pub body: Map<String, Value>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            verdict: None,
            title: title.into(),
            body: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.body.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(&mut self, v: bool) -> &mut Self {
        self.verdict = Some(v);
        self.body.insert("verdict".into(), Value::Bool(v));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            // serde_json's map keeps keys sorted
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.body.clone())).expect("json");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = format!("{}\n", self.title);
                if let Some(v) = self.verdict {
                    out.push_str(&format!("verdict: {v}\n"));
                }
                for (k, v) in &self.body {
                    if k != "verdict" {
                        text(&mut out, k, v, 0);
                    }
                }
                out
            }
        }
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => Some(format!(
            "[{}]",
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(xs) if xs.iter().all(|x| matches!(x, Value::String(s) if !s.contains('\n'))) => Some(
            xs.iter()
                .map(|x| x.as_str().unwrap_or(""))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = inline(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                text(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                text(out, k, x, depth + 1);
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_output_has_sorted_keys() {
        let mut r = Report::new("t");
        r.set("zeta", 1).set("alpha", vec![1, 2]).verdict(true);
        let s = r.render(Format::Machine);
        let a = s.find("alpha").unwrap();
        let v = s.find("verdict").unwrap();
        let z = s.find("zeta").unwrap();
        assert!(a < v && v < z);
    }

    #[test]
    fn text_output_is_indented() {
        let mut r = Report::new("title");
        let mut inner = Map::new();
        inner.insert("dims".into(), Value::from(vec![1, 0]));
        r.set("weights", Value::Array(vec![Value::Object(inner)]));
        assert_eq!(r.render(Format::Text), "title\nweights:\n  [0]:\n    dims: [1, 0]\n");
    }
}
