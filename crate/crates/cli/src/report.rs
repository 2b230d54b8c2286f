//! Command reports, rendered as JSON or aligned text.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Output of one command. Objects serialize with sorted keys, so equal
/// inputs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub results: Value,
}

impl Report {
    pub fn new(command: Vec<String>, results: Value) -> Report {
        Report { command, results }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut lines = Vec::new();
        flatten("", &self.results, &mut lines);
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("# {}\n", self.command.join(" "));
        for (k, v) in lines {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Arrays of scalars stay on one line; everything else nests by path.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| scalar(x).is_some()) => {
            let items: Vec<String> = xs.iter().filter_map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_is_aligned_and_flat() {
        let r = Report::new(
            vec!["rml".into(), "info".into()],
            json!({"dim": 3, "weights": [1, 0, 7], "class": {"mrd": true}}),
        );
        let t = r.render(Format::Text);
        assert_eq!(t, "# rml info\nclass.mrd  true\ndim        3\nweights    [1, 0, 7]\n");
    }

    #[test]
    fn json_keys_are_sorted() {
        let r = Report::new(vec![], json!({"b": 1, "a": 2}));
        let s = r.render(Format::Json);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }
}
