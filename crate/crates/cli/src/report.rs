use serde_json::Value;

/// The result of one command: aligned `key  value` rows for humans and a
/// JSON value for machines.
#[derive(Clone, Debug)]
pub struct Report {
    pub rows: Vec<(String, String)>,
    pub json: Value,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { rows: Vec::new(), json }
    }

    pub fn row(mut self, key: &str, value: impl Into<String>) -> Self {
        self.rows.push((key.to_string(), value.into()));
        self
    }

    pub fn rows<I, S>(mut self, key: &str, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut first = true;
        for v in values {
            self.rows
                .push((if first { key.to_string() } else { String::new() }, v.into()));
            first = false;
        }
        if first {
            self.rows.push((key.to_string(), "(none)".into()));
        }
        self
    }

    pub fn text(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            let pad = width - k.chars().count();
            out.push_str(format!("{k}{}  {v}", " ".repeat(pad)).trim_end());
            out.push('\n');
        }
        out
    }

    pub fn pretty_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
        s.push('\n');
        s
    }
}
