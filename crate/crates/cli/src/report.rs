use serde_json::{Map, Value};
use std::fmt::Write;

pub const HEADER: &str = "colink-report";
pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// `key<TAB>value` lines after a versioned header.
    Kv,
    Text,
    Json,
}

/// Ordered key/value report; `pass` decides the exit status.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub entries: Vec<(String, String)>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            entries: Vec::new(),
            pass: true,
        }
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        let key = key.into();
        debug_assert!(!key.contains('\t') && self.entries.iter().all(|(k, _)| *k != key));
        self.entries.push((key, value.to_string()));
    }

    /// Records a check outcome under `key`.
    pub fn check(&mut self, key: impl Into<String>, ok: bool) {
        self.pass &= ok;
        self.put(key, if ok { "pass" } else { "fail" });
    }

    fn status(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Kv => {
                writeln!(out, "{HEADER}\tv{VERSION}").unwrap();
                writeln!(out, "command\t{}", self.command).unwrap();
                for (k, v) in &self.entries {
                    writeln!(out, "{k}\t{}", v.replace(['\t', '\n'], " ")).unwrap();
                }
                writeln!(out, "status\t{}", self.status()).unwrap();
            }
            Format::Text => {
                writeln!(out, "{HEADER} v{VERSION}: {}", self.command).unwrap();
                let w = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.entries {
                    writeln!(out, "  {k:<w$}  {v}").unwrap();
                }
                writeln!(out, "  {:<w$}  {}", "status", self.status()).unwrap();
            }
            Format::Json => {
                let entries: Map<String, Value> =
                    self.entries.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                let mut top = Map::new();
                top.insert("format".into(), HEADER.into());
                top.insert("version".into(), VERSION.into());
                top.insert("command".into(), self.command.into());
                top.insert("entries".into(), Value::Object(entries));
                top.insert("status".into(), self.status().into());
                out = serde_json::to_string_pretty(&Value::Object(top)).unwrap();
                out.push('\n');
            }
        }
        out
    }
}
