use serde_json::{json, Value};

/// Whether the command reached a definitive result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Definitive,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SystemInfo {
    pub ring: String,
    pub poly: String,
    pub digits: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub system: Option<SystemInfo>,
    pub result: Value,
    /// Human-readable lines, printed without `--json`.
    pub lines: Vec<String>,
    pub steps_used: usize,
    pub cap_hit: bool,
    pub status: Status,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Definitive => 0,
            Status::Unknown => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let system = match &self.system {
            Some(s) => json!({ "ring": s.ring, "poly": s.poly, "digits": s.digits }),
            None => Value::Null,
        };
        let v = json!({
            "command": self.command,
            "system": system,
            "result": self.result,
            "steps_used": self.steps_used,
            "cap_hit": self.cap_hit,
        });
        let mut out = serde_json::to_string_pretty(&v).expect("json values serialize");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.system {
            out.push_str(&format!("ring: {}\npoly: {}\ndigits: {}\n", s.ring, s.poly, s.digits.join(", ")));
        }
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}
