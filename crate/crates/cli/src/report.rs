//! JSON report types. Every measured number travels with the tolerance it
//! was judged against; nothing time- or host-dependent goes into a report.

use serde::Serialize;

/// A measured value and the tolerance it is held to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub tolerance: f64,
}

impl Quantity {
    pub fn new(value: f64, tolerance: f64) -> Self {
        Quantity { value, tolerance }
    }
}

/// Worst case of one property over a batch of cases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub pass: bool,
}

impl Check {
    /// Passes when every value is strictly below `tolerance`; NaN fails.
    pub fn below(name: &str, values: impl IntoIterator<Item = f64>, tolerance: f64) -> Check {
        let mut worst: f64 = 0.0;
        let mut cases = 0;
        let mut nan = false;
        for v in values {
            cases += 1;
            if v.is_nan() {
                nan = true;
            } else {
                worst = worst.max(v);
            }
        }
        if nan {
            worst = f64::NAN;
        }
        Check {
            name: name.to_string(),
            worst,
            tolerance,
            cases,
            pass: !nan && cases > 0 && worst < tolerance,
        }
    }

    /// A yes/no property; `worst` counts the failing cases.
    pub fn all(name: &str, flags: impl IntoIterator<Item = bool>) -> Check {
        let mut cases = 0;
        let mut failures = 0;
        for ok in flags {
            cases += 1;
            if !ok {
                failures += 1;
            }
        }
        Check {
            name: name.to_string(),
            worst: failures as f64,
            tolerance: 0.0,
            cases,
            pass: cases > 0 && failures == 0,
        }
    }

    pub fn failed(name: &str, reason: &str) -> Check {
        Check {
            name: format!("{name}: {reason}"),
            worst: f64::NAN,
            tolerance: 0.0,
            cases: 0,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Facts about the run that are not pass/fail (sample sizes, skips).
    pub notes: Vec<String>,
}

impl CriterionReport {
    pub fn new(id: u32, name: &str, checks: Vec<Check>, notes: Vec<String>) -> Self {
        CriterionReport {
            id,
            name: name.to_string(),
            pass: !checks.is_empty() && checks.iter().all(|c| c.pass),
            checks,
            notes,
        }
    }

    pub fn summary_line(&self) -> String {
        format!(
            "criterion {} [PRIMARY] {}: {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Renders a serializable value as indented `key: value` lines.
pub fn table(value: &serde_json::Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out
}

fn render(value: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_flat(v) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(v))),
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                if is_flat(v) {
                    out.push_str(&format!("{pad}- {}\n", inline(v)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    render(v, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn is_flat(v: &serde_json::Value) -> bool {
    use serde_json::Value;
    match v {
        Value::Array(items) => items.iter().all(|x| !matches!(x, Value::Array(_) | Value::Object(_))),
        Value::Object(map) => map.len() <= 3 && map.values().all(|x| !matches!(x, Value::Array(_) | Value::Object(_))),
        _ => true,
    }
}

fn inline(v: &serde_json::Value) -> String {
    use serde_json::Value;
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(", "),
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| format!("{k}={}", inline(x)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
