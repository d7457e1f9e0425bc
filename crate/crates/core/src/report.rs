//! Plain-text tables and flat `key=value` documents for reports.

use std::fmt::{Display, Write};

use crate::lattices::KissingReport;
use crate::pipelines::VerificationReport;

/// Ordered `key=value` pairs; keys are emitted in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues(Vec<(String, String)>);

impl KeyValues {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    pub fn extend(&mut self, prefix: &str, other: &KeyValues) {
        for (k, v) in &other.0 {
            self.0.push((format!("{prefix}{k}"), v.clone()));
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.0
    }

    /// One `key=value` line per entry. Newlines in values are escaped.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.0 {
            let _ = writeln!(out, "{k}={}", v.replace('\n', "\\n"));
        }
        out
    }

    /// Two aligned columns.
    pub fn render_table(&self) -> String {
        let rows: Vec<Vec<String>> = self.0.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect();
        table(&["field", "value"], &rows)
    }
}

/// Left-aligned text table with a dashed rule under the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&mut headers.iter().copied());
    out += &line(
        &mut widths
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str),
    );
    for row in rows {
        out += &line(&mut row.iter().map(String::as_str));
    }
    out
}

fn opt<T: Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl KissingReport {
    /// Every field except the witness list; `elapsed_ms` is the last key.
    pub fn key_values(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.push("n", self.n)
            .push("k", self.k)
            .push("d", self.d)
            .push("A_d", self.a_d)
            .push("t", self.t)
            .push("scale", self.scale)
            .push("nu", self.nu)
            .push("N_s", self.count)
            .push("rescale", self.rescale)
            .push("method", self.method)
            .push("cosets", opt(&self.cosets))
            .push("witnesses_stored", self.witnesses.len())
            .push("witnesses_truncated", self.witnesses_truncated)
            .push("anomalies", self.anomalies)
            .push("anomalous_cosets", opt(&self.anomalous_cosets))
            .push("min_G_fractional", opt(&self.min_functional_fractional))
            .push("min_G_integral", opt(&self.min_functional_integral))
            .push("oracle_box", opt(&self.oracle_box))
            .push("box_sufficient", opt(&self.box_sufficient));
        for (i, a) in self.anomaly_examples.iter().enumerate() {
            kv.push(format!("anomaly_example.{i}"), vector(a));
        }
        kv.push("elapsed_ms", format!("{:.3}", self.elapsed.as_secs_f64() * 1e3));
        kv
    }

    /// The first `limit` witnesses as numerator vectors over `t`.
    pub fn witness_lines(&self, limit: usize) -> String {
        let mut out = String::new();
        for w in self.witnesses.iter().take(limit) {
            let _ = writeln!(out, "{}/{}", vector(w), self.t);
        }
        out
    }
}

impl VerificationReport {
    pub fn key_values(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.push("kind", self.kind)
            .push("code", &self.code)
            .push("body", &self.body)
            .push("t", self.t)
            .push("t_clamped", self.t_clamped)
            .push("expected_nu", self.expected_nu)
            .push("codewords_minimal", self.codewords_minimal)
            .push("codeword_gauge_max", self.codeword_gauge_max)
            .push("N_s_vs_A_d", format!("{} >= {}", self.kissing.count, self.kissing.a_d))
            .push(
                "N_s_vs_2A_d",
                format!("{} >= {}", self.kissing.count, 2 * self.kissing.a_d),
            );
        if let Some(p) = &self.plan {
            kv.push("plan.j0", p.j0)
                .push("plan.T0", p.t0_size)
                .push("plan.j1", p.j1)
                .push("plan.T1", p.t1_size)
                .push("plan.blocks", p.blocks)
                .push("plan.m", p.m)
                .push("plan.l", p.l)
                .push("plan.k", p.k)
                .push("plan.pivot", p.pivot + 1)
                .push(
                    "plan.positions",
                    p.positions
                        .iter()
                        .map(|c| (c + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                )
                .push("plan.nu_n", p.nu_n)
                .push("plan.rho", p.rho)
                .push("plan.mu", p.mu)
                .push("plan.rate", p.rate)
                .push(
                    "plan.tie_break",
                    "gauge: most frequent then earliest; exponent: most frequent then smallest",
                );
        }
        for c in &self.checks {
            let status = match c.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "SKIP",
            };
            kv.push(format!("check.{}", c.name), status);
            kv.push(format!("check.{}.gating", c.name), c.gating);
            kv.push(format!("check.{}.detail", c.name), &c.detail);
        }
        kv.extend("kissing.", &self.kissing.key_values());
        kv.push("result", if self.pass() { "PASS" } else { "FAIL" });
        kv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_render_order() {
        let mut kv = KeyValues::new();
        kv.push("b", 1).push("a", "x\ny");
        assert_eq!(kv.render(), "b=1\na=x\\ny\n");
        assert_eq!(kv.get("a"), Some("x\ny"));
    }

    #[test]
    fn table_alignment() {
        let s = table(
            &["n", "value"],
            &[vec!["8".into(), "240".into()], vec!["24".into(), "1".into()]],
        );
        assert_eq!(s, "n   value\n--  -----\n8   240\n24  1\n");
    }
}
