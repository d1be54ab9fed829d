//! Machine-readable report structures shared by the CLI and the verifier.

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::exact_algebra::Rational;

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedSource {
    /// A closed-form formula evaluated exactly or in floating point.
    ClosedForm,
    /// An exact algebraic identity (zero polynomial, exact proportionality).
    ExactIdentity,
    /// An independent numerical oracle.
    Oracle,
    /// A regression bound pinned from an earlier oracle run.
    Regression,
}

/// One verification line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    /// Which relation the check exercises.
    pub anchor: String,
    pub computed: Value,
    pub expected: Value,
    pub source: ExpectedSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
        source: ExpectedSource,
        tolerance: Option<f64>,
        pass: bool,
    ) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            computed: computed.into(),
            expected: expected.into(),
            source,
            tolerance,
            pass,
        }
    }

    /// `|computed − expected| ≤ tol`.
    pub fn close(
        id: impl Into<String>,
        anchor: impl Into<String>,
        computed: f64,
        expected: f64,
        source: ExpectedSource,
        tol: f64,
    ) -> Self {
        let pass = (computed - expected).abs() <= tol;
        Self::new(id, anchor, computed, expected, source, Some(tol), pass)
    }

    /// `computed ≤ bound`.
    pub fn at_most(
        id: impl Into<String>,
        anchor: impl Into<String>,
        computed: f64,
        bound: f64,
        source: ExpectedSource,
    ) -> Self {
        let pass = computed <= bound;
        Self::new(
            id,
            anchor,
            computed,
            format!("<= {bound:e}"),
            source,
            Some(bound),
            pass,
        )
    }

    /// An exact identity that either holds or does not.
    pub fn exact(
        id: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
        pass: bool,
    ) -> Self {
        Self::new(id, anchor, computed, expected, ExpectedSource::ExactIdentity, None, pass)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "[{}] {} ({}): computed {} expected {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.anchor,
            self.computed,
            self.expected
        )
    }
}

/// Tabular view of a report body, for CSV output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn from_checks(checks: &[Check]) -> Self {
        let mut t = Table::new(&["id", "anchor", "computed", "expected", "source", "tolerance", "pass"]);
        for c in checks {
            t.push(vec![
                c.id.clone(),
                c.anchor.clone(),
                value_cell(&c.computed),
                value_cell(&c.expected),
                serde_json::to_value(c.source)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                c.tolerance.map(|t| format!("{t:e}")).unwrap_or_default(),
                c.pass.to_string(),
            ]);
        }
        t
    }
}

pub fn value_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Full output of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub command: String,
    /// Arguments that reproduce this run, with every default resolved.
    pub argv: Vec<String>,
    pub parameters: serde_json::Map<String, Value>,
    pub passed: bool,
    pub body: Value,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// CSV with the reproducing arguments as a leading comment line.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut out = format!("# {}\n", self.argv.join(" "));
        let table = match &self.table {
            Some(t) => t.clone(),
            None => {
                let mut t = Table::new(&["key", "value"]);
                if let Value::Object(map) = &self.body {
                    for (k, v) in map {
                        t.push(vec![k.clone(), value_cell(v)]);
                    }
                }
                t.push(vec!["passed".into(), self.passed.to_string()]);
                t
            }
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&table.headers)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        out.push_str(&String::from_utf8_lossy(&bytes));
        Ok(out)
    }
}
