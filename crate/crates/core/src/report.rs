//! Verification reports and their JSON, CSV and text renderings.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bm,
    Kernel,
    Vn,
    Davis,
    Straffin,
    Milnor,
    Mseq,
    Rtable,
    Toeplitz,
    Binom,
    Monotone,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Bm,
        Suite::Kernel,
        Suite::Vn,
        Suite::Davis,
        Suite::Straffin,
        Suite::Milnor,
        Suite::Mseq,
        Suite::Rtable,
        Suite::Toeplitz,
        Suite::Binom,
        Suite::Monotone,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Bm => "bm",
            Suite::Kernel => "kernel",
            Suite::Vn => "vn",
            Suite::Davis => "davis",
            Suite::Straffin => "straffin",
            Suite::Milnor => "milnor",
            Suite::Mseq => "mseq",
            Suite::Rtable => "rtable",
            Suite::Toeplitz => "toeplitz",
            Suite::Binom => "binom",
            Suite::Monotone => "monotone",
        }
    }

    /// Parses a comma-separated selector; `all` expands to every suite.
    /// The result is deduplicated and in canonical order.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if name == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(name.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("no suite selected".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check's hypothesis does not apply; recorded for information.
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub prime: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    pub params: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(suite: Suite, prime: u32, degree: Option<u64>, name: &str) -> Self {
        let mut params = Map::new();
        params.insert("check".into(), Value::from(name));
        Check {
            suite,
            prime,
            degree,
            params,
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn passed_if(self, ok: bool) -> Self {
        self.status(Status::from_bool(ok))
    }

    pub fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn name(&self) -> &str {
        self.params
            .get("check")
            .and_then(Value::as_str)
            .unwrap_or_default()
    }

    /// `key=value` pairs joined by `;`, in key order.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub prime: u32,
    pub suites: Vec<Suite>,
    pub generated_by_version: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(prime: u32, suites: Vec<Suite>, checks: Vec<Check>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        VerificationReport {
            prime,
            suites,
            generated_by_version: env!("CARGO_PKG_VERSION").to_string(),
            checks,
            summary,
        }
    }

    /// True iff no check failed; skipped checks do not count against it.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    /// Columns: suite, prime, degree, params, status.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "prime", "degree", "params", "status"])
            .expect("in-memory write");
        for c in &self.checks {
            let degree = c.degree.map(|d| d.to_string()).unwrap_or_default();
            w.write_record([
                c.suite.as_str(),
                &c.prime.to_string(),
                &degree,
                &c.params_string(),
                c.status.as_str(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let degree = c.degree.map(|d| format!(" n={d}")).unwrap_or_default();
            out.push_str(&format!(
                "{:<7} {:<9} p={}{} {}\n",
                c.status.as_str().to_uppercase(),
                c.suite.as_str(),
                c.prime,
                degree,
                c.params_string()
            ));
            if let (Status::Fail, Some(w)) = (c.status, &c.witness) {
                out.push_str(&format!("        witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} skipped\n",
            self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        out
    }
}
