//! Pass/fail records.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A parameter value. Integers sort numerically, so `n = 10` follows `n = 9`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<u8> for ParamValue {
    fn from(v: u8) -> Self {
        ParamValue::Int(i64::from(v))
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// Outcome of one check. A failing result always carries a witness: the
/// first counterexample found, in a deterministic enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: BTreeMap<String, ParamValue>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub summary: String,
    /// Number of individual comparisons made.
    pub checked: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Ordering key for reports: name, then parameters.
    pub fn sort_key(&self) -> (&str, &BTreeMap<String, ParamValue>) {
        (&self.name, &self.params)
    }

    pub fn param_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{status} {}({}) {}", self.name, self.param_string(), self.summary)?;
        if let Some(w) = &self.witness {
            write!(f, " | witness: {w}")?;
        }
        if !self.flags.is_empty() {
            write!(f, " [{}]", self.flags.join(", "))?;
        }
        Ok(())
    }
}

/// Accumulates comparisons for one check and keeps the first failure.
#[derive(Clone, Debug)]
pub struct Checker {
    name: String,
    params: BTreeMap<String, ParamValue>,
    checked: u64,
    witness: Option<String>,
    flags: Vec<String>,
}

impl Checker {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), params: BTreeMap::new(), checked: 0, witness: None, flags: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records one comparison; `witness` is only built on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        ok
    }

    /// Records `count` comparisons made elsewhere, with the first failure
    /// among them if any.
    pub fn batch(&mut self, count: u64, first_failure: Option<String>) -> bool {
        self.checked += count;
        match first_failure {
            Some(w) => {
                self.witness.get_or_insert(w);
                false
            }
            None => true,
        }
    }

    pub fn flag(&mut self, flag: impl Into<String>) {
        self.flags.push(flag.into());
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self, summary: impl Into<String>) -> CheckResult {
        let status = if self.witness.is_some() { Status::Fail } else { Status::Pass };
        CheckResult {
            name: self.name,
            params: self.params,
            status,
            witness: self.witness,
            summary: summary.into(),
            checked: self.checked,
            flags: self.flags,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let mut c = Checker::new("demo").param("n", 3usize);
        assert!(c.check(true, || unreachable!()));
        assert!(!c.check(false, || "first".into()));
        c.check(false, || "second".into());
        c.batch(5, Some("third".into()));
        let r = c.finish("done");
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.as_deref(), Some("first"));
        assert_eq!(r.checked, 8);
    }

    #[test]
    fn params_sort_numerically() {
        let a = Checker::new("x").param("n", 9usize).finish("");
        let b = Checker::new("x").param("n", 10usize).finish("");
        assert!(a.sort_key() < b.sort_key());
        assert_eq!(b.to_string(), "PASS x(n=10) ");
    }
}
