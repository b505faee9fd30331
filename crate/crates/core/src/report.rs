use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::ser::Serializer;
use serde::Serialize;
use serde_json::Value;

use crate::rational::format_rational;

/// Outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    /// Combines per-part verdicts: any violation wins, then any inconclusive.
    pub fn all<I: IntoIterator<Item = Verdict>>(parts: I) -> Verdict {
        let mut out = Verdict::Holds;
        for v in parts {
            match v {
                Verdict::Violated => return Verdict::Violated,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Holds => {}
            }
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A side of an inequality. Exact values serialize as strings, floats as
/// JSON numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Integer(BigUint),
    Rational(BigRational),
    Float(f64),
}

impl Quantity {
    pub fn as_f64(&self) -> f64 {
        match self {
            Quantity::Integer(n) => crate::rational::ln_biguint(n).exp(),
            Quantity::Rational(r) => crate::rational::rational_to_f64(r),
            Quantity::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Quantity::Float(_))
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantity::Integer(n) => s.serialize_str(&n.to_string()),
            Quantity::Rational(r) => s.serialize_str(&format_rational(r)),
            Quantity::Float(x) => s.serialize_f64(*x),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Integer(n) => write!(f, "{n}"),
            Quantity::Rational(r) => write!(f, "{}", format_rational(r)),
            Quantity::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Evaluated inequality `lhs <= rhs` (or an identity check) with its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub lhs: Quantity,
    pub rhs: Quantity,
    /// `rhs - lhs` in the report's float scale, when that makes sense.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
    /// True when the verdict was decided by exact arithmetic.
    pub exact: bool,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, verdict: Verdict, lhs: Quantity, rhs: Quantity) -> Self {
        let exact = lhs.is_exact() && rhs.is_exact();
        CheckReport {
            check: check.into(),
            verdict,
            lhs,
            rhs,
            slack: None,
            exact,
            witnesses: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.slack = Some(slack);
        self
    }

    pub fn with_exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn witness(mut self, value: impl Into<Value>) -> Self {
        self.witnesses.push(value.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}
