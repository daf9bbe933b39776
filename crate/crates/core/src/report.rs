//! Exact comparisons recorded as report lines.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::rational::{fmt_rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Op {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Op {
    pub fn as_str(self) -> &'static str {
        match self {
            Op::Le => "<=",
            Op::Eq => "==",
            Op::Ge => ">=",
        }
    }

    fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Op::Le => lhs <= rhs,
            Op::Eq => lhs == rhs,
            Op::Ge => lhs >= rhs,
        }
    }
}

/// One named exact comparison, printed as `CHECK name lhs OP rhs PASS|FAIL`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub op: Op,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    pub fn rat(name: impl Into<String>, lhs: &Rat, op: Op, rhs: &Rat) -> Self {
        Check {
            name: name.into(),
            lhs: fmt_rat(lhs),
            op,
            rhs: fmt_rat(rhs),
            pass: op.holds(lhs, rhs),
        }
    }

    pub fn int(name: impl Into<String>, lhs: &BigInt, op: Op, rhs: &BigInt) -> Self {
        Check {
            name: name.into(),
            lhs: lhs.to_string(),
            op,
            rhs: rhs.to_string(),
            pass: op.holds(lhs, rhs),
        }
    }

    pub fn count(name: impl Into<String>, lhs: usize, op: Op, rhs: usize) -> Self {
        Self::int(name, &BigInt::from(lhs), op, &BigInt::from(rhs))
    }

    /// A boolean property, shown as `value == true`.
    pub fn flag(name: impl Into<String>, value: bool) -> Self {
        Check {
            name: name.into(),
            lhs: value.to_string(),
            op: Op::Eq,
            rhs: "true".into(),
            pass: value,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CHECK {} {} {} {} {}",
            self.name,
            self.lhs,
            self.op.as_str(),
            self.rhs,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
