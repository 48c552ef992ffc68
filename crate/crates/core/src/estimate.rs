use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    Upper,
    Lower,
    /// Exact up to a reported truncation tail.
    Exact,
}

impl BoundDirection {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundDirection::Upper => "upper",
            BoundDirection::Lower => "lower",
            BoundDirection::Exact => "exact",
        }
    }
}

impl fmt::Display for BoundDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Moment,
    Conformal,
    Lower,
    Series,
    Closed,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Moment => "moment",
            Method::Conformal => "conformal",
            Method::Lower => "lower",
            Method::Series => "series",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Ok(match s {
            "moment" => Method::Moment,
            "conformal" => Method::Conformal,
            "lower" => Method::Lower,
            "series" => Method::Series,
            "closed" => Method::Closed,
            other => return Err(crate::Error::Parse(format!("unknown method {other:?}"))),
        })
    }
}

/// A torsional rigidity value with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidityEstimate {
    pub value: f64,
    /// Exact rational value when the computation was exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub direction: BoundDirection,
    pub method: Method,
    /// Polynomial degree, series truncation or trial index, depending on the method.
    pub order: usize,
    /// Working precision in bits; `None` for exact arithmetic.
    pub precision: Option<u32>,
    pub tail: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl RigidityEstimate {
    pub fn new(value: f64, direction: BoundDirection, method: Method, order: usize) -> Self {
        RigidityEstimate { value, exact: None, direction, method, order, precision: None, tail: 0.0, flags: Vec::new() }
    }

    pub fn with_precision(mut self, bits: Option<u32>) -> Self {
        self.precision = bits;
        self
    }

    pub fn with_tail(mut self, tail: f64) -> Self {
        self.tail = tail;
        self
    }

    pub fn with_exact(mut self, exact: impl Into<String>) -> Self {
        self.exact = Some(exact.into());
        self
    }

    pub fn flag(mut self, f: impl Into<String>) -> Self {
        self.flags.push(f.into());
        self
    }
}
