use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Frobenius,
    Sylvester,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Frobenius => "frobenius",
            Quantity::Sylvester => "sylvester",
        })
    }
}

/// One closed-form vs oracle comparison. Numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: String,
    pub p: String,
    pub quantity: Quantity,
    pub closed: Option<String>,
    pub closed_error: Option<String>,
    pub oracle: String,
    pub case: Option<String>,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointOutcome {
    Matched,
    Mismatched,
    NoCase,
    OutOfRange,
}

impl PointRecord {
    pub fn outcome(&self) -> PointOutcome {
        match (&self.closed, self.closed_error.as_deref()) {
            (Some(_), _) if self.matched => PointOutcome::Matched,
            (Some(_), _) => PointOutcome::Mismatched,
            (None, Some("OutOfValidityRange")) => PointOutcome::OutOfRange,
            (None, _) => PointOutcome::NoCase,
        }
    }
}

/// A point whose oracle could not be computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: String,
    pub p: String,
    pub quantity: Quantity,
    pub error: String,
}

/// Counters over every enumerated tuple and point. `total` is the sum of all
/// the others.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: u64,
    pub matched: u64,
    pub mismatched: u64,
    pub skipped_gcd: u64,
    pub no_case: u64,
    pub out_of_range: u64,
    pub skipped_invalid: u64,
    pub skipped_cost: u64,
    pub oracle_errors: u64,
}

impl Summary {
    pub(crate) fn count(&mut self, outcome: PointOutcome) {
        match outcome {
            PointOutcome::Matched => self.matched += 1,
            PointOutcome::Mismatched => self.mismatched += 1,
            PointOutcome::NoCase => self.no_case += 1,
            PointOutcome::OutOfRange => self.out_of_range += 1,
        }
        self.total += 1;
    }

    pub(crate) fn absorb(&mut self, other: &Summary) {
        self.total += other.total;
        self.matched += other.matched;
        self.mismatched += other.mismatched;
        self.skipped_gcd += other.skipped_gcd;
        self.no_case += other.no_case;
        self.out_of_range += other.out_of_range;
        self.skipped_invalid += other.skipped_invalid;
        self.skipped_cost += other.skipped_cost;
        self.oracle_errors += other.oracle_errors;
    }

    pub fn is_consistent(&self) -> bool {
        self.matched
            + self.mismatched
            + self.no_case
            + self.out_of_range
            + self.skipped_gcd
            + self.skipped_invalid
            + self.skipped_cost
            + self.oracle_errors
            == self.total
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub points: Vec<PointRecord>,
    #[serde(default)]
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    /// No closed form disagreed with its oracle.
    pub fn passed(&self) -> bool {
        self.summary.mismatched == 0
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &PointRecord> {
        self.points
            .iter()
            .filter(|p| p.outcome() == PointOutcome::Mismatched)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("report JSON: {e}")))
    }

    /// One row per point.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "a",
            "b",
            "c",
            "n",
            "p",
            "quantity",
            "closed",
            "closed_error",
            "oracle",
            "case",
            "match",
        ])
        .expect("write to memory");
        for pt in &self.points {
            w.write_record([
                pt.a.as_str(),
                &pt.b,
                &pt.c,
                &pt.n,
                &pt.p,
                &pt.quantity.to_string(),
                pt.closed.as_deref().unwrap_or(""),
                pt.closed_error.as_deref().unwrap_or(""),
                &pt.oracle,
                pt.case.as_deref().unwrap_or(""),
                if pt.matched { "true" } else { "false" },
            ])
            .expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}
