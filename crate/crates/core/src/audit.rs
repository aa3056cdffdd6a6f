use std::fmt;

/// Outcome of checking one inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub inequality_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub citation: String,
}

impl AuditReport {
    /// Builds a report; `pass` holds iff `lhs ≤ rhs·(1 + tolerance)`.
    pub fn new(
        id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        citation: impl Into<String>,
    ) -> Self {
        let ratio = ratio(lhs, rhs);
        let pass = lhs <= rhs * (1.0 + tolerance);
        Self {
            inequality_id: id.into(),
            lhs,
            rhs,
            ratio,
            tolerance,
            pass,
            citation: citation.into(),
        }
    }

    pub const CSV_HEADER: &'static str = "inequality_id,lhs,rhs,ratio,tolerance,pass,citation";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{},\"{}\"",
            self.inequality_id,
            self.lhs,
            self.rhs,
            self.ratio,
            self.tolerance,
            self.pass,
            self.citation.replace('"', "'")
        )
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: lhs = {:.6e}, rhs = {:.6e}, ratio = {:.6e} ({})",
            if self.pass { "pass" } else { "FAIL" },
            self.inequality_id,
            self.lhs,
            self.rhs,
            self.ratio,
            self.citation
        )
    }
}

/// `lhs / rhs`, with `0/0 = 0` and `x/0 = ∞` for positive `x`.
pub fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        if lhs <= 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    }
}
