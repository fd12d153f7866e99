//! Check records and the three output formats.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ambient,
    Pointwise,
    Boundary,
    Integral,
    Topology,
    Algebra,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Ambient,
        Suite::Pointwise,
        Suite::Boundary,
        Suite::Integral,
        Suite::Topology,
        Suite::Algebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ambient => "ambient",
            Suite::Pointwise => "pointwise",
            Suite::Boundary => "boundary",
            Suite::Integral => "integral",
            Suite::Topology => "topology",
            Suite::Algebra => "algebra",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

/// Human-readable name of the statement a check verifies.
pub fn statement(id: &str) -> &'static str {
    match id {
        "conformal-identity" => "∇̂_X x = μX in the conformal model",
        "gauge-unit-normalization" => "⟨x, x⟩ = 1 on the boundary sphere",
        "potential-boundary-value" => "closed form of μ₀ and μ₀ > 0",
        "boundary-sphere-umbilic" => "∂B is umbilical with principal curvatures −μ₀",
        "constant-mean-curvature" => "H is constant",
        "gauss-equation" => "|φ|² = −2(K − c) + H²/2",
        "simons-inequality" => "Simons-type inequality |φ|²p_H(|φ|) + ½Δ|φ|² ≥ ((n+2)/n)|∇|φ||²",
        "free-boundary-containment" => "∂Σ ⊂ ∂B",
        "free-boundary-orthogonality" => "Σ meets ∂B orthogonally",
        "conormal-principal" => "the conormal is a principal direction along ∂Σ",
        "boundary-identity-i" => "boundary decomposition of |φ|² through H̃ and |Ã|²",
        "boundary-identity-remark" => "|φ|² = |φ̃|² + ((n−1)H − nH̃)²/(n(n−1)) on ∂Σ",
        "boundary-identity-ii" => "ν(|φ|²) = −2μ₀(|φ̃|² + ((n−1)H − nH̃)²/(n−1)) on ∂Σ",
        "boundary-conormal-sign" => "ν(|φ|²) ≤ 0 on ∂Σ",
        "codazzi-boundary-derivative" => "conormal derivative of the principal curvatures via Codazzi",
        "umbilic-boundary-rigidity" => "Δ|φ|² ≥ 0 forces φ̃ = 0 and nH̃ = (n−1)H on ∂Σ",
        "divergence-theorem" => "∫Δ|φ|² = ∮ν(|φ|²)",
        "hardy-inequality" => "Hardy inequality for hypersurfaces of space forms with c ≤ 0",
        "first-inequality" => "first integral inequality with boundary term L(μ₀)",
        "first-inequality-3d" => "first integral inequality rewritten with 6πΣχ(Γ_i) for n = 3",
        "first-inequality-umbilical" => "right side of the first inequality vanishes on umbilical data",
        "second-inequality" => "second integral inequality for surfaces without umbilical points",
        "equality-umbilic-consistency" => "equality in the second inequality iff no umbilical points",
        "gauss-bonnet" => "Gauss–Bonnet: ∫K + ∮k_g = 2πχ(Σ)",
        "boundary-geodesic-curvature" => "k_g = μ₀ along a free boundary",
        "euler-umbilic-formula" => "χ(Σ) + θ_Σ/2 + θ_∂Σ/4 = 0 when Σ is not a disk",
        "boundary-log-identity" => "∮|φ|⁻²ν(|φ|²) = −4μ₀|∂Σ|",
        "topology-chain" => "∫p_H(|φ|) = 2(μ₀|∂Σ| − 2πχ(Σ))",
        "equality-annulus" => "equality in the second inequality forces χ(Σ) = 0",
        "symmetric-sums" => "double-sum identities of a trace-free spectrum",
        "okumura-bound" => "Okumura: |Σσ_i³| ≤ ((n−2)/√(n(n−1)))|φ|³",
        "okumura-extremal" => "Okumura equality exactly for the (1, n−1) pattern",
        "umbilical-collapse" => "right side of the first inequality vanishes when A = λI",
        "log-lemma" => "∫Δlog φ = −2πθ_Σ − πθ_∂Σ + ∮ν(φ)/φ",
        "multiplicity-recovery" => "winding numbers recover zero multiplicities",
        _ => "unregistered check",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub suite: Suite,
    pub paper_ref: &'static str,
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
}

impl Check {
    /// PASS iff `value ≤ tolerance` (NaN fails).
    pub fn measured(suite: Suite, id: &'static str, value: f64, tolerance: f64) -> Self {
        let status = if value <= tolerance { Status::Pass } else { Status::Fail };
        Check {
            id,
            suite,
            paper_ref: statement(id),
            value: Some(value),
            tolerance: Some(tolerance),
            status,
            reason: None,
            equality: None,
        }
    }

    pub fn skip(suite: Suite, id: &'static str, reason: impl Into<String>) -> Self {
        Check {
            id,
            suite,
            paper_ref: statement(id),
            value: None,
            tolerance: None,
            status: Status::Skip,
            reason: Some(reason.into()),
            equality: None,
        }
    }

    /// Hypothesis errors skip; anything else fails.
    pub fn from_error(suite: Suite, id: &'static str, err: &Error) -> Self {
        if err.is_hypothesis() {
            Check::skip(suite, id, err.to_string())
        } else {
            Check {
                status: Status::Fail,
                reason: Some(err.to_string()),
                ..Check::skip(suite, id, "")
            }
        }
    }

    pub fn with_equality(mut self, eq: bool) -> Self {
        self.equality = Some(eq);
        self
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub entry: String,
    pub suite: String,
    pub resolution: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Usage(format!("unknown format '{s}' (json, csv, text)"))),
        }
    }
}

fn num(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:e}"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Render reports. A single JSON report is an object, several an array.
pub fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("entry,suite,resolution,id,paper_ref,value,tolerance,status,equality,reason\n");
            for r in reports {
                for c in &r.checks {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{},{},{},{}",
                        csv_field(&r.entry),
                        c.suite.name(),
                        r.resolution,
                        c.id,
                        csv_field(c.paper_ref),
                        num(c.value),
                        num(c.tolerance),
                        c.status.label(),
                        c.equality.map_or(String::new(), |e| e.to_string()),
                        csv_field(c.reason.as_deref().unwrap_or("")),
                    );
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "{} [{}] resolution {}", r.entry, r.suite, r.resolution);
                for c in &r.checks {
                    let _ = write!(s, "  {} {:<30}", c.status.label(), c.id);
                    if let (Some(v), Some(t)) = (c.value, c.tolerance) {
                        let _ = write!(s, " {v:>12.4e} <= {t:.1e}");
                    }
                    if let Some(e) = c.equality {
                        let _ = write!(s, " equality={e}");
                    }
                    if let Some(reason) = &c.reason {
                        let _ = write!(s, " ({reason})");
                    }
                    s.push('\n');
                }
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_from_value() {
        assert_eq!(Check::measured(Suite::Ambient, "conformal-identity", 1e-13, 1e-12).status, Status::Pass);
        assert_eq!(Check::measured(Suite::Ambient, "conformal-identity", f64::NAN, 1e-12).status, Status::Fail);
        let skip = Check::from_error(Suite::Topology, "euler-umbilic-formula", &Error::hypothesis("x"));
        assert_eq!(skip.status, Status::Skip);
        let fail = Check::from_error(Suite::Topology, "euler-umbilic-formula", &Error::InvalidModel("y".into()));
        assert_eq!(fail.status, Status::Fail);
    }

    #[test]
    fn json_schema() {
        let r = Report {
            entry: "e".into(),
            suite: "ambient".into(),
            resolution: 32,
            checks: vec![Check::measured(Suite::Ambient, "conformal-identity", 0.0, 1e-12)],
        };
        let v: serde_json::Value = serde_json::from_str(&render(&[r], Format::Json)).unwrap();
        for key in ["entry", "suite", "resolution", "checks"] {
            assert!(v.get(key).is_some());
        }
        let c = &v["checks"][0];
        for key in ["id", "paper_ref", "value", "tolerance", "status"] {
            assert!(c.get(key).is_some());
        }
        assert_eq!(c["status"], "PASS");
    }

    #[test]
    fn every_registered_id_has_a_statement() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert_eq!(statement("nope"), "unregistered check");
    }
}
