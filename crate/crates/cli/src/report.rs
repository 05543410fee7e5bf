use std::fmt::Write as _;

use serde::Serialize;

/// Outcome of one subcommand, printed as text or as JSON.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub property: String,
    pub verdict: bool,
    /// Largest residual of the structured test; `null` when no single number applies.
    pub residual: Option<f64>,
    pub tol: f64,
    pub scale: Option<f64>,
    pub slices: Vec<SliceReport>,
    pub lambda: Vec<Option<[f64; 2]>>,
    pub oracle: Option<OracleReport>,
    pub timings: Timings,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    pub slice: usize,
    pub classification: String,
    pub lambda: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub verdict: bool,
    pub agrees: bool,
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub structured_ns: u64,
    pub oracle_ns: Option<u64>,
}

impl Report {
    pub fn new(command: Vec<String>, property: impl Into<String>, tol: f64) -> Self {
        Self {
            command,
            property: property.into(),
            verdict: false,
            residual: None,
            tol,
            scale: None,
            slices: Vec::new(),
            lambda: Vec::new(),
            oracle: None,
            timings: Timings::default(),
        }
    }

    pub fn disagrees(&self) -> bool {
        self.oracle.as_ref().is_some_and(|o| !o.agrees)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.property);
        let _ = writeln!(out, "  verdict: {}", if self.verdict { "holds" } else { "fails" });
        if let Some(r) = self.residual {
            let _ = write!(out, "  residual: {r:e} (tol {:e}", self.tol);
            if let Some(s) = self.scale {
                let _ = write!(out, " x scale {s}");
            }
            out.push_str(")\n");
        }
        for s in &self.slices {
            let _ = write!(out, "  slice {}: {}", s.slice, s.classification);
            if let Some([re, im]) = s.lambda {
                let _ = write!(out, ", lambda = {re} {} {}i", if im < 0.0 { '-' } else { '+' }, im.abs());
            }
            out.push('\n');
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                out,
                "  oracle: {} ({})",
                if o.verdict { "holds" } else { "fails" },
                if o.agrees { "agrees" } else { "DISAGREES" }
            );
        }
        let _ = write!(out, "  structured time: {} ns", self.timings.structured_ns);
        if let Some(t) = self.timings.oracle_ns {
            let _ = write!(out, ", oracle time: {t} ns");
        }
        out.push('\n');
        out
    }
}
