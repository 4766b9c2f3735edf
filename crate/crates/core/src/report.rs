//! Structured analysis reports: one schema (`report_version: 1`) for every
//! CLI command, serializable to JSON and round-trippable. Exact numbers are
//! carried as canonical strings, numeric ones as floats with error data.
//! Every numeric-mode lattice entering a report gets a caveat line stating
//! the direction of the uncertainty (an undetected relation would make the
//! reported bound an under-estimate).

use crate::floquet::MonodromyReport;
use crate::quasihomog::{BalanceData, Theorem4Report};
use crate::resonance::{Lattice, LatticeMode};
use crate::scalar::ScalarValue;
use crate::spectral::{SpectrumMode, SpectrumReport};
use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueJson {
    Exact { value: String },
    Numeric { re: f64, im: f64 },
}

impl From<&ScalarValue> for ValueJson {
    fn from(v: &ScalarValue) -> Self {
        match v {
            ScalarValue::Exact(g) => ValueJson::Exact { value: g.to_string() },
            ScalarValue::Numeric(z) => ValueJson::Numeric { re: z.re, im: z.im },
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct EigenJson {
    #[serde(flatten)]
    pub value: ValueJson,
    pub error_radius: f64,
    pub multiplicity: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SpectrumJson {
    pub mode: String,
    pub values: Vec<EigenJson>,
}

impl From<&SpectrumReport> for SpectrumJson {
    fn from(s: &SpectrumReport) -> Self {
        SpectrumJson {
            mode: match s.mode {
                SpectrumMode::Exact => "exact".into(),
                SpectrumMode::Numeric => "numeric".into(),
            },
            values: s
                .values
                .iter()
                .map(|v| EigenJson {
                    value: (&v.value).into(),
                    error_radius: v.error_radius,
                    multiplicity: v.multiplicity,
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct LatticeJson {
    pub nvars: usize,
    pub mode: String,
    pub rank: usize,
    pub basis: Vec<Vec<String>>,
    pub residuals: Vec<f64>,
    pub tolerance: Option<f64>,
    pub search_bound: Option<i64>,
}

impl From<&Lattice> for LatticeJson {
    fn from(l: &Lattice) -> Self {
        LatticeJson {
            nvars: l.nvars,
            mode: match l.mode {
                LatticeMode::Exact => "exact".into(),
                LatticeMode::Numeric => "numeric".into(),
            },
            rank: l.rank,
            basis: l
                .basis
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
            residuals: l.residuals.clone(),
            tolerance: l.tolerance,
            search_bound: l.search_bound,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BoundJson {
    /// T1 | T3 | T4 | T5
    pub theorem: String,
    /// `None` when no bound could be derived (e.g. no balances found).
    pub bound: Option<usize>,
    /// True when the bound is conditional (numeric lattice, or minimum over
    /// a possibly incomplete balance set).
    pub conditional: bool,
    pub note: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BalanceJson {
    pub point: Vec<ValueJson>,
    pub residual: f64,
    pub k_matrix: Vec<Vec<ValueJson>>,
    pub exponents: SpectrumJson,
    pub d_c: usize,
    pub lattice: LatticeJson,
}

impl From<&BalanceData> for BalanceJson {
    fn from(b: &BalanceData) -> Self {
        let k_matrix = match &b.k_matrix {
            crate::matrix::Matrix::Exact(m) => (0..m.rows)
                .map(|i| {
                    (0..m.cols)
                        .map(|j| ValueJson::Exact { value: m[(i, j)].to_string() })
                        .collect()
                })
                .collect(),
            crate::matrix::Matrix::Numeric(m) => (0..m.rows)
                .map(|i| {
                    (0..m.cols)
                        .map(|j| ValueJson::Numeric { re: m[(i, j)].re, im: m[(i, j)].im })
                        .collect()
                })
                .collect(),
        };
        BalanceJson {
            point: b.balance.point.iter().map(Into::into).collect(),
            residual: b.balance.residual,
            k_matrix,
            exponents: (&b.exponents).into(),
            d_c: b.d_c,
            lattice: (&b.lattice).into(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MonodromyJson {
    /// row-major [re, im] pairs
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub multipliers: SpectrumJson,
    pub steps: usize,
    pub est_error: f64,
    pub liouville_deviation: f64,
}

impl From<&MonodromyReport> for MonodromyJson {
    fn from(r: &MonodromyReport) -> Self {
        let n = r.monodromy.rows;
        MonodromyJson {
            matrix: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| [r.monodromy[(i, j)].re, r.monodromy[(i, j)].im])
                        .collect()
                })
                .collect(),
            multipliers: (&r.multipliers).into(),
            steps: r.stats.steps,
            est_error: r.stats.est_error,
            liouville_deviation: r.liouville_deviation,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ComparisonJson {
    pub theorem: String,
    pub bound: Option<usize>,
    pub rank: usize,
    pub consistent: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct OracleJson {
    pub integrals: Vec<String>,
    pub independence_rank: usize,
    pub trials: usize,
    pub sample_count: usize,
    pub comparisons: Vec<ComparisonJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub report_version: u32,
    pub command: String,
    pub input: String,
    pub seed: Option<u64>,
    pub spectrum: Option<SpectrumJson>,
    pub lattice: Option<LatticeJson>,
    pub bounds: Vec<BoundJson>,
    pub balances: Option<Vec<BalanceJson>>,
    pub monodromy: Option<MonodromyJson>,
    pub oracle: Option<OracleJson>,
    pub caveats: Vec<String>,
    /// Wall time; omitted from machine output so identical seeds give
    /// byte-identical documents.
    pub timing_ms: Option<f64>,
}

pub const NUMERIC_LATTICE_CAVEAT: &str = "numeric-mode lattice: rank is a candidate from integer-relation detection; an undetected relation would make the reported bound an UNDER-estimate";
pub const BALANCE_COMPLETENESS_CAVEAT: &str = "bound is min over the balances found; any balance missed by the search could only LOWER it (upper bound conditional on balance completeness)";

impl AnalysisReport {
    pub fn new(command: &str, input: &str) -> Self {
        AnalysisReport {
            report_version: REPORT_VERSION,
            command: command.into(),
            input: input.into(),
            seed: None,
            spectrum: None,
            lattice: None,
            bounds: vec![],
            balances: None,
            monodromy: None,
            oracle: None,
            caveats: vec![],
            timing_ms: None,
        }
    }

    /// Attach a lattice, adding the mandatory caveat for numeric mode.
    pub fn set_lattice(&mut self, lattice: &Lattice) {
        if lattice.mode == LatticeMode::Numeric
            && !self.caveats.iter().any(|c| c == NUMERIC_LATTICE_CAVEAT)
        {
            self.caveats.push(NUMERIC_LATTICE_CAVEAT.into());
        }
        self.lattice = Some(lattice.into());
    }

    pub fn set_balances(&mut self, report: &Theorem4Report) {
        let mut out = Vec::with_capacity(report.balances.len());
        for b in &report.balances {
            if b.lattice.mode == LatticeMode::Numeric
                && !self.caveats.iter().any(|c| c == NUMERIC_LATTICE_CAVEAT)
            {
                self.caveats.push(NUMERIC_LATTICE_CAVEAT.into());
            }
            out.push(b.into());
        }
        self.balances = Some(out);
        if !self.caveats.iter().any(|c| c == BALANCE_COMPLETENESS_CAVEAT) {
            self.caveats.push(BALANCE_COMPLETENESS_CAVEAT.into());
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
