//! Structured command output and its plain, JSON and CSV renderings.
//!
//! All three formats are produced from the same payload structs; JSON field
//! order is declaration order, and every list is emitted in a fixed order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sphpoly::PiFraction;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord<P> {
    pub schema_version: String,
    pub command: String,
    pub n: u64,
    pub payload: P,
}

impl<P: Serialize> OutputRecord<P> {
    pub fn new(command: &str, n: u64, payload: P) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            n,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("payloads serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frac {
    pub num: u64,
    pub den: u64,
}

impl From<PiFraction> for Frac {
    fn from(x: PiFraction) -> Self {
        Frac {
            num: x.num(),
            den: x.den(),
        }
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn pi(x: &Frac) -> String {
    if x.num == 0 {
        "0".to_string()
    } else {
        format!("{x}·π")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    pub alpha: u64,
    pub beta: u64,
    pub value: Frac,
    /// Decimal string; counts outgrow every fixed-width integer.
    pub count: String,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRow {
    pub i: usize,
    pub value: Frac,
    pub strata: Vec<StratumRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPayload {
    pub m: u64,
    pub levels: Vec<LevelRow>,
    pub phi: u64,
    pub critical_points: String,
    pub psi: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionRow {
    /// "interval" or "at-critical".
    pub kind: String,
    /// Interval subscript `i` for `(ζ_i, ζ_{i+1})`, or the level subscript.
    pub i: usize,
    pub lower: Frac,
    /// Absent for the top interval, which ends at π.
    pub upper: Option<Frac>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionRow {
    pub level: usize,
    pub value: Frac,
    pub alpha: u64,
    pub beta: u64,
    pub count: String,
    pub index: u64,
    pub increment: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiPayload {
    pub a: Frac,
    pub chi: String,
    pub position: PositionRow,
    pub seed: i64,
    pub contributions: Vec<ContributionRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub value: String,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaRow {
    pub i: usize,
    pub lower: Frac,
    pub upper: Frac,
    pub omega: String,
    pub closed_low: Option<ClosedFormCheck>,
    pub closed_high: Option<ClosedFormCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaPayload {
    pub phi: usize,
    pub entries: Vec<OmegaRow>,
    pub recurrences_passed: bool,
    pub closed_forms_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStratumRow {
    pub alpha: u64,
    pub beta: u64,
    pub value: Frac,
    pub configs: u64,
    pub expected: String,
    pub oracle_index: Option<u64>,
    pub table_index: u64,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLevelRow {
    pub value: Frac,
    pub configs: u64,
    pub expected: String,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePayload {
    pub words: u64,
    pub configs: u64,
    pub critical_points: String,
    pub strata: Vec<OracleStratumRow>,
    pub levels: Vec<OracleLevelRow>,
    pub all_matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub n_max: u64,
    pub oracle_max: u64,
    pub checks: Vec<CheckRow>,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub n: u64,
    pub m: u64,
    pub critical_points: String,
    pub phi: u64,
    pub psi_capital: u64,
    pub critical_points_ratio: f64,
    pub phi_ratio: f64,
    pub psi_capital_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsPayload {
    pub samples: Vec<AsymptoticRow>,
}

/// Long decimal strings are elided in plain tables.
fn short(s: &str) -> String {
    if s.len() <= 24 {
        s.to_string()
    } else {
        format!(
            "{}…{} ({} digits)",
            &s[..8],
            &s[s.len() - 8..],
            s.trim_start_matches('-').len()
        )
    }
}

fn csv_out(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub trait Render {
    fn plain(&self, n: u64) -> String;
    fn csv(&self) -> String;
}

impl Render for SpectrumPayload {
    fn plain(&self, n: u64) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "critical spectrum for n = {n} (m = {})", self.m);
        let _ = writeln!(
            out,
            "{:>6}  {:<12} {:>6} {:>6} {:>24} {:>6}",
            "i", "value", "alpha", "beta", "count", "index"
        );
        for lvl in &self.levels {
            for (j, st) in lvl.strata.iter().enumerate() {
                let (i, v) = if j == 0 {
                    (lvl.i.to_string(), pi(&lvl.value))
                } else {
                    (String::new(), String::new())
                };
                let _ = writeln!(
                    out,
                    "{:>6}  {:<12} {:>6} {:>6} {:>24} {:>6}",
                    i,
                    v,
                    st.alpha,
                    st.beta,
                    short(&st.count),
                    st.index
                );
            }
        }
        let _ = writeln!(
            out,
            "Φ(n) = {}, |U_n| = {}, ψ(n) = {}",
            self.phi, self.critical_points, self.psi
        );
        out
    }

    fn csv(&self) -> String {
        let rows = self
            .levels
            .iter()
            .flat_map(|l| {
                l.strata.iter().map(move |s| {
                    vec![
                        l.i.to_string(),
                        l.value.to_string(),
                        s.alpha.to_string(),
                        s.beta.to_string(),
                        s.count.clone(),
                        s.index.to_string(),
                    ]
                })
            })
            .collect();
        csv_out(&["level", "value", "alpha", "beta", "count", "index"], rows)
    }
}

impl Render for ChiPayload {
    fn plain(&self, n: u64) -> String {
        let mut out = String::new();
        let p = &self.position;
        let where_ = match p.kind.as_str() {
            "at-critical" => format!("at-critical: a = ζ_{} = {}", p.i, pi(&p.lower)),
            _ => format!(
                "interval {}: {} < a < {}",
                p.i,
                pi(&p.lower),
                p.upper.as_ref().map(pi).unwrap_or_else(|| "π".into())
            ),
        };
        let _ = writeln!(out, "χ(M_{n}({}·π)) = {}", self.a, self.chi);
        let _ = writeln!(out, "position: {where_}");
        let _ = writeln!(out, "seed χ = {} above the top critical value", self.seed);
        if !self.contributions.is_empty() {
            let _ = writeln!(
                out,
                "{:>6}  {:<12} {:>6} {:>6} {:>6} {:>24}",
                "level", "value", "alpha", "beta", "index", "increment"
            );
        }
        for c in &self.contributions {
            let _ = writeln!(
                out,
                "{:>6}  {:<12} {:>6} {:>6} {:>6} {:>24}",
                c.level,
                pi(&c.value),
                c.alpha,
                c.beta,
                c.index,
                short(&c.increment)
            );
        }
        out
    }

    fn csv(&self) -> String {
        let rows = self
            .contributions
            .iter()
            .map(|c| {
                vec![
                    c.level.to_string(),
                    c.value.to_string(),
                    c.alpha.to_string(),
                    c.beta.to_string(),
                    c.count.clone(),
                    c.index.to_string(),
                    c.increment.clone(),
                ]
            })
            .collect();
        let mut out = csv_out(
            &[
                "level",
                "value",
                "alpha",
                "beta",
                "count",
                "index",
                "increment",
            ],
            rows,
        );
        out.push_str(&csv_out(
            &["a", "chi", "position", "i"],
            vec![vec![
                self.a.to_string(),
                self.chi.clone(),
                self.position.kind.clone(),
                self.position.i.to_string(),
            ]],
        ));
        out
    }
}

fn closed_cell(c: &Option<ClosedFormCheck>) -> String {
    match c {
        None => "-".into(),
        Some(c) if c.matched => "ok".into(),
        Some(c) => format!("MISMATCH ({})", c.value),
    }
}

impl Render for OmegaPayload {
    fn plain(&self, n: u64) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Ω table for n = {n} (Φ(n) = {})", self.phi);
        let _ = writeln!(
            out,
            "{:>6}  {:<28} {:>24}  {:<6} {:<6}",
            "i", "interval", "omega", "low", "high"
        );
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:>6}  {:<28} {:>24}  {:<6} {:<6}",
                e.i,
                format!("({}, {})", pi(&e.lower), pi(&e.upper)),
                short(&e.omega),
                closed_cell(&e.closed_low),
                closed_cell(&e.closed_high)
            );
        }
        let _ = writeln!(
            out,
            "closed forms: {}, recurrences: {}",
            if self.closed_forms_passed {
                "ok"
            } else {
                "FAILED"
            },
            if self.recurrences_passed {
                "ok"
            } else {
                "FAILED"
            }
        );
        out
    }

    fn csv(&self) -> String {
        let cell = |c: &Option<ClosedFormCheck>| match c {
            None => String::new(),
            Some(c) => c.matched.to_string(),
        };
        let rows = self
            .entries
            .iter()
            .map(|e| {
                vec![
                    e.i.to_string(),
                    e.lower.to_string(),
                    e.upper.to_string(),
                    e.omega.clone(),
                    cell(&e.closed_low),
                    cell(&e.closed_high),
                ]
            })
            .collect();
        csv_out(
            &["i", "lower", "upper", "omega", "closed_low", "closed_high"],
            rows,
        )
    }
}

impl Render for OraclePayload {
    fn plain(&self, n: u64) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "brute-force census for n = {n}: {} words, {} configurations (|U_n| = {})",
            self.words, self.configs, self.critical_points
        );
        let _ = writeln!(
            out,
            "{:>6} {:>6}  {:<12} {:>12} {:>12} {:>6} {:>6}  ok",
            "alpha", "beta", "value", "configs", "expected", "index", "table"
        );
        for s in &self.strata {
            let _ = writeln!(
                out,
                "{:>6} {:>6}  {:<12} {:>12} {:>12} {:>6} {:>6}  {}",
                s.alpha,
                s.beta,
                pi(&s.value),
                s.configs,
                s.expected,
                s.oracle_index
                    .map(|x| x.to_string())
                    .unwrap_or_else(|| "?".into()),
                s.table_index,
                if s.matched { "ok" } else { "MISMATCH" }
            );
        }
        let bad_levels = self.levels.iter().filter(|l| !l.matched).count();
        let _ = writeln!(
            out,
            "levels: {} checked, {} mismatched; overall: {}",
            self.levels.len(),
            bad_levels,
            if self.all_matched { "ok" } else { "FAILED" }
        );
        out
    }

    fn csv(&self) -> String {
        let rows = self
            .strata
            .iter()
            .map(|s| {
                vec![
                    s.alpha.to_string(),
                    s.beta.to_string(),
                    s.value.to_string(),
                    s.configs.to_string(),
                    s.expected.clone(),
                    s.oracle_index.map(|x| x.to_string()).unwrap_or_default(),
                    s.table_index.to_string(),
                    s.matched.to_string(),
                ]
            })
            .collect();
        csv_out(
            &[
                "alpha",
                "beta",
                "value",
                "configs",
                "expected",
                "oracle_index",
                "table_index",
                "matched",
            ],
            rows,
        )
    }
}

impl Render for VerifyPayload {
    fn plain(&self, _n: u64) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {:<36} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed (n <= {}, oracle n <= {})",
            self.passed, self.failed, self.n_max, self.oracle_max
        );
        out
    }

    fn csv(&self) -> String {
        let rows = self
            .checks
            .iter()
            .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
            .collect();
        csv_out(&["name", "passed", "detail"], rows)
    }
}

impl Render for AsymptoticsPayload {
    fn plain(&self, _n: u64) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>8} {:>26} {:>10} {:>10} {:>10} {:>10} {:>10}",
            "n", "|U_n|", "Φ(n)", "Ψ(n)", "U ratio", "Φ ratio", "Ψ ratio"
        );
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{:>8} {:>26} {:>10} {:>10} {:>10.6} {:>10.6} {:>10.6}",
                s.n,
                short(&s.critical_points),
                s.phi,
                s.psi_capital,
                s.critical_points_ratio,
                s.phi_ratio,
                s.psi_capital_ratio
            );
        }
        out
    }

    fn csv(&self) -> String {
        let rows = self
            .samples
            .iter()
            .map(|s| {
                vec![
                    s.n.to_string(),
                    s.m.to_string(),
                    s.critical_points.clone(),
                    s.phi.to_string(),
                    s.psi_capital.to_string(),
                    s.critical_points_ratio.to_string(),
                    s.phi_ratio.to_string(),
                    s.psi_capital_ratio.to_string(),
                ]
            })
            .collect();
        csv_out(
            &[
                "n",
                "m",
                "critical_points",
                "phi",
                "psi_capital",
                "critical_points_ratio",
                "phi_ratio",
                "psi_capital_ratio",
            ],
            rows,
        )
    }
}
