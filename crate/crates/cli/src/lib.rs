//! Command dispatch for the `sphpoly` binary.

pub mod angle;
pub mod args;
pub mod report;
pub mod verify;

use num_bigint::BigUint;
use serde::Serialize;
use sphpoly::euler::{
    interval_table, omega_closed_high, omega_closed_low, recurrence_check, EMPTY_LEVEL_CHI,
};
use sphpoly::oracle::census;
use sphpoly::spectrum::{count_critical_points, psi};
use sphpoly::{build_spectrum, chi_in, AnglePosition, Spectrum};

use crate::args::{Cli, Command, Format};
use crate::report::*;
use crate::verify::{registry, run_checks, Check, VerifyConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_SNAP: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Invalid(String),
    Snap(String),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn snap(msg: impl Into<String>) -> Self {
        CliError::Snap(msg.into())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Snap(_) => EXIT_SNAP,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Snap(m) => f.write_str(m),
        }
    }
}

impl From<sphpoly::Error> for CliError {
    fn from(e: sphpoly::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// Rendered output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn emit<P: Serialize + Render>(
    format: Format,
    command: &str,
    n: u64,
    payload: P,
    ok: bool,
) -> Outcome {
    let text = match format {
        Format::Plain => payload.plain(n),
        Format::Csv => payload.csv(),
        Format::Json => {
            let mut s = OutputRecord::new(command, n, payload).to_json();
            s.push('\n');
            s
        }
    };
    Outcome {
        text,
        code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}

fn count_string(x: &BigUint) -> String {
    x.to_str_radix(10)
}

pub fn spectrum_payload(sp: &Spectrum) -> Result<SpectrumPayload, CliError> {
    let levels = sp
        .levels()
        .iter()
        .enumerate()
        .map(|(i, l)| LevelRow {
            i: i + 1,
            value: l.value.into(),
            strata: l
                .strata
                .iter()
                .map(|s| StratumRow {
                    alpha: s.pair.alpha(),
                    beta: s.pair.beta(),
                    value: s.value.into(),
                    count: count_string(&s.count),
                    index: s.index,
                })
                .collect(),
        })
        .collect();
    Ok(SpectrumPayload {
        m: sp.m(),
        levels,
        phi: sp.len() as u64,
        critical_points: count_string(&count_critical_points(sp.n())?),
        psi: psi(sp.n())?,
    })
}

pub fn chi_payload(sp: &Spectrum, a: &sphpoly::PiFraction) -> Result<ChiPayload, CliError> {
    let r = chi_in(sp, a)?;
    let position = match r.position {
        AnglePosition::Interval(i) => PositionRow {
            kind: "interval".into(),
            i,
            lower: sp.zeta(i).expect("in range").into(),
            upper: sp.zeta(i + 1).map(Frac::from),
        },
        AnglePosition::AtCritical { level, value } => PositionRow {
            kind: "at-critical".into(),
            i: level,
            lower: value.into(),
            upper: Some(value.into()),
        },
    };
    Ok(ChiPayload {
        a: (*a).into(),
        chi: r.chi.to_string(),
        position,
        seed: EMPTY_LEVEL_CHI,
        contributions: r
            .contributions
            .iter()
            .map(|c| ContributionRow {
                level: c.level,
                value: c.value.into(),
                alpha: c.pair.alpha(),
                beta: c.pair.beta(),
                count: count_string(&c.count),
                index: c.index,
                increment: c.increment.to_string(),
            })
            .collect(),
    })
}

pub fn omega_payload(sp: &Spectrum) -> Result<OmegaPayload, CliError> {
    let n = sp.n();
    let m = sp.m();
    let phi = sp.len();
    let table = interval_table(sp);
    let mut entries = Vec::with_capacity(phi);
    for (i, omega) in table.iter().take(phi).enumerate() {
        let closed_low = if i as u64 <= m / 2 + 1 {
            let v = omega_closed_low(n, i as u64)?;
            Some(ClosedFormCheck {
                matched: &v == omega,
                value: v.to_string(),
            })
        } else {
            None
        };
        let j = phi - 1 - i;
        let closed_high = if j as u64 <= 2 * m / 3 {
            let v = omega_closed_high(n, j as u64)?;
            Some(ClosedFormCheck {
                matched: &v == omega,
                value: v.to_string(),
            })
        } else {
            None
        };
        entries.push(OmegaRow {
            i,
            lower: sp.zeta(i).expect("in range").into(),
            upper: sp.zeta(i + 1).expect("below top").into(),
            omega: omega.to_string(),
            closed_low,
            closed_high,
        });
    }
    let closed_forms_passed = entries.iter().all(|e| {
        e.closed_low.as_ref().is_none_or(|c| c.matched)
            && e.closed_high.as_ref().is_none_or(|c| c.matched)
    });
    Ok(OmegaPayload {
        phi,
        entries,
        recurrences_passed: recurrence_check(n)?.passed(),
        closed_forms_passed,
    })
}

pub fn oracle_payload(n: u64, jobs: Option<usize>) -> Result<OraclePayload, CliError> {
    let cen = census(n, jobs)?;
    let sp = build_spectrum(n)?;
    let critical_points = count_critical_points(n)?;
    let strata: Vec<OracleStratumRow> = sp
        .levels()
        .iter()
        .flat_map(|l| l.strata.iter())
        .map(|st| {
            let configs = cen.by_stratum.get(&st.pair).copied().unwrap_or(0);
            let oracle_index = cen.index_by_stratum.get(&st.pair).copied();
            OracleStratumRow {
                alpha: st.pair.alpha(),
                beta: st.pair.beta(),
                value: st.value.into(),
                configs,
                expected: count_string(&st.count),
                oracle_index,
                table_index: st.index,
                matched: BigUint::from(configs) == *st.count
                    && oracle_index == Some(st.index)
                    && !cen.index_conflicts.contains(&st.pair),
            }
        })
        .collect();
    let levels: Vec<OracleLevelRow> = sp
        .levels()
        .iter()
        .map(|l| {
            let configs = cen.by_value.get(&l.value).copied().unwrap_or(0);
            let expected = l.total_count();
            OracleLevelRow {
                value: l.value.into(),
                configs,
                matched: BigUint::from(configs) == expected,
                expected: count_string(&expected),
            }
        })
        .collect();
    let all_matched = BigUint::from(cen.total) == critical_points
        && cen.by_stratum.len() == strata.len()
        && cen.by_value.len() == levels.len()
        && strata.iter().all(|s| s.matched)
        && levels.iter().all(|l| l.matched);
    Ok(OraclePayload {
        words: cen.words,
        configs: cen.total,
        critical_points: count_string(&critical_points),
        strata,
        levels,
        all_matched,
    })
}

pub fn asymptotics_payload(n_max: u64) -> Result<AsymptoticsPayload, CliError> {
    let samples = sphpoly::asymptotics::log_spaced_orders(n_max)
        .into_iter()
        .map(|n| {
            let s = sphpoly::asymptotics::sample(n)?;
            Ok(AsymptoticRow {
                n: s.n,
                m: s.m,
                critical_points: count_string(&s.critical_points),
                phi: s.phi,
                psi_capital: s.psi_capital,
                critical_points_ratio: s.critical_points_ratio,
                phi_ratio: s.phi_ratio,
                psi_capital_ratio: s.psi_capital_ratio,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if samples.is_empty() {
        return Err(CliError::invalid(format!(
            "--n-max {n_max} must be at least 3"
        )));
    }
    Ok(AsymptoticsPayload { samples })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Spectrum(a) => {
            let sp = build_spectrum(a.n)?;
            Ok(emit(format, "spectrum", a.n, spectrum_payload(&sp)?, true))
        }
        Command::Chi(a) => {
            let angle = angle::parse_angle(&a.a, a.snap_den)?;
            let sp = build_spectrum(a.n)?;
            Ok(emit(format, "chi", a.n, chi_payload(&sp, &angle)?, true))
        }
        Command::Omega(a) => {
            let sp = build_spectrum(a.n)?;
            let p = omega_payload(&sp)?;
            let ok = p.recurrences_passed && p.closed_forms_passed;
            Ok(emit(format, "omega", a.n, p, ok))
        }
        Command::Oracle(a) => {
            let p = oracle_payload(a.n, cli.jobs)?;
            let ok = p.all_matched;
            Ok(emit(format, "oracle", a.n, p, ok))
        }
        Command::Verify(a) => {
            if a.n_max < 3 {
                return Err(CliError::invalid(format!(
                    "--n-max {} must be at least 3",
                    a.n_max
                )));
            }
            let mut checks = registry();
            if let Some(name) = &a.inject_fault {
                checks.push(Check::failing(name));
            }
            let cfg = VerifyConfig {
                n_max: a.n_max,
                oracle_max: a.oracle_max,
                jobs: cli.jobs,
            };
            let p = run_checks(&checks, &cfg)?;
            let ok = p.failed == 0;
            Ok(emit(format, "verify", a.n_max, p, ok))
        }
        Command::Asymptotics(a) => {
            let p = asymptotics_payload(a.n_max)?;
            Ok(emit(format, "asymptotics", a.n_max, p, true))
        }
    }
}
