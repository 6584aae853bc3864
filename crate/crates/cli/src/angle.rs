//! Side-length input: exact `p/q` (times π) or a snapped decimal.

use sphpoly::PiFraction;

use crate::CliError;

/// Largest distance between a decimal and its snapped fraction.
pub const SNAP_TOLERANCE: f64 = 1e-9;

pub fn parse_angle(text: &str, snap_den: Option<u64>) -> Result<PiFraction, CliError> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| CliError::invalid(format!("bad numerator in angle {text:?}")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| CliError::invalid(format!("bad denominator in angle {text:?}")))?;
        return PiFraction::interior(p, q)
            .map_err(|e| CliError::invalid(format!("a = {text}·π must lie in (0, π): {e}")));
    }
    if let Ok(p) = text.parse::<i64>() {
        return PiFraction::interior(p, 1)
            .map_err(|e| CliError::invalid(format!("a = {text}·π must lie in (0, π): {e}")));
    }
    let x: f64 = text
        .parse()
        .map_err(|_| CliError::invalid(format!("cannot parse angle {text:?}")))?;
    if !(x > 0.0 && x < 1.0) {
        return Err(CliError::invalid(format!(
            "a = {text}·π must lie in (0, π)"
        )));
    }
    let Some(max_den) = snap_den else {
        return Err(CliError::invalid(format!(
            "decimal angle {text:?} needs --snap-den; or give it exactly as p/q"
        )));
    };
    snap(x, max_den).ok_or_else(|| {
        CliError::snap(format!(
            "no fraction with denominator <= {max_den} lies within {SNAP_TOLERANCE:e} of {text}"
        ))
    })
}

/// The fraction with the smallest denominator `<= max_den` within
/// [`SNAP_TOLERANCE`] of `x`, if it lies strictly inside `(0, 1)`.
pub fn snap(x: f64, max_den: u64) -> Option<PiFraction> {
    (1..=max_den).find_map(|q| {
        let p = (x * q as f64).round();
        if p <= 0.0 || p >= q as f64 || (x - p / q as f64).abs() > SNAP_TOLERANCE {
            return None;
        }
        PiFraction::interior(p as i64, q as i64).ok()
    })
}
