//! χ(M_n(a)) by Morse-surgery descent.
//!
//! Above the highest critical value the level set is empty, so the descent
//! starts from χ = 0 on `(ζ_Φ, π)`. Passing downward through a non-degenerate
//! critical point of index `r` changes χ by `2(−1)^(r+1)`; stopping exactly on
//! its level changes it by `(−1)^(r+1)`. Levels carrying several critical
//! points add their contributions independently.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binomial, binomial_row, BigCount, PiFraction};
use crate::error::{Error, Result};
use crate::spectrum::{build_spectrum, half_order, GammaPair, Spectrum};

/// χ on `(ζ_Φ, π)`, where no polygon closes up.
pub const EMPTY_LEVEL_CHI: i64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnglePosition {
    /// `ζ_i < a < ζ_{i+1}`, with `ζ_0 = 0` and `ζ_{Φ+1} = π`.
    Interval(usize),
    /// `a = ζ_level`, `1 <= level <= Φ`.
    AtCritical { level: usize, value: PiFraction },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    /// Subscript of the level crossed, 1-based.
    pub level: usize,
    pub value: PiFraction,
    pub pair: GammaPair,
    pub index: u64,
    pub count: Arc<BigCount>,
    pub increment: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiResult {
    pub chi: BigInt,
    pub position: AnglePosition,
    /// Ordered from the top level downward.
    pub contributions: Vec<Contribution>,
}

fn sign(even_when_positive: u64) -> BigInt {
    if even_when_positive.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn check_angle(a: &PiFraction) -> Result<()> {
    if a.is_zero() {
        return Err(Error::ZeroAngle);
    }
    Ok(())
}

pub fn locate(spectrum: &Spectrum, a: &PiFraction) -> Result<AnglePosition> {
    check_angle(a)?;
    Ok(match spectrum.search(a) {
        Ok(j) => AnglePosition::AtCritical {
            level: j + 1,
            value: *a,
        },
        Err(j) => AnglePosition::Interval(j),
    })
}

/// χ(M_n(a)) for a spectrum that has already been built.
pub fn chi_in(spectrum: &Spectrum, a: &PiFraction) -> Result<ChiResult> {
    let position = locate(spectrum, a)?;
    // Levels strictly above `a` are crossed fully; a level equal to `a` only
    // contributes its cone term.
    let (first_full, partial) = match position {
        AnglePosition::Interval(j) => (j, None),
        AnglePosition::AtCritical { level, .. } => (level, Some(level - 1)),
    };

    let mut chi = BigInt::from(EMPTY_LEVEL_CHI);
    let mut contributions = Vec::new();
    let levels = spectrum.levels();
    let mut push = |li: usize, factor: u32, chi: &mut BigInt| {
        let level = &levels[li];
        for st in &level.strata {
            let increment = st.signed_count() * factor;
            *chi += &increment;
            contributions.push(Contribution {
                level: li + 1,
                value: level.value,
                pair: st.pair,
                index: st.index,
                count: Arc::clone(&st.count),
                increment,
            });
        }
    };
    for li in (first_full..levels.len()).rev() {
        push(li, 2, &mut chi);
    }
    if let Some(li) = partial {
        push(li, 1, &mut chi);
    }
    Ok(ChiResult {
        chi,
        position,
        contributions,
    })
}

pub fn chi(n: u64, a: &PiFraction) -> Result<ChiResult> {
    check_angle(a)?;
    chi_in(&build_spectrum(n)?, a)
}

/// χ on every open interval, bottom to top: entry `i` is the value on
/// `(ζ_i, ζ_{i+1})`, so the last entry is the empty top region.
pub fn interval_table(spectrum: &Spectrum) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); spectrum.len() + 1];
    out[spectrum.len()] = BigInt::from(EMPTY_LEVEL_CHI);
    for (li, level) in spectrum.levels().iter().enumerate().rev() {
        out[li] = &out[li + 1] + level.half_jump() * 2u32;
    }
    out
}

/// Ω_0 … Ω_{Φ−1}.
pub fn omega_table(spectrum: &Spectrum) -> Vec<BigInt> {
    let mut t = interval_table(spectrum);
    t.pop();
    t
}

/// The exact midpoint of `(ζ_i, ζ_{i+1})`, `0 <= i <= Φ`.
pub fn interval_sample(spectrum: &Spectrum, i: usize) -> Result<PiFraction> {
    let phi = spectrum.len();
    if i > phi {
        return Err(Error::IndexOutOfRange {
            what: "interval",
            index: i as i64,
            lo: 0,
            hi: phi as i64,
        });
    }
    let lo = spectrum.zeta(i).expect("in range");
    let (hp, hq) = match spectrum.zeta(i + 1) {
        Some(z) => (z.num(), z.den()),
        None => (1, 1),
    };
    let num = lo.num() as u128 * hq as u128 + hp as u128 * lo.den() as u128;
    let den = 2 * lo.den() as u128 * hq as u128;
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    assert!(den <= u64::MAX as u128, "midpoint denominator overflow");
    Ok(PiFraction::reduce_unsigned(num as u64, den as u64))
}

/// Ω_i = χ(M_n(a)) for `a ∈ (ζ_i, ζ_{i+1})`, `0 <= i <= Φ(n) − 1`, evaluated at
/// the interval midpoint.
pub fn omega(n: u64, i: usize) -> Result<BigInt> {
    let sp = build_spectrum(n)?;
    if i >= sp.len() {
        return Err(Error::IndexOutOfRange {
            what: "Ω",
            index: i as i64,
            lo: 0,
            hi: sp.len() as i64 - 1,
        });
    }
    let a = interval_sample(&sp, i)?;
    Ok(chi_in(&sp, &a)?.chi)
}

fn exact_div(num: BigInt, den: u64, what: &'static str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if !r.is_zero() {
        return Err(Error::NonIntegral(what));
    }
    Ok(q)
}

/// `(−1)^(m+1) C(2m, m)`: χ below the lowest critical value.
pub fn bottom_chi(m: u64) -> BigInt {
    sign(m + 1) * BigInt::from(binomial(2 * m, m as i64))
}

/// Ω_i near the bottom of the spectrum, `0 <= i <= ⌊m/2⌋ + 1`.
pub fn omega_closed_low(n: u64, i: u64) -> Result<BigInt> {
    let m = half_order(n)?;
    let p = m / 2 + 1;
    if i > p {
        return Err(Error::IndexOutOfRange {
            what: "low closed form",
            index: i as i64,
            lo: 0,
            hi: p as i64,
        });
    }
    let frac = sign(i) * BigInt::from(binomial(n, i as i64)) * (2 * i);
    Ok(bottom_chi(m) + exact_div(frac, n, "Ω_i (low)")?)
}

/// Ω_{Φ−1−i} near the top of the spectrum, `0 <= i <= ⌊2m/3⌋`.
pub fn omega_closed_high(n: u64, i: u64) -> Result<BigInt> {
    let m = half_order(n)?;
    let q = 2 * m / 3;
    if i > q {
        return Err(Error::IndexOutOfRange {
            what: "high closed form",
            index: i as i64,
            lo: 0,
            hi: q as i64,
        });
    }
    let frac = sign(i) * BigInt::from(binomial(n, i as i64 + 1)) * (2 * (i + 1));
    exact_div(frac, n, "Ω_{Φ−1−i} (high)")
}

/// `2 Σ_{s=1}^{m} (−1)^(m+s) (s − ⌊s/2⌋) C(n, m−s)`: χ(M_n(π/2)) summed over
/// the strata above π/2.
pub fn half_pi_alternating_sum(n: u64) -> Result<BigInt> {
    let m = half_order(n)?;
    let row = binomial_row(n);
    let mut acc = BigInt::zero();
    for s in 1..=m {
        acc += sign(m + s) * BigInt::from(row[(m - s) as usize].clone()) * (s - s / 2);
    }
    Ok(acc * 2u32)
}

/// `Σ_{i=0}^{m+1} (−1)^i ⌊i/2⌋ C(2m+1, m+i)`, which equals `4^(m−1)`.
pub fn floor_half_binomial_sum(m: u64) -> BigInt {
    let row = binomial_row(2 * m + 1);
    let mut acc = BigInt::zero();
    for i in 0..=(m + 1) {
        acc += sign(i) * BigInt::from(row[(m + i) as usize].clone()) * (i / 2);
    }
    acc
}

/// `(−1)^(m+1) 2^(2m−1)`.
pub fn half_pi_closed_form(m: u64) -> BigInt {
    sign(m + 1) * BigInt::from(BigUint::one() << (2 * m - 1))
}

/// χ(M_n(π/2)), checked three ways: closed form, descent, alternating sum.
pub fn chi_half_pi(n: u64) -> Result<BigInt> {
    let m = half_order(n)?;
    let closed = half_pi_closed_form(m);
    let half = PiFraction::reduce_unsigned(1, 2);
    let descent = chi(n, &half)?.chi;
    let alternating = half_pi_alternating_sum(n)?;
    if closed != descent || closed != alternating {
        return Err(Error::Disagreement {
            what: "χ(M_n(π/2))",
            detail: format!(
                "n = {n}: closed form {closed}, descent {descent}, alternating sum {alternating}"
            ),
        });
    }
    Ok(closed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceRow {
    pub i: u64,
    /// Subscript of the interval compared against.
    pub interval: usize,
    pub recurrence: BigInt,
    pub descent: BigInt,
}

impl RecurrenceRow {
    pub fn matches(&self) -> bool {
        self.recurrence == self.descent
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub n: u64,
    /// σ_i against Ω_i, `0 <= i <= ⌊m/2⌋ + 1`.
    pub sigma: Vec<RecurrenceRow>,
    /// τ_i against Ω_{Φ−1−i}, `0 <= i <= ⌊2m/3⌋`.
    pub tau: Vec<RecurrenceRow>,
}

impl RecurrenceReport {
    pub fn passed(&self) -> bool {
        self.sigma
            .iter()
            .chain(&self.tau)
            .all(RecurrenceRow::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &RecurrenceRow> {
        self.sigma.iter().chain(&self.tau).filter(|r| !r.matches())
    }
}

/// Runs the two edge recurrences against the descent table.
///
/// For `n = 3` the bottom recurrence reaches `σ_1`, which is compared with the
/// empty top region.
pub fn recurrence_check(n: u64) -> Result<RecurrenceReport> {
    let m = half_order(n)?;
    let sp = build_spectrum(n)?;
    let table = interval_table(&sp);
    let phi = sp.len();
    let row = binomial_row(n);
    let c = |k: u64| BigInt::from(row.get(k as usize).cloned().unwrap_or_default());

    let mut sigma = Vec::new();
    let mut value = bottom_chi(m);
    for i in 0..=(m / 2 + 1) {
        sigma.push(RecurrenceRow {
            i,
            interval: i as usize,
            recurrence: value.clone(),
            descent: table[i as usize].clone(),
        });
        value += sign(i + 1) * c(i) * 2u32;
    }

    let mut tau = Vec::new();
    let mut value = BigInt::from(2);
    for i in 0..=(2 * m / 3) {
        let interval = phi - 1 - i as usize;
        tau.push(RecurrenceRow {
            i,
            interval,
            recurrence: value.clone(),
            descent: table[interval].clone(),
        });
        value += sign(i + 1) * c(i + 1) * 2u32;
    }
    Ok(RecurrenceReport { n, sigma, tau })
}

/// Ascends from the bottom value `(−1)^(m+1) C(2m, m)` through every level and
/// returns χ reached above the top level, which must be the empty value.
pub fn ascend_from_bottom(spectrum: &Spectrum) -> BigInt {
    let mut chi = bottom_chi(spectrum.m());
    for level in spectrum.levels() {
        chi -= level.half_jump() * 2u32;
    }
    chi
}
