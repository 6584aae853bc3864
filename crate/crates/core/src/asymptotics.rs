//! Exact counts against their leading-order growth.
//!
//! |U_n| ~ 2^(2m−1)(−1 + (2m+1)/√(πm)), Φ(n) ~ n²/π², Ψ(n) ~ 2n²/π².

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::psi_capital;
use crate::error::Result;
use crate::spectrum::{count_critical_points, half_order, phi_capital};

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticSample {
    pub n: u64,
    pub m: u64,
    pub critical_points: BigUint,
    pub phi: u64,
    pub psi_capital: u64,
    /// |U_n| over its asymptote.
    pub critical_points_ratio: f64,
    /// Φ(n)·π²/n².
    pub phi_ratio: f64,
    /// Ψ(n)·π²/(2n²).
    pub psi_capital_ratio: f64,
}

/// `x / 2^e` as an `f64`, for `x` far beyond the `f64` range.
fn scaled_by_pow2(x: &BigUint, e: u64) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let mantissa = (x >> shift).to_f64().expect("64-bit value fits");
    mantissa * 2f64.powf(shift as f64 - e as f64)
}

pub fn critical_points_ratio(m: u64, critical_points: &BigUint) -> f64 {
    let mf = m as f64;
    let shape = -1.0 + (2.0 * mf + 1.0) / (PI * mf).sqrt();
    scaled_by_pow2(critical_points, 2 * m - 1) / shape
}

pub fn sample(n: u64) -> Result<AsymptoticSample> {
    let m = half_order(n)?;
    let critical_points = count_critical_points(n)?;
    let phi = phi_capital(n)?;
    let psi_cap = psi_capital(n)?;
    let nf = n as f64;
    Ok(AsymptoticSample {
        n,
        m,
        critical_points_ratio: critical_points_ratio(m, &critical_points),
        critical_points,
        phi,
        psi_capital: psi_cap,
        phi_ratio: phi as f64 * PI * PI / (nf * nf),
        psi_capital_ratio: psi_cap as f64 * PI * PI / (2.0 * nf * nf),
    })
}

/// Odd orders from 3 to `n_max`, roughly four per decade, always ending at
/// `n_max` (rounded down to odd).
pub fn log_spaced_orders(n_max: u64) -> Vec<u64> {
    let top = if n_max.is_multiple_of(2) {
        n_max.saturating_sub(1)
    } else {
        n_max
    };
    if top < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let x = 3.0 * 10f64.powf(k as f64 / 4.0);
        let mut n = x.round() as u64;
        if n.is_multiple_of(2) {
            n += 1;
        }
        if n >= top {
            break;
        }
        if out.last() != Some(&n) {
            out.push(n);
        }
        k += 1;
    }
    out.push(top);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_is_exact_for_small_values() {
        let x = BigUint::from(48u32);
        assert_eq!(scaled_by_pow2(&x, 4), 3.0);
        let big = BigUint::from(3u32) << 2000u32;
        assert!((scaled_by_pow2(&big, 2000) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn orders_are_odd_and_increasing() {
        let v = log_spaced_orders(2001);
        assert_eq!(v.first(), Some(&3));
        assert_eq!(v.last(), Some(&2001));
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(|n| n % 2 == 1));
        assert_eq!(log_spaced_orders(2), Vec::<u64>::new());
        assert_eq!(log_spaced_orders(10).last(), Some(&9));
    }

    #[test]
    fn ratios_approach_one() {
        let s = sample(2001).unwrap();
        assert!((0.95..=1.05).contains(&s.phi_ratio));
        assert!((0.95..=1.05).contains(&s.psi_capital_ratio));
        assert_eq!(s.psi_capital, 2 * s.phi + 1);
        let s = sample(1001).unwrap();
        assert!((0.99..=1.01).contains(&s.critical_points_ratio));
    }
}
