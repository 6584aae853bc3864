//! The critical spectrum of the side-length function on the space of closed
//! equilateral spherical n-gons.
//!
//! Every critical stratum is indexed by a pair `(alpha, beta)` with `alpha`
//! odd, `beta` even and `beta < alpha <= n`. Writing `alpha = 2s+1`,
//! `beta = 2t` and `n = 2m+1`, the stratum sits at `(beta/alpha)·π`, carries
//! `C(n, m−s)` critical points and has Morse index `m − s + 2t − 1`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::{binomial, binomial_row, legendre_totient, totient_table, BigCount, PiFraction};
use crate::error::{Error, Result};

/// Validates an odd order `n >= 3` and returns `m = (n−1)/2`.
pub fn half_order(n: u64) -> Result<u64> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    if n < 3 {
        return Err(Error::OrderTooSmall(n, 3));
    }
    Ok((n - 1) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaPair {
    alpha: u64,
    beta: u64,
}

impl GammaPair {
    pub fn new(n: u64, alpha: u64, beta: u64) -> Result<Self> {
        half_order(n)?;
        if alpha.is_multiple_of(2) || beta % 2 == 1 || beta == 0 || beta >= alpha || alpha > n {
            return Err(Error::NotInGamma { n, alpha, beta });
        }
        Ok(GammaPair { alpha, beta })
    }

    /// From `s >= 1` and `1 <= t <= s`; membership in a given Γ_n is the
    /// caller's business.
    pub(crate) fn from_st(s: u64, t: u64) -> Self {
        debug_assert!(t >= 1 && t <= s);
        GammaPair {
            alpha: 2 * s + 1,
            beta: 2 * t,
        }
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn s(&self) -> u64 {
        (self.alpha - 1) / 2
    }

    pub fn t(&self) -> u64 {
        self.beta / 2
    }

    pub fn value(&self) -> PiFraction {
        PiFraction::reduce_unsigned(self.beta, self.alpha)
    }

    pub fn is_coprime(&self) -> bool {
        self.alpha.gcd(&self.beta) == 1
    }

    pub fn contains_in(&self, n: u64) -> bool {
        self.alpha <= n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalStratum {
    pub pair: GammaPair,
    pub value: PiFraction,
    /// Shared between all strata with the same `alpha`.
    pub count: Arc<BigCount>,
    pub index: u64,
}

impl CriticalStratum {
    /// `(−1)^(index+1)`: the sign of this stratum's surgery contribution to χ.
    pub fn surgery_sign(&self) -> i8 {
        if self.index % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// `(−1)^(index+1) · count`.
    pub fn signed_count(&self) -> BigInt {
        let c = BigInt::from((*self.count).clone());
        if self.surgery_sign() > 0 {
            c
        } else {
            -c
        }
    }
}

fn stratum_index(m: u64, pair: &GammaPair) -> u64 {
    m - pair.s() + 2 * pair.t() - 1
}

/// One critical value together with every stratum attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub value: PiFraction,
    /// Ordered by `(alpha, beta)`.
    pub strata: Vec<CriticalStratum>,
}

impl Level {
    pub fn total_count(&self) -> BigCount {
        self.strata.iter().map(|s| &*s.count).sum()
    }

    /// The stratum whose pair is already in lowest terms. There is exactly one.
    pub fn coprime_stratum(&self) -> &CriticalStratum {
        self.strata
            .iter()
            .find(|s| s.pair.is_coprime())
            .expect("every level has a stratum in lowest terms")
    }

    /// Σ `(−1)^(index+1) · count` over the strata: half the jump in χ when
    /// descending through this level.
    pub fn half_jump(&self) -> BigInt {
        self.strata.iter().map(CriticalStratum::signed_count).sum()
    }
}

/// All critical levels for a fixed `n`, strictly increasing.
#[derive(Clone, Debug)]
pub struct Spectrum {
    n: u64,
    m: u64,
    levels: Vec<Level>,
}

impl Spectrum {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Φ(n), the number of distinct critical values.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// ζ_i for `1 <= i <= Φ(n)`; ζ_0 is [`PiFraction::ZERO`].
    pub fn zeta(&self, i: usize) -> Option<PiFraction> {
        match i {
            0 => Some(PiFraction::ZERO),
            _ => self.levels.get(i - 1).map(|l| l.value),
        }
    }

    pub fn strata(&self) -> impl Iterator<Item = &CriticalStratum> {
        self.levels.iter().flat_map(|l| l.strata.iter())
    }

    pub fn total_critical_points(&self) -> BigCount {
        self.levels.iter().map(Level::total_count).sum()
    }

    /// Position of `a` among the levels: `Ok(j)` when `a = ζ_{j+1}`, `Err(j)`
    /// when `ζ_j < a < ζ_{j+1}`.
    pub fn search(&self, a: &PiFraction) -> std::result::Result<usize, usize> {
        self.levels.binary_search_by(|l| l.value.cmp(a))
    }
}

/// Γ_n sorted lexicographically by `(alpha, beta)`.
pub fn enumerate_gamma(n: u64) -> Result<Vec<GammaPair>> {
    let m = half_order(n)?;
    let mut out = Vec::with_capacity((m * (m + 1) / 2) as usize);
    for s in 1..=m {
        for t in 1..=s {
            out.push(GammaPair::from_st(s, t));
        }
    }
    Ok(out)
}

pub fn stratum(n: u64, pair: GammaPair) -> Result<CriticalStratum> {
    let m = half_order(n)?;
    if !pair.contains_in(n) {
        return Err(Error::NotInGamma {
            n,
            alpha: pair.alpha,
            beta: pair.beta,
        });
    }
    Ok(CriticalStratum {
        pair,
        value: pair.value(),
        count: Arc::new(binomial(n, (m - pair.s()) as i64)),
        index: stratum_index(m, &pair),
    })
}

pub fn build_spectrum(n: u64) -> Result<Spectrum> {
    let m = half_order(n)?;
    let row: Vec<Arc<BigCount>> = binomial_row(n).into_iter().map(Arc::new).collect();
    let mut strata: Vec<CriticalStratum> = enumerate_gamma(n)?
        .into_iter()
        .map(|pair| CriticalStratum {
            pair,
            value: pair.value(),
            count: Arc::clone(&row[(m - pair.s()) as usize]),
            index: stratum_index(m, &pair),
        })
        .collect();
    strata.sort_by(|x, y| x.value.cmp(&y.value).then(x.pair.cmp(&y.pair)));

    let mut levels: Vec<Level> = Vec::new();
    for st in strata {
        match levels.last_mut() {
            Some(level) if level.value == st.value => level.strata.push(st),
            _ => levels.push(Level {
                value: st.value,
                strata: vec![st],
            }),
        }
    }
    Ok(Spectrum { n, m, levels })
}

/// Φ(n) = ½ Σ_{s=1}^{m} φ(2s+1).
pub fn phi_capital(n: u64) -> Result<u64> {
    half_order(n)?;
    let phi = totient_table(n as usize);
    let sum: u64 = phi.iter().skip(3).step_by(2).sum();
    debug_assert!(sum.is_multiple_of(2));
    Ok(sum / 2)
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// |U_n| = ½(−4^m + (2m+1)!/(m!)²).
pub fn count_critical_points(n: u64) -> Result<BigCount> {
    let m = half_order(n)?;
    let mf = factorial(m);
    let ratio = factorial(2 * m + 1) / (&mf * &mf);
    let four_m = BigUint::one() << (2 * m);
    let twice = BigInt::from(ratio) - BigInt::from(four_m);
    let (half, rem) = twice.div_rem(&BigInt::from(2));
    if rem != BigInt::default() || half.is_negative() {
        return Err(Error::NonIntegral("|U_n|"));
    }
    Ok(half.to_biguint().expect("non-negative"))
}

/// |U_n| = Σ_{s=1}^{m} s·C(n, m−s).
pub fn count_critical_points_by_strata(n: u64) -> Result<BigCount> {
    let m = half_order(n)?;
    let row = binomial_row(n);
    Ok((1..=m).map(|s| &row[(m - s) as usize] * s).sum())
}

/// ψ(n) = Σ_{s=1}^{m} φ(2⌊(s+1)/2⌋ − 1, 4s + 2): the number of critical values
/// above π/2.
pub fn psi(n: u64) -> Result<u64> {
    let m = half_order(n)?;
    Ok((1..=m)
        .map(|s| legendre_totient(2 * s.div_ceil(2) - 1, 4 * s + 2))
        .sum())
}

/// The distinct reduced values `2t/(2s+1)` with `⌊s/2⌋ + 1 <= t <= s`.
pub fn theta_set(n: u64) -> Result<BTreeSet<PiFraction>> {
    let m = half_order(n)?;
    let mut out = BTreeSet::new();
    for s in 1..=m {
        for t in (s / 2 + 1)..=s {
            out.insert(PiFraction::reduce_unsigned(2 * t, 2 * s + 1));
        }
    }
    Ok(out)
}

/// Where π/2 falls: `zeta_k < π/2 < zeta_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfPiPosition {
    pub k: u64,
    pub lower: PiFraction,
    pub upper: PiFraction,
}

/// `k = Φ(n) − ψ(n)` and the bracketing critical values, by the closed forms
/// that depend on the parity of `m`.
pub fn half_pi_position(n: u64) -> Result<HalfPiPosition> {
    let m = half_order(n)?;
    let k = phi_capital(n)? - psi(n)?;
    let (lower, upper) = if m % 2 == 1 {
        (
            PiFraction::reduce_unsigned(m - 1, 2 * m - 1),
            PiFraction::reduce_unsigned(m + 1, 2 * m + 1),
        )
    } else {
        (
            PiFraction::reduce_unsigned(m, 2 * m + 1),
            PiFraction::reduce_unsigned(m, 2 * m - 1),
        )
    };
    Ok(HalfPiPosition { k, lower, upper })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSide {
    /// The first `⌊m/2⌋ + 1` critical values.
    Low,
    /// The last `⌊2m/3⌋ + 1` critical values.
    High,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZetaEdge {
    pub value: PiFraction,
    pub pair: GammaPair,
}

/// Lower bound for [`EdgeSide::High`] subscripts is `Φ(n) − q`.
pub fn edge_range(n: u64, side: EdgeSide) -> Result<(u64, u64)> {
    let m = half_order(n)?;
    Ok(match side {
        EdgeSide::Low => (1, m / 2 + 1),
        EdgeSide::High => {
            let phi = phi_capital(n)?;
            let q = 2 * m / 3;
            (phi.saturating_sub(q).max(1), phi)
        }
    })
}

/// Closed-form ζ_i near either end of the spectrum, with the lowest-terms pair
/// attaining it.
pub fn zeta_edge(n: u64, side: EdgeSide, i: u64) -> Result<ZetaEdge> {
    let m = half_order(n)?;
    let (lo, hi) = edge_range(n, side)?;
    if i < lo || i > hi {
        return Err(Error::IndexOutOfRange {
            what: "edge subscript",
            index: i as i64,
            lo: lo as i64,
            hi: hi as i64,
        });
    }
    let (alpha, beta) = match side {
        EdgeSide::Low => (2 * m - 2 * i + 3, 2),
        EdgeSide::High => {
            let phi = phi_capital(n)?;
            let beta = 2 * m + 2 * i - 2 * phi;
            (beta + 1, beta)
        }
    };
    let pair = GammaPair::new(n, alpha, beta)?;
    Ok(ZetaEdge {
        value: pair.value(),
        pair,
    })
}
