//! Exact angles, binomials and totients.
//!
//! Angles are stored as reduced fractions of π so that critical values can be
//! compared and grouped without any floating point. Counts are `BigUint`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// Exact multiplicity of critical points or any other count.
pub type BigCount = BigUint;

/// An angle `(num/den)·π`, always reduced, with `0 < num < den`.
///
/// [`PiFraction::ZERO`] is the only angle allowed to break the range; it stands
/// for the lower endpoint of the first interval below the smallest critical
/// value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PiFraction {
    num: u64,
    den: u64,
}

impl PiFraction {
    pub const ZERO: PiFraction = PiFraction { num: 0, den: 1 };

    /// Reduces `p/q`, accepting any angle in `[0, π)`.
    pub fn reduce(p: i64, q: i64) -> Result<Self> {
        if q <= 0 || p < 0 || p >= q {
            return Err(Error::AngleOutOfRange { num: p, den: q });
        }
        Ok(Self::reduce_unsigned(p as u64, q as u64))
    }

    /// Reduces `p/q` and additionally rejects the zero angle.
    pub fn interior(p: i64, q: i64) -> Result<Self> {
        let x = Self::reduce(p, q)?;
        if x.is_zero() {
            return Err(Error::ZeroAngle);
        }
        Ok(x)
    }

    /// Caller guarantees `p < q`, `q > 0`.
    pub(crate) fn reduce_unsigned(p: u64, q: u64) -> Self {
        debug_assert!(q > 0 && p < q);
        if p == 0 {
            return Self::ZERO;
        }
        let g = p.gcd(&q);
        PiFraction {
            num: p / g,
            den: q / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The angle as a multiple of π, `num/den`.
    pub fn as_unit(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * self.as_unit()
    }

    /// Exact comparison with `p/q · π` for an arbitrary (unreduced) `p/q`.
    pub fn cmp_ratio(&self, p: u64, q: u64) -> Ordering {
        (self.num as u128 * q as u128).cmp(&(p as u128 * self.den as u128))
    }

    /// The mediant `(a+c)/(b+d)`, which lies strictly between two distinct
    /// angles.
    pub fn mediant(&self, other: &PiFraction) -> PiFraction {
        Self::reduce_unsigned(self.num + other.num, self.den + other.den)
    }
}

impl Ord for PiFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_ratio(other.num, other.den)
    }
}

impl PartialOrd for PiFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigCount::default();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The full row `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigCount> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut cur = BigCount::one();
    row.push(cur.clone());
    for k in 0..n {
        cur *= n - k;
        cur /= k + 1;
        row.push(cur.clone());
    }
    row
}

/// Below this argument [`euler_totient`] counts coprime residues directly.
pub const DIRECT_TOTIENT_LIMIT: u64 = 1 << 12;

/// Euler's totient φ(k).
pub fn euler_totient(k: u64) -> u64 {
    assert!(k >= 1, "totient of 0 is undefined");
    if k <= DIRECT_TOTIENT_LIMIT {
        totient_by_gcd(k)
    } else {
        totient_by_factoring(k)
    }
}

pub fn totient_by_gcd(k: u64) -> u64 {
    (1..=k).filter(|i| i.gcd(&k) == 1).count() as u64
}

pub fn totient_by_factoring(k: u64) -> u64 {
    prime_factors(k)
        .into_iter()
        .fold(k, |acc, p| acc / p * (p - 1))
}

/// φ(0..=limit) by a linear sieve; entry 0 is 0.
pub fn totient_table(limit: usize) -> Vec<u64> {
    let mut phi = vec![0u64; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    if limit >= 1 {
        phi[1] = 1;
    }
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = i as u64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    phi
}

/// Distinct prime factors of `k`, ascending.
pub fn prime_factors(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= k {
        if k.is_multiple_of(p) {
            out.push(p);
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// Legendre's totient φ(x, d): how many of `1..=x` are prime to `d`.
///
/// Inclusion–exclusion over the squarefree divisors of `d`.
pub fn legendre_totient(x: u64, d: u64) -> u64 {
    assert!(d >= 1, "modulus must be positive");
    let primes = prime_factors(d);
    let mut total: i64 = 0;
    for subset in 0u32..(1 << primes.len()) {
        let mut e = 1u64;
        for (j, p) in primes.iter().enumerate() {
            if subset & (1 << j) != 0 {
                e = e.saturating_mul(*p);
            }
        }
        let term = (x / e) as i64;
        if subset.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

/// Ψ(n), the sum of φ(i) over odd `i <= n`.
pub fn psi_capital(n: u64) -> Result<u64> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    let phi = totient_table(n as usize);
    Ok(phi.iter().skip(1).step_by(2).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd_count(x: u64, d: u64) -> u64 {
        (1..=x).filter(|i| i.gcd(&d) == 1).count() as u64
    }

    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut tri: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for r in 1..=rows {
            let prev = &tri[r - 1];
            let mut row = vec![BigUint::one(); r + 1];
            for k in 1..r {
                row[k] = &prev[k - 1] + &prev[k];
            }
            tri.push(row);
        }
        tri
    }

    #[test]
    fn reduce_examples() {
        let x = PiFraction::reduce(4, 6).unwrap();
        assert_eq!((x.num(), x.den()), (2, 3));
        let x = PiFraction::reduce(2, 5).unwrap();
        assert_eq!((x.num(), x.den()), (2, 5));
        assert_eq!(PiFraction::reduce(0, 1).unwrap(), PiFraction::ZERO);
        assert_eq!(PiFraction::reduce(0, 7).unwrap(), PiFraction::ZERO);
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert!(PiFraction::reduce(3, 3).is_err());
        assert!(PiFraction::reduce(5, 3).is_err());
        assert!(PiFraction::reduce(1, 0).is_err());
        assert!(PiFraction::reduce(1, -2).is_err());
        assert!(PiFraction::reduce(-1, 2).is_err());
        assert_eq!(PiFraction::interior(0, 5), Err(Error::ZeroAngle));
    }

    #[test]
    fn compare_examples() {
        let f = |p, q| PiFraction::reduce(p, q).unwrap();
        assert_eq!(f(2, 5).cmp(&f(2, 3)), Ordering::Less);
        assert_eq!(f(2, 3).cmp(&f(4, 6)), Ordering::Equal);
        assert_eq!(f(4, 5).cmp(&f(2, 3)), Ordering::Greater);
        assert!(PiFraction::ZERO < f(1, 1000));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(9, 3), BigUint::from(84u32));
        assert_eq!(binomial(5, -1), BigUint::default());
        assert_eq!(binomial(5, 6), BigUint::default());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let tri = pascal(60);
        for (n, row) in tri.iter().enumerate() {
            assert_eq!(&binomial_row(n as u64), row);
            for (k, c) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as i64), c, "C({n},{k})");
            }
        }
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_totient(1), 1);
        assert_eq!(euler_totient(3), 2);
        assert_eq!(euler_totient(5), 4);
        assert_eq!(euler_totient(9), 6);
    }

    #[test]
    fn totient_paths_agree() {
        let table = totient_table(20_000);
        for k in 1..=20_000u64 {
            let factored = totient_by_factoring(k);
            assert_eq!(table[k as usize], factored, "sieve vs factoring at {k}");
            if k <= 3_000 {
                assert_eq!(totient_by_gcd(k), factored, "gcd vs factoring at {k}");
            }
        }
        assert_eq!(
            euler_totient(DIRECT_TOTIENT_LIMIT + 1),
            table[DIRECT_TOTIENT_LIMIT as usize + 1]
        );
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_totient(1, 6), 1);
        assert_eq!(legendre_totient(0, 7), 0);
        assert_eq!(legendre_totient(1, 10), 1);
        assert_eq!(legendre_totient(3, 18), 1);
    }

    #[test]
    fn legendre_diagonal_is_euler() {
        for k in 1..=1000u64 {
            assert_eq!(legendre_totient(k, k), euler_totient(k), "k = {k}");
        }
    }

    #[test]
    fn psi_capital_examples() {
        assert_eq!(psi_capital(1).unwrap(), 1);
        assert_eq!(psi_capital(5).unwrap(), 7);
        assert_eq!(psi_capital(9).unwrap(), 19);
        assert_eq!(psi_capital(4), Err(Error::EvenOrder(4)));
    }

    #[test]
    fn binomial_identity_used_for_stratum_counts() {
        for m in 1..=30u64 {
            for s in 1..=m as i64 {
                let lhs = binomial(2 * m, m as i64 + s + 1) + binomial(2 * m, m as i64 - s);
                assert_eq!(lhs, binomial(2 * m + 1, m as i64 - s), "m={m} s={s}");
            }
        }
    }

    #[test]
    fn weighted_binomial_sum_closed_form() {
        // 2·Σ s·C(2m+1, m−s) + 4^m = (2m+1)!/(m!)^2
        for m in 1..=30u64 {
            let mut sum = BigUint::default();
            for s in 1..=m {
                sum += binomial(2 * m + 1, (m - s) as i64) * s;
            }
            let central = binomial(2 * m, m as i64) * (2 * m + 1);
            let four_m = BigUint::one() << (2 * m);
            assert_eq!(sum * 2u32 + four_m, central, "m = {m}");
        }
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(q in 1i64..1_000_000, p_frac in 0.0f64..1.0) {
            let p = ((q as f64) * p_frac) as i64;
            let x = PiFraction::reduce(p, q).unwrap();
            prop_assert_eq!(PiFraction::reduce(x.num() as i64, x.den() as i64).unwrap(), x);
            prop_assert_eq!(x.num().gcd(&x.den()), 1);
        }

        #[test]
        fn pascal_rule(n in 2u64..400, k_frac in 0.0f64..1.0) {
            let k = 1 + ((n - 2) as f64 * k_frac) as i64;
            prop_assert_eq!(
                binomial(n, k),
                binomial(n - 1, k - 1) + binomial(n - 1, k)
            );
        }

        #[test]
        fn legendre_matches_gcd_count(x in 0u64..3000, d in 1u64..5000) {
            prop_assert_eq!(legendre_totient(x, d), gcd_count(x, d));
        }

        #[test]
        fn order_is_exact(a in 1u64..10_000, b in 1u64..10_000, c in 1u64..10_000, d in 1u64..10_000) {
            let (lo1, hi1) = (a.min(b), a.max(b) + 1);
            let (lo2, hi2) = (c.min(d), c.max(d) + 1);
            let x = PiFraction::reduce(lo1 as i64, hi1 as i64).unwrap();
            let y = PiFraction::reduce(lo2 as i64, hi2 as i64).unwrap();
            let expect = (lo1 * hi2).cmp(&(lo2 * hi1));
            prop_assert_eq!(x.cmp(&y), expect);
        }
    }
}
