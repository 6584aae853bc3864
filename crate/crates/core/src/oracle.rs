//! Brute-force model of the critical points.
//!
//! A critical point is a polygon lying on a great circle. Orienting the circle
//! so that the closing side runs backward, each side is either a forward or a
//! back track, and closure forces `a·(f − b) = 2πw` for an integer winding
//! number `w`. The oracle enumerates every track word with every admissible
//! `w` and re-derives stratum, multiplicity and Morse index from the words
//! alone, independently of the closed forms in [`crate::spectrum`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::PiFraction;
use crate::error::{Error, Result};
use crate::spectrum::{half_order, GammaPair};

/// Largest order the exhaustive enumeration accepts.
pub const ORACLE_MAX_ORDER: u64 = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Track {
    Forward,
    Back,
}

/// Side directions `e_1 … e_n` packed into a bitmask, bit `i` set when side
/// `e_{i+1}` is a forward track. The closing side `e_n` is always a back track.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrackWord {
    forward_mask: u32,
    len: u32,
}

impl TrackWord {
    pub fn new(n: u64, forward_mask: u32) -> Result<Self> {
        half_order(n)?;
        if n > 32 {
            return Err(Error::InvalidWord(format!("length {n} exceeds 32 tracks")));
        }
        let len = n as u32;
        if len < 32 && forward_mask >> len != 0 {
            return Err(Error::InvalidWord(format!(
                "mask {forward_mask:#b} has bits beyond length {len}"
            )));
        }
        if forward_mask >> (len - 1) & 1 == 1 {
            return Err(Error::InvalidWord(
                "closing side must be a back track".into(),
            ));
        }
        Ok(TrackWord { forward_mask, len })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut mask = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                'F' | 'f' => mask |= 1 << i,
                'B' | 'b' => {}
                other => return Err(Error::InvalidWord(format!("unexpected symbol {other:?}"))),
            }
        }
        TrackWord::new(s.chars().count() as u64, mask)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mask(&self) -> u32 {
        self.forward_mask
    }

    pub fn track(&self, i: usize) -> Track {
        if self.forward_mask >> i & 1 == 1 {
            Track::Forward
        } else {
            Track::Back
        }
    }

    pub fn tracks(&self) -> impl Iterator<Item = Track> + '_ {
        (0..self.len()).map(|i| self.track(i))
    }

    pub fn forward(&self) -> u64 {
        self.forward_mask.count_ones() as u64
    }

    pub fn back(&self) -> u64 {
        self.len as u64 - self.forward()
    }

    /// `f − b`; odd, hence nonzero.
    pub fn excess(&self) -> i64 {
        self.forward() as i64 - self.back() as i64
    }

    /// Admissible winding numbers: same sign as `f − b` and `0 < 2|w| < |f − b|`.
    pub fn windings(&self) -> impl Iterator<Item = i64> {
        let d = self.excess();
        let max = (d.unsigned_abs() as i64 - 1) / 2;
        (1..=max).map(move |k| k * d.signum())
    }
}

impl std::fmt::Display for TrackWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for t in self.tracks() {
            f.write_str(match t {
                Track::Forward => "F",
                Track::Back => "B",
            })?;
        }
        Ok(())
    }
}

/// A track word together with a winding number, realised at the unique side
/// length `a = 2πw/(f − b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegenerateConfig {
    word: TrackWord,
    winding: i64,
    realized_a: PiFraction,
}

impl DegenerateConfig {
    pub fn new(word: TrackWord, winding: i64) -> Result<Self> {
        let d = word.excess();
        if winding == 0 || winding.signum() != d.signum() {
            return Err(Error::InvalidConfig(format!(
                "winding {winding} must be nonzero with the sign of f − b = {d}"
            )));
        }
        let (twice_w, abs_d) = (2 * winding.unsigned_abs(), d.unsigned_abs());
        if twice_w >= abs_d {
            return Err(Error::InvalidConfig(format!(
                "side length 2π·{winding}/{d} is not below π"
            )));
        }
        Ok(DegenerateConfig {
            word,
            winding,
            realized_a: PiFraction::reduce_unsigned(twice_w, abs_d),
        })
    }

    pub fn word(&self) -> TrackWord {
        self.word
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn realized_a(&self) -> PiFraction {
        self.realized_a
    }

    pub fn n(&self) -> u64 {
        self.word.len() as u64
    }
}

fn configs_of(word: TrackWord) -> impl Iterator<Item = DegenerateConfig> {
    word.windings().map(move |w| DegenerateConfig {
        word,
        winding: w,
        realized_a: PiFraction::reduce_unsigned(2 * w.unsigned_abs(), word.excess().unsigned_abs()),
    })
}

fn check_budget(n: u64) -> Result<()> {
    half_order(n)?;
    if n > ORACLE_MAX_ORDER {
        return Err(Error::OracleBudget {
            n,
            max: ORACLE_MAX_ORDER,
        });
    }
    Ok(())
}

fn words(n: u64) -> impl Iterator<Item = TrackWord> {
    let len = n as u32;
    (0..1u32 << (len - 1)).map(move |forward_mask| TrackWord { forward_mask, len })
}

/// Every degenerate configuration for `n`, in word order then winding order.
pub fn enumerate_configs(n: u64) -> Result<Vec<DegenerateConfig>> {
    check_budget(n)?;
    Ok(words(n).flat_map(configs_of).collect())
}

/// `(|f − b|, 2|w|)`.
pub fn classify(config: &DegenerateConfig) -> GammaPair {
    let alpha = config.word.excess().unsigned_abs();
    let beta = 2 * config.winding.unsigned_abs();
    GammaPair::new(config.n(), alpha, beta).expect("admissible configs land in Γ_n")
}

/// Signature of the Hessian of the open-chain endpoint distance at the
/// configuration: `(b + 2w − 1, f − 2w − 1)`.
pub fn signature_rho(config: &DegenerateConfig) -> (u64, u64) {
    let f = config.word.forward() as i64;
    let b = config.word.back() as i64;
    let w = config.winding;
    let first = b + 2 * w - 1;
    let second = f - 2 * w - 1;
    debug_assert!(first >= 0 && second >= 0);
    (first as u64, second as u64)
}

/// Morse index of the side-length function: `b + 2w − 1` when `w > 0`,
/// `f − 2w − 1` when `w < 0`.
pub fn index_mu(config: &DegenerateConfig) -> u64 {
    let (first, second) = signature_rho(config);
    if config.winding > 0 {
        first
    } else {
        second
    }
}

/// Aggregated brute-force counts for one `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub n: u64,
    pub words: u64,
    pub total: u64,
    pub by_stratum: BTreeMap<GammaPair, u64>,
    pub by_value: BTreeMap<PiFraction, u64>,
    /// Morse index seen for each stratum; a stratum with two distinct indices
    /// is recorded in `index_conflicts`.
    pub index_by_stratum: BTreeMap<GammaPair, u64>,
    pub index_conflicts: Vec<GammaPair>,
}

impl Census {
    fn record(&mut self, config: &DegenerateConfig) {
        let pair = classify(config);
        let index = index_mu(config);
        self.total += 1;
        *self.by_stratum.entry(pair).or_default() += 1;
        *self.by_value.entry(config.realized_a).or_default() += 1;
        match self.index_by_stratum.get(&pair) {
            None => {
                self.index_by_stratum.insert(pair, index);
            }
            Some(&seen) if seen != index => {
                if !self.index_conflicts.contains(&pair) {
                    self.index_conflicts.push(pair);
                }
            }
            Some(_) => {}
        }
    }

    fn merge(mut self, other: Census) -> Census {
        self.words += other.words;
        self.total += other.total;
        for (k, v) in other.by_stratum {
            *self.by_stratum.entry(k).or_default() += v;
        }
        for (k, v) in other.by_value {
            *self.by_value.entry(k).or_default() += v;
        }
        for (k, idx) in other.index_by_stratum {
            match self.index_by_stratum.get(&k) {
                None => {
                    self.index_by_stratum.insert(k, idx);
                }
                Some(&seen) if seen != idx => {
                    if !self.index_conflicts.contains(&k) {
                        self.index_conflicts.push(k);
                    }
                }
                Some(_) => {}
            }
        }
        for k in other.index_conflicts {
            if !self.index_conflicts.contains(&k) {
                self.index_conflicts.push(k);
            }
        }
        self
    }
}

/// Words per parallel work unit.
const CHUNK: u32 = 1 << 12;

/// Enumerates all configurations for `n` in parallel without materialising
/// them. `jobs = None` uses the global rayon pool.
pub fn census(n: u64, jobs: Option<usize>) -> Result<Census> {
    check_budget(n)?;
    let len = n as u32;
    let total_words = 1u32 << (len - 1);
    let chunks = total_words.div_ceil(CHUNK);
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut part = Census {
                    n,
                    ..Census::default()
                };
                let hi = ((c + 1) * CHUNK).min(total_words);
                for forward_mask in c * CHUNK..hi {
                    part.words += 1;
                    for cfg in configs_of(TrackWord { forward_mask, len }) {
                        part.record(&cfg);
                    }
                }
                part
            })
            .reduce(
                || Census {
                    n,
                    ..Census::default()
                },
                Census::merge,
            )
    };
    let mut out = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    out.index_conflicts.sort();
    Ok(out)
}

/// Multiplicity of each stratum, counted configuration by configuration.
pub fn count_by_stratum(n: u64) -> Result<BTreeMap<GammaPair, BigUint>> {
    Ok(census(n, None)?
        .by_stratum
        .into_iter()
        .map(|(k, v)| (k, BigUint::from(v)))
        .collect())
}

/// `|J_s|`, counting `⌊s/2⌋ + 1 <= t <= s` prime to `2s + 1` directly.
pub fn j_set_count(s: u64) -> u64 {
    let modulus = 2 * s + 1;
    (s / 2 + 1..=s).filter(|t| t.gcd(&modulus) == 1).count() as u64
}

pub const UNIT_TOLERANCE: f64 = 1e-12;

/// A point of the unit sphere in ℝ³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint([f64; 3]);

impl SpherePoint {
    pub fn new(xyz: [f64; 3]) -> Option<Self> {
        let norm = xyz.iter().map(|c| c * c).sum::<f64>().sqrt();
        ((norm - 1.0).abs() <= UNIT_TOLERANCE).then_some(SpherePoint(xyz))
    }

    /// The point at longitude `theta` on the equator.
    pub fn on_equator(theta: f64) -> Self {
        SpherePoint([theta.cos(), theta.sin(), 0.0])
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    /// Great-circle distance.
    pub fn distance(&self, other: &SpherePoint) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }

    /// Longitude in `(−π, π]`.
    pub fn longitude(&self) -> f64 {
        self.0[1].atan2(self.0[0])
    }
}

/// Places the polygon on the equator: `u_1` at longitude 0, then one step of
/// `+a` per forward track and `−a` per back track. Returns `u_1 … u_n`.
pub fn realize_on_circle(config: &DegenerateConfig) -> Vec<SpherePoint> {
    let a = config.realized_a.radians();
    let mut theta = 0.0f64;
    let mut out = Vec::with_capacity(config.word.len());
    for track in config.word.tracks() {
        out.push(SpherePoint::on_equator(theta));
        theta += match track {
            Track::Forward => a,
            Track::Back => -a,
        };
    }
    out
}

/// Total signed angle swept by the closed polygon, `a·(f − b)`.
pub fn swept_angle(config: &DegenerateConfig) -> f64 {
    config.realized_a.radians() * config.word.excess() as f64
}

/// Largest deviation of any side of the realised polygon from `a`, and of the
/// swept angle from `2πw`.
pub fn realization_error(config: &DegenerateConfig) -> (f64, f64) {
    let pts = realize_on_circle(config);
    let a = config.realized_a.radians();
    let n = pts.len();
    let side_err = (0..n)
        .map(|i| (pts[i].distance(&pts[(i + 1) % n]) - a).abs())
        .fold(0.0, f64::max);
    let wind_err = (swept_angle(config) - 2.0 * PI * config.winding as f64).abs();
    (side_err, wind_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::spectrum::{build_spectrum, count_critical_points};

    fn cfg(word: &str, w: i64) -> DegenerateConfig {
        DegenerateConfig::new(TrackWord::parse(word).unwrap(), w).unwrap()
    }

    #[test]
    fn word_invariants() {
        assert!(TrackWord::parse("FFF").is_err());
        assert!(TrackWord::parse("FFBB").is_err());
        let w = TrackWord::parse("FFFFB").unwrap();
        assert_eq!((w.forward(), w.back(), w.excess()), (4, 1, 3));
        assert_eq!(w.windings().collect::<Vec<_>>(), vec![1]);
        let w = TrackWord::parse("BBBBB").unwrap();
        assert_eq!(w.windings().collect::<Vec<_>>(), vec![-1, -2]);
        assert_eq!(TrackWord::parse("FBB").unwrap().windings().count(), 0);
        assert_eq!(w.to_string(), "BBBBB");
    }

    #[test]
    fn config_validation() {
        let w = TrackWord::parse("FFFFFFB").unwrap();
        assert!(DegenerateConfig::new(w, 0).is_err());
        assert!(DegenerateConfig::new(w, -1).is_err());
        assert!(DegenerateConfig::new(w, 3).is_err());
        let c = DegenerateConfig::new(w, 2).unwrap();
        assert_eq!(c.realized_a(), PiFraction::reduce(4, 5).unwrap());
    }

    #[test]
    fn enumerate_examples() {
        let c3 = enumerate_configs(3).unwrap();
        assert_eq!(c3.len(), 1);
        assert_eq!(c3[0].word().to_string(), "BBB");
        assert_eq!(c3[0].winding(), -1);
        assert_eq!(enumerate_configs(5).unwrap().len(), 7);
        assert_eq!(enumerate_configs(7).unwrap().len(), 38);
        assert!(enumerate_configs(27).is_err());
        assert!(enumerate_configs(6).is_err());
    }

    #[test]
    fn classify_examples() {
        // f = 4, b = 3 leaves no admissible w
        assert_eq!(TrackWord::parse("FFFFBBB").unwrap().windings().count(), 0);
        assert!(DegenerateConfig::new(TrackWord::parse("FFFFBBB").unwrap(), 1).is_err());
        let c = cfg("FFFFFBB", 1);
        assert_eq!(classify(&c), GammaPair::new(7, 3, 2).unwrap());
        let c = cfg("FBBBBBB", -2);
        assert_eq!(classify(&c), GammaPair::new(7, 5, 4).unwrap());
    }

    #[test]
    fn index_and_signature_examples() {
        let c = cfg("FFFFB", 1);
        assert_eq!(index_mu(&c), 2);
        assert_eq!(signature_rho(&c), (2, 1));
        let c = cfg("FBBBB", -1);
        assert_eq!(index_mu(&c), 2);
        let c = cfg("BBBBB", -2);
        assert_eq!(index_mu(&c), 3);
        assert_eq!(signature_rho(&c), (0, 3));
    }

    #[test]
    fn signature_sums_to_dimension() {
        for n in (3..=13).step_by(2) {
            for c in enumerate_configs(n).unwrap() {
                let (x, y) = signature_rho(&c);
                assert_eq!(x + y, n - 2);
                let idx = index_mu(&c);
                assert_eq!(idx, if c.winding() > 0 { x } else { y });
            }
        }
    }

    #[test]
    fn count_by_stratum_examples() {
        let pair = |n, a, b| GammaPair::new(n, a, b).unwrap();
        let c5 = count_by_stratum(5).unwrap();
        let expect: BTreeMap<_, _> = [
            (pair(5, 3, 2), 5u32),
            (pair(5, 5, 2), 1),
            (pair(5, 5, 4), 1),
        ]
        .into_iter()
        .map(|(k, v)| (k, BigUint::from(v)))
        .collect();
        assert_eq!(c5, expect);
        let c9 = count_by_stratum(9).unwrap();
        assert_eq!(c9[&pair(9, 3, 2)], BigUint::from(84u32));
        assert_eq!(c9[&pair(9, 9, 6)], BigUint::from(1u32));
        let c3 = count_by_stratum(3).unwrap();
        assert_eq!(c3.len(), 1);
        assert_eq!(c3[&pair(3, 3, 2)], BigUint::from(1u32));
    }

    #[test]
    fn census_matches_spectrum_up_to_17() {
        for n in (3..=17).step_by(2) {
            let cen = census(n, Some(2)).unwrap();
            assert_eq!(BigUint::from(cen.total), count_critical_points(n).unwrap());
            assert!(cen.index_conflicts.is_empty());
            let sp = build_spectrum(n).unwrap();
            let m = sp.m();
            for st in sp.strata() {
                assert_eq!(
                    BigUint::from(cen.by_stratum[&st.pair]),
                    binomial(n, (m - st.pair.s()) as i64)
                );
                assert_eq!(cen.index_by_stratum[&st.pair], st.index);
            }
            assert_eq!(cen.by_stratum.len(), sp.strata().count());
            for lvl in sp.levels() {
                assert_eq!(BigUint::from(cen.by_value[&lvl.value]), lvl.total_count());
            }
            assert_eq!(cen.by_value.len(), sp.len());
        }
    }

    #[test]
    fn census_is_independent_of_thread_count() {
        let one = census(13, Some(1)).unwrap();
        let many = census(13, Some(4)).unwrap();
        assert_eq!(one, many);
        assert_eq!(one.words, 1 << 12);
    }

    #[test]
    fn realize_equilateral_triangle() {
        let c = cfg("BBB", -1);
        let pts = realize_on_circle(&c);
        let expect = [0.0, -2.0 * PI / 3.0, -4.0 * PI / 3.0];
        for (p, theta) in pts.iter().zip(expect) {
            let q = SpherePoint::on_equator(theta).coords();
            let gap = p
                .coords()
                .iter()
                .zip(q)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            assert!(gap < 1e-12);
        }
    }

    #[test]
    fn realizations_close_up() {
        for n in (3..=13).step_by(2) {
            for c in enumerate_configs(n).unwrap() {
                let pts = realize_on_circle(&c);
                assert_eq!(pts.len() as u64, n);
                for p in &pts {
                    assert!(SpherePoint::new(p.coords()).is_some());
                }
                let (side, wind) = realization_error(&c);
                assert!(
                    side <= 1e-9 && wind <= 1e-9,
                    "{} w={}",
                    c.word(),
                    c.winding()
                );
            }
        }
    }

    #[test]
    fn j_set_examples() {
        assert_eq!(j_set_count(1), 1);
        assert_eq!(j_set_count(2), 1);
        // t ∈ {3, 4}, gcd(3, 9) = 3
        assert_eq!(j_set_count(4), 1);
    }

    #[test]
    fn sphere_point_rejects_non_unit() {
        assert!(SpherePoint::new([1.0, 1.0, 0.0]).is_none());
        assert!(SpherePoint::new([0.0, 0.0, 1.0]).is_some());
    }
}
