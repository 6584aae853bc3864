//! The named identity checks behind `sphpoly verify`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use sphpoly::arith::{
    binomial, euler_totient, legendre_totient, totient_by_factoring, totient_table, PiFraction,
};
use sphpoly::euler::{
    ascend_from_bottom, bottom_chi, chi_half_pi, chi_in, floor_half_binomial_sum, interval_sample,
    interval_table, omega_closed_high, omega_closed_low, recurrence_check, EMPTY_LEVEL_CHI,
};
use sphpoly::oracle::{
    census, enumerate_configs, index_mu, j_set_count, realization_error, signature_rho,
};
use sphpoly::spectrum::{
    count_critical_points, count_critical_points_by_strata, edge_range, enumerate_gamma,
    half_pi_position, phi_capital, psi, theta_set, zeta_edge, EdgeSide,
};
use sphpoly::{build_spectrum, Spectrum};

use crate::report::{CheckRow, VerifyPayload};

/// Largest order for which configurations are placed on the circle.
pub const REALIZATION_MAX_ORDER: u64 = 13;
/// Tolerance on side lengths and winding of realised polygons.
pub const REALIZATION_TOLERANCE: f64 = 1e-9;
/// The `|J_s|` check runs for `s` up to this bound.
pub const J_SET_MAX: u64 = 10_000;
/// The binomial sum identity is checked up to this `m`.
pub const FLOOR_HALF_MAX_M: u64 = 200;

pub struct VerifyConfig {
    pub n_max: u64,
    pub oracle_max: u64,
    pub jobs: Option<usize>,
}

impl VerifyConfig {
    fn orders(&self) -> impl Iterator<Item = u64> {
        (3..=self.n_max).step_by(2)
    }

    fn oracle_orders(&self) -> impl Iterator<Item = u64> {
        (3..=self.oracle_max.min(sphpoly::oracle::ORACLE_MAX_ORDER)).step_by(2)
    }
}

pub type CheckResult = Result<String, String>;

struct Context<'a> {
    cfg: &'a VerifyConfig,
    spectra: Vec<Spectrum>,
}

type CheckFn = Box<dyn Fn(&Context) -> CheckResult>;

pub struct Check {
    pub name: String,
    run: CheckFn,
}

impl Check {
    fn new(name: &str, run: impl Fn(&Context) -> CheckResult + 'static) -> Self {
        Check {
            name: name.to_string(),
            run: Box::new(run),
        }
    }

    /// A check that always fails; used to exercise failure reporting.
    pub fn failing(name: &str) -> Self {
        Check::new(name, |_| Err("injected fault".to_string()))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn for_spectra(ctx: &Context, f: impl Fn(&Spectrum) -> Result<(), String>) -> CheckResult {
    for sp in &ctx.spectra {
        f(sp).map_err(|e| format!("n = {}: {e}", sp.n()))?;
    }
    Ok(format!("odd n in 3..={}", ctx.cfg.n_max))
}

fn err_str(e: sphpoly::Error) -> String {
    e.to_string()
}

/// Every named check, in report order.
pub fn registry() -> Vec<Check> {
    vec![
        Check::new("arith.reduce_idempotent", |_| {
            for q in 1..=300i64 {
                for p in 0..q {
                    let x = PiFraction::reduce(p, q).map_err(err_str)?;
                    let again =
                        PiFraction::reduce(x.num() as i64, x.den() as i64).map_err(err_str)?;
                    ensure(x == again, || format!("{p}/{q}"))?;
                }
            }
            Ok("all p/q with q <= 300".into())
        }),
        Check::new("arith.pascal_rule", |_| {
            for n in 2..=200u64 {
                for k in 1..n as i64 {
                    ensure(
                        binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k),
                        || format!("C({n},{k})"),
                    )?;
                }
            }
            Ok("n <= 200".into())
        }),
        Check::new("arith.stratum_binomial_identity", |_| {
            for m in 1..=30u64 {
                for s in 1..=m as i64 {
                    let lhs = binomial(2 * m, m as i64 + s + 1) + binomial(2 * m, m as i64 - s);
                    ensure(lhs == binomial(2 * m + 1, m as i64 - s), || {
                        format!("m={m} s={s}")
                    })?;
                }
            }
            Ok("1 <= s <= m <= 30".into())
        }),
        Check::new("arith.weighted_binomial_sum", |_| {
            for m in 1..=30u64 {
                let sum: BigUint = (1..=m)
                    .map(|s| binomial(2 * m + 1, (m - s) as i64) * s)
                    .sum();
                let central = binomial(2 * m, m as i64) * (2 * m + 1);
                ensure(
                    sum * 2u32 + (BigUint::from(1u32) << (2 * m)) == central,
                    || format!("m = {m}"),
                )?;
            }
            Ok("m <= 30".into())
        }),
        Check::new("arith.legendre_diagonal", |_| {
            for k in 1..=1000u64 {
                ensure(legendre_totient(k, k) == euler_totient(k), || {
                    format!("k = {k}")
                })?;
            }
            Ok("k <= 1000".into())
        }),
        Check::new("arith.totient_paths_agree", |_| {
            let table = totient_table(10_000);
            for k in 1..=10_000u64 {
                ensure(table[k as usize] == totient_by_factoring(k), || {
                    format!("k = {k}")
                })?;
                ensure(euler_totient(k) == table[k as usize], || format!("k = {k}"))?;
            }
            Ok("k <= 10000".into())
        }),
        Check::new("spectrum.level_count_is_phi", |ctx| {
            for_spectra(ctx, |sp| {
                let phi = phi_capital(sp.n()).map_err(err_str)?;
                ensure(sp.len() as u64 == phi, || {
                    format!("{} levels, Φ = {phi}", sp.len())
                })
            })
        }),
        Check::new("spectrum.levels_strictly_increasing", |ctx| {
            for_spectra(ctx, |sp| {
                ensure(
                    sp.levels().windows(2).all(|w| w[0].value < w[1].value),
                    || "levels out of order".into(),
                )
            })
        }),
        Check::new("spectrum.pairs_partitioned", |ctx| {
            for_spectra(ctx, |sp| {
                let mut seen: Vec<_> = sp.strata().map(|s| s.pair).collect();
                seen.sort();
                ensure(seen == enumerate_gamma(sp.n()).map_err(err_str)?, || {
                    "Γ_n pairs not covered exactly once".into()
                })
            })
        }),
        Check::new("spectrum.total_count_closed_form", |ctx| {
            for_spectra(ctx, |sp| {
                let total = sp.total_critical_points();
                ensure(
                    total == count_critical_points(sp.n()).map_err(err_str)?,
                    || format!("stratum sum {total}"),
                )?;
                ensure(
                    total == count_critical_points_by_strata(sp.n()).map_err(err_str)?,
                    || format!("s-weighted sum disagrees with {total}"),
                )
            })
        }),
        Check::new("spectrum.index_range_and_parity", |ctx| {
            for_spectra(ctx, |sp| {
                for st in sp.strata() {
                    ensure(st.index <= sp.n() - 2, || format!("index {}", st.index))?;
                    ensure(st.index % 2 == (sp.m() + 1 - st.pair.s()) % 2, || {
                        format!("parity at ({}, {})", st.pair.alpha(), st.pair.beta())
                    })?;
                }
                Ok(())
            })
        }),
        Check::new("spectrum.theta_is_upper_half", |ctx| {
            let half = PiFraction::reduce(1, 2).expect("valid");
            for_spectra(ctx, |sp| {
                let upper: BTreeSet<_> = sp
                    .levels()
                    .iter()
                    .map(|l| l.value)
                    .filter(|v| *v > half)
                    .collect();
                let theta = theta_set(sp.n()).map_err(err_str)?;
                ensure(upper == theta, || {
                    "θ(n) differs from levels above π/2".into()
                })?;
                let psi = psi(sp.n()).map_err(err_str)?;
                ensure(theta.len() as u64 == psi, || {
                    format!("|θ| = {}, ψ = {psi}", theta.len())
                })
            })
        }),
        Check::new("spectrum.half_pi_position", |ctx| {
            let half = PiFraction::reduce(1, 2).expect("valid");
            for_spectra(ctx, |sp| {
                let hp = half_pi_position(sp.n()).map_err(err_str)?;
                let k = hp.k as usize;
                ensure(
                    sp.zeta(k) == Some(hp.lower) && sp.zeta(k + 1) == Some(hp.upper),
                    || format!("k = {k} does not index ({}, {})", hp.lower, hp.upper),
                )?;
                ensure(hp.lower < half && half < hp.upper, || {
                    "π/2 not bracketed".into()
                })
            })
        }),
        Check::new("spectrum.zeta_edges", |ctx| {
            for_spectra(ctx, |sp| {
                for side in [EdgeSide::Low, EdgeSide::High] {
                    let (lo, hi) = edge_range(sp.n(), side).map_err(err_str)?;
                    for i in lo..=hi {
                        let e = zeta_edge(sp.n(), side, i).map_err(err_str)?;
                        let lvl = &sp.levels()[i as usize - 1];
                        ensure(e.value == lvl.value, || {
                            format!("{side:?} ζ_{i} = {}", lvl.value)
                        })?;
                        ensure(e.pair == lvl.coprime_stratum().pair, || {
                            format!("{side:?} i = {i}: pair mismatch")
                        })?;
                        ensure(
                            lvl.strata.iter().filter(|s| s.pair.is_coprime()).count() == 1,
                            || format!("ζ_{i} has several coprime strata"),
                        )?;
                    }
                }
                Ok(())
            })
        }),
        Check::new("euler.top_interval_is_sphere", |ctx| {
            for_spectra(ctx, |sp| {
                let t = interval_table(sp);
                let top = &sp.levels()[sp.len() - 1];
                let single = top.strata.len() == 1
                    && top.strata[0].pair.alpha() == sp.n()
                    && top.strata[0].pair.beta() == sp.n() - 1
                    && top.strata[0].index == sp.n() - 2;
                ensure(single, || {
                    "top level is not the single index-(n−2) point".into()
                })?;
                ensure(t[sp.len()] == BigInt::from(EMPTY_LEVEL_CHI), || {
                    "seed".into()
                })?;
                ensure(t[sp.len() - 1] == BigInt::from(2), || {
                    format!("Ω_(Φ−1) = {}", t[sp.len() - 1])
                })
            })
        }),
        Check::new("euler.bottom_value", |ctx| {
            for_spectra(ctx, |sp| {
                let t = interval_table(sp);
                ensure(t[0] == bottom_chi(sp.m()), || format!("Ω_0 = {}", t[0]))?;
                ensure(
                    ascend_from_bottom(sp) == BigInt::from(EMPTY_LEVEL_CHI),
                    || "ascent does not return to the empty value".into(),
                )
            })
        }),
        Check::new("euler.closed_form_low", |ctx| {
            for_spectra(ctx, |sp| {
                let t = interval_table(sp);
                for i in 0..=(sp.m() / 2 + 1) {
                    let c = omega_closed_low(sp.n(), i).map_err(err_str)?;
                    ensure(c == t[i as usize], || {
                        format!("i = {i}: {c} vs {}", t[i as usize])
                    })?;
                }
                Ok(())
            })
        }),
        Check::new("euler.closed_form_high", |ctx| {
            for_spectra(ctx, |sp| {
                let t = interval_table(sp);
                for i in 0..=(2 * sp.m() / 3) {
                    let c = omega_closed_high(sp.n(), i).map_err(err_str)?;
                    let j = sp.len() - 1 - i as usize;
                    ensure(c == t[j], || format!("i = {i}: {c} vs {}", t[j]))?;
                }
                Ok(())
            })
        }),
        Check::new("euler.recurrences", |ctx| {
            for_spectra(ctx, |sp| {
                let rep = recurrence_check(sp.n()).map_err(err_str)?;
                ensure(rep.passed(), || {
                    format!("{} mismatches", rep.mismatches().count())
                })
            })
        }),
        Check::new("euler.interval_constancy", |ctx| {
            for_spectra(ctx, |sp| {
                let t = interval_table(sp);
                for (i, want) in t.iter().enumerate() {
                    let mid = interval_sample(sp, i).map_err(err_str)?;
                    let lo = sp.zeta(i).expect("in range");
                    let other = lo.mediant(&mid);
                    for a in [mid, other] {
                        let chi = chi_in(sp, &a).map_err(err_str)?.chi;
                        ensure(&chi == want, || format!("interval {i} at {a}: {chi}"))?;
                    }
                }
                Ok(())
            })
        }),
        Check::new("euler.at_critical_halfway", |ctx| {
            for_spectra(ctx, |sp| {
                let t = interval_table(sp);
                for (li, lvl) in sp.levels().iter().enumerate() {
                    let at = chi_in(sp, &lvl.value).map_err(err_str)?.chi;
                    ensure((&at - &t[li + 1]) * 2 == &t[li] - &t[li + 1], || {
                        format!("level {}", li + 1)
                    })?;
                }
                Ok(())
            })
        }),
        Check::new("euler.half_pi_three_way", |ctx| {
            for n in ctx.cfg.orders() {
                chi_half_pi(n).map_err(err_str)?;
            }
            Ok(format!("odd n in 3..={}", ctx.cfg.n_max))
        }),
        Check::new("euler.floor_half_identity", |_| {
            for m in 1..=FLOOR_HALF_MAX_M {
                let expect = BigInt::from(BigUint::from(1u32) << (2 * m - 2));
                ensure(floor_half_binomial_sum(m) == expect, || format!("m = {m}"))?;
            }
            Ok(format!("m <= {FLOOR_HALF_MAX_M}"))
        }),
        Check::new("oracle.census_agreement", |ctx| {
            for n in ctx.cfg.oracle_orders() {
                let cen = census(n, ctx.cfg.jobs).map_err(err_str)?;
                let sp = build_spectrum(n).map_err(err_str)?;
                ensure(
                    BigUint::from(cen.total) == count_critical_points(n).map_err(err_str)?,
                    || format!("n = {n}: {} configs", cen.total),
                )?;
                ensure(cen.index_conflicts.is_empty(), || {
                    format!("n = {n}: index conflicts")
                })?;
                for st in sp.strata() {
                    let got = cen.by_stratum.get(&st.pair).copied().unwrap_or(0);
                    ensure(BigUint::from(got) == *st.count, || {
                        format!("n = {n} ({}, {}): {got}", st.pair.alpha(), st.pair.beta())
                    })?;
                    ensure(
                        cen.index_by_stratum.get(&st.pair) == Some(&st.index),
                        || format!("n = {n} ({}, {}): index", st.pair.alpha(), st.pair.beta()),
                    )?;
                }
                for lvl in sp.levels() {
                    let got = cen.by_value.get(&lvl.value).copied().unwrap_or(0);
                    ensure(BigUint::from(got) == lvl.total_count(), || {
                        format!("n = {n} level {}: {got}", lvl.value)
                    })?;
                }
            }
            Ok(format!("odd n in 3..={}", ctx.cfg.oracle_max))
        }),
        Check::new("oracle.signature_sum", |ctx| {
            for n in ctx
                .cfg
                .oracle_orders()
                .take_while(|n| *n <= REALIZATION_MAX_ORDER)
            {
                for c in enumerate_configs(n).map_err(err_str)? {
                    let (x, y) = signature_rho(&c);
                    ensure(x + y == n - 2, || {
                        format!("{} w = {}", c.word(), c.winding())
                    })?;
                    let expect = if c.winding() > 0 { x } else { y };
                    ensure(index_mu(&c) == expect, || format!("{}", c.word()))?;
                }
            }
            Ok(format!(
                "odd n <= {}",
                ctx.cfg.oracle_max.min(REALIZATION_MAX_ORDER)
            ))
        }),
        Check::new("oracle.realization", |ctx| {
            for n in ctx
                .cfg
                .oracle_orders()
                .take_while(|n| *n <= REALIZATION_MAX_ORDER)
            {
                for c in enumerate_configs(n).map_err(err_str)? {
                    let (side, wind) = realization_error(&c);
                    ensure(
                        side <= REALIZATION_TOLERANCE && wind <= REALIZATION_TOLERANCE,
                        || {
                            format!(
                                "{} w = {}: side {side:e}, winding {wind:e}",
                                c.word(),
                                c.winding()
                            )
                        },
                    )?;
                }
            }
            Ok(format!(
                "odd n <= {}, tol {REALIZATION_TOLERANCE:e}",
                ctx.cfg.oracle_max.min(REALIZATION_MAX_ORDER)
            ))
        }),
        Check::new("oracle.j_set_legendre", |_| {
            for s in 1..=J_SET_MAX {
                let brute = j_set_count(s);
                let formula = legendre_totient(2 * s.div_ceil(2) - 1, 4 * s + 2);
                ensure(brute == formula, || {
                    format!("s = {s}: {brute} vs {formula}")
                })?;
            }
            Ok(format!("s <= {J_SET_MAX}"))
        }),
    ]
}

pub fn run_checks(checks: &[Check], cfg: &VerifyConfig) -> Result<VerifyPayload, sphpoly::Error> {
    let spectra = cfg
        .orders()
        .map(build_spectrum)
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = Context { cfg, spectra };
    let rows: Vec<CheckRow> = checks
        .iter()
        .map(|c| {
            let (passed, detail) = match (c.run)(&ctx) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckRow {
                name: c.name.clone(),
                passed,
                detail,
            }
        })
        .collect();
    let passed = rows.iter().filter(|r| r.passed).count();
    Ok(VerifyPayload {
        n_max: cfg.n_max,
        oracle_max: cfg.oracle_max,
        failed: rows.len() - passed,
        passed,
        checks: rows,
    })
}
