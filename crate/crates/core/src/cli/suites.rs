use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{CheckRecord, Record, RunReport};
use super::{Cli, CliError, Verify};
use crate::exactnum::{
    alpha, bernoulli, factorial, kcoef, seq_e, seq_l, series_compose_one_minus_exp, sign, stirling1,
    stirling2, Int, PowerSeries, Rat,
};
use crate::moments::{
    a_deriv_closed, g_deriv_at_0, moment_closed, psi_route_a_deriv, seq_beta, seq_c, seq_eta, seq_iota,
    tcoef, zeta_bernoulli,
};
use crate::numquad::{
    a_deriv_numeric, moment_report, ramanujan_identity_residual, reciprocity_residual, QuadError,
};
use crate::symconst::{constant_c, eval_numeric_at, reduce_zeta_even, ConstSymbol, SymVal};

fn r(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn quad_usage(e: QuadError) -> CliError {
    CliError::Usage(e.to_string())
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    r(rng.gen_range(-20..=20), rng.gen_range(1..=12))
}

/// A random zeta-form value over `{1, log 2pi, gamma, zeta(2), zeta(4), zeta(6)}`.
pub fn random_symval(rng: &mut ChaCha8Rng) -> SymVal {
    let symbols = [
        ConstSymbol::Unit,
        ConstSymbol::Log2Pi,
        ConstSymbol::EulerGamma,
        ConstSymbol::Zeta(2),
        ConstSymbol::Zeta(4),
        ConstSymbol::Zeta(6),
    ];
    symbols.iter().fold(SymVal::zero(), |acc, &s| {
        if rng.gen_bool(0.6) {
            &acc + &SymVal::term(s, random_rat(rng))
        } else {
            acc
        }
    })
}

fn ring_axiom_mismatches(seed: u64, samples: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let (a, b, c) = (random_symval(&mut rng), random_symval(&mut rng), random_symval(&mut rng));
        let (x, y) = (random_rat(&mut rng), random_rat(&mut rng));
        let checks = [
            &(&a + &b) + &c == &a + &(&b + &c),
            &a + &b == &b + &a,
            (&a + &(-&a)).is_zero(),
            &a - &b == &a + &(-&b),
            a.scale(&x).scale(&y) == a.scale(&(&x * &y)),
            (&a + &b).scale(&x) == &a.scale(&x) + &b.scale(&x),
            a.scale(&(&x + &y)) == &a.scale(&x) + &a.scale(&y),
            a.try_mul(&SymVal::rational(x.clone())).ok() == Some(a.scale(&x)),
            reduce_zeta_even(&(&a + &b)).ok()
                == Some(&reduce_zeta_even(&a).expect("even") + &reduce_zeta_even(&b).expect("even")),
            serde_json::from_str::<SymVal>(&serde_json::to_string(&a).expect("serialize")).ok() == Some(a.clone()),
        ];
        bad += checks.iter().filter(|ok| !**ok).count();
    }
    bad
}

fn count(it: impl IntoIterator<Item = bool>) -> usize {
    it.into_iter().filter(|ok| !ok).count()
}

/// `U_n = (-1)^n E(u)_n / n!` against the coefficients of `F_u(1 - e^{-t})`.
fn gf_lemma_mismatches(u: &[Rat], order: usize) -> usize {
    let e = seq_e(u, order).expect("long enough");
    let composed = series_compose_one_minus_exp(&PowerSeries::new(u.to_vec(), order));
    count((0..=order).map(|n| {
        let un = Rat::from(sign(n)) * &e[n] / Rat::from(factorial(n as u64));
        un == composed.coeff(n)
    }))
}

/// All exact identity checks.
pub fn identity_checks(seed: u64, samples: usize) -> Vec<CheckRecord> {
    let mut out = Vec::new();

    let inverse = count((0..=30).flat_map(|k| {
        (0..=k).map(move |j| {
            let s21: Int = (j..=k).map(|p| stirling2(k, p as i64) * stirling1(p, j as i64)).sum();
            let s12: Int = (j..=k).map(|p| stirling1(k, p as i64) * stirling2(p, j as i64)).sum();
            let want = if j == k { Int::one() } else { Int::zero() };
            s21 == want && s12 == want
        })
    }));
    out.push(CheckRecord::exact("stirling_inverse", inverse));

    let k_identity = count((1..=30usize).flat_map(|k| {
        (1..=k).map(move |j| {
            let lhs: Rat = (j..=k)
                .map(|p| Rat::new(stirling2(k, p as i64) * stirling1(p, j as i64), Int::from(p)))
                .sum();
            lhs == kcoef(k as i64, j as i64).expect("in range")
        })
    }));
    out.push(CheckRecord::exact("k_identity", k_identity));

    let alpha_rec = count((1..=20usize).flat_map(|k| {
        (1..=k + 1).map(move |p| {
            let lhs = Rat::from(alpha(k, p - 1) - alpha(k, p));
            lhs == -Rat::new(alpha(k + 1, p), Int::from(p))
        })
    }));
    out.push(CheckRecord::exact("alpha_recurrence", alpha_rec));

    let n = 25;
    let e_iota = seq_e(&seq_iota(n), n).expect("long enough");
    out.push(CheckRecord::exact("e_iota_bernoulli", count((0..=n).map(|m| e_iota[m] == bernoulli(m)))));
    let e_eta = seq_e(&seq_eta(n), n).expect("long enough");
    out.push(CheckRecord::exact(
        "e_eta",
        count((0..=n).map(|m| {
            let want = Rat::from(sign(m) * Int::from(m)) + if m == 1 { Rat::one() } else { Rat::zero() };
            e_eta[m] == want
        })),
    ));

    let order = 15;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: Vec<Rat> = (0..=order).map(|_| random_rat(&mut rng)).collect();
    let gf = gf_lemma_mismatches(&seq_iota(order), order)
        + gf_lemma_mismatches(&seq_eta(order), order)
        + gf_lemma_mismatches(&random, order);
    out.push(CheckRecord::exact("generating_function_lemma", gf));

    let le = count((0..=n).map(|big_n| {
        let c = seq_l(&seq_e(&seq_c(big_n), big_n).expect("len"), big_n).expect("len");
        let iota = seq_l(&seq_e(&seq_iota(big_n), big_n).expect("len"), big_n).expect("len");
        let eta = seq_l(&seq_e(&seq_eta(big_n), big_n).expect("len"), big_n).expect("len");
        let beta = seq_l(&seq_e(&seq_beta(big_n), big_n).expect("len"), big_n).expect("len");
        let parity = Rat::one() + Rat::from(sign(big_n));
        let want_c = constant_c().scale(&parity);
        let want_iota = (Rat::from_integer(Int::from(2)) - Rat::from(Int::one() << big_n)) * bernoulli(big_n);
        let want_eta = Rat::from_integer(Int::from(2 * big_n)) * &parity;
        let want_beta = (2..=big_n).fold(SymVal::zero(), |acc, j| {
            &acc + &zeta_bernoulli(j).scale(&Rat::from(tcoef(big_n, j).expect("j >= 2")))
        });
        c == want_c && iota == want_iota && eta == want_eta && beta == want_beta
    }));
    out.push(CheckRecord::exact("le_closed_forms", le));

    out.push(CheckRecord::exact(
        "dual_route",
        count((0..=12).map(|m| g_deriv_at_0(2 * m) == moment_closed(m).value)),
    ));
    out.push(CheckRecord::exact(
        "odd_vanishing",
        count((1..=25).step_by(2).map(|m| g_deriv_at_0(m).is_zero())),
    ));
    out.push(CheckRecord::exact(
        "psi_route",
        count((0..=20).map(|k| psi_route_a_deriv(k) == a_deriv_closed(k).value)),
    ));
    out.push(CheckRecord::exact("ring_axioms", ring_axiom_mismatches(seed, samples)));
    out
}

const RECIPROCITY_PAIRS: [(u64, u64); 5] = [(1, 1), (1, 2), (1, 3), (2, 3), (3, 5)];

pub(crate) fn run_verify(cli: &Cli, which: &Verify) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut params = json!({
        "digits": cli.digits,
        "precision": cli.precision,
        "threads": cli.threads,
        "seed": cli.seed,
    });
    let (name, records) = match which {
        Verify::Moments { max_n } => {
            let cfg = cli.quad_config(1e-8)?;
            params["max_n"] = json!(max_n);
            params["quad"] = json!(cfg);
            let records = (0..=*max_n as usize)
                .map(|n| moment_report(n, &cfg, cli.digits).map(Record::Moment))
                .collect::<Result<Vec<_>, _>>()
                .map_err(quad_usage)?;
            ("moments", records)
        }
        Verify::Aderiv { max_k } => {
            let cfg = cli.quad_config(1e-6)?;
            params["max_k"] = json!(max_k);
            params["quad"] = json!(cfg);
            let mut records = Vec::new();
            for k in 0..=*max_k as usize {
                let numeric = a_deriv_numeric(k, &cfg).map_err(quad_usage)?;
                let exact = eval_numeric_at(&a_deriv_closed(k).value, 20, cli.precision)
                    .map_err(|e| CliError::Usage(e.to_string()))?
                    .to_f64();
                records.push(Record::Check(CheckRecord::residual(format!("A^({k})(1)"), (numeric - exact).abs(), cfg.tol)));
            }
            ("aderiv", records)
        }
        Verify::Ramanujan { v } => {
            let cfg = cli.quad_config(1e-6)?;
            params["v"] = json!(v);
            params["quad"] = json!(cfg);
            let records = v
                .iter()
                .map(|&x| {
                    ramanujan_identity_residual(x, &cfg)
                        .map(|res| Record::Check(CheckRecord::residual(format!("v={x}"), res, cfg.tol)))
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(quad_usage)?;
            ("ramanujan", records)
        }
        Verify::Reciprocity { h, k } => {
            let cfg = cli.quad_config(1e-6)?;
            let pairs = match (h, k) {
                (Some(h), Some(k)) => vec![(*h, *k)],
                _ => RECIPROCITY_PAIRS.to_vec(),
            };
            params["pairs"] = json!(pairs);
            params["quad"] = json!(cfg);
            let records = pairs
                .iter()
                .map(|&(h, k)| {
                    reciprocity_residual(h, k, &cfg)
                        .map(|res| Record::Check(CheckRecord::residual(format!("h/k={h}/{k}"), res, cfg.tol)))
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(quad_usage)?;
            ("reciprocity", records)
        }
        Verify::Identities { samples } => {
            params["samples"] = json!(samples);
            let records = identity_checks(cli.seed, *samples).into_iter().map(Record::Check).collect();
            ("identities", records)
        }
    };
    Ok(RunReport::new(name, params, records, start.elapsed().as_secs_f64()))
}
