use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use super::{QuadConfig, QuadError};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn build_rule(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=n {
                let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

/// Cached `n`-point rule.
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut map = cache.lock().expect("rule cache poisoned");
    map.entry(n).or_insert_with(|| Arc::new(build_rule(n))).clone()
}

/// Neumaier's compensated sum.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
}

pub fn uniform_panels(a: f64, b: f64, width: f64) -> Vec<Panel> {
    let count = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / count as f64;
    (0..count)
        .map(|i| Panel {
            a: a + i as f64 * h,
            b: if i + 1 == count { b } else { a + (i + 1) as f64 * h },
        })
        .collect()
}

/// Panels on `[0, T]`: the first fine panel is split geometrically, the
/// rest of `[0, min(T, 50)]` uses `panel_count` equal panels and the
/// remainder panels of twice that width.
pub fn moment_panels(cfg: &QuadConfig) -> Vec<Panel> {
    let fine_end = cfg.cutoff.min(50.0);
    let w = fine_end / cfg.panel_count as f64;
    let mut panels = Vec::new();
    let mut left = 0.0;
    for right in [w / 8.0, w / 4.0, w / 2.0, w] {
        panels.push(Panel { a: left, b: right });
        left = right;
    }
    if cfg.panel_count > 1 {
        panels.extend(uniform_panels(w, fine_end, w));
    }
    if cfg.cutoff > fine_end {
        panels.extend(uniform_panels(fine_end, cfg.cutoff, 2.0 * w));
    }
    panels
}

fn panel_sum<F: Fn(f64) -> f64>(f: &F, p: Panel, rule: &Rule) -> f64 {
    let half = 0.5 * (p.b - p.a);
    let mid = 0.5 * (p.a + p.b);
    let terms = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| w * f(mid + half * x));
    half * neumaier_sum(terms)
}

/// Sum of the per-panel Gauss–Legendre estimates, reduced in panel order.
pub fn integrate<F>(f: F, panels: &[Panel], order: usize) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    let rule = gauss_legendre(order);
    let parts: Vec<f64> = panels.par_iter().map(|&p| panel_sum(&f, p, &rule)).collect();
    neumaier_sum(parts)
}

pub(crate) fn with_threads<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> Result<R, QuadError> {
    if threads == 0 {
        return Ok(op());
    }
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<ThreadPool>>>> = OnceLock::new();
    let pool = {
        let mut pools = POOLS.get_or_init(Default::default).lock().expect("pool cache poisoned");
        match pools.get(&threads) {
            Some(p) => p.clone(),
            None => {
                let p = ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| QuadError::Pool(e.to_string()))?;
                let p = Arc::new(p);
                pools.insert(threads, p.clone());
                p
            }
        }
    };
    Ok(pool.install(op))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for n in [8, 13, 20] {
            let r = gauss_legendre(n);
            let total: f64 = r.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let got: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn compensated_sum() {
        let v = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(neumaier_sum(v), 2.0);
    }

    #[test]
    fn panels_tile_interval() {
        let cfg = QuadConfig::default();
        let p = moment_panels(&cfg);
        assert_eq!(p[0].a, 0.0);
        assert_eq!(p.last().unwrap().b, cfg.cutoff);
        for w in p.windows(2) {
            assert_eq!(w[0].b, w[1].a);
            assert!(w[0].b > w[0].a);
        }
        assert!(p.iter().filter(|q| q.b <= 50.0).all(|q| q.b - q.a <= 0.5 + 1e-12));
    }

    #[test]
    fn integrates_exponential() {
        let got = integrate(|x: f64| (-x).exp(), &uniform_panels(0.0, 40.0, 0.5), 20);
        assert!((got - (1.0 - (-40.0f64).exp())).abs() < 1e-14);
    }
}
