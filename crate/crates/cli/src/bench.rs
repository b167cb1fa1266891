//! Seeded benchmark suites. Instance `i` draws from a ChaCha8 stream `i`
//! of the CLI seed, so results do not depend on scheduling.

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use weaksub::bounds;
use weaksub::matroid::{self, Matroid};
use weaksub::solve::{self, LocalSearchOptions, SizeMode};
use weaksub::zoo::{self, random};
use weaksub::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Local search on random metric dispersion, uniform matroid of rank `param`.
    Dispersion,
    /// Local search on random metric dispersion, random partition matroid
    /// with `param` blocks.
    Partition,
    /// Greedy on random segmentation functions, cardinality `param`.
    Segmentation,
    /// Greedy on random weighted coverage, cardinality `param`.
    Coverage,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub index: usize,
    pub alg: Value,
    pub opt: Value,
    pub ratio: f64,
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub suite: Suite,
    pub seed: u64,
    pub n: usize,
    pub param: usize,
    pub rows: Vec<Row>,
    pub max_ratio: f64,
    pub all_within_bound: bool,
}

impl BenchReport {
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "alg", "opt", "ratio", "bound", "within_bound"])?;
        for r in &self.rows {
            w.write_record([
                r.index.to_string(),
                r.alg.to_string(),
                r.opt.to_string(),
                format!("{:.12}", r.ratio),
                format!("{:.12}", r.bound),
                r.within_bound.to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

fn local_bound(m: &Matroid) -> anyhow::Result<f64> {
    Ok(if m.rank() >= 2 { bounds::ls_bound(m.rank())?.0 } else { 1.0 })
}

fn greedy_bound(p: usize) -> anyhow::Result<f64> {
    Ok(if p >= 2 { bounds::greedy_ratio(p)? } else { 1.0 })
}

fn one(suite: Suite, index: usize, n: usize, param: usize, seed: u64) -> anyhow::Result<Row> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let (alg, opt, bound) = match suite {
        Suite::Dispersion | Suite::Partition => {
            let f = zoo::metric_dispersion(&random::metric(&mut rng, n, 10))?;
            let m = match suite {
                Suite::Dispersion => Matroid::uniform(n, param),
                _ => matroid::random::partition(&mut rng, n, param),
            };
            let alg = solve::local_search_matroid(&f, &m, &LocalSearchOptions::default())?.value;
            (alg, solve::brute_force_matroid(&f, &m)?.value, local_bound(&m)?)
        }
        Suite::Segmentation | Suite::Coverage => {
            let f = match suite {
                Suite::Segmentation => zoo::segmentation(&random::segmentation_matrix(&mut rng, n, 4, 9))?,
                _ => {
                    let (covers, weights) = random::coverage_instance(&mut rng, n, 2 * n, 10);
                    zoo::coverage(covers, &weights)?
                }
            };
            let alg = solve::greedy_cardinality(&f, param)?.value;
            (alg, solve::brute_force_cardinality(&f, param, SizeMode::AtMost)?.value, greedy_bound(param)?)
        }
    };
    let ratio = solve::empirical_ratio(opt, alg);
    let within_bound = opt >= alg && ratio <= bound * (1.0 + 1e-9);
    Ok(Row { index, alg, opt, ratio, bound, within_bound })
}

pub fn run(suite: Suite, instances: usize, n: usize, param: usize, seed: u64) -> anyhow::Result<BenchReport> {
    let rows = (0..instances).into_par_iter().map(|i| one(suite, i, n, param, seed)).collect::<anyhow::Result<Vec<_>>>()?;
    let max_ratio = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let all_within_bound = rows.iter().all(|r| r.within_bound);
    Ok(BenchReport { suite, seed, n, param, rows, max_ratio, all_within_bound })
}
