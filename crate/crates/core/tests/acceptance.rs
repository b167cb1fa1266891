//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weaksub::bounds::{self, to_f64};
use weaksub::check::{self, pair_sides};
use weaksub::matroid::{self, Matroid};
use weaksub::solve::{self, LocalSearchOptions, SizeMode};
use weaksub::zoo::{self, random};
use weaksub::{Mode, Property, SetFunction, Subset, Value};

type Outcome = Result<String, String>;

/// Name, function, `S`, `T` and the expected sides.
type Fixture = (&'static str, SetFunction, Vec<usize>, Vec<usize>, (i128, i128));

/// Collects failed sub-checks instead of stopping at the first.
#[derive(Default)]
struct Ledger {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Ledger {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            Ok(self.notes.join("; "))
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&x)
}

fn weakly(f: &SetFunction) -> bool {
    check::check_weakly_submodular(f, Mode::Exhaustive).expect("n within the exhaustive cap").passed
}

fn ratio_constants() -> Outcome {
    let mut l = Ledger::default();
    let g10 = bounds::greedy_ratio(10).map_err(|e| e.to_string())?;
    let g100 = bounds::greedy_ratio(100).map_err(|e| e.to_string())?;
    l.require(within(g10, 3.73, 3.75), format!("greedy_ratio(10) = {g10:.6} not in [3.73, 3.75]"));
    l.require(within(g100, 5.61, 5.63), format!("greedy_ratio(100) = {g100:.6} not in [5.61, 5.63]"));
    let ls = bounds::ls_discrete_bound(6, 6).map_err(|e| e.to_string())?;
    l.require(within(ls, 10.87, 10.89), format!("ls_discrete_bound(6,6) = {ls:.6}"));
    let ge = bounds::g_continuous(std::f64::consts::E, 1.0).map_err(|e| e.to_string())?;
    l.require(within(ge, 10.21, 10.23), format!("g(e,1) = {ge:.6}"));
    let g225 = bounds::g_continuous(2.25, 1.0).map_err(|e| e.to_string())?;
    l.require((g225 - 14.5).abs() <= 1e-9, format!("g(2.25,1) = {g225}"));
    let (x, g) = bounds::g_stationary_exact(1).map_err(|e| e.to_string())?;
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    l.require(x == int(3) && g == int(10), format!("g_stationary(1) = ({x}, {g})"));
    l.note(format!("ls(6,6) = {ls:.6}, g(e,1) = {ge:.6}, g(2.25,1) = {g225}, g_stationary(1) = ({x}, {g})"));
    l.finish()
}

fn convergence_scans() -> Outcome {
    let mut l = Ledger::default();
    let mut prev = f64::NEG_INFINITY;
    for p in (10..=2000).step_by(10) {
        let a = bounds::greedy_ratio(p).map_err(|e| e.to_string())?;
        l.require(a >= prev, format!("greedy_ratio decreases at p = {p}"));
        l.require(a < 5.96, format!("greedy_ratio({p}) = {a} >= 5.96"));
        prev = a;
    }
    let top = prev;
    let mut prev = f64::INFINITY;
    for s in 2..=500 {
        let (b, _) = bounds::ls_bound(s).map_err(|e| e.to_string())?;
        l.require(b <= prev, format!("ls_bound increases at s = {s}"));
        prev = b;
    }
    l.require((prev - 10.22).abs() <= 0.01, format!("ls_bound(500) = {prev}"));
    l.note(format!("greedy_ratio(2000) = {top:.6}, ls_bound(500) = {prev:.6}"));
    l.finish()
}

fn counterexamples() -> Outcome {
    let mut l = Ledger::default();
    let b = Value::Int(7);
    let cases: Vec<Fixture> = vec![
        ("max-cut star n=3", zoo::max_cut(&zoo::star_counterexample(3)).unwrap(), vec![0, 1, 2, 3], vec![0, 1, 2, 4], (24, 30)),
        (
            "|S|^4 at (4,4,1)",
            zoo::raw_cardinality_profile(9, &[Value::ZERO, Value::ZERO, Value::ZERO, Value::ZERO, Value::Int(1)]),
            (0..5).collect(),
            (4..9).collect(),
            (6250, 6570),
        ),
        ("threshold k=3", zoo::threshold(3, 3, b).unwrap(), vec![0, 1], vec![1, 2], (0, 7)),
        ("supermodular pair", zoo::supermodular_pair(b).unwrap(), vec![0, 2], vec![1, 2], (0, 7)),
    ];
    for (name, f, s, t, (el, er)) in cases {
        let s = Subset::from_indices(f.n(), s).unwrap();
        let t = Subset::from_indices(f.n(), t).unwrap();
        let (lhs, rhs) = pair_sides(&f, Property::WeaklySubmodular, &s, &t).map_err(|e| e.to_string())?;
        l.require(lhs.identical(Value::Int(el)) && rhs.identical(Value::Int(er)), format!("{name}: {lhs} vs {rhs}"));
        l.note(format!("{name}: {lhs} vs {rhs}"));
    }
    l.finish()
}

fn class_membership() -> Outcome {
    let mut l = Ledger::default();
    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut members = Vec::new();
    for i in 0..50 {
        let f = zoo::metric_dispersion(&random::metric(&mut rng, n, 20)).unwrap();
        l.require(weakly(&f), format!("metric #{i} fails"));
        members.push(f);
    }
    for i in 0..50 {
        let f = zoo::segmentation(&random::segmentation_matrix(&mut rng, n, 4, 9)).unwrap();
        l.require(weakly(&f), format!("segmentation #{i} fails"));
        members.push(f);
    }
    for k in 1..=3 {
        let f = zoo::cardinality_power(n, k).unwrap();
        l.require(weakly(&f), format!("|S|^{k} fails"));
        members.push(f);
    }
    for k in 1..=2 {
        let f = zoo::threshold(n, k, Value::Int(5)).unwrap();
        l.require(weakly(&f), format!("threshold k={k} fails"));
        members.push(f);
    }
    for i in 0..20 {
        let picks: Vec<SetFunction> = (0..3).map(|_| members[rng.gen_range(0..members.len())].clone()).collect();
        let alphas: Vec<Value> = (0..3).map(|_| Value::Int(rng.gen_range(0..5))).collect();
        let f = zoo::linear_combination(&picks, &alphas).unwrap();
        l.require(weakly(&f), format!("combination #{i} fails"));
    }
    for k in 3..=n {
        l.require(!weakly(&zoo::threshold(n, k, Value::Int(5)).unwrap()), format!("threshold k={k} passes"));
    }
    let quartic = zoo::raw_cardinality_profile(n, &[Value::ZERO, Value::ZERO, Value::ZERO, Value::ZERO, Value::Int(1)]);
    l.require(!weakly(&quartic), "raw |S|^4 passes");
    l.note("50 metrics, 50 segmentations, |S|^1..3, thresholds k<=2, 20 combinations pass; thresholds k=3..8 and |S|^4 fail");
    l.finish()
}

fn greedy_family(family: usize, rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
    match family {
        0 => zoo::metric_dispersion(&random::metric(rng, n, 20)).unwrap(),
        1 => zoo::segmentation(&random::segmentation_matrix(rng, n, 4, 9)).unwrap(),
        _ => {
            let d = zoo::metric_dispersion(&random::metric(rng, n, 20)).unwrap();
            let s = zoo::segmentation(&random::segmentation_matrix(rng, n, 4, 9)).unwrap();
            let (covers, w) = random::coverage_instance(rng, n, 2 * n, 9);
            let c = zoo::coverage(covers, &w).unwrap();
            let alphas: Vec<Value> = (0..3).map(|_| Value::Int(rng.gen_range(0..4))).collect();
            zoo::linear_combination(&[d, s, c], &alphas).unwrap()
        }
    }
}

/// `s` blocks of cap 1, elements dealt round-robin.
fn unit_partition(n: usize, s: usize) -> Matroid {
    let blocks = (0..s).map(|b| (b..n).step_by(s).collect()).collect();
    Matroid::partition(n, blocks, vec![1; s]).unwrap()
}

fn algorithm_vs_oracle() -> Outcome {
    let mut l = Ledger::default();
    let n = 10;
    let mut worst_greedy = 1.0f64;
    let mut worst_local = 1.0f64;
    for p in 2..=5 {
        let alpha = bounds::greedy_ratio(p).unwrap();
        for family in 0..3 {
            for i in 0..100u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(1000 * p as u64 + 100 * family as u64 + i);
                let f = greedy_family(family, &mut rng, n);
                let alg = solve::greedy_cardinality(&f, p).unwrap().value;
                let opt = solve::brute_force_cardinality(&f, p, SizeMode::AtMost).unwrap().value;
                let r = solve::empirical_ratio(opt, alg);
                l.require(opt >= alg, format!("greedy beats OPT: family {family}, p = {p}, #{i}"));
                l.require(r <= alpha, format!("greedy ratio {r} > {alpha}: family {family}, p = {p}, #{i}"));
                worst_greedy = worst_greedy.max(r);
            }
        }
    }
    for s in 2..=5 {
        let rho = bounds::ls_bound(s).unwrap().0;
        for (kind, m) in [("uniform", Matroid::uniform(n, s)), ("partition", unit_partition(n, s))] {
            for i in 0..100u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(50_000 + 1000 * s as u64 + i);
                let f = zoo::metric_dispersion(&random::metric(&mut rng, n, 20)).unwrap();
                let alg = solve::local_search_matroid(&f, &m, &LocalSearchOptions::default()).unwrap().value;
                let opt = solve::brute_force_matroid(&f, &m).unwrap().value;
                let r = solve::empirical_ratio(opt, alg);
                l.require(opt >= alg, format!("local search beats OPT: {kind}, s = {s}, #{i}"));
                l.require(r <= rho, format!("local ratio {r} > {rho}: {kind}, s = {s}, #{i}"));
                worst_local = worst_local.max(r);
            }
        }
    }
    l.note(format!("1200 greedy runs, worst ratio {worst_greedy:.4}; 800 local-search runs, worst ratio {worst_local:.4}"));
    l.finish()
}

fn identities() -> Outcome {
    let mut l = Ledger::default();
    for i in 1..=10 {
        for n in 1..=50 {
            let (a, b) = bounds::geometric_identity(i, n).unwrap();
            l.require((a - b).abs() <= 1e-9 * a.abs().max(1.0), format!("geometric identity i = {i}, n = {n}"));
            let (a, b) = bounds::weighted_geometric_identity(i, n).unwrap();
            l.require((a - b).abs() <= 1e-9 * a.abs().max(1.0), format!("weighted identity i = {i}, n = {n}"));
        }
    }
    for i in 1..=6 {
        for n in 1..=12 {
            let (a, b) = bounds::geometric_identity_exact(i, n).unwrap();
            l.require(a == b, format!("exact geometric identity i = {i}, n = {n}"));
            let (a, b) = bounds::weighted_geometric_identity_exact(i, n).unwrap();
            l.require(a == b, format!("exact weighted identity i = {i}, n = {n}"));
        }
    }
    for p in 2..=bounds::EXACT_GREEDY_CAP {
        for i in 1..p {
            let a = bounds::a_star_exact(i, p).unwrap();
            let b = bounds::b_star_exact(i, p).unwrap();
            l.require(&a - &b == BigRational::from_integer(BigInt::from(i)), format!("a* - b* != i at i = {i}, p = {p}"));
            l.require(a == bounds::a_star_sum(i, p).unwrap(), format!("a* closed form != sum at i = {i}, p = {p}"));
            l.require(b == bounds::b_star_sum(i, p).unwrap(), format!("b* closed form != sum at i = {i}, p = {p}"));
            let af = bounds::a_star(i, p).unwrap();
            l.require((af - to_f64(&a)).abs() <= 1e-9 * af, format!("a* float at i = {i}, p = {p}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..1000 {
        let len = rng.gen_range(1..=10);
        let mut seqs: Vec<Vec<f64>> = (0..3).map(|_| (0..len).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
        for seq in &mut seqs {
            seq.sort_by(|x, y| y.total_cmp(x));
        }
        l.require(bounds::rearrangement_check(&seqs[0], &seqs[1], &seqs[2]).unwrap(), format!("rearrangement triple #{t}"));
    }
    let mut pairs = 0;
    for k in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(600 + k);
        let m = if k % 2 == 0 { matroid::random::binary(&mut rng, 7, 3) } else { matroid::random::partition(&mut rng, 7, 3) };
        let bases = m.bases().unwrap();
        for x in &bases {
            for y in &bases {
                let ok = m.brualdi_bijection(x, y).map(|g| g.is_valid(&m)).unwrap_or(false);
                l.require(ok, format!("exchange bijection, matroid #{k}"));
                pairs += 1;
            }
        }
    }
    l.note(format!("identities, a*-b*, closed forms for p <= {}, 1000 triples, {pairs} base pairs", bounds::EXACT_GREEDY_CAP));
    l.finish()
}

struct Criterion {
    number: usize,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, budget: Duration::from_secs(1), run: ratio_constants },
        Criterion { number: 2, budget: Duration::from_secs(30), run: convergence_scans },
        Criterion { number: 3, budget: Duration::from_secs(1), run: counterexamples },
        Criterion { number: 4, budget: Duration::from_secs(300), run: class_membership },
        Criterion { number: 5, budget: Duration::from_secs(600), run: algorithm_vs_oracle },
        Criterion { number: 6, budget: Duration::from_secs(60), run: identities },
    ];
    let mut passed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > c.budget => Err(format!("{d}; over budget {:?}", c.budget)),
            other => other,
        };
        match &outcome {
            Ok(d) => println!("criterion {}: PASS ({d}; {:.2} s)", c.number, took.as_secs_f64()),
            Err(d) => println!("criterion {}: FAIL ({d}; {:.2} s)", c.number, took.as_secs_f64()),
        }
        passed.push((c.number, outcome.is_ok()));
    }
    let substitutes = passed.iter().filter(|(n, _)| [2, 4, 6].contains(n)).all(|(_, ok)| *ok);
    let far = bounds::greedy_ratio(10_000).unwrap();
    let far_ls = bounds::ls_discrete_bound(1000, 1000).unwrap();
    let status = if substitutes { "PASS" } else { "FAIL" };
    println!(
        "criterion 7: {status} (bounded scans and invariant suites stand in for the limits; greedy_ratio(10000) = {far:.6}, ls(1000,1000) = {far_ls:.6})"
    );
    passed.push((7, substitutes));
    let failed: Vec<usize> = passed.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
