//! Seeded generators for random members of the zoo families.
//!
//! All generators draw integers so the produced functions evaluate exactly.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{DistanceMatrix, SegmentationMatrix};
use crate::value::Value;

/// Random metric by shortest-path completion: draw a symmetric matrix of
/// integer weights in `1..=max_weight`, then replace every entry with the
/// shortest-path distance. The result satisfies the triangle inequality
/// without rejection sampling.
pub fn metric<R: Rng>(rng: &mut R, n: usize, max_weight: i64) -> DistanceMatrix {
    let max_weight = max_weight.max(1);
    let mut d = vec![vec![0i64; n]; n];
    #[allow(clippy::needless_range_loop)]
    for u in 0..n {
        for v in u + 1..n {
            let w = rng.gen_range(1..=max_weight);
            d[u][v] = w;
            d[v][u] = w;
        }
    }
    for k in 0..n {
        for u in 0..n {
            for v in 0..n {
                let via = d[u][k] + d[k][v];
                if via < d[u][v] {
                    d[u][v] = via;
                }
            }
        }
    }
    let rows = d.into_iter().map(|r| r.into_iter().map(Value::from).collect()).collect();
    DistanceMatrix::new(rows).expect("shortest-path completion yields a metric")
}

/// Random average non-negative segmentation matrix with integer entries in
/// `-range..=range`. Rows with a negative sum are lifted by incrementing
/// random entries until the sum reaches zero.
pub fn segmentation_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> SegmentationMatrix {
    let range = range.max(1);
    let cols = cols.max(1);
    let data = (0..rows)
        .map(|_| {
            let mut row: Vec<i64> = (0..cols).map(|_| rng.gen_range(-range..=range)).collect();
            let mut sum: i64 = row.iter().sum();
            while sum < 0 {
                let j = rng.gen_range(0..cols);
                row[j] += 1;
                sum += 1;
            }
            row.into_iter().map(Value::from).collect()
        })
        .collect();
    SegmentationMatrix::new(data).expect("rows lifted to non-negative sums")
}

/// Random coverage instance: each of `n` elements covers between 1 and
/// `items` random items; item weights in `1..=max_weight`.
pub fn coverage_instance<R: Rng>(rng: &mut R, n: usize, items: usize, max_weight: i64) -> (Vec<Vec<usize>>, Vec<Value>) {
    let items = items.max(1);
    let all: Vec<usize> = (0..items).collect();
    let covers = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=items);
            let mut c: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
            c.sort_unstable();
            c
        })
        .collect();
    let weights = (0..items).map(|_| Value::from(rng.gen_range(1..=max_weight.max(1)))).collect();
    (covers, weights)
}

/// Non-negative integer weights in `0..=max_weight`.
pub fn weights<R: Rng>(rng: &mut R, n: usize, max_weight: i64) -> Vec<Value> {
    (0..n).map(|_| Value::from(rng.gen_range(0..=max_weight.max(0)))).collect()
}
