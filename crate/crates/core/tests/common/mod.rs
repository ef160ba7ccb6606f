#![allow(dead_code)]

use scaffold_assign::generate::SplitMix64;
use scaffold_assign::Instance;

/// `|T|` in `t_range`, `|S|` in `|T|..=max_s`, coordinates in `0..=max_coord`.
pub fn random_instance(
    rng: &mut SplitMix64,
    t_range: (usize, usize),
    max_s: usize,
    max_coord: i64,
) -> Instance {
    let nt = t_range.0 + rng.below((t_range.1 - t_range.0 + 1) as u64) as usize;
    let ns = nt + rng.below((max_s - nt + 1) as u64) as usize;
    let s = (0..ns).map(|_| rng.range_inclusive(0, max_coord)).collect();
    let t = (0..nt).map(|_| rng.range_inclusive(0, max_coord)).collect();
    Instance::new(s, t).unwrap()
}

/// Cost of an edge list as `∫ (number of edges spanning x) dx`, counted
/// interval by interval between consecutive distinct coordinates.
pub fn area_cost(inst: &Instance, pairs: &[(usize, usize)]) -> i64 {
    let spans: Vec<(i64, i64)> = pairs
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (inst.s()[i], inst.t()[j]);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut xs: Vec<i64> = inst.s().iter().chain(inst.t()).copied().collect();
    xs.sort_unstable();
    xs.dedup();
    xs.windows(2)
        .map(|w| {
            let pierced = spans
                .iter()
                .filter(|&&(lo, hi)| lo <= w[0] && hi >= w[1])
                .count();
            (w[1] - w[0]) * pierced as i64
        })
        .sum()
}

/// `H(x)` by counting.
pub fn naive_height(inst: &Instance, x: i64) -> i64 {
    inst.s().iter().filter(|&&s| s <= x).count() as i64
        - inst.t().iter().filter(|&&t| t <= x).count() as i64
}

/// All removal sets with one source per height `1..=delta`, in increasing
/// index order, by depth-first enumeration. Stops after `limit` sets.
pub fn height_respecting_sets(heights: &[i64], delta: usize, limit: usize) -> Vec<Vec<usize>> {
    fn go(
        heights: &[i64],
        delta: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if cur.len() == delta {
            out.push(cur.clone());
            return;
        }
        let k = (cur.len() + 1) as i64;
        for i in start..heights.len() {
            if heights[i] == k {
                cur.push(i);
                go(heights, delta, i + 1, cur, out, limit);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(heights, delta, 0, &mut Vec::new(), &mut out, limit);
    out
}
