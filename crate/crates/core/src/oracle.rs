//! Reference implementations for checking the fast solver.
//!
//! Nothing here uses [`crate::profile`] or [`crate::solver`]: heights,
//! neighbours and integrals are recomputed from the raw coordinates.

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};

/// Default total-point limit for the quadratic DP.
pub const DEFAULT_DP_GUARD: usize = 20_000;

/// Largest `|T|` accepted by [`exhaustive_optimal`].
pub const EXHAUSTIVE_MAX_T: usize = 5;
/// Largest `|S|` accepted by [`exhaustive_optimal`].
pub const EXHAUSTIVE_MAX_S: usize = 9;

/// DP cell; `None` marks an unreachable state.
type Cell = Option<i64>;

fn min_cell(a: Cell, b: Cell) -> Cell {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn check_guard(inst: &Instance, guard: usize) -> Result<()> {
    if inst.len() > guard {
        return Err(Error::InstanceTooLarge {
            points: inst.len(),
            guard,
        });
    }
    Ok(())
}

/// Optimal cost by the order-preserving DP
/// `D[i][j] = |s_i - t_j| + min(D[i-1][j-1], D[i-1][j])`, two rolling rows.
pub fn dp_optimal_cost(inst: &Instance, guard: usize) -> Result<i64> {
    check_guard(inst, guard)?;
    let (s, t) = (inst.s(), inst.t());
    let mut prev: Vec<Cell> = vec![None; t.len() + 1];
    let mut row: Vec<Cell> = vec![None; t.len() + 1];
    prev[0] = Some(0);
    for (i, &x) in s.iter().enumerate() {
        row[0] = None;
        let top = (i + 1).min(t.len());
        for j in 1..=top {
            row[j] = min_cell(prev[j - 1], prev[j]).map(|c| c + (x - t[j - 1]).abs());
        }
        for cell in &mut row[top + 1..] {
            *cell = None;
        }
        std::mem::swap(&mut prev, &mut row);
    }
    prev[t.len()].ok_or_else(|| Error::Internal("DP end state unreachable".into()))
}

/// Same DP with a full predecessor table, returning an optimal assignment.
pub fn dp_optimal_assignment(inst: &Instance, guard: usize) -> Result<(i64, Assignment)> {
    check_guard(inst, guard)?;
    let (s, t) = (inst.s(), inst.t());
    let width = t.len() + 1;
    // from_diagonal[i * width + j]: D[i][j] came from D[i-1][j-1]
    let mut from_diagonal = vec![false; (s.len() + 1) * width];
    let mut prev: Vec<Cell> = vec![None; width];
    let mut row: Vec<Cell> = vec![None; width];
    prev[0] = Some(0);
    for i in 1..=s.len() {
        row.fill(None);
        for j in 1..=i.min(t.len()) {
            let (diag, up) = (prev[j - 1], prev[j]);
            let take_diag = match (diag, up) {
                (Some(d), Some(u)) => d <= u,
                (Some(_), None) => true,
                _ => false,
            };
            from_diagonal[i * width + j] = take_diag;
            row[j] = min_cell(diag, up).map(|c| c + (s[i - 1] - t[j - 1]).abs());
        }
        std::mem::swap(&mut prev, &mut row);
    }
    let cost = prev[t.len()].ok_or_else(|| Error::Internal("DP end state unreachable".into()))?;

    let mut pairs = Vec::with_capacity(s.len());
    let mut j = t.len();
    for i in (1..=s.len()).rev() {
        pairs.push((i - 1, j - 1));
        if from_diagonal[i * width + j] {
            j -= 1;
        }
    }
    debug_assert_eq!(j, 0);
    pairs.reverse();
    Ok((cost, Assignment::from_pairs(inst, pairs)))
}

/// Minimum over every surjection `S -> T`, crossing or not.
///
/// Enumerates all `|T|^|S|` maps, so it is limited to `|T| <= 5`, `|S| <= 9`.
pub fn exhaustive_optimal(inst: &Instance) -> Result<i64> {
    let (s, t) = (inst.s(), inst.t());
    if t.len() > EXHAUSTIVE_MAX_T || s.len() > EXHAUSTIVE_MAX_S {
        return Err(Error::InstanceTooLarge {
            points: inst.len(),
            guard: EXHAUSTIVE_MAX_S + EXHAUSTIVE_MAX_T,
        });
    }
    let d = |i: usize, j: usize| (s[i] - t[j]).abs();

    // Odometer over maps; coverage and cost are updated incrementally.
    let mut map = vec![0usize; s.len()];
    let mut cover = vec![0usize; t.len()];
    cover[0] = s.len();
    let mut uncovered = t.len() - 1;
    let mut cost: i64 = (0..s.len()).map(|i| d(i, 0)).sum();
    let mut best: Option<i64> = None;

    loop {
        if uncovered == 0 {
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        let mut i = 0;
        loop {
            if i == s.len() {
                return best.ok_or_else(|| Error::Internal("no surjection found".into()));
            }
            let old = map[i];
            cover[old] -= 1;
            if cover[old] == 0 {
                uncovered += 1;
            }
            cost -= d(i, old);
            let new = if old + 1 < t.len() { old + 1 } else { 0 };
            map[i] = new;
            if cover[new] == 0 {
                uncovered -= 1;
            }
            cover[new] += 1;
            cost += d(i, new);
            if new != 0 {
                break;
            }
            i += 1;
        }
    }
}

/// One point of the naive sweep: coordinate and the height just after it.
struct Step {
    coord: i64,
    level: i64,
    source: Option<usize>,
}

/// Sweep order built by sorting tagged tuples; targets first at equal coordinates.
fn steps(s: &[i64], t: &[i64]) -> Vec<Step> {
    let mut tagged: Vec<(i64, u8, usize)> = t
        .iter()
        .enumerate()
        .map(|(j, &x)| (x, 0, j))
        .chain(s.iter().enumerate().map(|(i, &x)| (x, 1, i)))
        .collect();
    tagged.sort_unstable();
    let mut level = 0;
    tagged
        .into_iter()
        .map(|(coord, tag, idx)| {
            level += if tag == 1 { 1 } else { -1 };
            Step {
                coord,
                level,
                source: (tag == 1).then_some(idx),
            }
        })
        .collect()
}

/// `∫ |H|` from the first point to the last.
fn abs_area(steps: &[Step]) -> i64 {
    steps
        .windows(2)
        .map(|w| (w[1].coord - w[0].coord) * w[0].level.abs())
        .sum()
}

/// `∫_{steps[from].coord}^{last} h^k`, interval by interval.
fn relative_area(steps: &[Step], from: usize, k: i64) -> i64 {
    steps[from..]
        .windows(2)
        .map(|w| {
            let len = w[1].coord - w[0].coord;
            if w[0].level >= k {
                len
            } else {
                -len
            }
        })
        .sum()
}

fn step_heights(steps: &[Step], source_len: usize) -> (Vec<i64>, Vec<usize>) {
    let mut height = vec![0; source_len];
    let mut position = vec![0; source_len];
    for (p, st) in steps.iter().enumerate() {
        if let Some(i) = st.source {
            height[i] = st.level;
            position[i] = p;
        }
    }
    (height, position)
}

/// Profit of removing `s[s_index]`, integrated directly over the step function
/// up to `max(S ∪ T)`, minus the brute-force nearest-target distance.
pub fn profit_direct(inst: &Instance, s_index: usize) -> Result<i64> {
    let st = steps(inst.s(), inst.t());
    let (height, position) = step_heights(&st, inst.s().len());
    let k = height[s_index];
    if k < 1 || k > inst.delta() as i64 {
        return Err(Error::HeightOutOfRange {
            s_index,
            height: k,
            delta: inst.delta(),
        });
    }
    let x = inst.s()[s_index];
    let nearest = inst
        .t()
        .iter()
        .map(|&t| (x - t).abs())
        .min()
        .expect("T non-empty");
    Ok(relative_area(&st, position[s_index], k) - nearest)
}

/// Both sides of `∫|H_R| = ∫|H| - Σ_k ∫_{r_k}^m h^k`.
///
/// `removed` must hold exactly one source of each height `1..=delta`, with
/// the height-`k` source the `k`-th in index order. The left side comes from
/// the reduced point set, the right from the full one.
pub fn karp_li_identity_check(inst: &Instance, removed: &[usize]) -> Result<(i64, i64)> {
    let delta = inst.delta();
    let mut r = removed.to_vec();
    r.sort_unstable();
    if r.len() != delta {
        return Err(Error::MalformedRemovalSet(format!(
            "{} points for {delta} heights",
            r.len()
        )));
    }
    if r.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedRemovalSet("repeated index".into()));
    }
    if let Some(&bad) = r.iter().find(|&&i| i >= inst.s().len()) {
        return Err(Error::MalformedRemovalSet(format!(
            "index {bad} out of bounds"
        )));
    }

    let full = steps(inst.s(), inst.t());
    let (height, position) = step_heights(&full, inst.s().len());
    for (k, &i) in r.iter().enumerate() {
        if height[i] != (k + 1) as i64 {
            return Err(Error::MalformedRemovalSet(format!(
                "the {}-th removed point s[{i}] has height {}",
                k + 1,
                height[i]
            )));
        }
    }

    let reduced_s: Vec<i64> = (0..inst.s().len())
        .filter(|i| r.binary_search(i).is_err())
        .map(|i| inst.s()[i])
        .collect();
    let lhs = abs_area(&steps(&reduced_s, inst.t()));
    let rhs = abs_area(&full)
        - r.iter()
            .enumerate()
            .map(|(k, &i)| relative_area(&full, position[i], (k + 1) as i64))
            .sum::<i64>();
    Ok((lhs, rhs))
}
