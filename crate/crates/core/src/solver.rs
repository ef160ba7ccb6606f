//! Linear-time (after sorting) minimum-cost many-to-one assignment.
//!
//! With `delta = |S| - |T|`, an optimal assignment sends exactly `delta`
//! sources (the removal set `R`) to their nearest targets and matches the
//! rest to `T` in sorted order. The `k`-th smallest member of `R` is a source
//! of height `k`, and at each height the best choice is the leftmost source
//! maximising
//!
//! ```text
//! P(s) = ∫_s^m h^k(x) dx - |s - N(s)|,   h^k(x) = if H(x) >= k { 1 } else { -1 }
//! ```
//!
//! where `m` is the largest point. All integrals for one height are produced
//! by a single right-to-left sweep.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{
    assignment_cost, count_crossings, validate_assignment, Assignment, Edge, Instance, SortCheck,
};
use crate::profile::{height_profile, nearest_neighbors};

/// Upper integration limit used by the profit sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpperLimit {
    /// `max(S ∪ T)`.
    #[default]
    AllPoints,
    /// `max(S)`. Shifts every profit at a given height by the same constant.
    SourcePoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfitEntry {
    pub s_index: usize,
    pub height: usize,
    pub profit: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfitTable {
    pub delta: usize,
    /// `best[k - 1]` is the leftmost maximiser at height `k`, if any source has that height.
    pub best: Vec<Option<ProfitEntry>>,
    /// Every source of height `1..=delta`, in index order.
    pub entries: Vec<ProfitEntry>,
}

impl ProfitTable {
    pub fn profit_of(&self, s_index: usize) -> Option<i64> {
        self.entries
            .binary_search_by_key(&s_index, |e| e.s_index)
            .ok()
            .map(|i| self.entries[i].profit)
    }
}

/// Matches the `k`-th source to the `k`-th target.
pub fn one_to_one_sorted(inst: &Instance) -> Result<Assignment> {
    if inst.s().len() != inst.t().len() {
        return Err(Error::CardinalityMismatch {
            source_len: inst.s().len(),
            target_len: inst.t().len(),
        });
    }
    Ok(Assignment::from_pairs(
        inst,
        (0..inst.s().len()).map(|k| (k, k)),
    ))
}

pub fn profit_sweep(inst: &Instance) -> Result<ProfitTable> {
    profit_sweep_with_limit(inst, UpperLimit::AllPoints)
}

pub fn profit_sweep_with_limit(inst: &Instance, limit: UpperLimit) -> Result<ProfitTable> {
    let mut entries = Vec::new();
    let best = sweep(inst, limit, |e| entries.push(e))?;
    entries.reverse();
    Ok(ProfitTable {
        delta: inst.delta(),
        best,
        entries,
    })
}

/// Nearest target of `x` given `j = #{t <= x}`; ties go left.
pub(crate) fn nearest_at(t: &[i64], j: usize, x: i64) -> (usize, i64) {
    let left = j.checked_sub(1).map(|l| (l, x - t[l]));
    let right = (j < t.len()).then(|| (j, t[j] - x));
    match (left, right) {
        (Some(l), Some(r)) if r.1 < l.1 => r,
        (Some(l), _) => l,
        (None, Some(r)) => r,
        (None, None) => unreachable!("instance has at least one target"),
    }
}

/// Right-to-left merge of `S` and `T` in reverse sweep order, reporting every
/// source of height `1..=delta` with its profit. Returns the leftmost
/// maximiser per height.
fn sweep(
    inst: &Instance,
    limit: UpperLimit,
    mut on_entry: impl FnMut(ProfitEntry),
) -> Result<Vec<Option<ProfitEntry>>> {
    let (s, t) = (inst.s(), inst.t());
    let delta = inst.delta();
    if delta == 0 {
        return Err(Error::NoRemovalNeeded);
    }
    let upper = match limit {
        UpperLimit::AllPoints => inst.max_point(),
        UpperLimit::SourcePoints => s[s.len() - 1],
    };

    // Per height k (slot k; slot 0 unused). Coordinates are bounded well
    // inside i64, so NONE marks an absent one.
    //   integral: ∫_x^upper h^k for the last height-k source seen, at x = prev
    //   drop: the target since then where H falls from k to k-1
    #[derive(Clone, Copy)]
    struct Level {
        integral: i64,
        prev: i64,
        drop: i64,
    }
    const NONE: i64 = i64::MIN;
    let mut levels = vec![
        Level {
            integral: 0,
            prev: NONE,
            drop: NONE
        };
        delta + 1
    ];
    let mut best: Vec<Option<ProfitEntry>> = vec![None; delta];

    // `h` is H just right of the next point to the left.
    let mut h = delta as i64;
    let (mut i, mut j) = (s.len(), t.len());
    while i > 0 {
        // Targets sort before sources at equal coordinates, so sources
        // come first going right to left.
        if j > 0 && t[j - 1] > s[i - 1] {
            j -= 1;
            h += 1;
            // H falls from h to h - 1 here.
            if (1..=delta as i64).contains(&h) {
                levels[h as usize].drop = t[j];
            }
            continue;
        }
        i -= 1;
        let k = h;
        h -= 1;
        if !(1..=delta as i64).contains(&k) {
            continue;
        }
        let k = k as usize;
        let x = s[i];
        let level = &mut levels[k];
        let value = if level.prev == NONE {
            // H stays >= k to the right of the rightmost height-k source.
            upper - x
        } else {
            if level.drop == NONE {
                return Err(Error::Internal(format!(
                    "no level-{k} descent left of source at {}",
                    level.prev
                )));
            }
            // +1 on [x, drop), -1 on [drop, prev)
            level.integral + (level.drop - x) - (level.prev - level.drop)
        };
        *level = Level {
            integral: value,
            prev: x,
            drop: NONE,
        };
        let entry = ProfitEntry {
            s_index: i,
            height: k,
            profit: value - nearest_at(t, j, x).1,
        };
        on_entry(entry);
        // Right-to-left, so ">=" keeps the leftmost maximiser.
        let slot = &mut best[k - 1];
        if slot.is_none_or(|b| entry.profit >= b.profit) {
            *slot = Some(entry);
        }
    }
    Ok(best)
}

/// Source indices `r_1, ..., r_delta`, one per height.
pub fn select_r(pt: &ProfitTable) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(pt.delta);
    for (k, slot) in pt.best.iter().enumerate() {
        let entry = slot.ok_or(Error::MissingHeightLevel { height: k + 1 })?;
        if let Some(&last) = out.last() {
            if entry.s_index <= last {
                return Err(Error::Internal(format!(
                    "removal set not increasing: r_{} = s[{}] after s[{last}]",
                    k + 1,
                    entry.s_index
                )));
            }
        }
        out.push(entry.s_index);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Removed {
    pub s_index: usize,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Edges in source-index order.
    pub assignment: Assignment,
    pub total_cost: i64,
    /// The removal set, in increasing index order; the `k`-th entry has height `k`.
    pub removed: Vec<Removed>,
    /// Sorted matching of the non-removed sources onto `T`.
    pub one_to_one: Vec<Edge>,
    /// `Σ |r - N(r)|` over the removal set.
    pub neighbor_sum: i64,
    /// Cost of the one-to-one part, which equals `∫ |H_R|`.
    pub reduced_area: i64,
}

pub fn solve(inst: &Instance) -> Result<Solution> {
    if inst.delta() == 0 {
        let assignment = one_to_one_sorted(inst)?;
        return Ok(Solution {
            total_cost: assignment.total_cost,
            reduced_area: assignment.total_cost,
            one_to_one: assignment.edges.clone(),
            assignment,
            removed: Vec::new(),
            neighbor_sum: 0,
        });
    }

    let table = ProfitTable {
        delta: inst.delta(),
        best: sweep(inst, UpperLimit::AllPoints, |_| {})?,
        entries: Vec::new(),
    };
    let r = select_r(&table)?;
    Ok(assemble(inst, &r))
}

/// [`solve`] on inputs that are already sorted, skipping the comparison sort.
pub fn solve_presorted(s: &[i64], t: &[i64], check: SortCheck) -> Result<Solution> {
    let inst = Instance::from_sorted(s.to_vec(), t.to_vec(), check)?;
    solve(&inst)
}

/// The assignment that sends each source in `removed` to its nearest target
/// and matches the remaining sources to `T` in sorted order.
///
/// `removed` must hold `delta` strictly increasing source indices. Heights are
/// not checked, so the result need not be optimal or crossing-free.
pub fn assign_with_removal(inst: &Instance, removed: &[usize]) -> Result<Solution> {
    if removed.len() != inst.delta() {
        return Err(Error::MalformedRemovalSet(format!(
            "{} points for {} heights",
            removed.len(),
            inst.delta()
        )));
    }
    if removed.windows(2).any(|w| w[0] >= w[1])
        || removed.last().is_some_and(|&r| r >= inst.s().len())
    {
        return Err(Error::MalformedRemovalSet(
            "indices must be strictly increasing and in bounds".into(),
        ));
    }
    Ok(assemble(inst, removed))
}

fn assemble(inst: &Instance, r: &[usize]) -> Solution {
    let t = inst.t();
    let mut edges = Vec::with_capacity(inst.s().len());
    let mut one_to_one = Vec::with_capacity(inst.t().len());
    let mut removed = Vec::with_capacity(r.len());
    let mut neighbor_sum = 0;
    let mut next_r = r.iter().copied().peekable();
    let mut j = 0;
    // number of targets at or left of the current source
    let mut below = 0;
    for (i, &x) in inst.s().iter().enumerate() {
        if next_r.peek() == Some(&i) {
            next_r.next();
            while below < t.len() && t[below] <= x {
                below += 1;
            }
            let e = Edge::new(inst, i, nearest_at(t, below, x).0);
            neighbor_sum += e.cost;
            removed.push(Removed {
                s_index: i,
                height: removed.len() + 1,
            });
            edges.push(e);
        } else {
            let e = Edge::new(inst, i, j);
            j += 1;
            one_to_one.push(e);
            edges.push(e);
        }
    }
    let assignment = Assignment::new(edges);
    Solution {
        total_cost: assignment.total_cost,
        reduced_area: assignment.total_cost - neighbor_sum,
        assignment,
        removed,
        one_to_one,
        neighbor_sum,
    }
}

impl Solution {
    /// Checks every structural postcondition; `O(n log n)`.
    ///
    /// Validity, zero crossings, removal heights `1..=delta` in increasing
    /// order, the nearest-neighbour property of shared targets, and the
    /// split of the cost into neighbour distances plus the area of the
    /// reduced height function (recomputed from scratch).
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(msg));

        let report = validate_assignment(inst, &self.assignment);
        if let Some(v) = report.violations.first() {
            return fail(format!("invalid assignment: {v}"));
        }
        let cost = assignment_cost(inst, &self.assignment);
        if cost != self.total_cost || cost != self.assignment.total_cost {
            return fail(format!(
                "total cost {} but edges sum to {cost}",
                self.total_cost
            ));
        }
        let crossings = count_crossings(inst, &self.assignment);
        if crossings != 0 {
            return fail(format!("{crossings} crossing edge pairs"));
        }

        let profile = height_profile(inst);
        let nn = nearest_neighbors(inst);
        if self.removed.len() != inst.delta() {
            return fail(format!(
                "removal set has {} points, expected {}",
                self.removed.len(),
                inst.delta()
            ));
        }
        for (k, r) in self.removed.iter().enumerate() {
            let h = profile.s_height[r.s_index];
            if r.height != k + 1 || h != (k + 1) as i64 {
                return fail(format!(
                    "removed s[{}] has height {h}, expected {}",
                    r.s_index,
                    k + 1
                ));
            }
        }
        if self
            .removed
            .windows(2)
            .any(|w| w[0].s_index >= w[1].s_index)
        {
            return fail("removal set not increasing".into());
        }

        let targets = self
            .assignment
            .target_of(inst.s().len())
            .expect("validated as total");
        let mut load = vec![0usize; inst.t().len()];
        for &t in &targets {
            load[t] += 1;
        }
        for (si, &ti) in targets.iter().enumerate() {
            if load[ti] < 2 {
                continue;
            }
            let (s, t) = (inst.s()[si], inst.t()[ti]);
            if (s - t).abs() != nn.distance[si] {
                return fail(format!(
                    "s[{si}] shares t[{ti}] but it is not a nearest neighbour"
                ));
            }
            let (lo, hi) = (s.min(t), s.max(t));
            let between = inst
                .t()
                .partition_point(|&x| x < hi)
                .saturating_sub(inst.t().partition_point(|&x| x <= lo));
            if between != 0 {
                return fail(format!(
                    "a target lies strictly between s[{si}] and t[{ti}]"
                ));
            }
        }

        let r: Vec<usize> = self.removed.iter().map(|r| r.s_index).collect();
        let neighbor_sum: i64 = r.iter().map(|&i| nn.distance[i]).sum();
        let reduced = Instance::from_sorted(
            inst.without_sources(&r),
            inst.t().to_vec(),
            SortCheck::Trust,
        )?;
        let area = height_profile(&reduced).abs_area();
        if neighbor_sum != self.neighbor_sum || area != self.reduced_area {
            return fail(format!(
                "decomposition mismatch: stored ({}, {}), recomputed ({neighbor_sum}, {area})",
                self.neighbor_sum, self.reduced_area
            ));
        }
        if neighbor_sum + area != self.total_cost {
            return fail(format!(
                "cost {} != neighbour sum {neighbor_sum} + reduced area {area}",
                self.total_cost
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Instance {
        Instance::new(vec![0, 3, 4, 6, 13, 14, 15, 16], vec![1, 2, 8, 10, 11, 12]).unwrap()
    }

    fn table(inst: &Instance) -> ProfitTable {
        profit_sweep(inst).unwrap()
    }

    #[test]
    fn sorted_matching_examples() {
        let inst = Instance::new(vec![0, 4, 6, 13, 14, 16], vec![1, 2, 8, 10, 11, 12]).unwrap();
        assert_eq!(one_to_one_sorted(&inst).unwrap().total_cost, 15);
        assert_eq!(height_profile(&inst).abs_area(), 15);

        let inst = Instance::new(vec![7], vec![7]).unwrap();
        assert_eq!(one_to_one_sorted(&inst).unwrap().total_cost, 0);

        let inst = Instance::new(vec![0, 10], vec![3, 5]).unwrap();
        let a = one_to_one_sorted(&inst).unwrap();
        assert_eq!(a.total_cost, 8);
        assert_eq!(
            a.edges
                .iter()
                .map(|e| (inst.s()[e.s_index], inst.t()[e.t_index]))
                .collect::<Vec<_>>(),
            vec![(0, 3), (10, 5)]
        );
    }

    #[test]
    fn sorted_matching_needs_equal_sizes() {
        let inst = Instance::new(vec![0, 1], vec![0]).unwrap();
        assert_eq!(
            one_to_one_sorted(&inst),
            Err(Error::CardinalityMismatch {
                source_len: 2,
                target_len: 1
            })
        );
    }

    #[test]
    fn sample_profits() {
        let inst = sample();
        let pt = table(&inst);
        let by_coord = |x: i64| {
            let i = inst.s().iter().position(|&s| s == x).unwrap();
            pt.profit_of(i).unwrap()
        };
        assert_eq!([by_coord(0), by_coord(4), by_coord(15)], [-1, 0, -2]);
        assert_eq!([by_coord(6), by_coord(16)], [-8, -4]);
        assert_eq!(pt.entries.len(), 5);
        let r = select_r(&pt).unwrap();
        assert_eq!(
            r.iter().map(|&i| inst.s()[i]).collect::<Vec<_>>(),
            vec![4, 16]
        );
    }

    #[test]
    fn single_candidate_tie() {
        let inst = Instance::new(vec![0, 1], vec![5]).unwrap();
        let pt = table(&inst);
        assert_eq!(
            pt.entries,
            vec![ProfitEntry {
                s_index: 0,
                height: 1,
                profit: 0
            }]
        );
        assert_eq!(select_r(&pt).unwrap(), vec![0]);
        assert_eq!(solve(&inst).unwrap().total_cost, 9);
    }

    #[test]
    fn sweep_rejects_equal_sizes() {
        let inst = Instance::new(vec![1], vec![1]).unwrap();
        assert_eq!(profit_sweep(&inst), Err(Error::NoRemovalNeeded));
    }

    #[test]
    fn equal_profits_pick_leftmost() {
        // Every height-1 source has profit -5.
        let inst = Instance::new(vec![0, 10, 20], vec![5, 15]).unwrap();
        let pt = table(&inst);
        assert!(pt.entries.iter().all(|e| e.height == 1 && e.profit == -5));
        assert_eq!(pt.entries.len(), 3);
        assert_eq!(select_r(&pt).unwrap(), vec![0]);
    }

    #[test]
    fn single_candidate_is_selected() {
        let e = Some(ProfitEntry {
            s_index: 2,
            height: 1,
            profit: 5,
        });
        let pt = ProfitTable {
            delta: 1,
            best: vec![e],
            entries: vec![],
        };
        assert_eq!(select_r(&pt).unwrap(), vec![2]);
    }

    #[test]
    fn select_reports_missing_level() {
        let pt = ProfitTable {
            delta: 2,
            best: vec![None, None],
            entries: vec![],
        };
        assert_eq!(select_r(&pt), Err(Error::MissingHeightLevel { height: 1 }));
    }

    #[test]
    fn select_rejects_decreasing_removals() {
        let e = |s_index, height| {
            Some(ProfitEntry {
                s_index,
                height,
                profit: 0,
            })
        };
        let pt = ProfitTable {
            delta: 2,
            best: vec![e(5, 1), e(3, 2)],
            entries: vec![],
        };
        assert!(matches!(select_r(&pt), Err(Error::Internal(_))));
    }

    #[test]
    fn sample_solution() {
        let inst = sample();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.total_cost, 19);
        let removed: Vec<_> = sol.removed.iter().map(|r| inst.s()[r.s_index]).collect();
        assert_eq!(removed, vec![4, 16]);
        let targets: Vec<_> = sol
            .removed
            .iter()
            .map(|r| inst.t()[sol.assignment.edges[r.s_index].t_index])
            .collect();
        assert_eq!(targets, vec![2, 12]);
        assert_eq!(sol.neighbor_sum, 6);
        assert_eq!(sol.reduced_area, 13);
        sol.verify(&inst).unwrap();
    }

    #[test]
    fn small_solutions() {
        let inst = Instance::new(vec![5], vec![3]).unwrap();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.total_cost, 2);
        assert_eq!(sol.assignment.edges.len(), 1);

        let inst = Instance::new(vec![0, 2], vec![0, 1]).unwrap();
        let sol = solve(&inst).unwrap();
        assert_eq!(sol.total_cost, 1);
        assert_eq!(
            sol.assignment
                .edges
                .iter()
                .map(|e| (e.s_index, e.t_index))
                .collect::<Vec<_>>(),
            vec![(0, 0), (1, 1)]
        );
    }

    #[test]
    fn coincident_points() {
        for (s, t, cost) in [
            (vec![2, 2, 2], vec![2], 0),
            (vec![2, 5], vec![2, 5], 0),
            (vec![3, 3, 3, 3], vec![1, 3, 5], 4),
        ] {
            let inst = Instance::new(s, t).unwrap();
            let sol = solve(&inst).unwrap();
            assert_eq!(sol.total_cost, cost, "{inst}");
            sol.verify(&inst).unwrap();
        }
    }

    #[test]
    fn presorted_matches_sorted_path() {
        let inst = sample();
        let a = solve(&inst).unwrap();
        let b = solve_presorted(inst.s(), inst.t(), SortCheck::Verify).unwrap();
        assert_eq!(a, b);
        let sol = solve_presorted(&[3], &[10], SortCheck::Trust).unwrap();
        assert_eq!(sol.total_cost, 7);
        assert!(matches!(
            solve_presorted(&[3, 1], &[10], SortCheck::Verify),
            Err(Error::UnsortedInput { .. })
        ));
    }

    #[test]
    fn verify_catches_tampering() {
        let inst = sample();
        let mut sol = solve(&inst).unwrap();
        sol.reduced_area += 1;
        assert!(sol.verify(&inst).is_err());
    }
}
