//! Problem instances, assignments, and the checks every assignment must pass.
//!
//! Coordinates are exact integers. Within one set, equal coordinates keep
//! their input order; across sets, a target point precedes a source point at
//! the same coordinate (see [`crate::profile`] for the sweep order).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinates must lie in `[-COORD_BOUND, COORD_BOUND)`, the signed 48-bit range.
pub const COORD_BOUND: i64 = 1 << 47;

/// How much to trust input that claims to be sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortCheck {
    /// Scan both sequences and fail with [`Error::UnsortedInput`] on a descent.
    #[default]
    Verify,
    /// Take the caller's word for it.
    Trust,
}

/// Two sorted coordinate multisets with `|S| >= |T| >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    s: Vec<i64>,
    t: Vec<i64>,
}

impl Instance {
    /// Builds an instance from arbitrary-order coordinates.
    ///
    pub fn new(mut s: Vec<i64>, mut t: Vec<i64>) -> Result<Self> {
        check_shape(&s, &t)?;
        s.sort_unstable();
        t.sort_unstable();
        Self::finish(s, t)
    }

    /// Builds an instance from sequences that are already non-decreasing,
    /// without running a comparison sort.
    pub fn from_sorted(s: Vec<i64>, t: Vec<i64>, check: SortCheck) -> Result<Self> {
        check_shape(&s, &t)?;
        if check == SortCheck::Verify {
            check_sorted("S", &s)?;
            check_sorted("T", &t)?;
        }
        Self::finish(s, t)
    }

    fn finish(s: Vec<i64>, t: Vec<i64>) -> Result<Self> {
        // Sorted, so the extremes sit at the ends.
        let lo = s[0].min(t[0]);
        let hi = s[s.len() - 1].max(t[t.len() - 1]);
        for v in [lo, hi] {
            if !(-COORD_BOUND..COORD_BOUND).contains(&v) {
                return Err(Error::RangeExceeded { value: v });
            }
        }
        // Every edge cost and every area is at most span * n.
        let span = (hi - lo) as i128;
        let points = (s.len() + t.len()) as i128;
        if span * points > i64::MAX as i128 {
            return Err(Error::InvalidParameter(format!(
                "span {span} times {points} points overflows a 64-bit cost accumulator"
            )));
        }
        Ok(Instance { s, t })
    }

    /// Source coordinates, non-decreasing.
    pub fn s(&self) -> &[i64] {
        &self.s
    }

    /// Target coordinates, non-decreasing.
    pub fn t(&self) -> &[i64] {
        &self.t
    }

    /// `|S| - |T|`, the number of sources that must share a target.
    pub fn delta(&self) -> usize {
        self.s.len() - self.t.len()
    }

    /// Total number of points `|S| + |T|`.
    pub fn len(&self) -> usize {
        self.s.len() + self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest coordinate in `S ∪ T`.
    pub fn max_point(&self) -> i64 {
        self.s[self.s.len() - 1].max(self.t[self.t.len() - 1])
    }

    /// Smallest coordinate in `S ∪ T`.
    pub fn min_point(&self) -> i64 {
        self.s[0].min(self.t[0])
    }

    /// Same targets, with the given source indices dropped.
    ///
    /// The result may have `|S'| < |T|`, so it is returned as raw vectors.
    pub fn without_sources(&self, removed: &[usize]) -> Vec<i64> {
        let mut drop = vec![false; self.s.len()];
        for &r in removed {
            drop[r] = true;
        }
        self.s
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(&x, _)| x)
            .collect()
    }
}

impl fmt::Display for Instance {
    /// Canonical instance-file form: one `S` line and one `T` line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S")?;
        for x in &self.s {
            write!(f, " {x}")?;
        }
        write!(f, "\nT")?;
        for x in &self.t {
            write!(f, " {x}")?;
        }
        writeln!(f)
    }
}

fn check_shape(s: &[i64], t: &[i64]) -> Result<()> {
    if t.is_empty() {
        return Err(Error::EmptyTarget);
    }
    if s.is_empty() {
        return Err(Error::EmptySource);
    }
    if s.len() < t.len() {
        return Err(Error::InfeasibleCardinality {
            source_len: s.len(),
            target_len: t.len(),
        });
    }
    Ok(())
}

fn check_sorted(which: &'static str, xs: &[i64]) -> Result<()> {
    match xs.windows(2).position(|w| w[0] > w[1]) {
        Some(i) => Err(Error::UnsortedInput {
            which,
            position: i + 1,
        }),
        None => Ok(()),
    }
}

/// One `(s, t)` pair of an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub s_index: usize,
    pub t_index: usize,
    pub cost: i64,
}

impl Edge {
    /// Panics if either index is out of bounds.
    pub fn new(inst: &Instance, s_index: usize, t_index: usize) -> Self {
        Edge {
            s_index,
            t_index,
            cost: (inst.s[s_index] - inst.t[t_index]).abs(),
        }
    }
}

/// A map from source indices to target indices, stored as an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub edges: Vec<Edge>,
    pub total_cost: i64,
}

impl Assignment {
    /// Wraps edges as given; `total_cost` is the sum of the stored edge costs.
    pub fn new(edges: Vec<Edge>) -> Self {
        let total_cost = edges.iter().map(|e| e.cost).sum();
        Assignment { edges, total_cost }
    }

    /// Builds edges from `(s_index, t_index)` pairs, costing them from the
    /// instance. Panics on out-of-bounds indices.
    pub fn from_pairs(inst: &Instance, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::new(
            pairs
                .into_iter()
                .map(|(s, t)| Edge::new(inst, s, t))
                .collect(),
        )
    }

    /// Target index per source index, if the assignment is total.
    pub fn target_of(&self, source_len: usize) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; source_len];
        for e in &self.edges {
            if e.s_index >= source_len || map[e.s_index] != usize::MAX {
                return None;
            }
            map[e.s_index] = e.t_index;
        }
        map.iter().all(|&t| t != usize::MAX).then_some(map)
    }
}

/// Sum of `|s - t|` over the edges, recomputed from coordinates.
///
/// Edges with out-of-range indices contribute nothing.
pub fn assignment_cost(inst: &Instance, a: &Assignment) -> i64 {
    a.edges
        .iter()
        .filter_map(|e| Some((inst.s.get(e.s_index)? - inst.t.get(e.t_index)?).abs()))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SourceOutOfBounds {
        edge: usize,
        s_index: usize,
    },
    TargetOutOfBounds {
        edge: usize,
        t_index: usize,
    },
    /// Source appears in more than one edge.
    DuplicateSource {
        s_index: usize,
        count: usize,
    },
    /// Source appears in no edge.
    MissingSource {
        s_index: usize,
    },
    /// Target receives no source.
    UncoveredTarget {
        t_index: usize,
    },
    CostMismatch {
        edge: usize,
        stored: i64,
        actual: i64,
    },
    TotalMismatch {
        stored: i64,
        actual: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SourceOutOfBounds { edge, s_index } => {
                write!(f, "edge {edge}: s_index {s_index} out of bounds")
            }
            Violation::TargetOutOfBounds { edge, t_index } => {
                write!(f, "edge {edge}: t_index {t_index} out of bounds")
            }
            Violation::DuplicateSource { s_index, count } => {
                write!(f, "totality: s_index {s_index} appears {count} times")
            }
            Violation::MissingSource { s_index } => {
                write!(f, "totality: s_index {s_index} unassigned")
            }
            Violation::UncoveredTarget { t_index } => {
                write!(f, "surjectivity: t_index {t_index} uncovered")
            }
            Violation::CostMismatch {
                edge,
                stored,
                actual,
            } => write!(f, "edge {edge}: stored cost {stored}, actual {actual}"),
            Violation::TotalMismatch { stored, actual } => {
                write!(f, "total cost {stored} does not match edge sum {actual}")
            }
        }
    }
}

/// Everything wrong with an assignment; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_assignment(inst: &Instance, a: &Assignment) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen_s = vec![0usize; inst.s.len()];
    let mut seen_t = vec![false; inst.t.len()];
    let mut edge_sum = 0i64;

    for (i, e) in a.edges.iter().enumerate() {
        edge_sum += e.cost;
        let s_ok = e.s_index < inst.s.len();
        let t_ok = e.t_index < inst.t.len();
        if !s_ok {
            violations.push(Violation::SourceOutOfBounds {
                edge: i,
                s_index: e.s_index,
            });
        }
        if !t_ok {
            violations.push(Violation::TargetOutOfBounds {
                edge: i,
                t_index: e.t_index,
            });
        }
        if s_ok {
            seen_s[e.s_index] += 1;
        }
        if t_ok {
            seen_t[e.t_index] = true;
        }
        if s_ok && t_ok {
            let actual = (inst.s[e.s_index] - inst.t[e.t_index]).abs();
            if actual != e.cost {
                violations.push(Violation::CostMismatch {
                    edge: i,
                    stored: e.cost,
                    actual,
                });
            }
        }
    }

    for (s_index, &count) in seen_s.iter().enumerate() {
        match count {
            0 => violations.push(Violation::MissingSource { s_index }),
            1 => {}
            _ => violations.push(Violation::DuplicateSource { s_index, count }),
        }
    }
    for (t_index, &hit) in seen_t.iter().enumerate() {
        if !hit {
            violations.push(Violation::UncoveredTarget { t_index });
        }
    }
    if a.total_cost != edge_sum {
        violations.push(Violation::TotalMismatch {
            stored: a.total_cost,
            actual: edge_sum,
        });
    }

    ValidationReport { violations }
}

/// Number of edge pairs `(a, d)`, `(b, c)` with `a` before `b` among the
/// sources and `c` before `d` among the targets.
///
/// Positions are sorted-index order, which is coordinate order with
/// duplicates ranked by index. Runs in `O(E log E)`.
pub fn count_crossings(_inst: &Instance, a: &Assignment) -> u64 {
    let mut edges: Vec<(usize, usize)> = a.edges.iter().map(|e| (e.s_index, e.t_index)).collect();
    edges.sort_unstable();
    let mut targets: Vec<usize> = edges.into_iter().map(|(_, t)| t).collect();
    let mut scratch = vec![0; targets.len()];
    count_inversions(&mut targets, &mut scratch)
}

/// Strict inversions (`i < j`, `v[i] > v[j]`), sorting `v` as a side effect.
fn count_inversions(v: &mut [usize], scratch: &mut [usize]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = v.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        count_inversions(left, sl) + count_inversions(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[i] <= v[j] {
            scratch[k] = v[i];
            i += 1;
        } else {
            scratch[k] = v[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    count
}
