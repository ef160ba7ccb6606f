//! The height function `H(x) = #{s <= x} - #{t <= x}` and nearest neighbours.
//!
//! Points are swept left to right in merged order. At equal coordinates a
//! target comes before a source, and points of the same set keep their index
//! order. `H` steps by +1 at each source and -1 at each target.

use std::fmt::Write as _;

use crate::instance::Instance;
use crate::solver::nearest_at;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

/// One point in sweep order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    pub coord: i64,
    pub side: Side,
    pub index: usize,
}

/// Merges the two sorted sequences into sweep order in `O(n)`.
pub fn sweep_order(inst: &Instance) -> Vec<Event> {
    let (s, t) = (inst.s(), inst.t());
    let mut out = Vec::with_capacity(s.len() + t.len());
    let (mut i, mut j) = (0, 0);
    while i < s.len() || j < t.len() {
        if j < t.len() && (i == s.len() || t[j] <= s[i]) {
            out.push(Event {
                coord: t[j],
                side: Side::Target,
                index: j,
            });
            j += 1;
        } else {
            out.push(Event {
                coord: s[i],
                side: Side::Source,
                index: i,
            });
            i += 1;
        }
    }
    out
}

/// `H` as a step function: `levels[i]` holds on `[breakpoints[i], breakpoints[i + 1])`.
///
/// Below the first breakpoint the level is 0; the last level is `|S| - |T|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    pub events: Vec<Event>,
    pub breakpoints: Vec<i64>,
    pub levels: Vec<i64>,
    /// `H` just after each source point's own up-step.
    pub s_height: Vec<i64>,
    /// `H` just after each target point's own down-step.
    pub t_height: Vec<i64>,
    /// Largest coordinate of `S ∪ T`.
    pub max_point: i64,
}

pub fn height_profile(inst: &Instance) -> HeightProfile {
    let events = sweep_order(inst);
    let mut breakpoints = Vec::with_capacity(events.len());
    let mut levels = Vec::with_capacity(events.len());
    let mut s_height = vec![0; inst.s().len()];
    let mut t_height = vec![0; inst.t().len()];
    let mut h = 0i64;
    for e in &events {
        match e.side {
            Side::Source => {
                h += 1;
                s_height[e.index] = h;
            }
            Side::Target => {
                h -= 1;
                t_height[e.index] = h;
            }
        }
        breakpoints.push(e.coord);
        levels.push(h);
    }
    HeightProfile {
        events,
        breakpoints,
        levels,
        s_height,
        t_height,
        max_point: inst.max_point(),
    }
}

impl HeightProfile {
    /// `H(x)`, counting every point at coordinate `<= x`.
    pub fn height_at(&self, x: i64) -> i64 {
        match self.breakpoints.partition_point(|&b| b <= x) {
            0 => 0,
            i => self.levels[i - 1],
        }
    }

    /// `+1` where `H(x) >= k`, `-1` elsewhere.
    pub fn relative_height(&self, x: i64, k: i64) -> i64 {
        if self.height_at(x) >= k {
            1
        } else {
            -1
        }
    }

    /// `∫ |H(x)| dx` over the whole line.
    ///
    /// For `|S| = |T|` this is the cost of the sorted one-to-one matching.
    pub fn abs_area(&self) -> i64 {
        self.breakpoints
            .windows(2)
            .zip(&self.levels)
            .map(|(w, &h)| (w[1] - w[0]) * h.abs())
            .sum()
    }

    /// Plot data: a header, the implicit `-inf` row, then one row per breakpoint.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# x\tH\n-inf\t0\n");
        for (x, h) in self.breakpoints.iter().zip(&self.levels) {
            let _ = writeln!(out, "{x}\t{h}");
        }
        out
    }
}

/// Nearest target of every source point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborTable {
    pub nearest: Vec<usize>,
    pub distance: Vec<i64>,
}

/// One linear merge. Ties go to the left neighbour; a target at the same
/// coordinate as the source counts as the left neighbour at distance 0.
pub fn nearest_neighbors(inst: &Instance) -> NeighborTable {
    let (s, t) = (inst.s(), inst.t());
    let mut nearest = Vec::with_capacity(s.len());
    let mut distance = Vec::with_capacity(s.len());
    // `j` = number of targets that precede the current source in sweep order.
    let mut j = 0;
    for &x in s {
        while j < t.len() && t[j] <= x {
            j += 1;
        }
        let (idx, d) = nearest_at(t, j, x);
        nearest.push(idx);
        distance.push(d);
    }
    NeighborTable { nearest, distance }
}
