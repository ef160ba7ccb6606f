//! Exact minimum-cost many-to-one assignment of two point sets on a line.
//!
//! Every source point in `S` is sent to one target in `T`, every target
//! receives at least one source, and the cost is the total distance
//! travelled. [`solve`] runs in `O(n)` after sorting; [`oracle`] holds the
//! slow reference implementations used to check it.
//!
//! ```
//! use scaffold_assign::{solve, Instance};
//!
//! let inst = Instance::new(vec![0, 3, 4, 6, 13, 14, 15, 16], vec![1, 2, 8, 10, 11, 12]).unwrap();
//! let sol = solve(&inst).unwrap();
//! assert_eq!(sol.total_cost, 19);
//! ```

pub mod bench;
mod error;
pub mod format;
pub mod generate;
pub mod instance;
pub mod oracle;
pub mod profile;
pub mod solver;

pub use error::{Error, Result};
pub use instance::{
    assignment_cost, count_crossings, validate_assignment, Assignment, Edge, Instance, SortCheck,
    ValidationReport, Violation, COORD_BOUND,
};
pub use profile::{height_profile, nearest_neighbors, HeightProfile, NeighborTable};
pub use solver::{
    assign_with_removal, one_to_one_sorted, profit_sweep, profit_sweep_with_limit, select_r, solve,
    solve_presorted, ProfitEntry, ProfitTable, Removed, Solution, UpperLimit,
};
