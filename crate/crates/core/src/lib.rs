//! Exact generating functions of plane partitions with a pit.
//!
//! A plane partition with a pit at `(n+1, m+1)` has `a_{n+1,m+1} = 0`, rows
//! tending to a partition `nu`, columns tending to `mu`, and infinite entries
//! exactly on the cells of `lambda`. This crate computes its generating
//! function `chi(q)` by several independent routes and cross-checks them:
//!
//! * [`formulas`]: the determinant formula, the bosonic sum over
//!   atypical tuples, and its fully expanded permutation form;
//! * [`oracle`]: brute-force enumeration of plane partitions in a window;
//! * [`lgv`]: non-intersecting lattice paths on a strip graph;
//! * [`brion`]: vertex-cone sums of the finitized polyhedron.

pub mod brion;
pub mod formulas;
pub mod lgv;
pub mod method;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod qseries;
pub mod ribbon;

pub use method::{compute, Method, MethodError};
pub use partition::{FrobeniusData, Partition, PitConfig};
pub use qseries::{QSeries, Sign, EXACT};
