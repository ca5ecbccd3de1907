//! Puiseux expansions at infinity of the roots of a symbol in `ξ`.

mod genpoly;
pub mod newton;
pub mod residual;
pub mod rootfind;
pub mod series;

pub use newton::{default_depth, expand_branches, newton_polygon_slopes, ExpansionOptions};
pub use residual::{certify, geometric_grid, residual_bound, residual_slope, ResidualCertificate, RESIDUAL_SLACK};
pub use series::{evaluate_series, format_exponent, Direction, PuiseuxSeries};

use crate::symbol::BivariatePoly;

/// All roots of a symbol in one direction.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSet {
    /// The symbol before reflection.
    pub symbol: BivariatePoly,
    pub direction: Direction,
    pub branches: Vec<PuiseuxSeries>,
    /// Groups of branch indices that agree on every computed term.
    pub unseparated: Vec<Vec<usize>>,
    pub certificates: Vec<ResidualCertificate>,
}

impl BranchSet {
    /// Least common multiple of the per-branch ramification indices.
    pub fn ramification(&self) -> i64 {
        self.branches.iter().fold(1i64, |acc, s| num_integer::lcm(acc, s.ramification()))
    }

    /// Whether branch `j` belongs to a group that did not separate.
    pub fn is_unseparated(&self, j: usize) -> bool {
        self.unseparated.iter().any(|g| g.contains(&j))
    }
}
