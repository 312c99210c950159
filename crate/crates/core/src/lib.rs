//! Fair assortment planning under the multinomial logit choice model.
//!
//! A platform chooses a distribution over assortments of at most `K` items to
//! maximize expected revenue, subject to every pair of items receiving
//! quality-normalized outcomes within `delta` of each other. The LP has one
//! variable per assortment; [`solver`] handles it by column generation or the
//! ellipsoid method, pricing with the knapsack oracles in [`oracle`].

pub mod enumerate;
pub mod error;
pub mod harness;
pub mod instance;
pub mod lp;
pub mod oracle;
pub mod solver;

pub use enumerate::{brute_force_fair, brute_force_subdual};
pub use error::{Error, Result};
pub use instance::{
    expected_outcomes, fairness_check, fallback_solution, outcome, post_fairness, rev, rev_cost, Assortment,
    DistributionSolution, DualMatrix, DualPoint, FairnessVerdict, Instance, PostFairness,
};
pub use oracle::{oracle_dispatch, KnapsackView, OracleMethod, OracleResult};
pub use solver::{solve, SolveReport, SolverConfig, SolverMethod};
