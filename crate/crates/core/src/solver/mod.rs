//! End-to-end solvers for the fair assortment LP.

pub mod colgen;
pub mod ellipsoid;
pub mod master;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

pub use colgen::column_generation;
pub use ellipsoid::{ellipsoid_solve, TracePoint};
pub use master::restricted_master;

use crate::enumerate::{brute_force_fair_capped, count_sets};
use crate::error::{input, Error, Result};
use crate::instance::{fairness_check, Assortment, DistributionSolution, DualPoint, FairnessVerdict, Instance};
use crate::oracle::OracleMethod;

/// Sets offered with probability at most this are left out of the support count.
pub const SUPPORT_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMethod {
    Colgen,
    Ellipsoid,
}

impl fmt::Display for SolverMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverMethod::Colgen => "colgen",
            SolverMethod::Ellipsoid => "ellipsoid",
        })
    }
}

impl FromStr for SolverMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "colgen" => Ok(SolverMethod::Colgen),
            "ellipsoid" => Ok(SolverMethod::Ellipsoid),
            _ => input(format!("unknown solver method '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EllipsoidConfig {
    pub t_max: usize,
    /// Defaults to `n * max(r_max, delta * q_max^2, 1)`.
    pub initial_radius: Option<f64>,
    /// Quality scale used only to report the theoretical iteration bound.
    pub q_max: Option<u64>,
    /// Record the incumbent objective and `log det D` every iteration.
    pub trace: bool,
}

impl Default for EllipsoidConfig {
    fn default() -> Self {
        EllipsoidConfig { t_max: 10_000, initial_radius: None, q_max: None, trace: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub method: SolverMethod,
    pub oracle: OracleMethod,
    pub feas_tol: f64,
    pub red_cost_tol: f64,
    /// Column generation iteration cap; defaults to `10 n^2`.
    pub max_iterations: Option<usize>,
    /// Stop when the master objective gains less than `stall_tol` over this many iterations.
    pub stall_window: usize,
    pub stall_tol: f64,
    pub ellipsoid: EllipsoidConfig,
    /// Check the approximation guarantee against full enumeration when it has at most this many sets.
    pub contract_cap: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: SolverMethod::Colgen,
            oracle: OracleMethod::Auto,
            feas_tol: 1e-6,
            red_cost_tol: 1e-7,
            max_iterations: None,
            stall_window: 50,
            stall_tol: 1e-9,
            ellipsoid: EllipsoidConfig::default(),
            contract_cap: 1_000,
        }
    }
}

impl SolverConfig {
    pub fn with_oracle(mut self, oracle: OracleMethod) -> Self {
        self.oracle = oracle;
        self
    }

    pub fn with_method(mut self, method: SolverMethod) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.feas_tol > 0.0 && self.red_cost_tol > 0.0) {
            return input("tolerances must be positive");
        }
        if self.ellipsoid.t_max < 1 {
            return input("ellipsoid t_max must be at least 1");
        }
        Ok(())
    }
}

/// Comparison against the enumerated optimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractCheck {
    pub optimum: f64,
    pub ratio: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub method: String,
    pub oracle: String,
    pub objective: f64,
    pub solution: DistributionSolution,
    pub dual: DualPoint,
    pub iterations: usize,
    pub oracle_calls: usize,
    /// Sets returned by the oracle as violated dual constraints, in discovery order.
    pub generated_columns: Vec<Assortment>,
    pub support_size: usize,
    pub fairness: FairnessVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contract: Option<ContractCheck>,
    /// Theoretical ellipsoid iteration bound `n^12 log(n q_max)`; reported, not enforced.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iteration_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TracePoint>>,
    pub wall_time_secs: f64,
}

impl SolveReport {
    pub(crate) fn new(
        inst: &Instance,
        config: &SolverConfig,
        solution: DistributionSolution,
        dual: DualPoint,
        iterations: usize,
        oracle_calls: usize,
        generated_columns: Vec<Assortment>,
    ) -> Self {
        let fairness = fairness_check(inst, &solution, config.feas_tol);
        SolveReport {
            method: config.method.to_string(),
            oracle: config.oracle.resolve(inst).to_string(),
            objective: solution.objective,
            support_size: solution.support_size(SUPPORT_THRESHOLD),
            solution,
            dual,
            iterations,
            oracle_calls,
            generated_columns,
            fairness,
            contract: None,
            iteration_bound: None,
            trace: None,
            wall_time_secs: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Solves with the configured method, then checks fairness and, when enumeration
/// is cheap, the approximation guarantee.
pub fn solve(inst: &Instance, config: &SolverConfig) -> Result<SolveReport> {
    config.validate()?;
    config.oracle.check(inst)?;
    let start = Instant::now();
    let mut report = match config.method {
        SolverMethod::Colgen => column_generation(inst, config)?,
        SolverMethod::Ellipsoid => ellipsoid_solve(inst, config)?,
    };
    if !report.fairness.pass {
        return Err(Error::Numerical(format!(
            "solution violates fairness by {:.3e} at pair {:?}",
            report.fairness.slack, report.fairness.worst_pair
        )));
    }
    if count_sets(inst.n(), inst.k) <= config.contract_cap as u128 {
        let optimum = brute_force_fair_capped(inst, config.contract_cap)?.objective;
        let ratio = config.oracle.ratio(inst);
        report.contract = Some(ContractCheck {
            optimum,
            ratio,
            satisfied: report.objective >= ratio * optimum - 1e-6,
        });
    }
    report.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(report)
}
