//! Conventional per-point inverse kinematics for comparison runs.
//!
//! Walks the goal points one at a time (the paper-style order seeds at the
//! touch pose and walks backward to the start), solving each point with
//! damped-least-squares Jacobian iterations warm-started from the previous
//! solution. Joint limits are enforced by clamping after every step. The
//! result uses the same solution shape as the trajectory optimizer so both
//! methods feed identical metrics.
//!
//! Each point couples a 3-row position block (length units) with a 3-row
//! direction-alignment block scaled by `orientation_weight`; convergence is
//! declared on position alone.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::autodiff::Tape;
use crate::kinematics::{effector, fk_batch, ChainError, KinematicChain};
use crate::optimizer::TrajectorySolution;
use crate::pathgen::GoalPath;

#[derive(Debug)]
pub enum IkError {
    Chain(ChainError),
    EmptyGoal,
    SeedOutOfLimits { joint: String, angle_deg: f64 },
    BadConfig(&'static str),
}

impl fmt::Display for IkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IkError::Chain(e) => write!(f, "{e}"),
            IkError::EmptyGoal => write!(f, "goal path has no points"),
            IkError::SeedOutOfLimits { joint, angle_deg } => {
                write!(f, "seed pose: joint {joint} angle {angle_deg}° outside its range")
            }
            IkError::BadConfig(what) => write!(f, "invalid IK config: {what}"),
        }
    }
}

impl std::error::Error for IkError {}

impl From<ChainError> for IkError {
    fn from(e: ChainError) -> Self {
        IkError::Chain(e)
    }
}

/// Which end of the goal path the chaining starts from. `Backward` seeds at
/// the final (touch) point and walks toward the start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainOrder {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IkConfig {
    /// Position convergence tolerance in length units (0.01 cm = 0.1 mm).
    pub position_tol: f64,
    /// Damping λ of `J Jᵀ + λ²I`.
    pub damping: f64,
    /// Inner Jacobian iterations per goal point.
    pub max_inner_iterations: usize,
    /// Weight of the direction-alignment rows against the position rows.
    pub orientation_weight: f64,
    /// Per-joint step clamp per inner iteration, degrees; bounds how far a
    /// warm-started solve can travel between adjacent goal points.
    pub max_joint_step_deg: f64,
}

impl Default for IkConfig {
    fn default() -> Self {
        IkConfig {
            position_tol: 0.01,
            damping: 0.1,
            max_inner_iterations: 200,
            orientation_weight: 1.0,
            max_joint_step_deg: 10.0,
        }
    }
}

impl IkConfig {
    pub fn validate(&self) -> Result<(), IkError> {
        if !(self.position_tol > 0.0) {
            return Err(IkError::BadConfig("position tolerance must be positive"));
        }
        if !(self.damping >= 0.0) {
            return Err(IkError::BadConfig("damping must be non-negative"));
        }
        if self.max_inner_iterations == 0 {
            return Err(IkError::BadConfig("need at least one inner iteration"));
        }
        if !(self.max_joint_step_deg > 0.0) {
            return Err(IkError::BadConfig("joint step clamp must be positive"));
        }
        Ok(())
    }
}

/// Outcome of one goal point's solve.
#[derive(Debug, Clone, PartialEq)]
pub struct PointStatus {
    /// Goal point index (trajectory step, not solve order).
    pub step: usize,
    /// Position error met `position_tol`.
    pub reached: bool,
    pub position_error: f64,
    pub inner_iterations: usize,
    /// The damped normal matrix failed to factor (only possible with zero
    /// damping at a singularity); the point keeps its warm-start pose.
    pub solve_failed: bool,
}

/// Chained IK result: a metric-compatible solution plus per-point
/// diagnostics.
#[derive(Debug, Clone)]
pub struct IkChainResult {
    pub solution: TrajectorySolution,
    pub points: Vec<PointStatus>,
}

/// Solves every goal point by damped least squares, chaining warm starts in
/// the given order. Pose `i` of the returned solution always corresponds to
/// goal point `i` regardless of solve order. Direction targets pair goal
/// vector `i` with point `i` (the last point reuses the final vector).
pub fn ik_step_chain(
    chain: &KinematicChain,
    seed_pose: &[f64],
    goal: &GoalPath,
    order: ChainOrder,
    cfg: &IkConfig,
) -> Result<IkChainResult, IkError> {
    cfg.validate()?;
    if goal.points.is_empty() || goal.vectors.is_empty() {
        return Err(IkError::EmptyGoal);
    }
    if seed_pose.len() != chain.dof() {
        return Err(IkError::Chain(ChainError::PoseArity {
            expected: chain.dof(),
            got: seed_pose.len(),
        }));
    }
    for (joint, &angle) in chain.joints.iter().zip(seed_pose) {
        if angle < joint.min_deg || angle > joint.max_deg {
            return Err(IkError::SeedOutOfLimits {
                joint: joint.name.clone(),
                angle_deg: angle,
            });
        }
    }

    let count = goal.points.len();
    let indices: Vec<usize> = match order {
        ChainOrder::Forward => (0..count).collect(),
        ChainOrder::Backward => (0..count).rev().collect(),
    };
    let mut poses = vec![Vec::new(); count];
    let mut statuses = vec![None; count];
    let mut current = seed_pose.to_vec();
    let mut total_inner = 0;
    for &i in &indices {
        let target_dir = unit_or_none(goal.vectors[i.min(goal.vectors.len() - 1)]);
        let status = solve_point(chain, &mut current, goal.points[i], target_dir, cfg, i);
        total_inner += status.inner_iterations;
        statuses[i] = Some(status);
        poses[i] = current.clone();
    }
    let points: Vec<PointStatus> = statuses.into_iter().map(|s| s.expect("visited")).collect();
    let converged = points.iter().all(|p| p.reached);
    let states = fk_batch(chain, &poses)?;
    Ok(IkChainResult {
        solution: TrajectorySolution {
            poses_deg: poses,
            states,
            goal: goal.clone(),
            loss_trace: Vec::new(),
            iterations: total_inner,
            converged,
        },
        points,
    })
}

fn unit_or_none(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 1e-12).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

fn solve_point(
    chain: &KinematicChain,
    pose: &mut Vec<f64>,
    target: [f64; 3],
    target_dir: Option<[f64; 3]>,
    cfg: &IkConfig,
    step: usize,
) -> PointStatus {
    let m = chain.dof();
    let rows = if target_dir.is_some() { 6 } else { 3 };
    let mut tape = Tape::new();
    let mut position_error = f64::INFINITY;
    let mut solve_failed = false;
    let mut inner = 0;
    for _ in 0..cfg.max_inner_iterations {
        tape.reset();
        let vars: Vec<_> = pose.iter().map(|&a| tape.var(a)).collect();
        let (pos, dir) = effector(chain, &vars);
        position_error = (0..3)
            .map(|k| (pos[k].value() - target[k]).powi(2))
            .sum::<f64>()
            .sqrt();
        if position_error <= cfg.position_tol {
            break;
        }
        inner += 1;

        let mut jacobian = DMatrix::zeros(rows, m);
        let mut residual = DVector::zeros(rows);
        for k in 0..3 {
            residual[k] = target[k] - pos[k].value();
            let grads = tape.backward(pos[k]).expect("finite FK");
            for (j, var) in vars.iter().enumerate() {
                jacobian[(k, j)] = grads.wrt(*var);
            }
        }
        if let Some(td) = target_dir {
            let w = cfg.orientation_weight;
            for k in 0..3 {
                residual[3 + k] = w * (td[k] - dir[k].value());
                let grads = tape.backward(dir[k]).expect("finite FK");
                for (j, var) in vars.iter().enumerate() {
                    jacobian[(3 + k, j)] = w * grads.wrt(*var);
                }
            }
        }
        drop(vars);

        // δθ = Jᵀ (J Jᵀ + λ² I)⁻¹ e
        let jjt = &jacobian * jacobian.transpose();
        let damped = jjt + DMatrix::identity(rows, rows) * (cfg.damping * cfg.damping);
        let Some(chol) = damped.cholesky() else {
            solve_failed = true;
            break;
        };
        let dq = jacobian.transpose() * chol.solve(&residual);
        let mut moved = false;
        for j in 0..m {
            let delta = dq[j].clamp(-cfg.max_joint_step_deg, cfg.max_joint_step_deg);
            let updated = (pose[j] + delta).clamp(chain.joints[j].min_deg, chain.joints[j].max_deg);
            if updated != pose[j] {
                moved = true;
            }
            pose[j] = updated;
        }
        if !moved {
            break;
        }
    }
    PointStatus {
        step,
        reached: position_error <= cfg.position_tol,
        position_error,
        inner_iterations: inner,
        solve_failed,
    }
}
