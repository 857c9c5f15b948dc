//! Shape-constrained robot-arm trajectory generation.
//!
//! The arm's forward kinematics is written as a chain of homogeneous
//! transforms and evaluated through a scalar reverse-mode autodiff tape, so
//! the whole discretized trajectory — every joint angle of every pose — can
//! be optimized at once by gradient descent. Joint ranges are enforced by a
//! sigmoid logit parameterization, a composite loss scores position error,
//! pointing alignment, endpoint anchoring and joint-space fluency, and Adam
//! does the rest.
//!
//! The crate ships the NICO right-arm model with synthetic poses, a
//! damped-least-squares baseline IK for comparison, the evaluation metrics
//! (distance from line, pointing deviation, surface pointing error, start
//! variation), CSV/SVG export, and path generators for lines, splines, and
//! letters projected onto a drawing plane.

pub mod autodiff;
pub mod baseline;
pub mod evaluation;
pub mod export;
pub mod kinematics;
pub mod optimizer;
pub mod pathgen;
pub mod plot;
pub mod robot_model;

pub use kinematics::{fk, fk_batch, fk_diff, EffectorState, KinematicChain};
pub use optimizer::{
    generate_trajectory, generate_trajectory_unanchored, LossWeights, OptimizerConfig,
    TrajectoryOptimizer, TrajectorySolution,
};
pub use pathgen::{GoalPath, ShapeSpec};
pub use robot_model::{load_model, load_poses, nico_poses, nico_right_arm};
