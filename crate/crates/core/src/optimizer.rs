//! Whole-trajectory inverse kinematics by gradient descent.
//!
//! All `n+1` poses of a discretized trajectory are optimized at once. Free
//! parameters are unbounded logits, one per joint per pose; a sigmoid maps
//! each logit into its joint's angle range, so every intermediate iterate
//! is range-safe by construction and the extremes stay reachable with
//! nonzero gradient (plain clipping would kill the gradient at the bound).
//!
//! Each iteration records sigmoid mapping, forward kinematics of every
//! pose, and the seven-term loss on a fresh tape, then one reverse sweep
//! yields the gradient for Adam. The loss combines per-point position error
//! (L0), pointing-direction alignment (L1), start/end anchoring in joint
//! space (L2, L3) and in Cartesian space (L4, L5), and joint-space
//! smoothness between consecutive poses (L6).
//!
//! Positions enter the loss in centimetres and angles in degrees; the
//! default weights are tuned for exactly that mix and need retuning if a
//! model uses other units.

use std::fmt;

use crate::autodiff::{sigmoid, Scalar, Tape};
use crate::kinematics::{effector, fk_batch, ChainError, EffectorState, Joint, KinematicChain};
use crate::pathgen::{
    goal_points_line, goal_points_polyline, goal_points_spline, GoalPath, PathError, ShapeSpec,
};

/// Logits beyond this magnitude are projected back; the sigmoid is already
/// saturated to within 3e-16 there, and unclamped values would round to an
/// exact range bound in f64.
const LOGIT_CLAMP: f64 = 36.0;

/// Interpolation ratios are clamped to [ε, 1−ε] before the inverse sigmoid
/// so poses on an exact joint bound still get a finite starting logit.
const INIT_RATIO_EPS: f64 = 1e-4;

#[derive(Debug)]
pub enum OptimizeError {
    Chain(ChainError),
    Path(PathError),
    BadConfig(&'static str),
    BadWeights(&'static str),
    PoseOutOfLimits { which: &'static str, joint: String, angle_deg: f64 },
    ShapeUnsupported { shape: &'static str, why: &'static str },
    ShapeMismatch { what: String },
    ZeroNormGoalVector { index: usize },
    /// The loss or an intermediate went non-finite; carries the iteration
    /// and, when the tape saw it first, the offending node.
    NonFinite { iteration: usize, node: Option<usize>, op: Option<&'static str> },
}

impl fmt::Display for OptimizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimizeError::Chain(e) => write!(f, "{e}"),
            OptimizeError::Path(e) => write!(f, "{e}"),
            OptimizeError::BadConfig(what) => write!(f, "invalid optimizer config: {what}"),
            OptimizeError::BadWeights(what) => write!(f, "invalid loss weights: {what}"),
            OptimizeError::PoseOutOfLimits { which, joint, angle_deg } => {
                write!(f, "{which} pose: joint {joint} angle {angle_deg}° outside its range")
            }
            OptimizeError::ShapeUnsupported { shape, why } => {
                write!(f, "shape {shape} not supported here: {why}")
            }
            OptimizeError::ShapeMismatch { what } => write!(f, "shape mismatch: {what}"),
            OptimizeError::ZeroNormGoalVector { index } => {
                write!(f, "goal vector {index} has zero norm, cannot normalize for alignment loss")
            }
            OptimizeError::NonFinite { iteration, node, op } => match (node, op) {
                (Some(n), Some(o)) => write!(
                    f,
                    "loss diverged at iteration {iteration}: non-finite value at tape node {n} (op {o})"
                ),
                _ => write!(f, "loss diverged at iteration {iteration}: non-finite loss value"),
            },
        }
    }
}

impl std::error::Error for OptimizeError {}

impl From<ChainError> for OptimizeError {
    fn from(e: ChainError) -> Self {
        OptimizeError::Chain(e)
    }
}

impl From<PathError> for OptimizeError {
    fn from(e: PathError) -> Self {
        OptimizeError::Path(e)
    }
}

/// Coefficients `c0..c6` of the composite loss.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LossWeights {
    pub values: [f64; 7],
}

impl Default for LossWeights {
    fn default() -> Self {
        LossWeights {
            values: [1.0, 50.0, 5.0, 100.0, 10.0, 200.0, 1.0],
        }
    }
}

impl LossWeights {
    pub fn new(values: [f64; 7]) -> Result<Self, OptimizeError> {
        let w = LossWeights { values };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        if self.values.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(OptimizeError::BadWeights("coefficients must be finite and non-negative"));
        }
        if self.values.iter().all(|c| *c == 0.0) {
            return Err(OptimizeError::BadWeights("at least one coefficient must be positive"));
        }
        Ok(())
    }

    /// Copy with the given term indices set to zero (ablation).
    pub fn zeroed(&self, indices: &[usize]) -> LossWeights {
        let mut values = self.values;
        for &i in indices {
            if i < 7 {
                values[i] = 0.0;
            }
        }
        LossWeights { values }
    }

    /// Copy with the start/end anchor terms (c2..c5) zeroed, as used when
    /// tracing free-floating shapes.
    pub fn without_anchors(&self) -> LossWeights {
        self.zeroed(&[2, 3, 4, 5])
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OptimizerConfig {
    /// Initial Adam step size.
    pub learning_rate: f64,
    pub max_iterations: usize,
    /// Converged when the largest per-iteration angle change stays below
    /// this for `stop_patience` consecutive iterations.
    pub stop_angle_delta_deg: f64,
    pub stop_patience: usize,
    /// Optional early stop on reaching a loss value.
    pub stop_loss: Option<f64>,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    /// Plateau decay: when the best loss seen has not improved for
    /// `lr_decay_patience` iterations, the step size is multiplied by
    /// `lr_decay_factor` (down to `lr_min`). Constant-step Adam orbits a
    /// limit cycle on this loss whose amplitude scales with the step size;
    /// decaying on plateau collapses the cycle so the angle-change stopping
    /// criterion can actually fire. Fully deterministic.
    pub lr_decay_factor: f64,
    pub lr_decay_patience: usize,
    pub lr_min: f64,
    /// Recorded for reproducibility; the optimization itself is
    /// deterministic and draws no random numbers.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            learning_rate: 0.1,
            max_iterations: 20_000,
            stop_angle_delta_deg: 1e-3,
            stop_patience: 10,
            stop_loss: None,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            lr_decay_factor: 0.5,
            lr_decay_patience: 200,
            lr_min: 1e-5,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), OptimizeError> {
        if !(self.learning_rate > 0.0) {
            return Err(OptimizeError::BadConfig("learning rate must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(OptimizeError::BadConfig("max iterations must be at least 1"));
        }
        if !(self.stop_angle_delta_deg >= 0.0) {
            return Err(OptimizeError::BadConfig("stop angle delta must be non-negative"));
        }
        if !(self.lr_decay_factor > 0.0 && self.lr_decay_factor <= 1.0) {
            return Err(OptimizeError::BadConfig("lr decay factor must be in (0, 1]"));
        }
        if self.lr_decay_patience == 0 {
            return Err(OptimizeError::BadConfig("lr decay patience must be at least 1"));
        }
        Ok(())
    }
}

/// `(n+1)×m` matrix of logits, row per pose.
#[derive(Debug, Clone, PartialEq)]
pub struct LogitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl LogitMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, OptimizeError> {
        let n_rows = rows.len();
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(OptimizeError::ShapeMismatch { what: "ragged logit rows".into() });
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        if data.iter().any(|z| !z.is_finite()) {
            return Err(OptimizeError::ShapeMismatch { what: "non-finite logit".into() });
        }
        Ok(LogitMatrix { rows: n_rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

fn squash(z: f64) -> f64 {
    sigmoid(z.clamp(-LOGIT_CLAMP, LOGIT_CLAMP))
}

/// Sigmoid range mapping: `θ = θ_min + σ(z)(θ_max − θ_min)`.
///
/// Monotone in `z` and strictly interior to every joint range for any
/// finite logit (saturated logits are clamped first so the sigmoid never
/// rounds to exactly 0 or 1).
pub fn angles_from_logits(logits: &LogitMatrix, joints: &[Joint]) -> Vec<Vec<f64>> {
    assert_eq!(logits.cols(), joints.len(), "logit columns must match joints");
    (0..logits.rows())
        .map(|i| {
            logits
                .row(i)
                .iter()
                .zip(joints)
                .map(|(&z, joint)| joint.min_deg + squash(z) * joint.range_deg())
                .collect()
        })
        .collect()
}

/// Starting logits: interpolate the anchor poses linearly in angle space,
/// then invert the sigmoid mapping per joint. Ratios are clamped to
/// `[1e-4, 1−1e-4]`, so a pose sitting exactly on a joint bound starts at a
/// logit of about ∓9.21 rather than ±∞.
pub fn init_logits(
    pose_start: &[f64],
    pose_end: &[f64],
    segments: usize,
    joints: &[Joint],
) -> Result<LogitMatrix, OptimizeError> {
    if segments == 0 {
        return Err(OptimizeError::Path(PathError::ZeroSegments));
    }
    if pose_start.len() != joints.len() || pose_end.len() != joints.len() {
        return Err(OptimizeError::Chain(ChainError::PoseArity {
            expected: joints.len(),
            got: pose_start.len().max(pose_end.len()),
        }));
    }
    check_pose_limits(pose_start, joints, "start")?;
    check_pose_limits(pose_end, joints, "end")?;
    let rows = (0..=segments)
        .map(|i| {
            let t = i as f64 / segments as f64;
            joints
                .iter()
                .enumerate()
                .map(|(j, joint)| {
                    let angle = pose_start[j] + t * (pose_end[j] - pose_start[j]);
                    let ratio = ((angle - joint.min_deg) / joint.range_deg())
                        .clamp(INIT_RATIO_EPS, 1.0 - INIT_RATIO_EPS);
                    (ratio / (1.0 - ratio)).ln()
                })
                .collect()
        })
        .collect();
    LogitMatrix::from_rows(rows)
}

fn check_pose_limits(pose: &[f64], joints: &[Joint], which: &'static str) -> Result<(), OptimizeError> {
    const TOL: f64 = 1e-9;
    for (joint, &angle) in joints.iter().zip(pose) {
        if angle < joint.min_deg - TOL || angle > joint.max_deg + TOL {
            return Err(OptimizeError::PoseOutOfLimits {
                which,
                joint: joint.name.clone(),
                angle_deg: angle,
            });
        }
    }
    Ok(())
}

/// Loss value and its seven unweighted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossBreakdown {
    pub total: f64,
    pub terms: [f64; 7],
}

type PoseState<'t> = ([Scalar<'t>; 3], [Scalar<'t>; 3]);

fn sum_squares<'t>(diffs: impl Iterator<Item = Scalar<'t>>) -> Scalar<'t> {
    diffs.fold(Scalar::constant(0.0), |acc, d| acc + d.square())
}

/// The seven-term trajectory loss over tape-recorded poses and effector
/// states; returns the weighted total (differentiable) and the unweighted
/// term values.
///
/// * L0 — mean squared coordinate error of all points against the goal
///   points (mean over all `3(n+1)` coordinates).
/// * L1 — one minus the mean cosine between the pointing direction of pose
///   `i` and goal vector `i`, over `i = 0..n−1`; the last pose has no goal
///   vector and contributes no alignment term.
/// * L2/L3 — squared joint-space distance of the first/last pose from its
///   anchor pose.
/// * L4/L5 — squared Cartesian distance of the first/last point from the
///   goal endpoints.
/// * L6 — mean squared consecutive-pose difference, over `n·m` entries.
pub fn composite_loss<'t>(
    angles_deg: &[Vec<Scalar<'t>>],
    states: &[PoseState<'t>],
    goal: &GoalPath,
    pose_start: &[f64],
    pose_end: &[f64],
    weights: &LossWeights,
) -> Result<(Scalar<'t>, LossBreakdown), OptimizeError> {
    let n = goal.segments();
    if n == 0 {
        return Err(OptimizeError::ShapeMismatch { what: "goal path has no segments".into() });
    }
    if angles_deg.len() != n + 1 || states.len() != n + 1 || goal.points.len() != n + 1 {
        return Err(OptimizeError::ShapeMismatch {
            what: format!(
                "poses {}, states {}, goal points {} (want n+1 = {})",
                angles_deg.len(),
                states.len(),
                goal.points.len(),
                n + 1
            ),
        });
    }
    let m = pose_start.len();
    if pose_end.len() != m || angles_deg.iter().any(|row| row.len() != m) {
        return Err(OptimizeError::ShapeMismatch { what: "pose arity".into() });
    }

    // L0: position error over all points
    let l0 = sum_squares(
        states
            .iter()
            .zip(&goal.points)
            .flat_map(|((pos, _), gp)| (0..3).map(move |k| pos[k] - gp[k])),
    ) * (1.0 / (3.0 * (n as f64 + 1.0)));

    // L1: pointing alignment over the n steps that have a goal vector
    let mut cos_acc = Scalar::constant(0.0);
    for i in 0..n {
        let vg = goal.vectors[i];
        let vg_norm = (vg[0] * vg[0] + vg[1] * vg[1] + vg[2] * vg[2]).sqrt();
        if vg_norm <= 1e-9 {
            return Err(OptimizeError::ZeroNormGoalVector { index: i });
        }
        let dir = states[i].1;
        let dot = dir[0] * vg[0] + dir[1] * vg[1] + dir[2] * vg[2];
        let dir_norm = (dir[0].square() + dir[1].square() + dir[2].square()).sqrt();
        cos_acc = cos_acc + dot / (dir_norm * vg_norm);
    }
    let l1 = 1.0 - cos_acc * (1.0 / n as f64);

    // L2/L3: joint-space anchors
    let l2 = sum_squares(angles_deg[0].iter().zip(pose_start).map(|(a, &p)| *a - p));
    let l3 = sum_squares(angles_deg[n].iter().zip(pose_end).map(|(a, &p)| *a - p));

    // L4/L5: Cartesian anchors
    let l4 = sum_squares((0..3).map(|k| states[0].0[k] - goal.points[0][k]));
    let l5 = sum_squares((0..3).map(|k| states[n].0[k] - goal.points[n][k]));

    // L6: fluency
    let l6 = sum_squares(angles_deg.windows(2).flat_map(|w| {
        w[1].iter().zip(&w[0]).map(|(a, b)| *a - *b)
    })) * (1.0 / (n as f64 * m as f64));

    let terms = [l0, l1, l2, l3, l4, l5, l6];
    let total = terms
        .iter()
        .zip(&weights.values)
        .fold(Scalar::constant(0.0), |acc, (term, &c)| acc + *term * c);
    let breakdown = LossBreakdown {
        total: total.value(),
        terms: [
            l0.value(),
            l1.value(),
            l2.value(),
            l3.value(),
            l4.value(),
            l5.value(),
            l6.value(),
        ],
    };
    Ok((total, breakdown))
}

/// A generated trajectory with its per-iteration loss history.
#[derive(Debug, Clone)]
pub struct TrajectorySolution {
    /// `(n+1)×m` joint angles in degrees.
    pub poses_deg: Vec<Vec<f64>>,
    /// Forward kinematics of every pose.
    pub states: Vec<EffectorState>,
    /// Goal path the trajectory was trained against.
    pub goal: GoalPath,
    pub loss_trace: Vec<LossBreakdown>,
    pub iterations: usize,
    pub converged: bool,
}

struct Adam {
    lr: f64,
    beta1: f64,
    beta2: f64,
    epsilon: f64,
    t: usize,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl Adam {
    fn new(cfg: &OptimizerConfig, len: usize) -> Self {
        Adam {
            lr: cfg.learning_rate,
            beta1: cfg.beta1,
            beta2: cfg.beta2,
            epsilon: cfg.epsilon,
            t: 0,
            m: vec![0.0; len],
            v: vec![0.0; len],
        }
    }

    fn update(&mut self, params: &mut [f64], grads: &[f64]) {
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t as i32);
        let bc2 = 1.0 - self.beta2.powi(self.t as i32);
        for ((p, &g), (m, v)) in params
            .iter_mut()
            .zip(grads)
            .zip(self.m.iter_mut().zip(self.v.iter_mut()))
        {
            *m = self.beta1 * *m + (1.0 - self.beta1) * g;
            *v = self.beta2 * *v + (1.0 - self.beta2) * g * g;
            let m_hat = *m / bc1;
            let v_hat = *v / bc2;
            *p -= self.lr * m_hat / (v_hat.sqrt() + self.epsilon);
            *p = p.clamp(-LOGIT_CLAMP, LOGIT_CLAMP);
        }
    }
}

/// Incremental trajectory optimizer; drive it with [`step`](Self::step) or
/// [`run`](Self::run) and read the result with
/// [`solution`](Self::solution).
pub struct TrajectoryOptimizer {
    chain: KinematicChain,
    goal: GoalPath,
    anchor_pose_start: Vec<f64>,
    anchor_pose_end: Vec<f64>,
    weights: LossWeights,
    cfg: OptimizerConfig,
    logits: LogitMatrix,
    adam: Adam,
    tape: Tape,
    prev_angles: Vec<Vec<f64>>,
    steady: usize,
    best_loss: f64,
    since_best: usize,
    trace: Vec<LossBreakdown>,
    iterations: usize,
    converged: bool,
}

impl TrajectoryOptimizer {
    /// Pose-anchored setup: goal path runs between the FK images of the
    /// anchor poses. `Line` and `Spline` shapes apply; projected polylines
    /// have no pose anchors and go through [`Self::unanchored`].
    pub fn anchored(
        chain: KinematicChain,
        pose_start: &[f64],
        pose_end: &[f64],
        shape: &ShapeSpec,
        segments: usize,
        weights: LossWeights,
        cfg: OptimizerConfig,
    ) -> Result<Self, OptimizeError> {
        cfg.validate()?;
        let point_start = crate::kinematics::fk(&chain, pose_start)?.position;
        let point_end = crate::kinematics::fk(&chain, pose_end)?.position;
        let goal = match shape {
            ShapeSpec::Line => goal_points_line(point_start, point_end, segments)?,
            ShapeSpec::Spline { control_points } => {
                let mut through = Vec::with_capacity(control_points.len() + 2);
                through.push(point_start);
                through.extend_from_slice(control_points);
                through.push(point_end);
                goal_points_spline(&through, segments)?
            }
            ShapeSpec::PolylineProjected { .. } => {
                return Err(OptimizeError::ShapeUnsupported {
                    shape: "polyline_projected",
                    why: "projected shapes are not anchored to start/end poses; use the unanchored path",
                })
            }
        };
        let logits = init_logits(pose_start, pose_end, segments, &chain.joints)?;
        Ok(Self::from_parts(
            chain,
            goal,
            pose_start.to_vec(),
            pose_end.to_vec(),
            weights,
            cfg,
            logits,
        ))
    }

    /// Free-shape setup: the goal path is taken absolutely (a polyline
    /// projected onto the plane through the initial pose's fingertip, or a
    /// spline through absolute control points), the anchor terms c2..c5 are
    /// forced to zero, and every pose starts from `init_pose`.
    pub fn unanchored(
        chain: KinematicChain,
        shape: &ShapeSpec,
        segments: usize,
        weights: LossWeights,
        cfg: OptimizerConfig,
        init_pose: &[f64],
    ) -> Result<Self, OptimizeError> {
        cfg.validate()?;
        let anchor = crate::kinematics::fk(&chain, init_pose)?.position;
        let goal = match shape {
            ShapeSpec::PolylineProjected { points_2d, normal } => {
                goal_points_polyline(points_2d, *normal, anchor, 1.0, segments)?
            }
            ShapeSpec::Spline { control_points } => goal_points_spline(control_points, segments)?,
            ShapeSpec::Line => {
                return Err(OptimizeError::ShapeUnsupported {
                    shape: "line",
                    why: "a line is defined by start and end poses; use the anchored path",
                })
            }
        };
        check_pose_limits(init_pose, &chain.joints, "initial")?;
        let rows = vec![init_pose.to_vec(); segments + 1];
        let logits = init_logits_from_rows(&rows, &chain.joints)?;
        Ok(Self::from_parts(
            chain,
            goal,
            init_pose.to_vec(),
            init_pose.to_vec(),
            weights.without_anchors(),
            cfg,
            logits,
        ))
    }

    fn from_parts(
        chain: KinematicChain,
        goal: GoalPath,
        anchor_pose_start: Vec<f64>,
        anchor_pose_end: Vec<f64>,
        weights: LossWeights,
        cfg: OptimizerConfig,
        logits: LogitMatrix,
    ) -> Self {
        let adam = Adam::new(&cfg, logits.as_slice().len());
        let prev_angles = angles_from_logits(&logits, &chain.joints);
        TrajectoryOptimizer {
            chain,
            goal,
            anchor_pose_start,
            anchor_pose_end,
            weights,
            cfg,
            logits,
            adam,
            tape: Tape::new(),
            prev_angles,
            steady: 0,
            best_loss: f64::INFINITY,
            since_best: 0,
            trace: Vec::new(),
            iterations: 0,
            converged: false,
        }
    }

    pub fn goal(&self) -> &GoalPath {
        &self.goal
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn loss_trace(&self) -> &[LossBreakdown] {
        &self.trace
    }

    /// Current poses in degrees (the sigmoid image of the logits).
    pub fn current_poses(&self) -> Vec<Vec<f64>> {
        self.prev_angles.clone()
    }

    /// One Adam step; returns the loss evaluated before the update.
    pub fn step(&mut self) -> Result<LossBreakdown, OptimizeError> {
        self.tape.reset();
        let tape = &self.tape;
        let joints = &self.chain.joints;
        let m = joints.len();
        let z_vars: Vec<Vec<Scalar<'_>>> = (0..self.logits.rows())
            .map(|i| self.logits.row(i).iter().map(|&z| tape.var(z)).collect())
            .collect();
        let angles: Vec<Vec<Scalar<'_>>> = z_vars
            .iter()
            .map(|row| {
                row.iter()
                    .zip(joints)
                    .map(|(z, joint)| {
                        Scalar::constant(joint.min_deg) + z.sigmoid() * joint.range_deg()
                    })
                    .collect()
            })
            .collect();
        let states: Vec<PoseState<'_>> =
            angles.iter().map(|row| effector(&self.chain, row)).collect();
        let (total, breakdown) = composite_loss(
            &angles,
            &states,
            &self.goal,
            &self.anchor_pose_start,
            &self.anchor_pose_end,
            &self.weights,
        )?;
        if let Some((node, op)) = tape.poisoned() {
            return Err(OptimizeError::NonFinite {
                iteration: self.iterations,
                node: Some(node),
                op: Some(op),
            });
        }
        if !breakdown.total.is_finite() {
            return Err(OptimizeError::NonFinite {
                iteration: self.iterations,
                node: None,
                op: None,
            });
        }
        let grads = tape.backward(total).map_err(|e| match e {
            crate::autodiff::AdError::NonFinite { node, op } => OptimizeError::NonFinite {
                iteration: self.iterations,
                node: Some(node),
                op: Some(op),
            },
            crate::autodiff::AdError::ForeignRoot => unreachable!("root recorded on own tape"),
        })?;
        let flat_grads: Vec<f64> = z_vars
            .iter()
            .flat_map(|row| row.iter().map(|z| grads.wrt(*z)))
            .collect();
        drop(z_vars);
        if breakdown.total < self.best_loss {
            self.best_loss = breakdown.total;
            self.since_best = 0;
        } else {
            self.since_best += 1;
            if self.since_best >= self.cfg.lr_decay_patience {
                self.adam.lr = (self.adam.lr * self.cfg.lr_decay_factor).max(self.cfg.lr_min);
                self.since_best = 0;
            }
        }
        self.adam.update(self.logits.as_mut_slice(), &flat_grads);

        let new_angles = angles_from_logits(&self.logits, joints);
        let mut delta: f64 = 0.0;
        for (new_row, old_row) in new_angles.iter().zip(&self.prev_angles) {
            for j in 0..m {
                delta = delta.max((new_row[j] - old_row[j]).abs());
            }
        }
        self.prev_angles = new_angles;
        if delta < self.cfg.stop_angle_delta_deg {
            self.steady += 1;
        } else {
            self.steady = 0;
        }
        self.trace.push(breakdown);
        self.iterations += 1;
        Ok(breakdown)
    }

    /// Runs until the angle-change criterion holds for `stop_patience`
    /// iterations, the optional loss target is reached, or the iteration
    /// budget is exhausted (then `converged` stays false — that is a
    /// result, not an error).
    pub fn run(&mut self) -> Result<(), OptimizeError> {
        while self.iterations < self.cfg.max_iterations {
            let breakdown = self.step()?;
            if let Some(target) = self.cfg.stop_loss {
                if breakdown.total <= target {
                    self.converged = true;
                    break;
                }
            }
            if self.steady >= self.cfg.stop_patience {
                self.converged = true;
                break;
            }
        }
        Ok(())
    }

    pub fn solution(&self) -> TrajectorySolution {
        let poses_deg = angles_from_logits(&self.logits, &self.chain.joints);
        let states = fk_batch(&self.chain, &poses_deg).expect("pose arity is fixed");
        TrajectorySolution {
            poses_deg,
            states,
            goal: self.goal.clone(),
            loss_trace: self.trace.clone(),
            iterations: self.iterations,
            converged: self.converged,
        }
    }
}

fn init_logits_from_rows(rows: &[Vec<f64>], joints: &[Joint]) -> Result<LogitMatrix, OptimizeError> {
    let rows = rows
        .iter()
        .map(|pose| {
            pose.iter()
                .zip(joints)
                .map(|(&angle, joint)| {
                    let ratio = ((angle - joint.min_deg) / joint.range_deg())
                        .clamp(INIT_RATIO_EPS, 1.0 - INIT_RATIO_EPS);
                    (ratio / (1.0 - ratio)).ln()
                })
                .collect()
        })
        .collect();
    LogitMatrix::from_rows(rows)
}

/// Generates a pose-anchored trajectory (line or spline between the FK
/// images of the anchor poses).
pub fn generate_trajectory(
    chain: &KinematicChain,
    pose_start: &[f64],
    pose_end: &[f64],
    shape: &ShapeSpec,
    segments: usize,
    weights: &LossWeights,
    cfg: &OptimizerConfig,
) -> Result<TrajectorySolution, OptimizeError> {
    let mut opt = TrajectoryOptimizer::anchored(
        chain.clone(),
        pose_start,
        pose_end,
        shape,
        segments,
        weights.clone(),
        cfg.clone(),
    )?;
    opt.run()?;
    Ok(opt.solution())
}

/// Generates a free-shape trajectory (letters in the air): anchor terms are
/// zeroed and the drawing plane passes through the initial pose fingertip.
pub fn generate_trajectory_unanchored(
    chain: &KinematicChain,
    shape: &ShapeSpec,
    segments: usize,
    weights: &LossWeights,
    cfg: &OptimizerConfig,
    init_pose: &[f64],
) -> Result<TrajectorySolution, OptimizeError> {
    let mut opt = TrajectoryOptimizer::unanchored(
        chain.clone(),
        shape,
        segments,
        weights.clone(),
        cfg.clone(),
        init_pose,
    )?;
    opt.run()?;
    Ok(opt.solution())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{fk, Axis, TransformPrimitive};
    use rand::{Rng, SeedableRng};

    fn two_link(l1: f64, l2: f64) -> KinematicChain {
        KinematicChain::new(
            "two_link",
            vec![
                Joint { name: "shoulder".into(), min_deg: -180.0, max_deg: 180.0 },
                Joint { name: "elbow".into(), min_deg: -180.0, max_deg: 180.0 },
            ],
            vec![
                TransformPrimitive::RotJoint { axis: Axis::Z, joint: 0, scale: 1.0, offset_deg: 0.0 },
                TransformPrimitive::Translate { xyz: [l1, 0.0, 0.0] },
                TransformPrimitive::RotJoint { axis: Axis::Z, joint: 1, scale: 1.0, offset_deg: 0.0 },
                TransformPrimitive::Translate { xyz: [l2, 0.0, 0.0] },
            ],
            vec![],
        )
        .unwrap()
    }

    fn matrix(rows: Vec<Vec<f64>>) -> LogitMatrix {
        LogitMatrix::from_rows(rows).unwrap()
    }

    /// Plain-f64 reimplementation of every loss formula, kept deliberately
    /// independent of the tape path (used as oracle for values and as the
    /// function under finite differencing).
    fn loss_by_hand(
        chain: &KinematicChain,
        logits: &LogitMatrix,
        goal: &GoalPath,
        pose_start: &[f64],
        pose_end: &[f64],
        weights: &LossWeights,
    ) -> (f64, [f64; 7]) {
        let poses = angles_from_logits(logits, &chain.joints);
        let states = crate::kinematics::fk_batch(chain, &poses).unwrap();
        let n = goal.segments();
        let m = pose_start.len();
        let mut terms = [0.0; 7];
        for (s, g) in states.iter().zip(&goal.points) {
            for k in 0..3 {
                terms[0] += (s.position[k] - g[k]).powi(2);
            }
        }
        terms[0] /= 3.0 * (n as f64 + 1.0);
        for i in 0..n {
            let d = states[i].direction;
            let v = goal.vectors[i];
            let dn = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            let vn = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            terms[1] += (d[0] * v[0] + d[1] * v[1] + d[2] * v[2]) / (dn * vn);
        }
        terms[1] = 1.0 - terms[1] / n as f64;
        for j in 0..m {
            terms[2] += (poses[0][j] - pose_start[j]).powi(2);
            terms[3] += (poses[n][j] - pose_end[j]).powi(2);
        }
        for k in 0..3 {
            terms[4] += (states[0].position[k] - goal.points[0][k]).powi(2);
            terms[5] += (states[n].position[k] - goal.points[n][k]).powi(2);
        }
        for w in poses.windows(2) {
            for j in 0..m {
                terms[6] += (w[1][j] - w[0][j]).powi(2);
            }
        }
        terms[6] /= n as f64 * m as f64;
        let total = terms.iter().zip(&weights.values).map(|(t, c)| t * c).sum();
        (total, terms)
    }

    /// Tape route for the same quantity: logits in, gradient out.
    fn loss_on_tape(
        chain: &KinematicChain,
        logits: &LogitMatrix,
        goal: &GoalPath,
        pose_start: &[f64],
        pose_end: &[f64],
        weights: &LossWeights,
    ) -> (f64, Vec<f64>) {
        let tape = Tape::new();
        let z: Vec<Vec<Scalar<'_>>> = (0..logits.rows())
            .map(|i| logits.row(i).iter().map(|&v| tape.var(v)).collect())
            .collect();
        let angles: Vec<Vec<Scalar<'_>>> = z
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&chain.joints)
                    .map(|(zv, joint)| {
                        Scalar::constant(joint.min_deg) + zv.sigmoid() * joint.range_deg()
                    })
                    .collect()
            })
            .collect();
        let states: Vec<PoseState<'_>> = angles.iter().map(|row| effector(chain, row)).collect();
        let (total, breakdown) =
            composite_loss(&angles, &states, goal, pose_start, pose_end, weights).unwrap();
        let grads = tape.backward(total).unwrap();
        let flat = z.iter().flatten().map(|s| grads.wrt(*s)).collect();
        (breakdown.total, flat)
    }

    #[test]
    fn logit_mapping_examples() {
        let joints = vec![
            Joint { name: "a".into(), min_deg: -90.0, max_deg: 90.0 },
            Joint { name: "b".into(), min_deg: 0.0, max_deg: 10.0 },
            Joint { name: "c".into(), min_deg: 0.0, max_deg: 100.0 },
        ];
        let quarter = (0.25f64 / 0.75).ln();
        let angles = angles_from_logits(&matrix(vec![vec![0.0, 20.0, quarter]]), &joints);
        assert_eq!(angles[0][0], 0.0, "sigmoid(0) lands mid-range");
        assert!((angles[0][1] - 10.0).abs() < 1e-7, "saturated logit approaches the bound");
        assert!(angles[0][1] < 10.0, "but stays strictly inside");
        assert!((angles[0][2] - 25.0).abs() < 1e-9);
    }

    #[test]
    fn logit_mapping_is_monotone_and_interior() {
        let joints = vec![Joint { name: "j".into(), min_deg: -37.0, max_deg: 12.0 }];
        let mut prev = f64::NEG_INFINITY;
        for k in -400..=400 {
            let z = k as f64 / 4.0; // covers ±100, far past saturation
            let angle = angles_from_logits(&matrix(vec![vec![z]]), &joints)[0][0];
            assert!(angle > -37.0 && angle < 12.0, "z={z} escaped the open range");
            assert!(angle >= prev, "not monotone at z={z}");
            prev = angle;
        }
    }

    #[test]
    fn init_interpolates_and_round_trips() {
        let chain = two_link(2.0, 1.5);
        let p_s = vec![40.0, -20.0];
        let p_e = vec![-10.0, 60.0];
        let logits = init_logits(&p_s, &p_e, 4, &chain.joints).unwrap();
        let angles = angles_from_logits(&logits, &chain.joints);
        for (j, &expect) in p_s.iter().enumerate() {
            assert!((angles[0][j] - expect).abs() < 0.01);
        }
        for (j, &expect) in p_e.iter().enumerate() {
            assert!((angles[4][j] - expect).abs() < 0.01);
        }
        // interior rows follow the angle-space interpolation
        for j in 0..2 {
            let mid = p_s[j] + 0.5 * (p_e[j] - p_s[j]);
            assert!((angles[2][j] - mid).abs() < 0.01);
        }

        let same = init_logits(&p_s, &p_s, 3, &chain.joints).unwrap();
        for i in 1..=3 {
            assert_eq!(same.row(i), same.row(0));
        }
    }

    #[test]
    fn init_clamps_poses_on_the_exact_bound() {
        let joints = vec![Joint { name: "j".into(), min_deg: -50.0, max_deg: 70.0 }];
        let logits = init_logits(&[-50.0], &[70.0], 1, &joints).unwrap();
        let expect = (1e-4f64 / (1.0 - 1e-4)).ln();
        assert!((logits.row(0)[0] - expect).abs() < 1e-12);
        assert!((logits.row(1)[0] + expect).abs() < 1e-12);
        assert!((expect + 9.21).abs() < 0.01);
    }

    #[test]
    fn init_rejects_out_of_limit_poses() {
        let joints = vec![Joint { name: "j".into(), min_deg: -50.0, max_deg: 70.0 }];
        assert!(matches!(
            init_logits(&[-50.1], &[0.0], 2, &joints),
            Err(OptimizeError::PoseOutOfLimits { which: "start", .. })
        ));
        // a hair inside the 1e-9 tolerance passes
        assert!(init_logits(&[-50.0 - 5e-10], &[0.0], 2, &joints).is_ok());
    }

    #[test]
    fn perfect_fit_leaves_only_the_fluency_term() {
        let chain = two_link(2.0, 1.5);
        let poses = vec![vec![30.0, 10.0], vec![35.0, 15.0], vec![40.0, 20.0]];
        let states = crate::kinematics::fk_batch(&chain, &poses).unwrap();
        let goal = GoalPath {
            points: states.iter().map(|s| s.position).collect(),
            // planar chain directions are exactly +z
            vectors: vec![[0.0, 0.0, 1.0]; 2],
        };
        let tape = Tape::new();
        let angles: Vec<Vec<Scalar<'_>>> = poses
            .iter()
            .map(|row| row.iter().map(|&a| tape.var(a)).collect())
            .collect();
        let states_t: Vec<PoseState<'_>> =
            angles.iter().map(|row| effector(&chain, row)).collect();
        let weights = LossWeights::default();
        let (total, b) =
            composite_loss(&angles, &states_t, &goal, &poses[0], &poses[2], &weights).unwrap();
        for k in [0usize, 1, 2, 3, 4, 5] {
            assert!(b.terms[k].abs() < 1e-24, "term {k} = {}", b.terms[k]);
        }
        assert!(b.terms[6] > 0.0);
        assert!((total.value() - weights.values[6] * b.terms[6]).abs() < 1e-12);
    }

    #[test]
    fn constant_trajectory_has_zero_fluency() {
        let chain = two_link(2.0, 1.5);
        let poses = vec![vec![12.0, -7.0]; 4];
        let goal = GoalPath {
            points: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [3.0, 0.0, 0.0]],
            vectors: vec![[1.0, 0.0, 0.0]; 3],
        };
        let tape = Tape::new();
        let angles: Vec<Vec<Scalar<'_>>> = poses
            .iter()
            .map(|row| row.iter().map(|&a| tape.var(a)).collect())
            .collect();
        let states: Vec<PoseState<'_>> = angles.iter().map(|row| effector(&chain, row)).collect();
        let (_, b) = composite_loss(
            &angles,
            &states,
            &goal,
            &poses[0],
            &poses[3],
            &LossWeights::default(),
        )
        .unwrap();
        assert_eq!(b.terms[6], 0.0);
    }

    #[test]
    fn loss_terms_match_the_hand_oracle() {
        let chain = two_link(2.0, 1.5);
        let logits = matrix(vec![vec![0.3, -0.8], vec![-0.1, 0.45]]);
        let goal = GoalPath {
            points: vec![[1.0, 0.5, 0.0], [2.0, 1.5, 0.0]],
            vectors: vec![[0.5, 0.8, 0.2]],
        };
        let p_s = [20.0, -30.0];
        let p_e = [-10.0, 45.0];
        let weights = LossWeights::new([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap();
        let (hand_total, hand_terms) = loss_by_hand(&chain, &logits, &goal, &p_s, &p_e, &weights);

        let tape = Tape::new();
        let z: Vec<Vec<Scalar<'_>>> = (0..2)
            .map(|i| logits.row(i).iter().map(|&v| tape.var(v)).collect())
            .collect();
        let angles: Vec<Vec<Scalar<'_>>> = z
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&chain.joints)
                    .map(|(zv, joint)| {
                        Scalar::constant(joint.min_deg) + zv.sigmoid() * joint.range_deg()
                    })
                    .collect()
            })
            .collect();
        let states: Vec<PoseState<'_>> = angles.iter().map(|row| effector(&chain, row)).collect();
        let (total, b) = composite_loss(&angles, &states, &goal, &p_s, &p_e, &weights).unwrap();
        assert!((total.value() - hand_total).abs() < 1e-12 * hand_total.abs().max(1.0));
        for k in 0..7 {
            assert!(
                (b.terms[k] - hand_terms[k]).abs() < 1e-12 * hand_terms[k].abs().max(1.0),
                "term {k}: {} vs {}",
                b.terms[k],
                hand_terms[k]
            );
        }
    }

    #[test]
    fn zero_norm_goal_vector_rejected() {
        let chain = two_link(2.0, 1.5);
        let goal = GoalPath {
            points: vec![[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]],
            vectors: vec![[0.0, 0.0, 0.0]],
        };
        let tape = Tape::new();
        let angles: Vec<Vec<Scalar<'_>>> =
            vec![vec![tape.var(0.0), tape.var(0.0)], vec![tape.var(1.0), tape.var(1.0)]];
        let states: Vec<PoseState<'_>> = angles.iter().map(|row| effector(&chain, row)).collect();
        let result = composite_loss(
            &angles,
            &states,
            &goal,
            &[0.0, 0.0],
            &[1.0, 1.0],
            &LossWeights::default(),
        );
        assert!(matches!(result, Err(OptimizeError::ZeroNormGoalVector { index: 0 })));
    }

    #[test]
    fn loss_gradients_match_finite_differences() {
        let chain = two_link(2.0, 1.5);
        let p_s = [70.0, 15.0];
        let p_e = [5.0, 55.0];
        let n = 5;
        let point_s = fk(&chain, &p_s).unwrap().position;
        let point_e = fk(&chain, &p_e).unwrap().position;
        let goal = goal_points_line(point_s, point_e, n).unwrap();
        let weights = LossWeights::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let rows: Vec<Vec<f64>> = (0..=n)
                .map(|_| (0..2).map(|_| rng.gen_range(-3.0..3.0)).collect())
                .collect();
            let logits = matrix(rows.clone());
            let (_, grads) = loss_on_tape(&chain, &logits, &goal, &p_s, &p_e, &weights);
            let h = 1e-5;
            for (flat, _) in grads.iter().enumerate().take((n + 1) * 2).map(|(i, g)| (i, g)) {
                let (i, j) = (flat / 2, flat % 2);
                let mut hi = rows.clone();
                let mut lo = rows.clone();
                hi[i][j] += h;
                lo[i][j] -= h;
                let (f_hi, _) = loss_by_hand(&chain, &matrix(hi), &goal, &p_s, &p_e, &weights);
                let (f_lo, _) = loss_by_hand(&chain, &matrix(lo), &goal, &p_s, &p_e, &weights);
                let fd = (f_hi - f_lo) / (2.0 * h);
                let ad = grads[flat];
                assert!(
                    (ad - fd).abs() <= 1e-4 * fd.abs().max(1.0),
                    "logit ({i},{j}): ad={ad} fd={fd}"
                );
            }
        }
    }

    #[test]
    fn toy_line_converges_and_the_grid_oracle_confirms_reachability() {
        let chain = two_link(2.0, 1.5);
        let p_s = [70.0, 15.0];
        let p_e = [5.0, 55.0];
        let n = 20;
        let solution = generate_trajectory(
            &chain,
            &p_s,
            &p_e,
            &ShapeSpec::Line,
            n,
            &LossWeights::default(),
            &OptimizerConfig { max_iterations: 6000, ..OptimizerConfig::default() },
        )
        .unwrap();

        // independent reachability oracle: dense grid search over both
        // joints confirms every goal point is attainable
        for goal_point in &solution.goal.points {
            let mut best = f64::INFINITY;
            for t1 in (-360..360).map(|k| k as f64 / 2.0) {
                for t2 in (-360..360).map(|k| k as f64 / 2.0) {
                    let r1 = t1.to_radians();
                    let r12 = (t1 + t2).to_radians();
                    let x = 2.0 * r1.cos() + 1.5 * r12.cos();
                    let y = 2.0 * r1.sin() + 1.5 * r12.sin();
                    let d = ((x - goal_point[0]).powi(2) + (y - goal_point[1]).powi(2)).sqrt();
                    if d < best {
                        best = d;
                    }
                }
            }
            assert!(best < 2e-2, "grid oracle says point {goal_point:?} is off by {best}");
        }

        let (_, stats) = crate::evaluation::distance_from_line(
            &solution.states,
            solution.goal.points[0],
            solution.goal.points[n],
        )
        .unwrap();
        // stats are in mm-equivalents of the toy unit (×10)
        assert!(stats.mean / 10.0 < 1e-2, "mean line distance {} units", stats.mean / 10.0);
        assert!(solution.converged, "did not converge in 6000 iterations");
    }

    #[test]
    fn unanchored_square_is_traced_on_the_toy_chain() {
        let chain = two_link(2.0, 1.5);
        let init = [40.0, 30.0];
        let shape = ShapeSpec::PolylineProjected {
            points_2d: vec![[0.0, 0.0], [0.8, 0.0], [0.8, 0.8], [0.0, 0.8], [0.0, 0.0]],
            normal: [0.0, 0.0, 1.0],
        };
        let solution = generate_trajectory_unanchored(
            &chain,
            &shape,
            24,
            &LossWeights::default(),
            &OptimizerConfig { max_iterations: 8000, ..OptimizerConfig::default() },
            &init,
        )
        .unwrap();
        let mut worst = 0.0f64;
        for (state, goal_point) in solution.states.iter().zip(&solution.goal.points) {
            let d = (0..3)
                .map(|k| (state.position[k] - goal_point[k]).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(d);
        }
        assert!(worst < 1e-2, "worst goal-point distance {worst}");
    }

    #[test]
    fn all_zero_weights_stop_immediately() {
        let chain = two_link(2.0, 1.5);
        let shape = ShapeSpec::PolylineProjected {
            points_2d: vec![[0.0, 0.0], [0.5, 0.0]],
            normal: [0.0, 0.0, 1.0],
        };
        let weights = LossWeights { values: [0.0; 7] };
        let solution = generate_trajectory_unanchored(
            &chain,
            &shape,
            4,
            &weights,
            &OptimizerConfig::default(),
            &[30.0, 30.0],
        )
        .unwrap();
        assert_eq!(solution.loss_trace[0].total, 0.0);
        assert!(solution.iterations <= OptimizerConfig::default().stop_patience);
        assert!(solution.converged);
    }

    #[test]
    fn coincident_endpoints_are_an_error() {
        let chain = two_link(2.0, 1.5);
        let pose = [30.0, 40.0];
        let result = generate_trajectory(
            &chain,
            &pose,
            &pose,
            &ShapeSpec::Line,
            10,
            &LossWeights::default(),
            &OptimizerConfig::default(),
        );
        assert!(matches!(
            result,
            Err(OptimizeError::Path(PathError::CoincidentEndpoints))
        ));
    }

    #[test]
    fn identical_runs_are_bitwise_identical() {
        let chain = two_link(2.0, 1.5);
        let cfg = OptimizerConfig { max_iterations: 150, ..OptimizerConfig::default() };
        let run = || {
            generate_trajectory(
                &chain,
                &[70.0, 15.0],
                &[5.0, 55.0],
                &ShapeSpec::Line,
                8,
                &LossWeights::default(),
                &cfg,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.loss_trace.len(), b.loss_trace.len());
        for (x, y) in a.loss_trace.iter().zip(&b.loss_trace) {
            assert_eq!(x.total.to_bits(), y.total.to_bits());
        }
        for (x, y) in a.poses_deg.iter().zip(&b.poses_deg) {
            for (p, q) in x.iter().zip(y) {
                assert_eq!(p.to_bits(), q.to_bits());
            }
        }
    }

    #[test]
    fn weights_validation() {
        assert!(LossWeights::new([0.0; 7]).is_err());
        assert!(LossWeights::new([1.0, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
        let w = LossWeights::default();
        assert_eq!(w.values, [1.0, 50.0, 5.0, 100.0, 10.0, 200.0, 1.0]);
        let ablated = w.zeroed(&[0]);
        assert_eq!(ablated.values[0], 0.0);
        assert_eq!(ablated.values[1], 50.0);
        let free = w.without_anchors();
        assert_eq!(&free.values[2..6], &[0.0; 4]);
    }

    #[test]
    fn range_safety_over_random_logits_and_limits() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20_000 {
            let min = rng.gen_range(-200.0..199.0);
            let max = min + rng.gen_range(1e-3..360.0);
            let joints = vec![Joint { name: "j".into(), min_deg: min, max_deg: max }];
            let z = rng.gen_range(-1e3..1e3);
            let angle = angles_from_logits(&matrix(vec![vec![z]]), &joints)[0][0];
            assert!(angle > min && angle < max, "z={z} range=({min},{max}) angle={angle}");
        }
    }
}
