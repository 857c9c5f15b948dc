//! Forward kinematics over chains of homogeneous-transform primitives.
//!
//! A chain is an ordered list of translations, fixed rotations, and
//! joint-driven rotations, written base-outward (torso first, fingertip
//! last). Evaluation never forms the full matrix product: each primitive is
//! applied to the running vector one at a time, starting from the fingertip
//! side, so the base-side transform is applied last. The pointing direction
//! is the image of (0,0,1) under the rotational parts alone (translations
//! contribute identity).
//!
//! Everything is generic over the scalar type, so the same code path runs
//! on plain `f64` and on tape-recorded [`Scalar`]s. The two therefore agree
//! bitwise, and the differentiable path needs no separate transcription of
//! the chain.
//!
//! Angles are handled in degrees at this boundary and converted to radians
//! just before `sin`/`cos`. A joint-driven rotation applies the affine map
//! `scale·θ + offset` first, which is how gear-reduced "degree-like" motor
//! units are expressed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::autodiff::Scalar;

const DEG_TO_RAD: f64 = std::f64::consts::PI / 180.0;

/// Scalar abstraction shared by the plain and differentiable FK paths.
pub trait RealScalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Lifts a plain constant into the scalar type.
    fn lift(value: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl RealScalar for f64 {
    fn lift(value: f64) -> Self {
        value
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
}

impl<'t> RealScalar for Scalar<'t> {
    fn lift(value: f64) -> Self {
        Scalar::constant(value)
    }
    fn sin(self) -> Self {
        Scalar::sin(self)
    }
    fn cos(self) -> Self {
        Scalar::cos(self)
    }
}

/// Rotation axis of a primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

/// One link of a kinematic chain.
///
/// `RotJoint` rotates by `scale·θ_j + offset_deg` degrees, where `θ_j` is
/// the pose angle of joint `joint`.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformPrimitive {
    Translate { xyz: [f64; 3] },
    RotConst { axis: Axis, deg: f64 },
    RotJoint { axis: Axis, joint: usize, scale: f64, offset_deg: f64 },
}

/// A named joint with its angle range in degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct Joint {
    pub name: String,
    pub min_deg: f64,
    pub max_deg: f64,
}

impl Joint {
    pub fn range_deg(&self) -> f64 {
        self.max_deg - self.min_deg
    }
}

/// Chain validation failures.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainError {
    EmptyPrimitives,
    BadJointRange { joint: String, min_deg: f64, max_deg: f64 },
    JointIndexOutOfRange { primitive: usize, joint: usize },
    UnreferencedJoint { joint: String },
    ZeroScale { primitive: usize },
    MarkOutOfRange { mark: usize, primitive: usize },
    PoseArity { expected: usize, got: usize },
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::EmptyPrimitives => write!(f, "chain has no primitives"),
            ChainError::BadJointRange { joint, min_deg, max_deg } => {
                write!(f, "joint {joint}: min {min_deg} must be < max {max_deg}")
            }
            ChainError::JointIndexOutOfRange { primitive, joint } => {
                write!(f, "primitive {primitive} references joint index {joint} out of range")
            }
            ChainError::UnreferencedJoint { joint } => {
                write!(f, "joint {joint} is not referenced by any primitive")
            }
            ChainError::ZeroScale { primitive } => {
                write!(f, "primitive {primitive}: joint rotation scale must be nonzero")
            }
            ChainError::MarkOutOfRange { mark, primitive } => {
                write!(f, "mark {mark} points at primitive {primitive} out of range")
            }
            ChainError::PoseArity { expected, got } => {
                write!(f, "pose has {got} angles, chain expects {expected}")
            }
        }
    }
}

impl std::error::Error for ChainError {}

/// A validated kinematic chain.
///
/// `marks` designates primitive indices after which an intermediate joint
/// point is reported (base-side prefix applied to the origin), in chain
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicChain {
    pub name: String,
    pub joints: Vec<Joint>,
    pub primitives: Vec<TransformPrimitive>,
    pub marks: Vec<(usize, String)>,
}

impl KinematicChain {
    pub fn new(
        name: impl Into<String>,
        joints: Vec<Joint>,
        primitives: Vec<TransformPrimitive>,
        marks: Vec<(usize, String)>,
    ) -> Result<Self, ChainError> {
        let chain = KinematicChain {
            name: name.into(),
            joints,
            primitives,
            marks,
        };
        chain.validate()?;
        Ok(chain)
    }

    /// Number of degrees of freedom.
    pub fn dof(&self) -> usize {
        self.joints.len()
    }

    pub fn validate(&self) -> Result<(), ChainError> {
        if self.primitives.is_empty() {
            return Err(ChainError::EmptyPrimitives);
        }
        for joint in &self.joints {
            if !(joint.min_deg < joint.max_deg) {
                return Err(ChainError::BadJointRange {
                    joint: joint.name.clone(),
                    min_deg: joint.min_deg,
                    max_deg: joint.max_deg,
                });
            }
        }
        let mut referenced = vec![false; self.joints.len()];
        for (i, prim) in self.primitives.iter().enumerate() {
            if let TransformPrimitive::RotJoint { joint, scale, .. } = prim {
                if *joint >= self.joints.len() {
                    return Err(ChainError::JointIndexOutOfRange { primitive: i, joint: *joint });
                }
                if *scale == 0.0 {
                    return Err(ChainError::ZeroScale { primitive: i });
                }
                referenced[*joint] = true;
            }
        }
        if let Some(j) = referenced.iter().position(|r| !r) {
            return Err(ChainError::UnreferencedJoint {
                joint: self.joints[j].name.clone(),
            });
        }
        for (k, &(idx, _)) in self.marks.iter().enumerate() {
            if idx >= self.primitives.len() {
                return Err(ChainError::MarkOutOfRange { mark: k, primitive: idx });
            }
        }
        Ok(())
    }

    /// True when every angle of `pose_deg` sits inside the closed range of
    /// its joint, within `tol_deg`.
    pub fn pose_within_limits(&self, pose_deg: &[f64], tol_deg: f64) -> bool {
        pose_deg.len() == self.dof()
            && self
                .joints
                .iter()
                .zip(pose_deg)
                .all(|(j, &a)| a >= j.min_deg - tol_deg && a <= j.max_deg + tol_deg)
    }

    fn check_arity(&self, len: usize) -> Result<(), ChainError> {
        if len != self.dof() {
            return Err(ChainError::PoseArity { expected: self.dof(), got: len });
        }
        Ok(())
    }
}

/// End-effector position, pointing direction, and marked joint points.
///
/// Positions are in the chain's length unit (centimetres for the shipped
/// models); the direction is the unit image of (0,0,1).
#[derive(Debug, Clone, PartialEq)]
pub struct EffectorState<T = f64> {
    pub position: [T; 3],
    pub direction: [T; 3],
    pub joint_points: Vec<[T; 3]>,
}

fn rotate<T: RealScalar>(axis: Axis, c: T, s: T, p: [T; 3]) -> [T; 3] {
    // Rotation matrices as printed in the model convention; note the y-axis
    // form places -sin in the first row.
    let [x, y, z] = p;
    match axis {
        Axis::Z => [c * x - s * y, s * x + c * y, z],
        Axis::X => [x, c * y - s * z, s * y + c * z],
        Axis::Y => [c * x - s * z, y, s * x + c * z],
    }
}

fn joint_angle_rad<T: RealScalar>(pose: &[T], joint: usize, scale: f64, offset_deg: f64) -> T {
    (pose[joint] * T::lift(scale) + T::lift(offset_deg)) * T::lift(DEG_TO_RAD)
}

fn apply_point<T: RealScalar>(prim: &TransformPrimitive, pose: &[T], p: [T; 3]) -> [T; 3] {
    match prim {
        TransformPrimitive::Translate { xyz } => [
            p[0] + T::lift(xyz[0]),
            p[1] + T::lift(xyz[1]),
            p[2] + T::lift(xyz[2]),
        ],
        TransformPrimitive::RotConst { axis, deg } => {
            let rad = deg * DEG_TO_RAD;
            rotate(*axis, T::lift(rad.cos()), T::lift(rad.sin()), p)
        }
        TransformPrimitive::RotJoint { axis, joint, scale, offset_deg } => {
            let rad = joint_angle_rad(pose, *joint, *scale, *offset_deg);
            rotate(*axis, rad.cos(), rad.sin(), p)
        }
    }
}

fn apply_direction<T: RealScalar>(prim: &TransformPrimitive, pose: &[T], d: [T; 3]) -> [T; 3] {
    match prim {
        TransformPrimitive::Translate { .. } => d,
        _ => apply_point(prim, pose, d),
    }
}

fn chain_point<T: RealScalar>(prims: &[TransformPrimitive], pose: &[T]) -> [T; 3] {
    let zero = T::lift(0.0);
    let mut p = [zero, zero, zero];
    for prim in prims.iter().rev() {
        p = apply_point(prim, pose, p);
    }
    p
}

/// Position and direction only; used by the optimizer where intermediate
/// joint points would just inflate the tape.
pub fn effector<T: RealScalar>(chain: &KinematicChain, pose: &[T]) -> ([T; 3], [T; 3]) {
    let position = chain_point(&chain.primitives, pose);
    let mut direction = [T::lift(0.0), T::lift(0.0), T::lift(1.0)];
    for prim in chain.primitives.iter().rev() {
        direction = apply_direction(prim, pose, direction);
    }
    (position, direction)
}

fn eval<T: RealScalar>(chain: &KinematicChain, pose: &[T]) -> EffectorState<T> {
    let (position, direction) = effector(chain, pose);
    let joint_points = chain
        .marks
        .iter()
        .map(|&(idx, _)| chain_point(&chain.primitives[..=idx], pose))
        .collect();
    EffectorState {
        position,
        direction,
        joint_points,
    }
}

/// Forward kinematics of one pose (angles in degrees).
pub fn fk(chain: &KinematicChain, pose_deg: &[f64]) -> Result<EffectorState, ChainError> {
    chain.check_arity(pose_deg.len())?;
    Ok(eval(chain, pose_deg))
}

/// Forward kinematics of a batch of poses; elementwise identical to [`fk`].
pub fn fk_batch(chain: &KinematicChain, poses_deg: &[Vec<f64>]) -> Result<Vec<EffectorState>, ChainError> {
    poses_deg.iter().map(|row| fk(chain, row)).collect()
}

/// Forward kinematics over tape-recorded angles. Values agree bitwise with
/// [`fk`] at the same pose; gradients of every output coordinate flow back
/// to the pose scalars.
pub fn fk_diff<'t>(
    chain: &KinematicChain,
    pose_deg: &[Scalar<'t>],
) -> Result<EffectorState<Scalar<'t>>, ChainError> {
    chain.check_arity(pose_deg.len())?;
    Ok(eval(chain, pose_deg))
}
