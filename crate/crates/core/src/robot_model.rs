//! Loading, validation, and serialization of robot model and pose files.
//!
//! Models are human-editable JSON: a joint table (names plus angle ranges
//! in degrees), the ordered primitive list, and marks naming the primitives
//! after which intermediate joint points are reported. Primitive records
//! are frozen as:
//!
//! ```json
//! {"kind":"translate","xyz":[0,5,19.5]}
//! {"kind":"rot_const","axis":"z","deg":90}
//! {"kind":"rot_joint","axis":"z","joint":"wrist_x","scale":0.2222222222222222,"offset_deg":10}
//! ```
//!
//! Pose files map pose names to angle vectors for one named model.
//!
//! The NICO right-arm model and a synthetic pose set (one raised-arm start
//! pose plus seven touch poses whose fingertip positions lie on a common
//! vertical plane, the "touchscreen") ship embedded; see [`nico_right_arm`]
//! and [`nico_poses`]. The NICO joint ranges in the shipped file are
//! configuration chosen wide enough for the shipped poses, not hardware
//! ground truth.

use std::fmt;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::kinematics::{Axis, ChainError, Joint, KinematicChain, TransformPrimitive};

/// Errors from model and pose file handling.
#[derive(Debug)]
pub enum ModelError {
    Io(std::io::Error),
    /// JSON syntax or schema error; serde reports line and column.
    Parse(serde_json::Error),
    Chain(ChainError),
    JointCountMismatch { declared: usize, listed: usize },
    UnknownJoint { primitive: usize, name: String },
    UnknownMarkJoint { name: String },
    PoseArity { pose: String, expected: usize, got: usize },
    AngleOutOfRange { pose: String, joint: String, angle_deg: f64, min_deg: f64, max_deg: f64 },
    PoseNotFound { name: String },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Io(e) => write!(f, "io error: {e}"),
            ModelError::Parse(e) => write!(f, "parse error: {e}"),
            ModelError::Chain(e) => write!(f, "invalid chain: {e}"),
            ModelError::JointCountMismatch { declared, listed } => {
                write!(f, "model declares m={declared} but lists {listed} joints")
            }
            ModelError::UnknownJoint { primitive, name } => {
                write!(f, "primitive {primitive} references unknown joint {name:?}")
            }
            ModelError::UnknownMarkJoint { name } => {
                write!(f, "mark references unknown joint {name:?}")
            }
            ModelError::PoseArity { pose, expected, got } => {
                write!(f, "pose {pose:?} has {got} angles, model expects {expected}")
            }
            ModelError::AngleOutOfRange { pose, joint, angle_deg, min_deg, max_deg } => {
                write!(
                    f,
                    "pose {pose:?}: joint {joint} angle {angle_deg}° outside [{min_deg}, {max_deg}]"
                )
            }
            ModelError::PoseNotFound { name } => write!(f, "pose not found: {name:?}"),
        }
    }
}

impl std::error::Error for ModelError {}

impl From<std::io::Error> for ModelError {
    fn from(e: std::io::Error) -> Self {
        ModelError::Io(e)
    }
}

impl From<serde_json::Error> for ModelError {
    fn from(e: serde_json::Error) -> Self {
        ModelError::Parse(e)
    }
}

impl From<ChainError> for ModelError {
    fn from(e: ChainError) -> Self {
        ModelError::Chain(e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointRecord {
    pub name: String,
    pub min_deg: f64,
    pub max_deg: f64,
}

/// On-disk primitive record. Joint rotations reference joints by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PrimitiveRecord {
    Translate { xyz: [f64; 3] },
    RotConst { axis: Axis, deg: f64 },
    RotJoint {
        axis: Axis,
        joint: String,
        scale: f64,
        #[serde(default)]
        offset_deg: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkRecord {
    pub primitive: usize,
    pub joint: String,
}

/// On-disk robot model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotModelFile {
    pub name: String,
    pub m: usize,
    pub joints: Vec<JointRecord>,
    pub primitives: Vec<PrimitiveRecord>,
    #[serde(default)]
    pub marks: Vec<MarkRecord>,
}

impl RobotModelFile {
    /// Resolves joint names and validates the chain.
    pub fn to_chain(&self) -> Result<KinematicChain, ModelError> {
        if self.m != self.joints.len() {
            return Err(ModelError::JointCountMismatch {
                declared: self.m,
                listed: self.joints.len(),
            });
        }
        let index_of = |name: &str| self.joints.iter().position(|j| j.name == name);
        let mut primitives = Vec::with_capacity(self.primitives.len());
        for (i, rec) in self.primitives.iter().enumerate() {
            primitives.push(match rec {
                PrimitiveRecord::Translate { xyz } => TransformPrimitive::Translate { xyz: *xyz },
                PrimitiveRecord::RotConst { axis, deg } => {
                    TransformPrimitive::RotConst { axis: *axis, deg: *deg }
                }
                PrimitiveRecord::RotJoint { axis, joint, scale, offset_deg } => {
                    let joint = index_of(joint).ok_or_else(|| ModelError::UnknownJoint {
                        primitive: i,
                        name: joint.clone(),
                    })?;
                    TransformPrimitive::RotJoint {
                        axis: *axis,
                        joint,
                        scale: *scale,
                        offset_deg: *offset_deg,
                    }
                }
            });
        }
        let mut marks = Vec::with_capacity(self.marks.len());
        for mark in &self.marks {
            if index_of(&mark.joint).is_none() {
                return Err(ModelError::UnknownMarkJoint { name: mark.joint.clone() });
            }
            marks.push((mark.primitive, mark.joint.clone()));
        }
        let joints = self
            .joints
            .iter()
            .map(|j| Joint {
                name: j.name.clone(),
                min_deg: j.min_deg,
                max_deg: j.max_deg,
            })
            .collect();
        Ok(KinematicChain::new(self.name.clone(), joints, primitives, marks)?)
    }

    /// Inverse of [`RobotModelFile::to_chain`]; joint indices become names.
    pub fn from_chain(chain: &KinematicChain) -> Self {
        let primitives = chain
            .primitives
            .iter()
            .map(|prim| match prim {
                TransformPrimitive::Translate { xyz } => PrimitiveRecord::Translate { xyz: *xyz },
                TransformPrimitive::RotConst { axis, deg } => {
                    PrimitiveRecord::RotConst { axis: *axis, deg: *deg }
                }
                TransformPrimitive::RotJoint { axis, joint, scale, offset_deg } => {
                    PrimitiveRecord::RotJoint {
                        axis: *axis,
                        joint: chain.joints[*joint].name.clone(),
                        scale: *scale,
                        offset_deg: *offset_deg,
                    }
                }
            })
            .collect();
        RobotModelFile {
            name: chain.name.clone(),
            m: chain.joints.len(),
            joints: chain
                .joints
                .iter()
                .map(|j| JointRecord {
                    name: j.name.clone(),
                    min_deg: j.min_deg,
                    max_deg: j.max_deg,
                })
                .collect(),
            primitives,
            marks: chain
                .marks
                .iter()
                .map(|(primitive, joint)| MarkRecord {
                    primitive: *primitive,
                    joint: joint.clone(),
                })
                .collect(),
        }
    }
}

/// Parses a model from JSON text and validates it.
pub fn parse_model(text: &str) -> Result<KinematicChain, ModelError> {
    let file: RobotModelFile = serde_json::from_str(text)?;
    file.to_chain()
}

/// Loads and validates a model file. Order-preserving: primitive `i` of the
/// file is primitive `i` of the chain.
pub fn load_model(path: impl AsRef<Path>) -> Result<KinematicChain, ModelError> {
    parse_model(&std::fs::read_to_string(path)?)
}

pub fn model_to_string(chain: &KinematicChain) -> String {
    serde_json::to_string_pretty(&RobotModelFile::from_chain(chain)).expect("model serializes")
}

pub fn save_model(chain: &KinematicChain, path: impl AsRef<Path>) -> Result<(), ModelError> {
    Ok(std::fs::write(path, model_to_string(chain) + "\n")?)
}

/// Named poses for one model, angles in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseSet {
    pub model: String,
    pub poses: IndexMap<String, Vec<f64>>,
}

impl PoseSet {
    pub fn get(&self, name: &str) -> Result<&Vec<f64>, ModelError> {
        self.poses
            .get(name)
            .ok_or_else(|| ModelError::PoseNotFound { name: name.to_string() })
    }
}

/// A lenient-load range violation.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseWarning {
    pub pose: String,
    pub joint: String,
    pub angle_deg: f64,
}

fn check_poses(set: &PoseSet, chain: &KinematicChain) -> Result<Vec<PoseWarning>, ModelError> {
    let mut warnings = Vec::new();
    for (name, angles) in &set.poses {
        if angles.len() != chain.dof() {
            return Err(ModelError::PoseArity {
                pose: name.clone(),
                expected: chain.dof(),
                got: angles.len(),
            });
        }
        for (joint, &angle) in chain.joints.iter().zip(angles) {
            // closed interval: the exact bounds are accepted
            if angle < joint.min_deg || angle > joint.max_deg {
                warnings.push(PoseWarning {
                    pose: name.clone(),
                    joint: joint.name.clone(),
                    angle_deg: angle,
                });
            }
        }
    }
    Ok(warnings)
}

pub fn parse_poses(text: &str) -> Result<PoseSet, ModelError> {
    Ok(serde_json::from_str(text)?)
}

/// Strict load: pose arity and joint ranges are both enforced.
pub fn load_poses(path: impl AsRef<Path>, chain: &KinematicChain) -> Result<PoseSet, ModelError> {
    let set = parse_poses(&std::fs::read_to_string(path)?)?;
    let warnings = check_poses(&set, chain)?;
    if let Some(w) = warnings.first() {
        let joint = chain.joints.iter().find(|j| j.name == w.joint).expect("joint exists");
        return Err(ModelError::AngleOutOfRange {
            pose: w.pose.clone(),
            joint: w.joint.clone(),
            angle_deg: w.angle_deg,
            min_deg: joint.min_deg,
            max_deg: joint.max_deg,
        });
    }
    Ok(set)
}

/// Lenient load: arity is still enforced, range violations are returned as
/// warnings instead of failing.
pub fn load_poses_lenient(
    path: impl AsRef<Path>,
    chain: &KinematicChain,
) -> Result<(PoseSet, Vec<PoseWarning>), ModelError> {
    let set = parse_poses(&std::fs::read_to_string(path)?)?;
    let warnings = check_poses(&set, chain)?;
    Ok((set, warnings))
}

pub fn poses_to_string(set: &PoseSet) -> String {
    serde_json::to_string_pretty(set).expect("poses serialize")
}

const NICO_RIGHT_ARM_JSON: &str = include_str!("../models/nico_right_arm.json");
const NICO_POSES_JSON: &str = include_str!("../models/nico_poses.json");

/// The bundled NICO right-arm chain: 7 joints driving 24 transform
/// primitives, torso origin, x behind the robot, y to its right, z up,
/// lengths in centimetres.
pub fn nico_right_arm() -> KinematicChain {
    parse_model(NICO_RIGHT_ARM_JSON).expect("bundled model is valid")
}

/// The bundled synthetic pose set: `start` (raised arm) and `touch_1` ..
/// `touch_7` whose fingertip positions lie on the vertical plane used as
/// the touchscreen in the evaluation runs.
pub fn nico_poses() -> PoseSet {
    serde_json::from_str(NICO_POSES_JSON).expect("bundled poses are valid")
}

/// Raw JSON of the bundled model (for tooling that wants to re-export it).
pub fn nico_right_arm_json() -> &'static str {
    NICO_RIGHT_ARM_JSON
}

pub fn nico_poses_json() -> &'static str {
    NICO_POSES_JSON
}
