//! Trajectory quality metrics: distance from the nominal line, pointing
//! deviation against the goal vectors, surface pointing error from a
//! sliding linear fit, start-point variation across runs, and joint-space
//! fluency. All metrics are pure functions of exported trajectory data, so
//! anything written to CSV can be re-scored without rerunning a solver.
//!
//! Lengths come in as centimetres; reports convert to millimetres where the
//! metric is conventionally quoted that way.

use std::fmt;

use nalgebra::{Matrix3, Vector3};

use crate::kinematics::EffectorState;

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    CoincidentEndpoints,
    ZeroVector { step: usize },
    NotEnoughSteps { have: usize, need: usize },
    NotEnoughRuns,
    BadSurface(&'static str),
    Empty,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::CoincidentEndpoints => write!(f, "line endpoints coincide"),
            EvalError::ZeroVector { step } => write!(f, "zero-length vector at step {step}"),
            EvalError::NotEnoughSteps { have, need } => {
                write!(f, "need at least {need} steps, have {have}")
            }
            EvalError::NotEnoughRuns => write!(f, "need at least 2 runs sharing a nominal start"),
            EvalError::BadSurface(what) => write!(f, "invalid surface: {what}"),
            EvalError::Empty => write!(f, "no data"),
        }
    }
}

impl std::error::Error for EvalError {}

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub std: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Result<Stats, EvalError> {
        if values.is_empty() {
            return Err(EvalError::Empty);
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64;
        Ok(Stats { mean, std: var.sqrt() })
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> Vector3<f64> {
    Vector3::new(a[0] - b[0], a[1] - b[1], a[2] - b[2])
}

/// Perpendicular distance of each end-effector position from the infinite
/// line through `p_start` and `p_end`, in millimetres. Symmetric in the two
/// endpoints.
pub fn distance_from_line(
    states: &[EffectorState],
    p_start: [f64; 3],
    p_end: [f64; 3],
) -> Result<(Vec<f64>, Stats), EvalError> {
    let axis = sub(p_end, p_start);
    let len = axis.norm();
    if len < 1e-12 {
        return Err(EvalError::CoincidentEndpoints);
    }
    let axis = axis / len;
    let per_step: Vec<f64> = states
        .iter()
        .map(|s| {
            let r = sub(s.position, p_start);
            (r - axis * r.dot(&axis)).norm() * 10.0
        })
        .collect();
    let stats = Stats::of(&per_step)?;
    Ok((per_step, stats))
}

/// Per-step and aggregate pointing deviation.
#[derive(Debug, Clone)]
pub struct PointingDeviation {
    /// Angle in degrees between direction `i` and goal vector `i`, for the
    /// `n` steps that have a goal vector.
    pub per_step_deg: Vec<f64>,
    /// Over all steps.
    pub all: Stats,
    /// Over steps `i ≥ 10`, excluding the starting phase where the arm is
    /// still turning into the motion; `None` when the trajectory is too
    /// short for the cutoff.
    pub settled: Option<Stats>,
}

/// Cutoff step for the settled variant of the pointing statistics.
pub const SETTLED_FROM_STEP: usize = 10;

/// Angle between each pose's pointing direction and its goal vector.
/// Invariant under positive rescaling of either vector.
pub fn pointing_deviation(
    states: &[EffectorState],
    goal_vectors: &[[f64; 3]],
) -> Result<PointingDeviation, EvalError> {
    if states.len() < goal_vectors.len() {
        return Err(EvalError::NotEnoughSteps { have: states.len(), need: goal_vectors.len() });
    }
    let mut per_step_deg = Vec::with_capacity(goal_vectors.len());
    for (i, (state, vg)) in states.iter().zip(goal_vectors).enumerate() {
        let d = Vector3::from(state.direction);
        let g = Vector3::from(*vg);
        let dn = d.norm();
        let gn = g.norm();
        if dn < 1e-12 || gn < 1e-12 {
            return Err(EvalError::ZeroVector { step: i });
        }
        let cos = (d.dot(&g) / (dn * gn)).clamp(-1.0, 1.0);
        per_step_deg.push(cos.acos().to_degrees());
    }
    let all = Stats::of(&per_step_deg)?;
    let settled = if per_step_deg.len() > SETTLED_FROM_STEP {
        Some(Stats::of(&per_step_deg[SETTLED_FROM_STEP..])?)
    } else {
        None
    };
    Ok(PointingDeviation { per_step_deg, all, settled })
}

/// The touch surface: a plane and the intended touch point on it.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub point_on_plane: [f64; 3],
    /// Unit normal.
    pub normal: [f64; 3],
    /// Touch target, on the plane.
    pub target: [f64; 3],
}

impl SurfaceSpec {
    /// Normalizes the normal and checks that the target lies on the plane.
    pub fn new(point_on_plane: [f64; 3], normal: [f64; 3], target: [f64; 3]) -> Result<Self, EvalError> {
        let n = Vector3::from(normal);
        let len = n.norm();
        if len < 1e-12 {
            return Err(EvalError::BadSurface("zero normal"));
        }
        let n = n / len;
        let off = sub(target, point_on_plane).dot(&n).abs();
        if off > 1e-9 {
            return Err(EvalError::BadSurface("target point is not on the plane"));
        }
        Ok(SurfaceSpec {
            point_on_plane,
            normal: [n.x, n.y, n.z],
            target,
        })
    }
}

/// One step of the surface pointing-error curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingErrorStep {
    pub step: usize,
    /// Distance on the surface between the fitted-line intersection and the
    /// touch target, in centimetres (absolute value; no sign is defined).
    pub error_cm: f64,
    /// False when the fitted line was near-parallel to the surface (or the
    /// window was degenerate) and no intersection error is meaningful.
    pub reliable: bool,
}

/// Sliding linear fit of the last `window` end-effector positions,
/// intersected with the touch surface; the error is the distance from the
/// intersection to the touch target. Near-parallel fits are flagged
/// unreliable rather than failing. Errors only if no step yields a reliable
/// fit.
pub fn pointing_error_fit(
    states: &[EffectorState],
    surface: &SurfaceSpec,
    window: usize,
) -> Result<Vec<PointingErrorStep>, EvalError> {
    if window < 2 || states.len() < window {
        return Err(EvalError::NotEnoughSteps { have: states.len(), need: window.max(2) });
    }
    let normal = Vector3::from(surface.normal);
    let anchor = Vector3::from(surface.point_on_plane);
    let target = Vector3::from(surface.target);
    let mut out = Vec::with_capacity(states.len() - window + 1);
    for i in (window - 1)..states.len() {
        let pts: Vec<Vector3<f64>> = states[i + 1 - window..=i]
            .iter()
            .map(|s| Vector3::from(s.position))
            .collect();
        let centroid = pts.iter().sum::<Vector3<f64>>() / window as f64;
        let mut scatter = Matrix3::zeros();
        for p in &pts {
            let d = p - centroid;
            scatter += d * d.transpose();
        }
        let eigen = scatter.symmetric_eigen();
        let (mut best, mut best_val) = (0, f64::NEG_INFINITY);
        for k in 0..3 {
            if eigen.eigenvalues[k] > best_val {
                best_val = eigen.eigenvalues[k];
                best = k;
            }
        }
        let dir = eigen.eigenvectors.column(best).into_owned();
        let denom = dir.dot(&normal);
        // degenerate window (all points equal) or fit parallel to surface
        let reliable = best_val > 1e-18 && denom.abs() > 1e-9;
        let error_cm = if reliable {
            let t = (anchor - centroid).dot(&normal) / denom;
            let hit = centroid + dir * t;
            (hit - target).norm()
        } else {
            f64::NAN
        };
        out.push(PointingErrorStep { step: i, error_cm, reliable });
    }
    if out.iter().all(|s| !s.reliable) {
        return Err(EvalError::BadSurface("fit is parallel to the surface at every step"));
    }
    Ok(out)
}

/// Largest pairwise distance among the first positions of the runs, in
/// millimetres. Needs at least two runs.
pub fn start_point_variation(start_points: &[[f64; 3]]) -> Result<f64, EvalError> {
    if start_points.len() < 2 {
        return Err(EvalError::NotEnoughRuns);
    }
    let mut max = 0.0f64;
    for (i, a) in start_points.iter().enumerate() {
        for b in &start_points[i + 1..] {
            max = max.max(sub(*a, *b).norm());
        }
    }
    Ok(max * 10.0)
}

/// Mean squared consecutive-pose difference over `n·m` entries — the same
/// quantity the optimizer's smoothness term scores, recomputed from plain
/// pose data.
pub fn fluency(poses_deg: &[Vec<f64>]) -> Result<f64, EvalError> {
    if poses_deg.len() < 2 {
        return Err(EvalError::NotEnoughSteps { have: poses_deg.len(), need: 2 });
    }
    let n = poses_deg.len() - 1;
    let m = poses_deg[0].len();
    if m == 0 {
        return Err(EvalError::Empty);
    }
    let sum: f64 = poses_deg
        .windows(2)
        .flat_map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (b - a) * (b - a)))
        .sum();
    Ok(sum / (n as f64 * m as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(position: [f64; 3], direction: [f64; 3]) -> EffectorState {
        EffectorState { position, direction, joint_points: Vec::new() }
    }

    #[test]
    fn points_on_the_line_have_zero_distance() {
        let states: Vec<_> = (0..5)
            .map(|i| state([i as f64, 0.0, 0.0], [0.0, 0.0, 1.0]))
            .collect();
        let (per_step, stats) =
            distance_from_line(&states, [0.0, 0.0, 0.0], [4.0, 0.0, 0.0]).unwrap();
        assert!(per_step.iter().all(|d| *d < 1e-12));
        assert_eq!(stats.mean, 0.0);
        assert_eq!(stats.std, 0.0);
    }

    #[test]
    fn unit_offset_in_cm_reads_ten_mm() {
        let states = vec![state([0.0, 1.0, 0.0], [0.0, 0.0, 1.0])];
        let (per_step, _) = distance_from_line(&states, [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert!((per_step[0] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn line_distance_is_symmetric_in_endpoints() {
        let states: Vec<_> = [[0.3, 1.2, -0.5], [2.0, -0.4, 0.9], [5.0, 2.0, 2.0]]
            .into_iter()
            .map(|p| state(p, [0.0, 0.0, 1.0]))
            .collect();
        let a = distance_from_line(&states, [0.0, 0.0, 0.0], [4.0, 1.0, 2.0]).unwrap().0;
        let b = distance_from_line(&states, [4.0, 1.0, 2.0], [0.0, 0.0, 0.0]).unwrap().0;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn coincident_endpoints_rejected() {
        let states = vec![state([0.0; 3], [0.0, 0.0, 1.0])];
        assert_eq!(
            distance_from_line(&states, [1.0, 1.0, 1.0], [1.0, 1.0, 1.0]),
            Err(EvalError::CoincidentEndpoints)
        );
    }

    #[test]
    fn parallel_and_orthogonal_deviations() {
        let states = vec![
            state([0.0; 3], [0.0, 0.0, 2.0]),
            state([0.0; 3], [1.0, 0.0, 0.0]),
        ];
        let goal = [[0.0, 0.0, 0.5], [0.0, 0.0, 1.0]];
        let dev = pointing_deviation(&states, &goal).unwrap();
        assert!(dev.per_step_deg[0].abs() < 1e-9, "parallel should be 0°");
        assert!((dev.per_step_deg[1] - 90.0).abs() < 1e-9, "orthogonal should be 90°");
    }

    #[test]
    fn deviation_invariant_under_positive_rescaling() {
        let d = [0.3, -0.8, 0.52];
        let g = [-0.1, 0.4, 0.91];
        let base = pointing_deviation(&[state([0.0; 3], d)], &[g]).unwrap().per_step_deg[0];
        let scaled_dir = [d[0] * 7.0, d[1] * 7.0, d[2] * 7.0];
        let scaled_goal = [g[0] * 0.01, g[1] * 0.01, g[2] * 0.01];
        let got = pointing_deviation(&[state([0.0; 3], scaled_dir)], &[scaled_goal])
            .unwrap()
            .per_step_deg[0];
        assert!((base - got).abs() < 1e-9);
    }

    #[test]
    fn zero_vector_rejected() {
        let states = vec![state([0.0; 3], [0.0, 0.0, 0.0])];
        assert!(matches!(
            pointing_deviation(&states, &[[0.0, 0.0, 1.0]]),
            Err(EvalError::ZeroVector { step: 0 })
        ));
    }

    #[test]
    fn collinear_approach_has_vanishing_surface_error() {
        // positions march straight at the target
        let target = [10.0, 0.0, 0.0];
        let states: Vec<_> = (0..20)
            .map(|i| state([i as f64 * 0.5, 0.0, 0.0], [1.0, 0.0, 0.0]))
            .collect();
        let surface = SurfaceSpec::new(target, [1.0, 0.0, 0.0], target).unwrap();
        let errors = pointing_error_fit(&states, &surface, 10).unwrap();
        for e in &errors {
            assert!(e.reliable);
            assert!(e.error_cm < 1e-9, "step {} error {}", e.step, e.error_cm);
        }
    }

    #[test]
    fn fit_parallel_to_surface_is_flagged() {
        // motion within x = 0, surface at x = 10: some windows are exactly
        // parallel
        let target = [10.0, 0.0, 0.0];
        let mut states: Vec<_> = (0..12)
            .map(|i| state([0.0, i as f64, 0.0], [0.0, 1.0, 0.0]))
            .collect();
        // and one final step that turns toward the plane
        states.push(state([1.0, 12.0, 0.0], [1.0, 0.0, 0.0]));
        let surface = SurfaceSpec::new(target, [1.0, 0.0, 0.0], target).unwrap();
        let errors = pointing_error_fit(&states, &surface, 10).unwrap();
        assert!(errors.iter().any(|e| !e.reliable));
        assert!(errors.iter().any(|e| e.reliable));
    }

    #[test]
    fn surface_requires_target_on_plane() {
        assert!(SurfaceSpec::new([0.0; 3], [1.0, 0.0, 0.0], [0.1, 0.0, 0.0]).is_err());
        assert!(SurfaceSpec::new([0.0; 3], [0.0; 3], [0.0; 3]).is_err());
        let s = SurfaceSpec::new([1.0, 2.0, 3.0], [0.0, 0.0, 4.0], [5.0, -1.0, 3.0]).unwrap();
        assert_eq!(s.normal, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn start_variation_examples() {
        assert!(start_point_variation(&[[1.0, 2.0, 3.0]]).is_err());
        let same = start_point_variation(&[[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(same, 0.0);
        let half_cm = start_point_variation(&[[0.0, 0.0, 0.0], [0.5, 0.0, 0.0]]).unwrap();
        assert!((half_cm - 5.0).abs() < 1e-12);
    }

    #[test]
    fn fluency_matches_hand_computation() {
        let poses = vec![vec![0.0, 0.0], vec![1.0, 2.0], vec![3.0, 2.0]];
        // ((1+4) + (4+0)) / (2*2)
        assert!((fluency(&poses).unwrap() - 9.0 / 4.0).abs() < 1e-12);
        assert_eq!(fluency(&vec![vec![1.0, 1.0]; 5]).unwrap(), 0.0);
    }
}
