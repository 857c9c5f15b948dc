//! Goal-path construction: the discretized target positions and pointing
//! vectors the optimizer trains against.
//!
//! A path is `n+1` goal points and `n` goal vectors. For a straight line
//! the points are the affine interpolation of the endpoints and every
//! vector equals `(end − start)/n`. Planar shapes (letters) are resampled
//! by arc length and projected onto a drawing plane; there all goal vectors
//! are the plane normal, so the arm points at the plane while tracing.
//! Splines pass through user control points and take pointwise difference
//! vectors.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum PathError {
    ZeroSegments,
    CoincidentEndpoints,
    DegenerateShape(&'static str),
    ZeroNormal,
    BadDuration { ms: f64 },
    RaggedTrajectory,
    Io(String),
    Parse(String),
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathError::ZeroSegments => write!(f, "segment count n must be >= 1"),
            PathError::CoincidentEndpoints => write!(f, "start and end points coincide"),
            PathError::DegenerateShape(what) => write!(f, "degenerate shape: {what}"),
            PathError::ZeroNormal => write!(f, "plane normal must be nonzero"),
            PathError::BadDuration { ms } => write!(f, "duration must be positive, got {ms} ms"),
            PathError::RaggedTrajectory => write!(f, "trajectory rows differ in length"),
            PathError::Io(e) => write!(f, "io error: {e}"),
            PathError::Parse(e) => write!(f, "shape parse error: {e}"),
        }
    }
}

impl std::error::Error for PathError {}

/// `n+1` goal points (length units, cm for the shipped models) and `n`
/// goal direction vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct GoalPath {
    pub points: Vec<[f64; 3]>,
    pub vectors: Vec<[f64; 3]>,
}

impl GoalPath {
    pub fn segments(&self) -> usize {
        self.vectors.len()
    }
}

/// Requested trajectory shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
    /// Straight line between the FK images of the anchor poses.
    Line,
    /// A 2-D polyline projected onto a drawing plane (anchor supplied at
    /// run time, normal here). Letters ship in this form, in a unit box.
    PolylineProjected {
        points_2d: Vec<[f64; 2]>,
        #[serde(default = "default_normal")]
        normal: [f64; 3],
    },
    /// Natural cubic through the anchor points and these interior control
    /// points, resampled by arc length.
    Spline { control_points: Vec<[f64; 3]> },
}

fn default_normal() -> [f64; 3] {
    // "frontal": the x axis points behind the robot, so the plane facing an
    // observer in front has normal -x.
    [-1.0, 0.0, 0.0]
}

impl ShapeSpec {
    pub fn parse(text: &str) -> Result<Self, PathError> {
        serde_json::from_str(text).map_err(|e| PathError::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PathError> {
        let text = std::fs::read_to_string(path).map_err(|e| PathError::Io(e.to_string()))?;
        Self::parse(&text)
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("shape serializes")
    }

    /// Scales a projected polyline by `factor` (e.g. a unit-box letter to
    /// centimetres). Lines and splines are in absolute coordinates already
    /// and pass through unchanged.
    pub fn scaled(&self, factor: f64) -> ShapeSpec {
        match self {
            ShapeSpec::PolylineProjected { points_2d, normal } => ShapeSpec::PolylineProjected {
                points_2d: points_2d
                    .iter()
                    .map(|p| [p[0] * factor, p[1] * factor])
                    .collect(),
                normal: *normal,
            },
            other => other.clone(),
        }
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Straight line from `p_start` to `p_end` in `n` segments: point `i` is
/// the affine interpolation at `i/n`, the endpoints are reproduced exactly,
/// and every goal vector is `(p_end − p_start)/n`.
pub fn goal_points_line(p_start: [f64; 3], p_end: [f64; 3], n: usize) -> Result<GoalPath, PathError> {
    if n == 0 {
        return Err(PathError::ZeroSegments);
    }
    let d = sub(p_end, p_start);
    if norm(d) < 1e-12 {
        return Err(PathError::CoincidentEndpoints);
    }
    let mut points = Vec::with_capacity(n + 1);
    points.push(p_start);
    for i in 1..n {
        let t = i as f64 / n as f64;
        points.push([
            p_start[0] + t * d[0],
            p_start[1] + t * d[1],
            p_start[2] + t * d[2],
        ]);
    }
    points.push(p_end);
    let step = [d[0] / n as f64, d[1] / n as f64, d[2] / n as f64];
    Ok(GoalPath {
        points,
        vectors: vec![step; n],
    })
}

/// Orthonormal in-plane basis (u right, v up as seen by an observer the
/// normal points at).
pub fn plane_basis(normal: [f64; 3]) -> Result<([f64; 3], [f64; 3], [f64; 3]), PathError> {
    let len = norm(normal);
    if len < 1e-12 {
        return Err(PathError::ZeroNormal);
    }
    let n = [normal[0] / len, normal[1] / len, normal[2] / len];
    // project world-up into the plane; fall back to world-x near the poles
    let pick = |axis: [f64; 3]| {
        let dot = axis[0] * n[0] + axis[1] * n[1] + axis[2] * n[2];
        let v = [axis[0] - dot * n[0], axis[1] - dot * n[1], axis[2] - dot * n[2]];
        let l = norm(v);
        (l > 1e-6).then(|| [v[0] / l, v[1] / l, v[2] / l])
    };
    let v = pick([0.0, 0.0, 1.0])
        .or_else(|| pick([1.0, 0.0, 0.0]))
        .expect("some axis is independent of the normal");
    let u = [
        v[1] * n[2] - v[2] * n[1],
        v[2] * n[0] - v[0] * n[2],
        v[0] * n[1] - v[1] * n[0],
    ];
    Ok((u, v, n))
}

fn resample_by_arc_length(points: &[[f64; 2]], n: usize) -> Result<Vec<[f64; 2]>, PathError> {
    if points.len() < 2 {
        return Err(PathError::DegenerateShape("polyline needs at least 2 points"));
    }
    let mut cumulative = Vec::with_capacity(points.len());
    cumulative.push(0.0);
    for w in points.windows(2) {
        let dx = w[1][0] - w[0][0];
        let dy = w[1][1] - w[0][1];
        cumulative.push(cumulative.last().unwrap() + (dx * dx + dy * dy).sqrt());
    }
    let total = *cumulative.last().unwrap();
    if total <= 0.0 {
        return Err(PathError::DegenerateShape("polyline has zero length"));
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut seg = 0;
    for k in 0..=n {
        let target = total * k as f64 / n as f64;
        while seg + 2 < cumulative.len() && cumulative[seg + 1] < target {
            seg += 1;
        }
        let span = cumulative[seg + 1] - cumulative[seg];
        let t = if span > 0.0 { (target - cumulative[seg]) / span } else { 0.0 };
        let (a, b) = (points[seg], points[seg + 1]);
        out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
    }
    Ok(out)
}

/// Resamples a 2-D polyline into `n` equal arc-length segments and maps it
/// onto the plane through `anchor` with the shape's normal; the polyline's
/// bounding-box centre lands on the anchor. All goal vectors are the unit
/// plane normal.
pub fn goal_points_polyline(
    points_2d: &[[f64; 2]],
    normal: [f64; 3],
    anchor: [f64; 3],
    scale: f64,
    n: usize,
) -> Result<GoalPath, PathError> {
    if n == 0 {
        return Err(PathError::ZeroSegments);
    }
    let samples = resample_by_arc_length(points_2d, n)?;
    let (u, v, unit_normal) = plane_basis(normal)?;
    let (mut min, mut max) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points_2d {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    let centre = [(min[0] + max[0]) / 2.0, (min[1] + max[1]) / 2.0];
    let points = samples
        .iter()
        .map(|p| {
            let du = (p[0] - centre[0]) * scale;
            let dv = (p[1] - centre[1]) * scale;
            [
                anchor[0] + du * u[0] + dv * v[0],
                anchor[1] + du * u[1] + dv * v[1],
                anchor[2] + du * u[2] + dv * v[2],
            ]
        })
        .collect();
    Ok(GoalPath {
        points,
        vectors: vec![unit_normal; n],
    })
}

/// Natural cubic spline through `through` (at least two points), chord-
/// length parameterized, resampled into `n` equal arc-length segments.
/// Goal vectors are the pointwise differences of consecutive goal points.
pub fn goal_points_spline(through: &[[f64; 3]], n: usize) -> Result<GoalPath, PathError> {
    if n == 0 {
        return Err(PathError::ZeroSegments);
    }
    if through.len() < 2 {
        return Err(PathError::DegenerateShape("spline needs at least 2 points"));
    }
    // chord-length parameter
    let mut ts = vec![0.0];
    for w in through.windows(2) {
        let d = norm(sub(w[1], w[0]));
        if d <= 0.0 {
            return Err(PathError::DegenerateShape("repeated spline point"));
        }
        ts.push(ts.last().unwrap() + d);
    }
    let spline: Vec<NaturalCubic> = (0..3)
        .map(|k| {
            let ys: Vec<f64> = through.iter().map(|p| p[k]).collect();
            NaturalCubic::fit(&ts, &ys)
        })
        .collect();
    // dense sampling for arc length, then walk to equal-length stations
    let dense = 64 * (through.len() - 1).max(8);
    let t_max = *ts.last().unwrap();
    let mut dense_pts = Vec::with_capacity(dense + 1);
    for i in 0..=dense {
        let t = t_max * i as f64 / dense as f64;
        dense_pts.push([spline[0].eval(t), spline[1].eval(t), spline[2].eval(t)]);
    }
    let mut cumulative = vec![0.0];
    for w in dense_pts.windows(2) {
        cumulative.push(cumulative.last().unwrap() + norm(sub(w[1], w[0])));
    }
    let total = *cumulative.last().unwrap();
    let mut points = Vec::with_capacity(n + 1);
    let mut seg = 0;
    for k in 0..=n {
        let target = total * k as f64 / n as f64;
        while seg + 2 < cumulative.len() && cumulative[seg + 1] < target {
            seg += 1;
        }
        let span = cumulative[seg + 1] - cumulative[seg];
        let t = if span > 0.0 { (target - cumulative[seg]) / span } else { 0.0 };
        let (a, b) = (dense_pts[seg], dense_pts[seg + 1]);
        points.push([
            a[0] + t * (b[0] - a[0]),
            a[1] + t * (b[1] - a[1]),
            a[2] + t * (b[2] - a[2]),
        ]);
    }
    // pin the endpoints exactly
    points[0] = through[0];
    points[n] = *through.last().unwrap();
    let vectors = points.windows(2).map(|w| sub(w[1], w[0])).collect();
    Ok(GoalPath { points, vectors })
}

/// Per-segment constant joint speeds: `ω[i][j] = (θ[i+1][j] − θ[i][j]) /
/// (T/n)` with `T/n` converted from milliseconds to seconds. Degrees per
/// second for a trajectory in degrees.
pub fn angular_velocities(trajectory_deg: &[Vec<f64>], duration_ms: f64) -> Result<Vec<Vec<f64>>, PathError> {
    if duration_ms <= 0.0 {
        return Err(PathError::BadDuration { ms: duration_ms });
    }
    let n = trajectory_deg.len().saturating_sub(1);
    if n == 0 {
        return Err(PathError::ZeroSegments);
    }
    let m = trajectory_deg[0].len();
    if trajectory_deg.iter().any(|row| row.len() != m) {
        return Err(PathError::RaggedTrajectory);
    }
    let segment_s = duration_ms / n as f64 / 1000.0;
    Ok(trajectory_deg
        .windows(2)
        .map(|w| (0..m).map(|j| (w[1][j] - w[0][j]) / segment_s).collect())
        .collect())
}

struct NaturalCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl NaturalCubic {
    /// Standard tridiagonal solve for the second derivatives with natural
    /// (zero-curvature) end conditions.
    fn fit(xs: &[f64], ys: &[f64]) -> Self {
        let n = xs.len();
        let mut second = vec![0.0; n];
        if n > 2 {
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            let mut upper = vec![0.0; n];
            diag[0] = 1.0;
            for i in 1..n - 1 {
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
            }
            diag[n - 1] = 1.0;
            // forward elimination (lower entries mirror upper of prev row)
            for i in 2..n - 1 {
                let w = (xs[i] - xs[i - 1]) / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            for i in (1..n - 1).rev() {
                second[i] = (rhs[i] - upper[i] * second[i + 1]) / diag[i];
            }
        }
        NaturalCubic {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            second,
        }
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let mut i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        if self.xs[i] > x && i > 0 {
            i -= 1;
        }
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h / 6.0
    }
}

/// Bundled letter polylines (unit box, single stroke), keyed by letter.
pub fn bundled_letter(letter: &str) -> Option<ShapeSpec> {
    let text = match letter.to_ascii_uppercase().as_str() {
        "L" => include_str!("../shapes/letter_l.json"),
        "N" => include_str!("../shapes/letter_n.json"),
        "V" => include_str!("../shapes/letter_v.json"),
        "W" => include_str!("../shapes/letter_w.json"),
        "Z" => include_str!("../shapes/letter_z.json"),
        "U" => include_str!("../shapes/letter_u.json"),
        "C" => include_str!("../shapes/letter_c.json"),
        "S" => include_str!("../shapes/letter_s.json"),
        _ => return None,
    };
    Some(ShapeSpec::parse(text).expect("bundled letter is valid"))
}

pub const BUNDLED_LETTERS: [&str; 8] = ["L", "N", "V", "W", "Z", "U", "C", "S"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_midpoint() {
        let path = goal_points_line([0.0, 0.0, 0.0], [10.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(path.points, vec![[0.0, 0.0, 0.0], [5.0, 0.0, 0.0], [10.0, 0.0, 0.0]]);
        assert_eq!(path.vectors, vec![[5.0, 0.0, 0.0]; 2]);
    }

    #[test]
    fn line_endpoints_exact_and_thirds() {
        let p_s = [1.0, 2.0, 3.0];
        let p_e = [4.0, 8.0, 15.0];
        let path = goal_points_line(p_s, p_e, 3).unwrap();
        assert_eq!(path.points[0], p_s);
        assert_eq!(path.points[3], p_e);
        assert_eq!(path.points[1], [2.0, 4.0, 7.0]);
    }

    #[test]
    fn line_rejects_degenerate_input() {
        assert_eq!(
            goal_points_line([1.0, 1.0, 1.0], [1.0, 1.0, 1.0], 5),
            Err(PathError::CoincidentEndpoints)
        );
        assert_eq!(
            goal_points_line([0.0; 3], [1.0, 0.0, 0.0], 0),
            Err(PathError::ZeroSegments)
        );
    }

    #[test]
    fn line_points_sit_on_the_segment() {
        let p_s = [0.3, -2.0, 7.5];
        let p_e = [-4.0, 9.0, 1.25];
        let path = goal_points_line(p_s, p_e, 17).unwrap();
        let d = sub(p_e, p_s);
        for p in &path.points {
            let r = sub(*p, p_s);
            let cross = [
                r[1] * d[2] - r[2] * d[1],
                r[2] * d[0] - r[0] * d[2],
                r[0] * d[1] - r[1] * d[0],
            ];
            assert!(norm(cross) / norm(d) < 1e-12);
        }
    }

    #[test]
    fn vectors_telescope_to_the_endpoint_difference() {
        let p_s = [0.3, -2.0, 7.5];
        let p_e = [-4.0, 9.0, 1.25];
        for path in [
            goal_points_line(p_s, p_e, 50).unwrap(),
            goal_points_spline(&[p_s, [1.0, 3.0, 4.0], p_e], 40).unwrap(),
        ] {
            let mut sum = [0.0; 3];
            for v in &path.vectors {
                for k in 0..3 {
                    sum[k] += v[k];
                }
            }
            let expect = sub(*path.points.last().unwrap(), path.points[0]);
            for k in 0..3 {
                assert!((sum[k] - expect[k]).abs() < 1e-9, "{sum:?} vs {expect:?}");
            }
        }
    }

    #[test]
    fn square_resamples_to_corners() {
        let square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.0, 0.0]];
        let path = goal_points_polyline(&square, [0.0, 0.0, 1.0], [0.0, 0.0, 0.0], 1.0, 4).unwrap();
        // perimeter 4 resampled into 4 segments lands on the corners
        for w in path.points.windows(2) {
            let d = norm(sub(w[1], w[0]));
            assert!((d - 1.0).abs() < 1e-12, "corner step {d}");
        }
        assert_eq!(path.vectors, vec![[0.0, 0.0, 1.0]; 4]);
    }

    #[test]
    fn l_strokes_resample_at_arc_length_thirds() {
        // two strokes of length 2 and 1; n=3 puts breakpoints at s = 1, 2
        let l = [[0.0, 2.0], [0.0, 0.0], [1.0, 0.0]];
        let normal = [0.0, 0.0, 1.0];
        let path = goal_points_polyline(&l, normal, [0.0, 0.0, 0.0], 1.0, 3).unwrap();
        // map 3-D samples back to plane coordinates; bounding-box centre
        // (0.5, 1.0) sits on the anchor
        let (u, v, _) = plane_basis(normal).unwrap();
        let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let undo = |p: [f64; 3]| [dot(p, u) + 0.5, dot(p, v) + 1.0];
        for (got, expect) in path
            .points
            .iter()
            .zip([[0.0, 2.0], [0.0, 1.0], [0.0, 0.0], [1.0, 0.0]])
        {
            let got = undo(*got);
            assert!((got[0] - expect[0]).abs() < 1e-12);
            assert!((got[1] - expect[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn polyline_vectors_are_unit_plane_normal() {
        let l = [[0.0, 2.0], [0.0, 0.0], [1.0, 0.0]];
        let path =
            goal_points_polyline(&l, [-2.0, 0.0, 0.0], [5.0, 1.0, 2.0], 3.0, 11).unwrap();
        for v in &path.vectors {
            assert_eq!(*v, [-1.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn resampling_preserves_arc_length_on_commensurate_grids() {
        // sample counts whose stations land on the corners; incommensurate
        // counts cut corners and lose length by design
        let length = |path: &GoalPath| -> f64 {
            path.points.windows(2).map(|w| norm(sub(w[1], w[0]))).sum()
        };
        let l = [[0.0, 2.0], [0.0, 0.0], [1.0, 0.0]];
        let path = goal_points_polyline(&l, [0.0, 0.0, 1.0], [0.0, 0.0, 0.0], 1.0, 51).unwrap();
        assert!((length(&path) - 3.0).abs() / 3.0 < 1e-3, "L length {}", length(&path));
        let square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.0, 0.0]];
        let path = goal_points_polyline(&square, [0.0, 0.0, 1.0], [0.0, 0.0, 0.0], 1.0, 8).unwrap();
        assert!((length(&path) - 4.0).abs() / 4.0 < 1e-3, "square length {}", length(&path));
    }

    #[test]
    fn zero_length_polyline_rejected() {
        let path = goal_points_polyline(&[[1.0, 1.0], [1.0, 1.0]], [0.0, 0.0, 1.0], [0.0; 3], 1.0, 4);
        assert!(matches!(path, Err(PathError::DegenerateShape(_))));
    }

    #[test]
    fn spline_hits_its_through_points() {
        let through = [[0.0, 0.0, 0.0], [1.0, 2.0, 0.5], [3.0, 1.0, -1.0]];
        let path = goal_points_spline(&through, 30).unwrap();
        assert_eq!(path.points[0], through[0]);
        assert_eq!(path.points[30], through[2]);
        // interior through point is approached closely by some sample
        let closest = path
            .points
            .iter()
            .map(|p| norm(sub(*p, through[1])))
            .fold(f64::INFINITY, f64::min);
        assert!(closest < 0.05, "closest {closest}");
    }

    #[test]
    fn velocities_zero_for_constant_trajectory() {
        let traj = vec![vec![5.0, -3.0]; 4];
        let omega = angular_velocities(&traj, 2000.0).unwrap();
        assert_eq!(omega, vec![vec![0.0, 0.0]; 3]);
    }

    #[test]
    fn linear_ramp_gives_constant_rate() {
        let n = 50;
        let traj: Vec<Vec<f64>> = (0..=n).map(|i| vec![90.0 * i as f64 / n as f64]).collect();
        let omega = angular_velocities(&traj, 2000.0).unwrap();
        for row in &omega {
            assert!((row[0] - 45.0).abs() < 1e-9);
        }
    }

    #[test]
    fn velocities_integrate_back_to_the_final_pose() {
        let traj: Vec<Vec<f64>> = (0..=20)
            .map(|i| vec![(i as f64 * 0.37).sin() * 40.0, (i as f64 * 0.11).cos() * 25.0])
            .collect();
        let duration_ms = 2000.0;
        let omega = angular_velocities(&traj, duration_ms).unwrap();
        let dt = duration_ms / 20.0 / 1000.0;
        let mut pose = traj[0].clone();
        for row in &omega {
            for j in 0..2 {
                pose[j] += row[j] * dt;
            }
        }
        for j in 0..2 {
            assert!((pose[j] - traj[20][j]).abs() < 1e-9);
        }
    }

    #[test]
    fn bundled_letters_parse() {
        for letter in BUNDLED_LETTERS {
            let shape = bundled_letter(letter).unwrap();
            match shape {
                ShapeSpec::PolylineProjected { points_2d, .. } => {
                    assert!(points_2d.len() >= 2, "letter {letter}");
                }
                other => panic!("letter {letter} has unexpected kind {other:?}"),
            }
        }
        assert!(bundled_letter("Q").is_none());
    }

    #[test]
    fn plane_basis_is_orthonormal() {
        for normal in [[-1.0, 0.0, 0.0], [0.3, -0.4, 0.2], [0.0, 0.0, 2.0]] {
            let (u, v, n) = plane_basis(normal).unwrap();
            let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            assert!((norm(u) - 1.0).abs() < 1e-12);
            assert!((norm(v) - 1.0).abs() < 1e-12);
            assert!(dot(u, v).abs() < 1e-12);
            assert!(dot(u, n).abs() < 1e-12);
            assert!(dot(v, n).abs() < 1e-12);
        }
        assert_eq!(plane_basis([0.0; 3]), Err(PathError::ZeroNormal));
    }
}
