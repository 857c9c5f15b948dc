//! CSV export and re-import of trajectories, loss traces, velocities, and
//! goal paths.
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! re-parsing reproduces the exact bit pattern and identical runs produce
//! byte-identical files.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use crate::kinematics::EffectorState;
use crate::optimizer::{LossBreakdown, TrajectorySolution};
use crate::pathgen::GoalPath;

#[derive(Debug)]
pub enum ExportError {
    Io(std::io::Error),
    Format { line: usize, what: String },
}

impl fmt::Display for ExportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExportError::Io(e) => write!(f, "io error: {e}"),
            ExportError::Format { line, what } => write!(f, "csv line {line}: {what}"),
        }
    }
}

impl std::error::Error for ExportError {}

impl From<std::io::Error> for ExportError {
    fn from(e: std::io::Error) -> Self {
        ExportError::Io(e)
    }
}

/// `step,theta_0..theta_{m−1},x,y,z,dx,dy,dz` — one row per pose.
pub fn trajectory_csv(solution: &TrajectorySolution) -> String {
    let m = solution.poses_deg.first().map_or(0, Vec::len);
    let mut out = String::from("step");
    for j in 0..m {
        let _ = write!(out, ",theta_{j}");
    }
    out.push_str(",x,y,z,dx,dy,dz\n");
    for (i, (pose, state)) in solution.poses_deg.iter().zip(&solution.states).enumerate() {
        let _ = write!(out, "{i}");
        for angle in pose {
            let _ = write!(out, ",{angle}");
        }
        let p = state.position;
        let d = state.direction;
        let _ = writeln!(out, ",{},{},{},{},{},{}", p[0], p[1], p[2], d[0], d[1], d[2]);
    }
    out
}

/// `iteration,L,L0..L6` — one row per optimizer iteration.
pub fn loss_csv(trace: &[LossBreakdown]) -> String {
    let mut out = String::from("iteration,L,L0,L1,L2,L3,L4,L5,L6\n");
    for (i, b) in trace.iter().enumerate() {
        let _ = write!(out, "{i},{}", b.total);
        for t in b.terms {
            let _ = write!(out, ",{t}");
        }
        out.push('\n');
    }
    out
}

/// `step,omega_0..omega_{m−1}` — per-segment joint velocities.
pub fn velocity_csv(velocities_deg_s: &[Vec<f64>]) -> String {
    let m = velocities_deg_s.first().map_or(0, Vec::len);
    let mut out = String::from("step");
    for j in 0..m {
        let _ = write!(out, ",omega_{j}");
    }
    out.push('\n');
    for (i, row) in velocities_deg_s.iter().enumerate() {
        let _ = write!(out, "{i}");
        for w in row {
            let _ = write!(out, ",{w}");
        }
        out.push('\n');
    }
    out
}

/// `step,gx,gy,gz,vx,vy,vz` — the goal path both methods were given; the
/// final point has no goal vector and leaves those fields empty.
pub fn goal_csv(goal: &GoalPath) -> String {
    let mut out = String::from("step,gx,gy,gz,vx,vy,vz\n");
    for (i, p) in goal.points.iter().enumerate() {
        let _ = write!(out, "{i},{},{},{}", p[0], p[1], p[2]);
        if let Some(v) = goal.vectors.get(i) {
            let _ = writeln!(out, ",{},{},{}", v[0], v[1], v[2]);
        } else {
            out.push_str(",,,\n");
        }
    }
    out
}

fn parse_f64(field: &str, line: usize) -> Result<f64, ExportError> {
    field.trim().parse().map_err(|_| ExportError::Format {
        line,
        what: format!("bad number {field:?}"),
    })
}

/// Reads a trajectory CSV back into poses and effector states (positions
/// and directions; marked joint points are not exported).
pub fn parse_trajectory_csv(text: &str) -> Result<(Vec<Vec<f64>>, Vec<EffectorState>), ExportError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ExportError::Format { line: 1, what: "empty file".into() })?;
    let cols: Vec<&str> = header.split(',').collect();
    let m = cols.iter().filter(|c| c.starts_with("theta_")).count();
    if cols.len() != m + 7 {
        return Err(ExportError::Format { line: 1, what: format!("unexpected header {header:?}") });
    }
    let mut poses = Vec::new();
    let mut states = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != m + 7 {
            return Err(ExportError::Format {
                line: idx + 1,
                what: format!("expected {} fields, got {}", m + 7, fields.len()),
            });
        }
        let pose: Vec<f64> = fields[1..1 + m]
            .iter()
            .map(|f| parse_f64(f, idx + 1))
            .collect::<Result<_, _>>()?;
        let mut rest = [0.0; 6];
        for (k, f) in fields[1 + m..].iter().enumerate() {
            rest[k] = parse_f64(f, idx + 1)?;
        }
        poses.push(pose);
        states.push(EffectorState {
            position: [rest[0], rest[1], rest[2]],
            direction: [rest[3], rest[4], rest[5]],
            joint_points: Vec::new(),
        });
    }
    Ok((poses, states))
}

pub fn parse_goal_csv(text: &str) -> Result<GoalPath, ExportError> {
    let mut points = Vec::new();
    let mut vectors = Vec::new();
    for (idx, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(ExportError::Format {
                line: idx + 1,
                what: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        points.push([
            parse_f64(fields[1], idx + 1)?,
            parse_f64(fields[2], idx + 1)?,
            parse_f64(fields[3], idx + 1)?,
        ]);
        if !fields[4].trim().is_empty() {
            vectors.push([
                parse_f64(fields[4], idx + 1)?,
                parse_f64(fields[5], idx + 1)?,
                parse_f64(fields[6], idx + 1)?,
            ]);
        }
    }
    Ok(GoalPath { points, vectors })
}

pub fn parse_loss_csv(text: &str) -> Result<Vec<LossBreakdown>, ExportError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(ExportError::Format {
                line: idx + 1,
                what: format!("expected 9 fields, got {}", fields.len()),
            });
        }
        let total = parse_f64(fields[1], idx + 1)?;
        let mut terms = [0.0; 7];
        for (k, f) in fields[2..].iter().enumerate() {
            terms[k] = parse_f64(f, idx + 1)?;
        }
        out.push(LossBreakdown { total, terms });
    }
    Ok(out)
}

pub fn write_file(path: impl AsRef<Path>, content: &str) -> Result<(), ExportError> {
    Ok(std::fs::write(path, content)?)
}
