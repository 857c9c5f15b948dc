//! Dev tool: designs the bundled start/touch poses and prints them as JSON.
//!
//! Touch poses minimize position error against the screen target and
//! direction error against the line of approach, with an annealed pull
//! toward the start pose so the whole family stays in one IK branch with
//! short joint travel. A damped-least-squares pass then polishes position
//! to ~1e-12.

use armtraj_core::autodiff::{Scalar, Tape};
use armtraj_core::baseline::{ik_step_chain, ChainOrder, IkConfig};
use armtraj_core::kinematics::effector;
use armtraj_core::pathgen::GoalPath;
use armtraj_core::robot_model::nico_right_arm;
use armtraj_core::fk;

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0]*v[0] + v[1]*v[1] + v[2]*v[2]).sqrt();
    [v[0]/n, v[1]/n, v[2]/n]
}
fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] { [a[0]-b[0], a[1]-b[1], a[2]-b[2]] }

fn dir_dev_deg(chain: &armtraj_core::KinematicChain, pose: &[f64], dir: [f64; 3]) -> f64 {
    let s = fk(chain, pose).unwrap();
    let dot = s.direction[0]*dir[0] + s.direction[1]*dir[1] + s.direction[2]*dir[2];
    dot.clamp(-1.0, 1.0).acos().to_degrees()
}

/// Adam on a soft single-pose objective with logit parameterization.
///
/// Besides hitting the target with the right pointing direction, the pose
/// is shaped so the angle-space interpolation from `reference` stays close
/// to the Cartesian chord (small "bow"), which is what makes the
/// whole-trajectory optimization able to follow the line tightly.
fn soft_solve(chain: &armtraj_core::KinematicChain, seed: &[f64], target: [f64; 3], dir: [f64; 3], reference: &[f64], w_bow: f64) -> Vec<f64> {
    let ref_point = fk(chain, reference).unwrap().position;
    let m = chain.dof();
    let mut z: Vec<f64> = seed.iter().zip(&chain.joints).map(|(&a, j)| {
        let r = ((a - j.min_deg) / j.range_deg()).clamp(1e-4, 1.0 - 1e-4);
        (r / (1.0 - r)).ln()
    }).collect();
    let (mut mom, mut vel) = (vec![0.0; m], vec![0.0; m]);
    let mut lr = 0.05;
    let mut w_ref = 0.02;
    let mut tape = Tape::new();
    for t in 1..=6000 {
        if t % 600 == 0 { w_ref *= 0.4; lr *= 0.7; }
        tape.reset();
        let zs: Vec<Scalar> = z.iter().map(|&v| tape.var(v)).collect();
        let angles: Vec<Scalar> = zs.iter().zip(&chain.joints)
            .map(|(zv, j)| Scalar::constant(j.min_deg) + zv.sigmoid() * j.range_deg())
            .collect();
        let (pos, d) = effector(chain, &angles);
        let mut f = Scalar::constant(0.0);
        for k in 0..3 {
            f = f + (pos[k] - target[k]).square() * 100.0;
            f = f + (d[k] - dir[k]).square() * 50.0;
        }
        for j in 0..m {
            f = f + (angles[j] - reference[j]).square() * w_ref;
        }
        let chord_dir = unit(sub(target, ref_point));
        for mix in [0.25, 0.5, 0.75] {
            let blend: Vec<Scalar> = angles.iter().zip(reference)
                .map(|(a, &r)| *a * mix + Scalar::constant(r * (1.0 - mix)))
                .collect();
            let (bp, _) = effector(chain, &blend);
            // perpendicular deviation only: along-chord lag is retimed away
            // by the trajectory optimizer and should not be penalized here
            let e = [bp[0] - ref_point[0], bp[1] - ref_point[1], bp[2] - ref_point[2]];
            let along = e[0] * chord_dir[0] + e[1] * chord_dir[1] + e[2] * chord_dir[2];
            let perp2 = e[0].square() + e[1].square() + e[2].square() - along.square();
            f = f + perp2 * w_bow;
        }
        let grads = tape.backward(f).unwrap();
        for j in 0..m {
            let g = grads.wrt(zs[j]);
            mom[j] = 0.9 * mom[j] + 0.1 * g;
            vel[j] = 0.999 * vel[j] + 0.001 * g * g;
            let mh = mom[j] / (1.0 - 0.9f64.powi(t));
            let vh = vel[j] / (1.0 - 0.999f64.powi(t));
            z[j] -= lr * mh / (vh.sqrt() + 1e-8);
        }
    }
    z.iter().zip(&chain.joints)
        .map(|(&v, j)| j.min_deg + armtraj_core::autodiff::sigmoid(v) * j.range_deg())
        .collect()
}

fn polish_position(chain: &armtraj_core::KinematicChain, pose: &[f64], target: [f64; 3]) -> Vec<f64> {
    let goal = GoalPath { points: vec![target], vectors: vec![[0.0, 0.0, 1.0]] };
    let cfg = IkConfig { position_tol: 1e-12, damping: 0.02, max_inner_iterations: 4000,
        orientation_weight: 0.0, max_joint_step_deg: 1.0 };
    let r = ik_step_chain(chain, pose, &goal, ChainOrder::Forward, &cfg).unwrap();
    assert!(r.points[0].position_error < 1e-10, "polish failed: {:?}", r.points[0]);
    r.solution.poses_deg[0].clone()
}

fn main() {
    // design against a wide box; the shipped ranges are fitted afterwards
    let mut chain = nico_right_arm();
    for j in &mut chain.joints {
        j.min_deg = -200.0;
        j.max_deg = 200.0;
    }
    let start_target = [-6.0, -8.5, 27.5];
    let screen_x = -18.0;
    let touch_yz: [(f64, f64); 7] = [
        (-9.4, 27.2), (-6.4, 27.4),
        (-9.8, 25.0), (-7.8, 26.1), (-6.0, 24.8),
        (-8.7, 23.1), (-6.4, 23.4),
    ];
    let mean_touch = [screen_x, -8.2, 25.0];

    // start pose: candidates over nearby anchor points and aims, scored on
    // the hardest screen corners by short trajectory runs
    let comfort = vec![-30.0, 80.0, 40.0, 70.0, -120.0, 60.0, 0.0];
    let quick = |chain: &armtraj_core::KinematicChain, start_pose: &[f64], end_pose: &[f64]| -> f64 {
        use armtraj_core::optimizer::{generate_trajectory, LossWeights, OptimizerConfig};
        use armtraj_core::pathgen::ShapeSpec;
        let cfg = OptimizerConfig { max_iterations: 1500, ..OptimizerConfig::default() };
        match generate_trajectory(chain, start_pose, end_pose, &ShapeSpec::Line, 50,
            &LossWeights::default(), &cfg)
        {
            Ok(sol) => {
                let (_, stats) = armtraj_core::evaluation::distance_from_line(
                    &sol.states, sol.goal.points[0], sol.goal.points[50]).unwrap();
                stats.mean
            }
            Err(_) => f64::INFINITY,
        }
    };
    let mut best_start: Option<(f64, Vec<f64>)> = None;
    for anchor in [
        [-6.0, -8.5, 27.5], [-5.5, -8.0, 26.5], [-6.5, -8.5, 26.5],
        [-5.0, -9.0, 27.0], [-6.0, -8.0, 25.5],
    ] {
        for aim in [[screen_x, -8.5, 24.5], [screen_x, -8.6, 24.8], [screen_x, -8.3, 24.2]] {
            let dir = unit(sub(aim, anchor));
            let soft = soft_solve(&chain, &comfort, anchor, dir, &comfort, 0.0);
            let candidate = polish_position(&chain, &soft, anchor);
            let mut worst: f64 = 0.0;
            for (y, z) in [(-10.0, 25.0), (-8.8, 22.8), (-6.2, 27.8)] {
                let target = [screen_x, y, z];
                let u = unit(sub(target, anchor));
                let t_soft = soft_solve(&chain, &candidate, target, u, &candidate, 2.0);
                let t_pose = polish_position(&chain, &t_soft, target);
                worst = worst.max(quick(&chain, &candidate, &t_pose));
            }
            eprintln!("  start candidate {:?} aim {:?}: worst {:.3}mm", anchor, aim, worst);
            if best_start.as_ref().map_or(true, |(b, _)| worst < *b) {
                best_start = Some((worst, candidate));
            }
        }
    }
    let start_pose = best_start.unwrap().1;
    let p_start = fk(&chain, &start_pose).unwrap().position;
    eprintln!("start: point ({:.2},{:.2},{:.2}) pose={:?}", p_start[0], p_start[1], p_start[2],
        start_pose.iter().map(|a| (a*10.0).round()/10.0).collect::<Vec<_>>());

    let score = |pose_end: &[f64]| -> f64 {
        use armtraj_core::optimizer::{generate_trajectory, LossWeights, OptimizerConfig};
        use armtraj_core::pathgen::ShapeSpec;
        let cfg = OptimizerConfig { max_iterations: 1500, ..OptimizerConfig::default() };
        match generate_trajectory(&chain, &start_pose, pose_end, &ShapeSpec::Line, 50,
            &LossWeights::default(), &cfg)
        {
            Ok(sol) => {
                let (_, stats) = armtraj_core::evaluation::distance_from_line(
                    &sol.states, sol.goal.points[0], sol.goal.points[50]).unwrap();
                stats.mean
            }
            Err(_) => f64::INFINITY,
        }
    };

    let mut poses = vec![("start".to_string(), start_pose.clone())];
    let mut previous = start_pose.clone();
    for (k, (y, z)) in touch_yz.iter().enumerate() {
        let target = [screen_x, *y, *z];
        let u = unit(sub(target, p_start));
        // among candidates, require tight end-pose alignment (a misaligned
        // touch pose makes the arm re-orient in the last steps, which curves
        // the approach and inflates the late surface pointing error), then
        // take the best scored line distance
        let mut candidates: Vec<(f64, f64, Vec<f64>)> = Vec::new();
        for seed in [&start_pose, &previous, &comfort] {
            for w_bow in [0.25, 0.5, 1.0, 2.0, 4.0] {
                let soft = soft_solve(&chain, seed, target, u, &start_pose, w_bow);
                let pose = polish_position(&chain, &soft, target);
                let dev = dir_dev_deg(&chain, &pose, u);
                let dist = score(&pose);
                candidates.push((dev, dist, pose));
            }
        }
        let (dev, dist, pose) = candidates
            .iter()
            .filter(|(dev, _, _)| *dev <= 1.0)
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .or_else(|| candidates.iter().min_by(|a, b| (a.0 * 0.3 + a.1).partial_cmp(&(b.0 * 0.3 + b.1)).unwrap()))
            .cloned()
            .unwrap();
        eprintln!("  (picked dev {dev:.3})");
        eprintln!("touch_{}: scored-dist={:6.3}mm dev={:7.4}° pose={:?}", k + 1, dist,
            dir_dev_deg(&chain, &pose, u),
            pose.iter().map(|a| (a*10.0).round()/10.0).collect::<Vec<_>>());
        previous = pose.clone();
        poses.push((format!("touch_{}", k + 1), pose));
    }
    let mut map = serde_json::Map::new();
    for (name, pose) in &poses {
        map.insert(name.clone(), serde_json::json!(pose));
    }
    let file = serde_json::json!({"model": "nico_right_arm", "poses": map});
    println!("{}", serde_json::to_string_pretty(&file).unwrap());
}
