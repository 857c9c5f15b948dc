//! Dev tool: feasibility map of position+line-direction IK over screen grids.
use armtraj_core::baseline::{ik_step_chain, ChainOrder, IkConfig};
use armtraj_core::pathgen::GoalPath;
use armtraj_core::robot_model::nico_right_arm;
use armtraj_core::fk;

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0]*v[0]+v[1]*v[1]+v[2]*v[2]).sqrt();
    [v[0]/n, v[1]/n, v[2]/n]
}

fn main() {
    let chain = nico_right_arm();
    let p_start = [-6.0, -11.0, 30.0];
    let seeds: Vec<Vec<f64>> = vec![
        vec![-30.0, 50.0, 60.0, 60.0, -140.0, 60.0, 0.0],
        vec![-57.1, 44.2, 86.2, 74.3, -144.5, 31.5, -1.0],
        vec![-29.8, 42.8, 62.8, -84.9, 136.4, 106.4, 132.2],
        vec![25.0, 88.0, -2.0, 88.0, -135.0, 75.0, -54.0],
    ];
    for screen_x in [-18.0f64, -20.0, -22.0] {
        println!("screen x = {screen_x}: best dir_dev (deg, position solved to <1e-8), min margin in ()");
        print!("{:>6}", "z\\y");
        for y in (-16..=-6).step_by(2) { print!("{:>12}", y); }
        println!();
        for z in [31.0f64, 29.0, 27.0, 25.0, 23.0, 21.0] {
            print!("{:>6}", z);
            for y in (-16..=-6).step_by(2) {
                let target = [screen_x, y as f64, z];
                let u = unit([target[0]-p_start[0], target[1]-p_start[1], target[2]-p_start[2]]);
                let mut best = (f64::INFINITY, 0.0f64);
                for seed in &seeds {
                    let goal = GoalPath { points: vec![target], vectors: vec![u] };
                    let cfg = IkConfig { position_tol: 1e-8, damping: 0.02,
                        max_inner_iterations: 1500, orientation_weight: 2.0, max_joint_step_deg: 4.0 };
                    let Ok(r) = ik_step_chain(&chain, seed, &goal, ChainOrder::Forward, &cfg) else { continue };
                    let pose = &r.solution.poses_deg[0];
                    let s = fk(&chain, pose).unwrap();
                    if !r.points[0].reached {
                        // polish position-only
                        let cfg2 = IkConfig { orientation_weight: 0.0, ..cfg.clone() };
                        let r2 = ik_step_chain(&chain, pose, &goal, ChainOrder::Forward, &cfg2).unwrap();
                        if !r2.points[0].reached { continue; }
                        let pose2 = &r2.solution.poses_deg[0];
                        let s2 = fk(&chain, pose2).unwrap();
                        let dot = s2.direction[0]*u[0]+s2.direction[1]*u[1]+s2.direction[2]*u[2];
                        let dev = dot.clamp(-1.0,1.0).acos().to_degrees();
                        let margin = pose2.iter().zip(&chain.joints)
                            .map(|(a, j)| (a - j.min_deg).min(j.max_deg - a))
                            .fold(f64::INFINITY, f64::min);
                        if dev < best.0 { best = (dev, margin); }
                        continue;
                    }
                    let dot = s.direction[0]*u[0]+s.direction[1]*u[1]+s.direction[2]*u[2];
                    let dev = dot.clamp(-1.0,1.0).acos().to_degrees();
                    let margin = pose.iter().zip(&chain.joints)
                        .map(|(a, j)| (a - j.min_deg).min(j.max_deg - a))
                        .fold(f64::INFINITY, f64::min);
                    if dev < best.0 { best = (dev, margin); }
                }
                if best.0.is_finite() {
                    print!("{:>7.1}({:>3.0})", best.0, best.1);
                } else {
                    print!("{:>12}", "unreach");
                }
            }
            println!();
        }
    }
}
