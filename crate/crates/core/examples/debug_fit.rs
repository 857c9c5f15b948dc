use armtraj_core::evaluation::*;
use armtraj_core::optimizer::*;
use armtraj_core::pathgen::ShapeSpec;

fn main() {
    let chain = armtraj_core::robot_model::nico_right_arm();
    let poses = armtraj_core::robot_model::nico_poses();
    let p_s = poses.get("start").unwrap().clone();
    let cfg = OptimizerConfig::default();
    let weights = LossWeights::default();
    let p_e = poses.get("touch_6").unwrap().clone();
    let sol = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights, &cfg).unwrap();
    let target = sol.goal.points[50];
    let surface = SurfaceSpec::new(target, [-1.0, 0.0, 0.0], target).unwrap();
    let errors = pointing_error_fit(&sol.states, &surface, 10).unwrap();
    for e in &errors {
        if e.step % 2 == 1 { continue; }
        println!("step {:2} err {:7.4}cm reliable {}", e.step, e.error_cm, e.reliable);
    }
    println!("-- ablation c6 ratios per problem --");
    for k in 1..=7 {
        let p_e = poses.get(&format!("touch_{k}")).unwrap().clone();
        let full = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights, &cfg).unwrap();
        let no_c6 = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights.zeroed(&[6]), &cfg).unwrap();
        let r = fluency(&no_c6.poses_deg).unwrap() / fluency(&full.poses_deg).unwrap();
        println!("t{k}: ratio {:.3} (iters {} / {})", r, no_c6.iterations, full.iterations);
    }
}
