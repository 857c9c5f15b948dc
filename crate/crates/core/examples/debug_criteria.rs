use armtraj_core::baseline::{ik_step_chain, ChainOrder, IkConfig};
use armtraj_core::evaluation::*;
use armtraj_core::optimizer::*;
use armtraj_core::pathgen::ShapeSpec;

fn main() {
    let chain = armtraj_core::robot_model::nico_right_arm();
    let poses = armtraj_core::robot_model::nico_poses();
    let p_s = poses.get("start").unwrap().clone();
    let cfg = OptimizerConfig::default();
    let weights = LossWeights::default();

    println!("== criterion 4: baseline vs neural ==");
    let mut neural_starts = Vec::new();
    let mut baseline_starts = Vec::new();
    for k in 1..=7 {
        let p_e = poses.get(&format!("touch_{k}")).unwrap().clone();
        let neural = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights, &cfg).unwrap();
        let base = ik_step_chain(&chain, &p_e, &neural.goal, ChainOrder::Backward, &IkConfig::default()).unwrap();
        let ndev = pointing_deviation(&neural.states, &neural.goal.vectors).unwrap();
        let bdev = pointing_deviation(&base.solution.states, &neural.goal.vectors).unwrap();
        let (_, bdist) = distance_from_line(&base.solution.states, neural.goal.points[0], neural.goal.points[50]).unwrap();
        let reached = base.points.iter().filter(|p| p.reached).count();
        println!("t{k}: neural dev {:5.2} | baseline dev {:6.2} dist {:5.2}mm reached {}/51",
            ndev.settled.unwrap().mean, bdev.settled.unwrap().mean, bdist.mean, reached);
        neural_starts.push(neural.states[0].position);
        baseline_starts.push(base.solution.states[0].position);
    }
    println!("start variation: neural {:.4}mm baseline {:.4}mm",
        start_point_variation(&neural_starts).unwrap(),
        start_point_variation(&baseline_starts).unwrap());

    println!("== criterion 5: ablations (touch_4) ==");
    let p_e = poses.get("touch_4").unwrap().clone();
    let full = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights, &cfg).unwrap();
    let no_c0 = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights.zeroed(&[0]), &cfg).unwrap();
    let mut worst = 0.0f64;
    for (i, row) in no_c0.poses_deg.iter().enumerate() {
        let t = i as f64 / 50.0;
        for (j, a) in row.iter().enumerate() {
            let interp = p_s[j] + t * (p_e[j] - p_s[j]);
            worst = worst.max((a - interp).abs());
        }
    }
    println!("c0=0: max |pose - interp| = {worst:.4}° (iters {} conv {})", no_c0.iterations, no_c0.converged);
    let no_c6 = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights.zeroed(&[6]), &cfg).unwrap();
    let l6_full = fluency(&full.poses_deg).unwrap();
    let l6_ablate = fluency(&no_c6.poses_deg).unwrap();
    println!("c6=0: L6 {l6_ablate:.4} vs full {l6_full:.4} ratio {:.2}", l6_ablate / l6_full);

    println!("== criterion 8: pointing error fit decreasing ==");
    for k in 1..=7 {
        let p_e = poses.get(&format!("touch_{k}")).unwrap().clone();
        let sol = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &weights, &cfg).unwrap();
        let target = sol.goal.points[50];
        let surface = SurfaceSpec::new(target, [-1.0, 0.0, 0.0], target).unwrap();
        let errors = pointing_error_fit(&sol.states, &surface, 10).unwrap();
        let vals: Vec<f64> = errors.iter().filter(|e| e.reliable).map(|e| e.error_cm).collect();
        let third = vals.len() / 3;
        let mid: f64 = vals[third..2*third].iter().sum::<f64>() / third as f64;
        let fin: f64 = vals[2*third..].iter().sum::<f64>() / (vals.len() - 2*third) as f64;
        println!("t{k}: mid {mid:.4}cm final {fin:.4}cm  ok={}", fin < mid);
    }

    println!("== criterion 9: letter L ==");
    let letter = armtraj_core::pathgen::bundled_letter("L").unwrap().scaled(8.0);
    let cfg9 = OptimizerConfig { max_iterations: 5000, ..OptimizerConfig::default() };
    let t0 = std::time::Instant::now();
    let sol = generate_trajectory_unanchored(&chain, &letter, 50, &weights, &cfg9, &p_s).unwrap();
    let mean_dist: f64 = sol.states.iter().zip(&sol.goal.points)
        .map(|(s, g)| (0..3).map(|k| (s.position[k] - g[k]).powi(2)).sum::<f64>().sqrt())
        .sum::<f64>() / sol.states.len() as f64;
    println!("L: mean goal dist {:.3}mm iters {} conv {} time {:.1}s",
        mean_dist * 10.0, sol.iterations, sol.converged, t0.elapsed().as_secs_f64());
}
