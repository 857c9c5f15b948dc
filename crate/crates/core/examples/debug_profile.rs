use armtraj_core::optimizer::{generate_trajectory, LossWeights, OptimizerConfig};
use armtraj_core::pathgen::ShapeSpec;

fn main() {
    let chain = armtraj_core::robot_model::nico_right_arm();
    let poses = armtraj_core::robot_model::nico_poses();
    let p_s = poses.get("start").unwrap().clone();
    for which in 1..=7 {
        let p_e = poses.get(&format!("touch_{which}")).unwrap().clone();
        let cfg = OptimizerConfig::default();
        let sol = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &LossWeights::default(), &cfg).unwrap();
        let (per, stats) = armtraj_core::evaluation::distance_from_line(
            &sol.states, sol.goal.points[0], sol.goal.points[50]).unwrap();
        let head: f64 = per[..10].iter().sum::<f64>() / 10.0;
        let tail: f64 = per[10..].iter().sum::<f64>() / (per.len() - 10) as f64;
        let max_at = per.iter().enumerate().max_by(|a, b| a.1.partial_cmp(b.1).unwrap()).unwrap();
        println!("touch_{which}: mean {:.3} | first-10 {:.3} rest {:.3} | max {:.3}@{}",
            stats.mean, head, tail, max_at.1, max_at.0);
    }
}
