use armtraj_core::optimizer::{LossWeights, OptimizerConfig, TrajectoryOptimizer};
use armtraj_core::pathgen::ShapeSpec;

fn main() {
    let chain = armtraj_core::robot_model::nico_right_arm();
    let poses = armtraj_core::robot_model::nico_poses();
    let p_s = poses.get("start").unwrap().clone();
    let p_e = poses.get("touch_1").unwrap().clone();
    let cfg = OptimizerConfig { max_iterations: 20000, ..OptimizerConfig::default() };
    let mut opt = TrajectoryOptimizer::anchored(
        chain.clone(), &p_s, &p_e, &ShapeSpec::Line, 50, LossWeights::default(), cfg).unwrap();
    let mut deltas = Vec::new();
    let mut prev = opt.current_poses();
    for _ in 0..20000 {
        opt.step().unwrap();
        let cur = opt.current_poses();
        let mut d: f64 = 0.0;
        for (a, b) in cur.iter().zip(&prev) {
            for (x, y) in a.iter().zip(b) { d = d.max((x - y).abs()); }
        }
        deltas.push(d);
        prev = cur;
    }
    let mut sorted = deltas.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for q in [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
        let i = ((sorted.len() - 1) as f64 * q) as usize;
        println!("q{:4.2}: {:.6}°", q, sorted[i]);
    }
    // longest streak below 1e-3
    let (mut best, mut cur) = (0usize, 0usize);
    for &d in &deltas {
        if d < 1e-3 { cur += 1; best = best.max(cur); } else { cur = 0; }
    }
    println!("longest sub-1e-3 streak: {best}");
    // tail behaviour
    let tail = &deltas[19000..];
    println!("tail mean {:.6} min {:.6}", tail.iter().sum::<f64>() / tail.len() as f64,
        tail.iter().cloned().fold(f64::INFINITY, f64::min));
}
