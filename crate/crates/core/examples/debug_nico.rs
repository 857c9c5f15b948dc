use armtraj_core::optimizer::{generate_trajectory, LossWeights, OptimizerConfig};
use armtraj_core::pathgen::ShapeSpec;

fn main() {
    let chain = armtraj_core::robot_model::nico_right_arm();
    let poses = armtraj_core::robot_model::nico_poses();
    let p_s = poses.get("start").unwrap().clone();
    let which: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let p_e = poses.get(&format!("touch_{which}")).unwrap().clone();
    let cfg = OptimizerConfig { max_iterations: 20000, ..OptimizerConfig::default() };
    let t0 = std::time::Instant::now();
    let sol = generate_trajectory(&chain, &p_s, &p_e, &ShapeSpec::Line, 50, &LossWeights::default(), &cfg).unwrap();
    println!("touch_{which}: iters={} converged={} time={:.2}s", sol.iterations, sol.converged, t0.elapsed().as_secs_f64());
    let k = sol.loss_trace.len();
    for i in [0usize, 50, 100, 200, 400, 800, 1600, 3200, 6400, 12800, k.saturating_sub(1)] {
        if i < k {
            let b = &sol.loss_trace[i];
            println!("it {:5}  L={:10.6}  L0={:8.5} L1={:8.5} L2={:8.5} L3={:8.5} L4={:8.5} L5={:8.5} L6={:8.5}",
                i, b.total, b.terms[0], b.terms[1], b.terms[2], b.terms[3], b.terms[4], b.terms[5], b.terms[6]);
        }
    }
    let n = sol.goal.points.len() - 1;
    let (_, stats) = armtraj_core::evaluation::distance_from_line(
        &sol.states, sol.goal.points[0], sol.goal.points[n]).unwrap();
    let dev = armtraj_core::evaluation::pointing_deviation(&sol.states, &sol.goal.vectors).unwrap();
    println!("dist mm mean={:.4} std={:.4} | pointing all {:.2}±{:.2} settled {:?}",
        stats.mean, stats.std, dev.all.mean, dev.all.std,
        dev.settled.map(|s| (s.mean.round(), s.std.round())));
    // endpoint pose reproduction
    let worst_start = sol.poses_deg[0].iter().zip(&p_s).map(|(a,b)| (a-b).abs()).fold(0.0f64, f64::max);
    let worst_end = sol.poses_deg[n].iter().zip(&p_e).map(|(a,b)| (a-b).abs()).fold(0.0f64, f64::max);
    println!("endpoint pose error: start {:.4}° end {:.4}°", worst_start, worst_end);
}
